//! Comparing a dubbing attempt with its target, from audio to feedback.
//!
//! ```text
//! cargo run --example compare_attempt
//! ```

use rhythm_coach::ingest::{encode_wav, write_alignment};
use rhythm_coach::pipeline::Analyzer;
use rhythm_coach::synth::{self, Voice};

fn recording(words: &[(&str, bool)], slot_s: f64) -> (Vec<u8>, String) {
    let bursts = synth::on_grid(words, 0.4, slot_s, &Voice::default());
    let end = bursts.last().map_or(0.0, |b| b.end_s()) + 0.4;
    (encode_wav(&synth::render(&bursts, end)), write_alignment(&synth::rows(&bursts, false)))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let target = [
        ("the", false),
        ("first", true),
        ("step", false),
        ("is", true),
        ("the", false),
        ("hardest", true),
        ("one", false),
        ("to", true),
        ("take", false),
        ("today", true),
    ];
    let mut attempt = target;
    attempt[3].1 = false;
    attempt[4].1 = true;

    let analyzer = Analyzer::default();
    let (t_wav, t_tsv) = recording(&target, 0.4);
    let (u_wav, u_tsv) = recording(&attempt, 0.32);
    let (_, target_track) = analyzer.analyze_recording(&t_wav, Some(&t_tsv))?;
    let (_, user_track) = analyzer.analyze_recording(&u_wav, Some(&u_tsv))?;
    let report = analyzer.compare(&target_track, &user_track);

    for (wf, item) in report.waterfalls.iter().zip(&report.feedback) {
        println!("waterfall {} target words {:?} user words {:?}", item.waterfall_id, wf.target_span, wf.user_span);
        println!("  raw {:?}", item.raw);
        println!("  smoothed {:?} -> {:?}", item.smoothed, item.verdict);
        for m in &item.messages {
            println!("  {m}");
        }
    }
    println!("all green: {}", report.all_green);
    Ok(())
}
