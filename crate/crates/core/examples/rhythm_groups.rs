//! Stress intervals, nPVI and rhythm groups of a hand-timed utterance.
//!
//! ```text
//! cargo run --example rhythm_groups
//! ```

use rhythm_coach::rhythm::{npvi, RhythmTrack, SegmentationConfig, WordToken};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // (text, start, end, stressed)
    let timed = [
        ("we", 0.10, 0.22, false),
        ("SHALL", 0.25, 0.55, true),
        ("FIGHT", 0.85, 1.15, true),
        ("on", 1.18, 1.28, false),
        ("the", 1.30, 1.40, false),
        ("BEACHES", 1.45, 1.75, true),
        ("we", 1.80, 1.90, false),
        ("SHALL", 2.05, 2.35, true),
        ("NEVER", 2.40, 2.70, true),
        ("SURRENDER", 2.72, 3.02, true),
    ];
    let words: Vec<WordToken> = timed
        .iter()
        .map(|&(t, s, e, stressed)| WordToken::new(t.to_lowercase(), s, e, stressed))
        .collect();

    for tau in [18.0, 5.0] {
        let track = RhythmTrack::analyze(words.clone(), &SegmentationConfig::new(tau)?)?;
        let values: Vec<f64> = track.intervals.iter().map(|i| i.value_s).collect();
        println!("tau = {tau}");
        println!("  intervals: {values:.2?}");
        println!("  nPVI of all intervals: {:.2}", npvi(&values)?);
        for g in &track.groups {
            let span: Vec<&str> = track.words[g.word_span()].iter().map(|w| w.text.as_str()).collect();
            println!(
                "  group \"{}\": {} intervals, avg {:.3} s, pace {:.2} (bin {})",
                span.join(" "),
                g.interval_idxs.len(),
                g.avg_interval_s,
                g.pace_pos,
                g.pace_bin()
            );
        }
    }
    Ok(())
}
