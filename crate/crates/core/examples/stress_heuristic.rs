//! Prominence features and heuristic stress decisions for a synthetic clip.
//!
//! ```text
//! cargo run --example stress_heuristic
//! ```

use rhythm_coach::ingest::slice_words;
use rhythm_coach::rhythm::WordToken;
use rhythm_coach::stress::{classify_stress, extract_features, StressConfig};
use rhythm_coach::synth::{self, Voice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let script = [("the", false), ("quick", true), ("brown", false), ("fox", true), ("jumps", true), ("over", false)];
    let bursts = synth::on_grid(&script, 0.4, 0.45, &Voice::default());
    let pcm = synth::render(&bursts, 3.2);
    let words: Vec<WordToken> = bursts
        .iter()
        .map(|b| WordToken::new(b.text.clone(), b.start_s, b.end_s(), false))
        .collect();

    let slices = slice_words(&pcm, &words)?;
    let features = slices.iter().map(extract_features).collect::<Result<Vec<_>, _>>()?;
    let decisions = classify_stress(&features, &StressConfig::default());

    println!("{:<8} {:>7} {:>8} {:>8} {:>7}  stressed (scripted)", "word", "dur s", "rms", "f0 Hz", "score");
    for ((b, f), d) in bursts.iter().zip(&features).zip(&decisions) {
        let f0 = f.peak_f0_hz.map_or("-".to_string(), |v| format!("{v:.1}"));
        println!(
            "{:<8} {:>7.3} {:>8.4} {:>8} {:>7.2}  {} ({})",
            b.text, f.duration_s, f.rms_energy, f0, d.score, d.stressed, b.stressed
        );
    }
    Ok(())
}
