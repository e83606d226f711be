//! Rhythm notation and the comparison view as SVG files.
//!
//! ```text
//! cargo run --example notation_svg -- [out_dir]
//! ```

use std::path::PathBuf;

use rhythm_coach::compare::{compare_tracks, CompareConfig};
use rhythm_coach::notation::{render_comparison_svg, render_track_svg, word_colors, NotationOptions};
use rhythm_coach::rhythm::{RhythmTrack, SegmentationConfig, WordToken};

fn track(words: &[(&str, bool)], pitch_s: f64) -> RhythmTrack {
    let tokens = words
        .iter()
        .enumerate()
        .map(|(i, &(w, s))| {
            let start = 0.2 + i as f64 * pitch_s;
            WordToken::new(w, start, start + pitch_s * 0.8, s)
        })
        .collect();
    RhythmTrack::analyze(tokens, &SegmentationConfig::default()).expect("ordered words")
}

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let script = [
        ("we", false),
        ("shall", true),
        ("fight", false),
        ("on", true),
        ("the", false),
        ("beaches", true),
        ("and", false),
        ("never", true),
        ("sur", false),
        ("render", true),
    ];
    let target = track(&script, 0.3);
    let mut sloppy = script;
    sloppy[4].1 = false;
    let user = track(&sloppy, 0.26);

    println!("word colours: {:?}", word_colors(&target));
    let report = compare_tracks(&target, &user, &CompareConfig::default());
    let single = dir.join("rhythm_notation.svg");
    let pair = dir.join("rhythm_comparison.svg");
    std::fs::write(&single, render_track_svg(&target, &NotationOptions::default()))?;
    std::fs::write(&pair, render_comparison_svg(&target, 0.0, &user, 0.0, &report))?;
    println!("wrote {} and {}", single.display(), pair.display());
    Ok(())
}
