//! Writes the scripted test recordings and their alignment files.
//!
//! ```text
//! cargo run --example make_fixtures -- [out_dir]
//! ```
//! The default output directory is `crates/core/tests/fixtures`.

#[path = "../tests/common/fixtures.rs"]
mod fixtures;

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures"));
    std::fs::create_dir_all(&dir)?;
    for (stem, phrases) in fixtures::ALL {
        let (wav, tsv) = fixtures::files(phrases);
        std::fs::write(dir.join(format!("{stem}.wav")), wav)?;
        std::fs::write(dir.join(format!("{stem}.tsv")), &tsv)?;
        println!("{stem}: {} words", tsv.lines().count());
    }
    Ok(())
}
