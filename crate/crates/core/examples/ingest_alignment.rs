//! WAV encoding, alignment files, clip segmentation and word slicing.
//!
//! ```text
//! cargo run --example ingest_alignment
//! ```

use rhythm_coach::ingest::{decode_audio, encode_wav, parse_alignment, segment_clips, slice_words, write_alignment, ClipConfig};
use rhythm_coach::synth::{self, Voice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let voice = Voice::default();
    let first = [("keep", true), ("your", false), ("eyes", true), ("on", false), ("the", false), ("road", true)];
    let second = [("and", false), ("never", true), ("stop", true), ("learning", true), ("from", false), ("it", false)];
    let mut bursts = synth::on_grid(&first, 0.4, 0.34, &voice);
    bursts.extend(synth::on_grid(&second, 3.1, 0.34, &voice));
    let wav = encode_wav(&synth::render(&bursts, 5.4));

    let tsv = write_alignment(&synth::rows(&bursts, false));
    println!("alignment file:\n{tsv}");

    let pcm = decode_audio(&wav)?;
    let rows = parse_alignment(&tsv)?;
    println!("{} bytes of WAV, {:.2} s at {} Hz, {} rows", wav.len(), pcm.duration_s(), pcm.sample_rate_hz, rows.len());

    for clip in segment_clips(&rows, pcm.duration_s(), &ClipConfig::default()) {
        let text: Vec<&str> = rows[clip.words.clone()].iter().map(|r| r.text.as_str()).collect();
        println!("clip {:.3}-{:.3} s: {}", clip.start_s, clip.end_s, text.join(" "));
    }

    let tokens: Vec<_> = rows.iter().map(|r| r.to_token()).collect();
    let slices = slice_words(&pcm, &tokens)?;
    let total: usize = slices.iter().map(|s| s.samples.len()).sum();
    println!("{} word slices, {total} of {} samples", slices.len(), pcm.samples.len());
    Ok(())
}
