//! From raw recordings to analyzable clips.
//!
//! Audio is decoded to 16 kHz mono, words are timestamped either by an ASR
//! adapter or by an imported alignment file, long transcripts are cut into
//! dubbing clips at pauses, and each word is sliced out for stress detection.

pub mod alignment;
pub mod asr;
pub mod audio;

use std::ops::Range;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rhythm::{RhythmTrack, WordToken};
use crate::serde_ms;
use crate::stress::WordAudio;

pub use alignment::{parse_alignment, write_alignment, AlignedRow};
pub use asr::{transcribe, AsrModel, HttpAsrAdapter};
pub use audio::{decode_audio, encode_wav, Pcm, TARGET_RATE};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("unsupported container: {0}")]
    UnsupportedContainer(String),
    #[error("unsupported codec: {0} (expected 16-bit PCM)")]
    UnsupportedCodec(String),
    #[error("malformed audio: {0}")]
    MalformedAudio(String),
    #[error("alignment line {line}: {message}")]
    Alignment { line: usize, message: String },
    #[error("speech recognizer unavailable ({0}); import an alignment file instead")]
    AsrUnavailable(String),
    #[error("row {index} ({text:?}, {start_s:.3}-{end_s:.3} s) lies outside the {duration_s:.3} s recording")]
    RowOutOfBounds {
        index: usize,
        text: String,
        start_s: f64,
        end_s: f64,
        duration_s: f64,
    },
}

/// Dubbing material: one source recording cut into clips.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub material_id: String,
    pub title: String,
    pub created_at: DateTime<Utc>,
    pub audio_ref: String,
    pub clips: Vec<Clip>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clip {
    pub clip_index: usize,
    #[serde(with = "serde_ms")]
    pub start_s: f64,
    #[serde(with = "serde_ms")]
    pub end_s: f64,
    pub target: RhythmTrack,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClipConfig {
    /// Gap between words that ends a sentence.
    pub pause_s: f64,
    pub min_words: usize,
    pub max_words: usize,
    /// Silence kept around a clip's first and last word.
    pub padding_s: f64,
}

impl Default for ClipConfig {
    fn default() -> Self {
        Self {
            pause_s: 0.35,
            min_words: 5,
            max_words: 18,
            padding_s: 0.15,
        }
    }
}

/// Word range and source-audio extent of one clip.
#[derive(Debug, Clone, PartialEq)]
pub struct ClipBounds {
    pub words: Range<usize>,
    pub start_s: f64,
    pub end_s: f64,
}

fn gap_after(rows: &[AlignedRow], k: usize) -> f64 {
    rows[k + 1].start_s - rows[k].end_s
}

fn split_long(rows: &[AlignedRow], range: Range<usize>, max_words: usize, out: &mut Vec<Range<usize>>) {
    if range.len() <= max_words {
        out.push(range);
        return;
    }
    let centre = (range.start + range.end) as f64 / 2.0;
    let mut best: Option<(usize, f64)> = None;
    for k in range.start..range.end - 1 {
        let gap = gap_after(rows, k);
        let better = match best {
            None => true,
            Some((b, bg)) => {
                gap > bg + 1e-9
                    || ((gap - bg).abs() <= 1e-9
                        && ((k + 1) as f64 - centre).abs() < ((b + 1) as f64 - centre).abs())
            }
        };
        if better {
            best = Some((k, gap));
        }
    }
    let cut = best.map(|(k, _)| k + 1).expect("range longer than max_words");
    split_long(rows, range.start..cut, max_words, out);
    split_long(rows, cut..range.end, max_words, out);
}

/// Pause-based sentence segmentation.
///
/// Splits at gaps of at least `pause_s`, splits any clip longer than
/// `max_words` at its largest internal gap, then merges clips shorter than
/// `min_words` into the following clip (or, for the last one, the previous
/// clip) when the result stays within `max_words`.
pub fn segment_clips(rows: &[AlignedRow], duration_s: f64, cfg: &ClipConfig) -> Vec<ClipBounds> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut sentences = Vec::new();
    let mut start = 0;
    for k in 0..rows.len() - 1 {
        if gap_after(rows, k) >= cfg.pause_s - 1e-9 {
            sentences.push(start..k + 1);
            start = k + 1;
        }
    }
    sentences.push(start..rows.len());

    let mut clips = Vec::new();
    for s in sentences {
        split_long(rows, s, cfg.max_words, &mut clips);
    }

    let mut i = 0;
    while i + 1 < clips.len() {
        if clips[i].len() < cfg.min_words && clips[i].len() + clips[i + 1].len() <= cfg.max_words {
            clips[i + 1].start = clips[i].start;
            clips.remove(i);
        } else {
            i += 1;
        }
    }
    if clips.len() >= 2 {
        let n = clips.len();
        if clips[n - 1].len() < cfg.min_words && clips[n - 1].len() + clips[n - 2].len() <= cfg.max_words {
            clips[n - 2].end = clips[n - 1].end;
            clips.pop();
        }
    }

    clips
        .into_iter()
        .map(|words| {
            let first = &rows[words.start];
            let last = &rows[words.end - 1];
            let lower = if words.start == 0 {
                0.0
            } else {
                (rows[words.start - 1].end_s + first.start_s) / 2.0
            };
            let upper = if words.end == rows.len() {
                duration_s.max(last.end_s)
            } else {
                (last.end_s + rows[words.end].start_s) / 2.0
            };
            ClipBounds {
                start_s: (first.start_s - cfg.padding_s).max(lower),
                end_s: (last.end_s + cfg.padding_s).min(upper),
                words,
            }
        })
        .collect()
}

/// Cuts one slice per word, rounding the start down and the end up to whole
/// samples.
pub fn slice_words(pcm: &Pcm, words: &[WordToken]) -> Result<Vec<WordAudio>, IngestError> {
    let rate = f64::from(pcm.sample_rate_hz);
    words
        .iter()
        .enumerate()
        .map(|(index, w)| {
            let first = (w.start_s * rate + 1e-6).floor().max(0.0) as usize;
            let last = (w.end_s * rate - 1e-6).ceil().max(0.0) as usize;
            if last > pcm.samples.len() || first >= last {
                return Err(IngestError::RowOutOfBounds {
                    index,
                    text: w.text.clone(),
                    start_s: w.start_s,
                    end_s: w.end_s,
                    duration_s: pcm.duration_s(),
                });
            }
            Ok(WordAudio {
                samples: pcm.samples[first..last].to_vec(),
                sample_rate_hz: pcm.sample_rate_hz,
                word: w.clone(),
            })
        })
        .collect()
}
