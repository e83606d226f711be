//! Stress intervals, nPVI and rhythm-group segmentation.
//!
//! Everything here is a pure function of a timestamped, stress-labelled word
//! sequence. A stress interval is the distance between the midpoints of two
//! consecutive stressed words; a rhythm group is a run of at least two
//! near-isochronous intervals (three stressed words) found by a greedy
//! sliding window over the interval sequence.

use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::serde_ms;

/// Allowed overlap between consecutive words, in seconds.
pub const ORDER_SLACK_S: f64 = 1e-6;

/// Average interval at or below which a group is drawn at the purple end.
pub const PACE_FAST_S: f64 = 0.1;
/// Average interval at or above which a group is drawn at the yellow end.
pub const PACE_SLOW_S: f64 = 1.0;
/// Number of discrete pace bins.
pub const PACE_BINS: u8 = 6;
/// Interval values are snapped to this grid so that they do not depend on
/// where the recording starts.
pub const INTERVAL_GRID_S: f64 = 1e-9;
/// Slack when placing a pace position into a bin.
const BIN_SLACK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RhythmError {
    #[error("word {index} ({text:?}): end {end_s} must be after start {start_s}")]
    InvertedWord {
        index: usize,
        text: String,
        start_s: f64,
        end_s: f64,
    },
    #[error("word {index}: text is empty")]
    EmptyText { index: usize },
    #[error("word {index}: negative start time {start_s}")]
    NegativeStart { index: usize, start_s: f64 },
    #[error("words {index} and {next}: overlapping or out of order")]
    Unordered { index: usize, next: usize },
    #[error("nPVI needs at least two durations, got {0}")]
    TooFewDurations(usize),
    #[error("nPVI duration {index} is not positive: {value}")]
    NonPositiveDuration { index: usize, value: f64 },
    #[error("nPVI threshold must be positive, got {0}")]
    InvalidTau(f64),
    #[error("pace position {0} outside [0, 1]")]
    PaceOutOfRange(f64),
}

/// One transcript word with its timing and stress flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordToken {
    /// Display text, original case.
    pub text: String,
    #[serde(with = "serde_ms")]
    pub start_s: f64,
    #[serde(with = "serde_ms")]
    pub end_s: f64,
    pub stressed: bool,
}

impl WordToken {
    pub fn new(text: impl Into<String>, start_s: f64, end_s: f64, stressed: bool) -> Self {
        Self {
            text: text.into(),
            start_s,
            end_s,
            stressed,
        }
    }

    pub fn midpoint(&self) -> f64 {
        (self.start_s + self.end_s) / 2.0
    }

    pub fn duration(&self) -> f64 {
        self.end_s - self.start_s
    }

    /// Lowercased text with surrounding punctuation removed, used for matching.
    pub fn normalized(&self) -> String {
        normalize_word(&self.text)
    }
}

pub fn normalize_word(text: &str) -> String {
    let trimmed = text
        .trim()
        .trim_matches(|c: char| !c.is_alphanumeric() && c != '\'');
    let base = if trimmed.is_empty() { text.trim() } else { trimmed };
    base.to_lowercase()
}

/// Time between the midpoints of two consecutive stressed words.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressInterval {
    #[serde(with = "serde_ms")]
    pub value_s: f64,
    pub left_word_idx: usize,
    pub right_word_idx: usize,
}

/// A run of near-isochronous stress intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhythmGroup {
    /// Contiguous indices into the track's intervals.
    pub interval_idxs: Vec<usize>,
    /// First stressed word of the group.
    pub first_word_idx: usize,
    /// Last stressed word of the group.
    pub last_word_idx: usize,
    #[serde(with = "serde_ms")]
    pub avg_interval_s: f64,
    pub pace_pos: f64,
}

impl RhythmGroup {
    pub fn word_span(&self) -> std::ops::RangeInclusive<usize> {
        self.first_word_idx..=self.last_word_idx
    }

    pub fn contains_word(&self, idx: usize) -> bool {
        self.word_span().contains(&idx)
    }

    pub fn pace_bin(&self) -> u8 {
        // pace_pos is clamped on construction
        pace_bin(self.pace_pos).unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentationConfig {
    /// nPVI threshold above which a segment is closed.
    pub tau: f64,
}

impl SegmentationConfig {
    pub fn new(tau: f64) -> Result<Self, RhythmError> {
        if tau > 0.0 && tau.is_finite() {
            Ok(Self { tau })
        } else {
            Err(RhythmError::InvalidTau(tau))
        }
    }
}

impl Default for SegmentationConfig {
    fn default() -> Self {
        Self { tau: 18.0 }
    }
}

/// An ordered word sequence with its derived intervals and groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhythmTrack {
    pub words: Vec<WordToken>,
    pub intervals: Vec<StressInterval>,
    pub groups: Vec<RhythmGroup>,
}

impl RhythmTrack {
    /// Validates the words and derives intervals and groups.
    pub fn analyze(words: Vec<WordToken>, cfg: &SegmentationConfig) -> Result<Self, RhythmError> {
        validate_words(&words)?;
        let intervals = compute_intervals(&words);
        let segments = segment_intervals(&intervals, cfg);
        let groups = build_groups(&intervals, &segments);
        Ok(Self {
            words,
            intervals,
            groups,
        })
    }

    pub fn empty() -> Self {
        Self {
            words: Vec::new(),
            intervals: Vec::new(),
            groups: Vec::new(),
        }
    }

    pub fn stressed_count(&self) -> usize {
        self.words.iter().filter(|w| w.stressed).count()
    }

    /// Index of the group whose word span holds `word_idx`, if any.
    pub fn group_of_word(&self, word_idx: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.contains_word(word_idx))
    }
}

pub fn validate_words(words: &[WordToken]) -> Result<(), RhythmError> {
    for (index, w) in words.iter().enumerate() {
        if w.text.trim().is_empty() {
            return Err(RhythmError::EmptyText { index });
        }
        if w.start_s < 0.0 {
            return Err(RhythmError::NegativeStart {
                index,
                start_s: w.start_s,
            });
        }
        if w.end_s.is_nan() || w.start_s.is_nan() || w.end_s <= w.start_s {
            return Err(RhythmError::InvertedWord {
                index,
                text: w.text.clone(),
                start_s: w.start_s,
                end_s: w.end_s,
            });
        }
    }
    for (index, pair) in words.windows(2).enumerate() {
        if pair[0].end_s > pair[1].start_s + ORDER_SLACK_S {
            return Err(RhythmError::Unordered {
                index,
                next: index + 1,
            });
        }
    }
    Ok(())
}

fn snap(t: f64) -> f64 {
    (t / INTERVAL_GRID_S).round() * INTERVAL_GRID_S
}

/// One interval per consecutive pair of stressed words; unstressed words in
/// between are skipped.
pub fn compute_intervals(words: &[WordToken]) -> Vec<StressInterval> {
    let stressed: Vec<usize> = words
        .iter()
        .enumerate()
        .filter(|(_, w)| w.stressed)
        .map(|(i, _)| i)
        .collect();
    stressed
        .windows(2)
        .map(|pair| StressInterval {
            value_s: snap(words[pair[1]].midpoint() - words[pair[0]].midpoint()),
            left_word_idx: pair[0],
            right_word_idx: pair[1],
        })
        .collect()
}

/// Normalized pairwise variability index of a duration sequence.
pub fn npvi(durations: &[f64]) -> Result<f64, RhythmError> {
    if durations.len() < 2 {
        return Err(RhythmError::TooFewDurations(durations.len()));
    }
    if let Some((index, &value)) = durations
        .iter()
        .enumerate()
        .find(|(_, d)| !d.is_finite() || **d <= 0.0)
    {
        return Err(RhythmError::NonPositiveDuration { index, value });
    }
    Ok(npvi_unchecked(durations))
}

fn npvi_unchecked(durations: &[f64]) -> f64 {
    let sum: f64 = durations
        .windows(2)
        .map(|p| ((p[0] - p[1]) / (p[0] + p[1])).abs())
        .sum();
    100.0 * (sum / (durations.len() - 1) as f64)
}

/// Greedy sliding-window segmentation of a duration sequence.
///
/// Each duration is appended to the current segment; if the segment then has
/// more than one element and its nPVI exceeds `tau`, the duration is taken
/// back out, the segment is emitted, and a new segment starts with it. The
/// returned ranges partition `0..durations.len()` in order. nPVI is recomputed
/// over the whole candidate segment at every step.
pub fn segment_durations(durations: &[f64], tau: f64) -> Vec<Range<usize>> {
    let mut segments = Vec::new();
    if durations.is_empty() {
        return segments;
    }
    let mut start = 0;
    for end in 1..durations.len() {
        let candidate = &durations[start..=end];
        if candidate.len() > 1 && npvi_unchecked(candidate) > tau {
            segments.push(start..end);
            start = end;
        }
    }
    segments.push(start..durations.len());
    segments
}

/// Segments the interval sequence. Each segment is a contiguous range of
/// indices into `intervals`.
pub fn segment_intervals(intervals: &[StressInterval], cfg: &SegmentationConfig) -> Vec<Range<usize>> {
    let values: Vec<f64> = intervals.iter().map(|i| i.value_s).collect();
    segment_durations(&values, cfg.tau)
}

/// Turns every segment with at least two intervals into a group.
pub fn build_groups(intervals: &[StressInterval], segments: &[Range<usize>]) -> Vec<RhythmGroup> {
    segments
        .iter()
        .filter(|r| r.len() >= 2)
        .map(|r| {
            let members = &intervals[r.clone()];
            let avg = members.iter().map(|i| i.value_s).sum::<f64>() / members.len() as f64;
            RhythmGroup {
                interval_idxs: r.clone().collect(),
                first_word_idx: members[0].left_word_idx,
                last_word_idx: members[members.len() - 1].right_word_idx,
                avg_interval_s: avg,
                pace_pos: pace_position(avg),
            }
        })
        .collect()
}

/// Linear position of an average interval between the purple (0) and yellow
/// (1) ends of the pace scale.
pub fn pace_position(avg_interval_s: f64) -> f64 {
    ((avg_interval_s - PACE_FAST_S) / (PACE_SLOW_S - PACE_FAST_S)).clamp(0.0, 1.0)
}

/// Discrete pace bin, 0 at the purple end, 5 at the yellow end.
pub fn pace_bin(pace_pos: f64) -> Result<u8, RhythmError> {
    if !(0.0..=1.0).contains(&pace_pos) {
        return Err(RhythmError::PaceOutOfRange(pace_pos));
    }
    let bin = (pace_pos * f64::from(PACE_BINS) + BIN_SLACK).floor() as u8;
    Ok(bin.min(PACE_BINS - 1))
}
