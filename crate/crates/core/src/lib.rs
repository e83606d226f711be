//! Stress-timing rhythm training for English speech.
//!
//! The crate extracts the rhythm of a recording (which words are stressed,
//! the intervals between stresses, and runs of near-isochronous beats called
//! rhythm groups), draws it as rhythm notation, and compares a learner's
//! dubbing attempt against a target to produce lenient corrective feedback.
//!
//! | module | role |
//! |---|---|
//! | [`rhythm`] | stress intervals, nPVI, sliding-window rhythm groups, pace bins |
//! | [`stress`] | word stress detection: prominence heuristic and external model seam |
//! | [`ingest`] | WAV decoding, alignment files, ASR adapter, clip segmentation, word slicing |
//! | [`compare`] | fuzzy word alignment, waterfalls, deviations, smoothing, feedback |
//! | [`notation`] | SVG rendering of rhythm notation and comparison views |
//! | [`pipeline`] | the configured end-to-end analyzer |
//! | [`service`] | HTTP API with file-based persistence |
//! | [`cli`] | the `rhythm` command line |
//!
//! Runnable examples live in `examples/`; see the README for the list.

pub mod cli;
pub mod compare;
pub mod config;
pub mod ingest;
pub mod notation;
pub mod pipeline;
pub mod rhythm;
pub mod serde_ms;
pub mod service;
pub mod stress;
pub mod synth;

pub use compare::{compare_tracks, ComparisonReport, DeviationTriple, Verdict};
pub use config::Config;
pub use pipeline::{Analyzer, PipelineError};
pub use rhythm::{RhythmGroup, RhythmTrack, SegmentationConfig, StressInterval, WordToken};
