//! Comparing a dubbing attempt with its target.
//!
//! Words are aligned with a fuzzy edit distance, every target rhythm group
//! becomes a waterfall covering the user's corresponding words, and each
//! waterfall gets stress, beat and pace deviation counts that are smoothed
//! into lenient feedback.

pub mod align;
pub mod deviation;
pub mod feedback;
pub mod similarity;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rhythm::RhythmTrack;

pub use align::{align_strings, align_words, AlignOp, AlignmentMap, OpKind};
pub use deviation::{
    compute_deviations, map_waterfalls, measure_waterfall, DeviationTriple, Waterfall, WaterfallMeasure,
};
pub use feedback::{render_feedback, smooth_deviations, FeedbackContext, FeedbackItem, Verdict};
pub use similarity::word_similarity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompareError {
    #[error("waterfall {0} has no corresponding user words")]
    SkippedSegment(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareConfig {
    /// Minimum similarity for two words to count as the same word.
    pub fuzzy_threshold: f64,
}

impl Default for CompareConfig {
    fn default() -> Self {
        Self {
            fuzzy_threshold: 0.62,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub alignment: AlignmentMap,
    pub waterfalls: Vec<Waterfall>,
    pub feedback: Vec<FeedbackItem>,
    pub all_green: bool,
}

pub fn compare_tracks(target: &RhythmTrack, user: &RhythmTrack, cfg: &CompareConfig) -> ComparisonReport {
    let alignment = align_words(&target.words, &user.words, cfg.fuzzy_threshold);
    let waterfalls = map_waterfalls(target, &alignment);
    let feedback: Vec<FeedbackItem> = waterfalls
        .iter()
        .enumerate()
        .map(|(id, wf)| match measure_waterfall(wf, target, user, &alignment) {
            Ok(m) => {
                let ctx = FeedbackContext {
                    user_slower: m
                        .user_avg_interval_s
                        .is_some_and(|u| u > m.target_avg_interval_s),
                    missed_stress: m.missed_stress,
                    extra_stress: m.extra_stress,
                };
                render_feedback(id, m.triple, smooth_deviations(m.triple), &ctx)
            }
            Err(CompareError::SkippedSegment(_)) => feedback::skipped_feedback(id),
        })
        .collect();
    let all_green = feedback.iter().all(|f| f.verdict == Verdict::Green);
    ComparisonReport {
        alignment,
        waterfalls,
        feedback,
        all_green,
    }
}
