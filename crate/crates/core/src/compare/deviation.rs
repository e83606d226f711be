//! Waterfalls and per-waterfall rhythmic deviations.

use serde::{Deserialize, Serialize};

use super::align::AlignmentMap;
use super::CompareError;
use crate::rhythm::{pace_bin, pace_position, RhythmTrack, PACE_BINS};

/// Link from one target rhythm group down to the user's corresponding words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Waterfall {
    /// Index into the target track's groups.
    pub group_idx: usize,
    pub target_span: (usize, usize),
    pub user_span: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeviationTriple {
    pub d_stress: u32,
    pub d_beat: u32,
    pub d_pace: u32,
}

impl DeviationTriple {
    pub const fn new(d_stress: u32, d_beat: u32, d_pace: u32) -> Self {
        Self {
            d_stress,
            d_beat,
            d_pace,
        }
    }

    pub fn total(&self) -> u32 {
        self.d_stress + self.d_beat + self.d_pace
    }
}

/// Deviations plus what the feedback text needs to explain them.
#[derive(Debug, Clone, PartialEq)]
pub struct WaterfallMeasure {
    pub triple: DeviationTriple,
    /// Target words the user left unstressed.
    pub missed_stress: Vec<String>,
    /// Target words the user stressed although the target did not.
    pub extra_stress: Vec<String>,
    pub target_avg_interval_s: f64,
    pub user_avg_interval_s: Option<f64>,
}

pub fn map_waterfalls(target: &RhythmTrack, alignment: &AlignmentMap) -> Vec<Waterfall> {
    target
        .groups
        .iter()
        .enumerate()
        .map(|(group_idx, g)| {
            let users: Vec<usize> = alignment
                .pairs()
                .filter(|(t, _)| g.contains_word(*t))
                .map(|(_, u)| u)
                .collect();
            let user_span = match (users.iter().min(), users.iter().max()) {
                (Some(&lo), Some(&hi)) => Some((lo, hi)),
                _ => None,
            };
            Waterfall {
                group_idx,
                target_span: (g.first_word_idx, g.last_word_idx),
                user_span,
            }
        })
        .collect()
}

pub fn measure_waterfall(
    waterfall: &Waterfall,
    target: &RhythmTrack,
    user: &RhythmTrack,
    alignment: &AlignmentMap,
) -> Result<WaterfallMeasure, CompareError> {
    let (first, last) = waterfall
        .user_span
        .ok_or(CompareError::SkippedSegment(waterfall.group_idx))?;
    let group = &target.groups[waterfall.group_idx];

    let mut missed_stress = Vec::new();
    let mut extra_stress = Vec::new();
    for (t, u) in alignment.pairs().filter(|(t, _)| group.contains_word(*t)) {
        match (target.words[t].stressed, user.words[u].stressed) {
            (true, false) => missed_stress.push(target.words[t].text.clone()),
            (false, true) => extra_stress.push(target.words[t].text.clone()),
            _ => {}
        }
    }
    let d_stress = (missed_stress.len() + extra_stress.len()) as u32;

    let d_beat = (first..=last)
        .filter(|&u| user.group_of_word(u).is_none())
        .count() as u32;

    let target_bin = group.pace_bin();
    let overlap = |lo: usize, hi: usize| (hi.min(last) + 1).saturating_sub(lo.max(first));
    let best_group = user
        .groups
        .iter()
        .filter(|g| overlap(g.first_word_idx, g.last_word_idx) > 0)
        .max_by(|a, b| {
            overlap(a.first_word_idx, a.last_word_idx)
                .cmp(&overlap(b.first_word_idx, b.last_word_idx))
                .then_with(|| {
                    // closer pace wins an overlap tie; earlier group wins after that
                    let da = (a.avg_interval_s - group.avg_interval_s).abs();
                    let db = (b.avg_interval_s - group.avg_interval_s).abs();
                    db.total_cmp(&da)
                })
        });
    let (d_pace, user_avg) = match best_group {
        Some(g) => (u32::from(target_bin.abs_diff(g.pace_bin())), Some(g.avg_interval_s)),
        None => {
            let inside: Vec<f64> = user
                .intervals
                .iter()
                .filter(|i| i.left_word_idx >= first && i.right_word_idx <= last)
                .map(|i| i.value_s)
                .collect();
            let avg = (!inside.is_empty()).then(|| inside.iter().sum::<f64>() / inside.len() as f64);
            if inside.len() < 2 {
                (u32::from(PACE_BINS - 1), avg)
            } else {
                let avg = avg.expect("non-empty");
                let bin = pace_bin(pace_position(avg)).expect("clamped pace position");
                (u32::from(target_bin.abs_diff(bin)), Some(avg))
            }
        }
    };

    Ok(WaterfallMeasure {
        triple: DeviationTriple::new(d_stress, d_beat, d_pace),
        missed_stress,
        extra_stress,
        target_avg_interval_s: group.avg_interval_s,
        user_avg_interval_s: user_avg,
    })
}

pub fn compute_deviations(
    waterfall: &Waterfall,
    target: &RhythmTrack,
    user: &RhythmTrack,
    alignment: &AlignmentMap,
) -> Result<DeviationTriple, CompareError> {
    measure_waterfall(waterfall, target, user, alignment).map(|m| m.triple)
}
