//! Tolerant smoothing of deviations and the feedback text.

use serde::{Deserialize, Serialize};

use super::deviation::DeviationTriple;

pub const NICE: &str = "Nice rhythm here!";
pub const STEADY_BEAT: &str = "Try to keep a steady beat across this part.";
pub const FASTER: &str = "You could speak a little faster.";
pub const SLOWER: &str = "You could speak a little slower.";
pub const SKIPPED: &str = "This part was skipped.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Green,
    Red,
}

/// Feedback for one waterfall.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeedbackItem {
    pub waterfall_id: usize,
    pub verdict: Verdict,
    pub messages: Vec<String>,
    /// Absent when the user skipped the segment.
    pub raw: Option<DeviationTriple>,
    pub smoothed: Option<DeviationTriple>,
}

/// What the message templates need besides the numbers.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeedbackContext {
    pub missed_stress: Vec<String>,
    pub extra_stress: Vec<String>,
    /// The user's average stress interval is longer than the target's.
    pub user_slower: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dim {
    Stress,
    Beat,
    Pace,
}

fn get(t: &DeviationTriple, d: Dim) -> u32 {
    match d {
        Dim::Stress => t.d_stress,
        Dim::Beat => t.d_beat,
        Dim::Pace => t.d_pace,
    }
}

fn get_mut(t: &mut DeviationTriple, d: Dim) -> &mut u32 {
    match d {
        Dim::Stress => &mut t.d_stress,
        Dim::Beat => &mut t.d_beat,
        Dim::Pace => &mut t.d_pace,
    }
}

/// Step 1: stress misplacements also break beats, so when more than one
/// stress is off the beat count is capped by the stress count.
pub fn merge_duplicate_counts(raw: DeviationTriple) -> DeviationTriple {
    let mut t = raw;
    if t.d_stress > 1 {
        t.d_beat = t.d_beat.min(t.d_stress);
    }
    t
}

/// Step 2: the smallest dimension is reduced by one, floored at zero. Ties
/// for smallest reduce pace first, then beat, then stress. When at most one
/// dimension deviates at all, that dimension is the one reduced.
pub fn drop_smallest(t: DeviationTriple) -> DeviationTriple {
    let mut out = t;
    let order = [Dim::Pace, Dim::Beat, Dim::Stress];
    let nonzero: Vec<Dim> = order.into_iter().filter(|&d| get(&t, d) > 0).collect();
    let target = if nonzero.len() <= 1 {
        nonzero.first().copied()
    } else {
        order.into_iter().min_by_key(|&d| get(&t, d))
    };
    if let Some(d) = target {
        let v = get_mut(&mut out, d);
        *v = v.saturating_sub(1);
    }
    out
}

pub fn smooth_deviations(raw: DeviationTriple) -> DeviationTriple {
    drop_smallest(merge_duplicate_counts(raw))
}

pub fn verdict_for(smoothed: &DeviationTriple) -> Verdict {
    if smoothed.total() < 2 {
        Verdict::Green
    } else {
        Verdict::Red
    }
}

fn word_list(words: &[String]) -> String {
    words.join(", ")
}

/// Messages in descending order of smoothed deviation; ties keep the order
/// stress, beat, pace.
pub fn render_feedback(
    waterfall_id: usize,
    raw: DeviationTriple,
    smoothed: DeviationTriple,
    ctx: &FeedbackContext,
) -> FeedbackItem {
    let mut dims = [Dim::Stress, Dim::Beat, Dim::Pace];
    dims.sort_by_key(|&d| std::cmp::Reverse(get(&smoothed, d)));
    let mut messages = Vec::new();
    for d in dims.into_iter().filter(|&d| get(&smoothed, d) > 0) {
        match d {
            Dim::Stress => {
                if !ctx.missed_stress.is_empty() {
                    messages.push(format!(
                        "Do not forget to stress at {}.",
                        word_list(&ctx.missed_stress)
                    ));
                }
                if !ctx.extra_stress.is_empty() {
                    messages.push(format!("Avoid stressing {}.", word_list(&ctx.extra_stress)));
                }
            }
            Dim::Beat => messages.push(STEADY_BEAT.to_string()),
            Dim::Pace => messages.push(if ctx.user_slower { FASTER } else { SLOWER }.to_string()),
        }
    }
    if smoothed.total() == 0 {
        messages.push(NICE.to_string());
    }
    FeedbackItem {
        waterfall_id,
        verdict: verdict_for(&smoothed),
        messages,
        raw: Some(raw),
        smoothed: Some(smoothed),
    }
}

pub fn skipped_feedback(waterfall_id: usize) -> FeedbackItem {
    FeedbackItem {
        waterfall_id,
        verdict: Verdict::Red,
        messages: vec![SKIPPED.to_string()],
        raw: None,
        smoothed: None,
    }
}
