//! Word-level edit alignment with fuzzy matching.

use serde::{Deserialize, Serialize};

use super::similarity::word_similarity;
use crate::rhythm::WordToken;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    Match,
    Replacement,
    Deletion,
    Insertion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignOp {
    pub kind: OpKind,
    pub target_idx: Option<usize>,
    pub user_idx: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentMap {
    pub ops: Vec<AlignOp>,
}

impl AlignmentMap {
    pub fn cost(&self) -> usize {
        self.ops.iter().filter(|op| op.kind != OpKind::Match).count()
    }

    /// Target/user index pairs joined by a match or replacement.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ops.iter().filter_map(|op| match (op.kind, op.target_idx, op.user_idx) {
            (OpKind::Match | OpKind::Replacement, Some(t), Some(u)) => Some((t, u)),
            _ => None,
        })
    }
}

/// Edit alignment of normalized word strings.
///
/// Substituting two words costs nothing when their similarity reaches
/// `threshold` (a match) and 1 otherwise (a replacement); deletions and
/// insertions cost 1. Among optimal alignments, the traceback prefers a
/// diagonal step, then a deletion, then an insertion.
pub fn align_strings(target: &[String], user: &[String], threshold: f64) -> AlignmentMap {
    let (n, m) = (target.len(), user.len());
    let same: Vec<Vec<bool>> = target
        .iter()
        .map(|t| user.iter().map(|u| word_similarity(t, u) >= threshold).collect())
        .collect();
    let mut dp = vec![vec![0usize; m + 1]; n + 1];
    for (i, row) in dp.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in dp[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=n {
        for j in 1..=m {
            let diag = dp[i - 1][j - 1] + usize::from(!same[i - 1][j - 1]);
            dp[i][j] = diag.min(dp[i - 1][j] + 1).min(dp[i][j - 1] + 1);
        }
    }

    let mut ops = Vec::with_capacity(n.max(m));
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        if i > 0 && j > 0 {
            let matched = same[i - 1][j - 1];
            if dp[i][j] == dp[i - 1][j - 1] + usize::from(!matched) {
                ops.push(AlignOp {
                    kind: if matched { OpKind::Match } else { OpKind::Replacement },
                    target_idx: Some(i - 1),
                    user_idx: Some(j - 1),
                });
                i -= 1;
                j -= 1;
                continue;
            }
        }
        if i > 0 && dp[i][j] == dp[i - 1][j] + 1 {
            ops.push(AlignOp {
                kind: OpKind::Deletion,
                target_idx: Some(i - 1),
                user_idx: None,
            });
            i -= 1;
        } else {
            ops.push(AlignOp {
                kind: OpKind::Insertion,
                target_idx: None,
                user_idx: Some(j - 1),
            });
            j -= 1;
        }
    }
    ops.reverse();
    AlignmentMap { ops }
}

pub fn align_words(target: &[WordToken], user: &[WordToken], threshold: f64) -> AlignmentMap {
    let t: Vec<String> = target.iter().map(WordToken::normalized).collect();
    let u: Vec<String> = user.iter().map(WordToken::normalized).collect();
    align_strings(&t, &u, threshold)
}
