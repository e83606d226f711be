//! Independent reference implementations used to check the library.

#![allow(dead_code)]

/// nPVI straight from its definition.
pub fn npvi(d: &[f64]) -> f64 {
    let m = d.len();
    let mut sum = 0.0;
    for k in 0..m - 1 {
        sum += (d[k] - d[k + 1]).abs() / (d[k] + d[k + 1]);
    }
    100.0 * sum / (m - 1) as f64
}

/// Step-by-step interpreter of the sliding-window procedure, operating on
/// owned segment vectors rather than index ranges.
pub fn sliding_window(intervals: &[f64], tau: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    let mut s: Vec<f64> = Vec::new();
    for &x in intervals {
        s.push(x);
        if s.len() > 1 && npvi(&s) > tau {
            s.pop();
            out.push(s);
            s = vec![x];
        }
    }
    if !s.is_empty() {
        out.push(s);
    }
    out
}

/// Recursive enumeration of every alignment; returns the minimal cost.
pub fn exhaustive_alignment_cost(t: &[&str], u: &[&str], same: &dyn Fn(&str, &str) -> bool) -> usize {
    fn go(t: &[&str], u: &[&str], same: &dyn Fn(&str, &str) -> bool) -> usize {
        match (t.split_first(), u.split_first()) {
            (None, None) => 0,
            (Some(_), None) => t.len(),
            (None, Some(_)) => u.len(),
            (Some((a, tr)), Some((b, ur))) => {
                let sub = usize::from(!same(a, b)) + go(tr, ur, same);
                let del = 1 + go(tr, u, same);
                let ins = 1 + go(t, ur, same);
                sub.min(del).min(ins)
            }
        }
    }
    go(t, u, same)
}

/// Fuzzy equality over the test alphabet: identical words and the one
/// near-spelling pair whose ratio (8/9) clears the threshold.
pub fn alphabet_same(a: &str, b: &str) -> bool {
    a == b || matches!((a, b), ("quick", "quik") | ("quik", "quick"))
}

pub const ALPHABET: [&str; 5] = ["the", "quick", "quik", "fox", "dog"];

/// Reference difflib ratios (autojunk disabled).
pub const RATIOS: &[(&str, &str, f64)] = &[
    ("quick", "quik", 0.888_888_888_888_888_8),
    ("shall", "shell", 0.8),
    ("beaches", "beach", 0.833_333_333_333_333_4),
    ("fight", "night", 0.8),
    ("abxcd", "cdxab", 0.4),
    ("aaab", "abaa", 0.5),
    ("fox", "dog", 0.333_333_333_333_333_3),
    ("the", "quick", 0.0),
    ("surrender", "render", 0.8),
    ("xyz", "abc", 0.0),
    ("banana", "bandana", 0.923_076_923_076_923_1),
    ("abcabc", "cbacba", 0.5),
];

/// Smoothing written out case by case from the rule text.
pub fn smooth(raw: (u32, u32, u32)) -> (u32, u32, u32) {
    let (s, mut b, p) = raw;
    if s > 1 && b > s {
        b = s;
    }
    let nonzero = [s, b, p].iter().filter(|&&v| v > 0).count();
    let mut v = [p, b, s];
    if nonzero == 1 {
        for x in v.iter_mut() {
            if *x > 0 {
                *x -= 1;
            }
        }
    } else if nonzero > 1 {
        let min = *v.iter().min().unwrap();
        let i = v.iter().position(|&x| x == min).unwrap();
        v[i] = v[i].saturating_sub(1);
    }
    (v[2], v[1], v[0])
}
