//! Tone-burst stand-ins for speech.
//!
//! Each word is rendered as a windowed sine burst. Stressed words are longer,
//! louder and higher, which is enough for the prominence heuristic and makes
//! deterministic fixtures for examples and tests.

use std::f64::consts::PI;

use crate::ingest::{AlignedRow, Pcm, TARGET_RATE};

const RAMP_S: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct Burst {
    pub text: String,
    pub start_s: f64,
    pub dur_s: f64,
    pub amp: f64,
    pub f0_hz: f64,
    pub stressed: bool,
}

impl Burst {
    pub fn end_s(&self) -> f64 {
        self.start_s + self.dur_s
    }
}

/// Burst shape for stressed and unstressed words.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Voice {
    pub stressed_dur_s: f64,
    pub stressed_amp: f64,
    pub stressed_f0_hz: f64,
    pub plain_dur_s: f64,
    pub plain_amp: f64,
    pub plain_f0_hz: f64,
}

impl Default for Voice {
    fn default() -> Self {
        Self {
            stressed_dur_s: 0.30,
            stressed_amp: 0.5,
            stressed_f0_hz: 190.0,
            plain_dur_s: 0.16,
            plain_amp: 0.18,
            plain_f0_hz: 140.0,
        }
    }
}

/// Words placed so that their midpoints fall on a regular `slot_s` grid
/// starting at `first_mid_s`.
pub fn on_grid(words: &[(&str, bool)], first_mid_s: f64, slot_s: f64, voice: &Voice) -> Vec<Burst> {
    let mids: Vec<f64> = (0..words.len()).map(|k| first_mid_s + k as f64 * slot_s).collect();
    at_midpoints(words, &mids, voice)
}

/// Words centred on the given midpoints.
pub fn at_midpoints(words: &[(&str, bool)], mids: &[f64], voice: &Voice) -> Vec<Burst> {
    words
        .iter()
        .zip(mids)
        .map(|(&(text, stressed), &mid)| {
            let (dur, amp, f0) = if stressed {
                (voice.stressed_dur_s, voice.stressed_amp, voice.stressed_f0_hz)
            } else {
                (voice.plain_dur_s, voice.plain_amp, voice.plain_f0_hz)
            };
            Burst {
                text: text.to_string(),
                start_s: mid - dur / 2.0,
                dur_s: dur,
                amp,
                f0_hz: f0,
                stressed,
            }
        })
        .collect()
}

/// Renders bursts into a 16 kHz recording of `total_s` seconds.
pub fn render(bursts: &[Burst], total_s: f64) -> Pcm {
    let rate = f64::from(TARGET_RATE);
    let mut samples = vec![0.0f32; (total_s * rate).round() as usize];
    for b in bursts {
        let first = (b.start_s * rate).round() as usize;
        let n = (b.dur_s * rate).round() as usize;
        for i in 0..n {
            let Some(slot) = samples.get_mut(first + i) else {
                break;
            };
            let t = i as f64 / rate;
            let ramp = (t / RAMP_S).min((b.dur_s - t) / RAMP_S).clamp(0.0, 1.0);
            let envelope = 0.5 - 0.5 * (PI * ramp).cos();
            *slot += (b.amp * envelope * (2.0 * PI * b.f0_hz * t).sin()) as f32;
        }
    }
    Pcm {
        samples,
        sample_rate_hz: TARGET_RATE,
    }
}

/// Alignment rows of the bursts, with or without stress labels. Times are
/// rounded to milliseconds like a recognizer's output.
pub fn rows(bursts: &[Burst], with_stress: bool) -> Vec<AlignedRow> {
    let ms = |t: f64| (t * 1000.0).round() / 1000.0;
    bursts
        .iter()
        .map(|b| {
            AlignedRow::new(
                b.text.clone(),
                ms(b.start_s),
                ms(b.end_s()),
                with_stress.then_some(b.stressed),
            )
        })
        .collect()
}
