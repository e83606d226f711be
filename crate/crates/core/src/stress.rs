//! Word-level stress detection.
//!
//! A word counts as stressed when any of its syllables carries prominence.
//! The built-in detector measures duration, energy and peak pitch of every
//! word slice, z-normalizes them across the clip and sums the scores. An
//! external model can be plugged in through [`StressModel`]; if it fails for
//! any word, the whole clip falls back to the heuristic.

use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::audio::to_i16;
use crate::rhythm::WordToken;

const MIN_SAMPLE_RATE: u32 = 8000;
const PITCH_MIN_HZ: f64 = 50.0;
const PITCH_MAX_HZ: f64 = 500.0;
const PITCH_WINDOW_S: f64 = 0.040;
const PITCH_HOP_S: f64 = 0.010;
const VOICING_THRESHOLD: f64 = 0.5;
/// Pitch analysis runs at or just above this rate.
const PITCH_ANALYSIS_RATE: u32 = 8000;

#[derive(Debug, Error)]
pub enum StressError {
    #[error("word {0:?}: empty audio")]
    EmptyAudio(String),
    #[error("sample rate {0} Hz is below the {MIN_SAMPLE_RATE} Hz minimum")]
    SampleRate(u32),
    #[error("stress adapter: {0}")]
    Adapter(String),
}

/// PCM slice of one word.
#[derive(Debug, Clone, PartialEq)]
pub struct WordAudio {
    pub samples: Vec<f32>,
    pub sample_rate_hz: u32,
    pub word: WordToken,
}

impl WordAudio {
    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / f64::from(self.sample_rate_hz)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProminenceFeatures {
    pub duration_s: f64,
    pub rms_energy: f64,
    pub peak_f0_hz: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StressSource {
    Heuristic,
    External,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressDecision {
    pub stressed: bool,
    pub score: f64,
    pub source: StressSource,
}

/// Weights and gates of the prominence heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressConfig {
    pub weight_duration: f64,
    pub weight_energy: f64,
    pub weight_pitch: f64,
    /// A stressed word needs its duration or energy z-score above this.
    pub gate: f64,
    /// Energy floor in dBFS applied before taking the log.
    pub energy_floor_db: f64,
    /// Smallest spread used when z-normalizing log-duration (natural log units).
    pub min_spread_log_duration: f64,
    /// Smallest spread used when z-normalizing energy, in dB.
    pub min_spread_db: f64,
    /// Smallest spread used when z-normalizing pitch, in Hz.
    pub min_spread_f0_hz: f64,
    pub single_word_min_duration_s: f64,
    pub single_word_min_db: f64,
}

impl Default for StressConfig {
    fn default() -> Self {
        Self {
            weight_duration: 1.0,
            weight_energy: 1.0,
            weight_pitch: 0.5,
            gate: 0.25,
            energy_floor_db: -60.0,
            min_spread_log_duration: 0.15,
            min_spread_db: 3.0,
            min_spread_f0_hz: 10.0,
            single_word_min_duration_s: 0.25,
            single_word_min_db: -30.0,
        }
    }
}

pub fn extract_features(wa: &WordAudio) -> Result<ProminenceFeatures, StressError> {
    if wa.sample_rate_hz < MIN_SAMPLE_RATE {
        return Err(StressError::SampleRate(wa.sample_rate_hz));
    }
    if wa.samples.is_empty() {
        return Err(StressError::EmptyAudio(wa.word.text.clone()));
    }
    let energy = wa
        .samples
        .iter()
        .map(|&s| f64::from(s) * f64::from(s))
        .sum::<f64>()
        / wa.samples.len() as f64;
    Ok(ProminenceFeatures {
        duration_s: wa.duration_s(),
        rms_energy: energy.sqrt(),
        peak_f0_hz: peak_f0(&wa.samples, wa.sample_rate_hz),
    })
}

/// Highest voiced F0 over 40 ms autocorrelation windows with a 10 ms hop.
///
/// A window is voiced when its normalized autocorrelation peak reaches 0.5.
pub fn peak_f0(samples: &[f32], sample_rate_hz: u32) -> Option<f64> {
    let factor = (sample_rate_hz / PITCH_ANALYSIS_RATE).max(1) as usize;
    let signal: Vec<f64> = samples
        .chunks(factor)
        .map(|c| c.iter().map(|&s| f64::from(s)).sum::<f64>() / c.len() as f64)
        .collect();
    let rate = f64::from(sample_rate_hz) / factor as f64;

    let window = ((PITCH_WINDOW_S * rate).round() as usize).max(1);
    let hop = ((PITCH_HOP_S * rate).round() as usize).max(1);
    let window = window.min(signal.len());
    let mut best: Option<f64> = None;
    let mut start = 0;
    while start + window <= signal.len() {
        if let Some(f0) = window_f0(&signal[start..start + window], rate) {
            best = Some(best.map_or(f0, |b: f64| b.max(f0)));
        }
        start += hop;
    }
    best
}

fn window_f0(frame: &[f64], rate: f64) -> Option<f64> {
    let n = frame.len();
    let energy: f64 = frame.iter().map(|x| x * x).sum();
    if energy / n as f64 <= 1e-10 {
        return None;
    }
    let min_lag = ((rate / PITCH_MAX_HZ).floor() as usize).max(2);
    let max_lag = ((rate / PITCH_MIN_HZ).ceil() as usize).min(n / 2);
    if max_lag < min_lag + 2 {
        return None;
    }
    // r[k] holds the normalized autocorrelation at lag min_lag - 1 + k.
    let lags = (min_lag - 1)..=(max_lag + 1).min(n - 1);
    let r: Vec<f64> = lags.clone().map(|lag| normalized_autocorr(frame, lag)).collect();
    let peaks: Vec<usize> = (1..r.len() - 1)
        .filter(|&k| r[k] > 0.0 && r[k] >= r[k - 1] && r[k] >= r[k + 1])
        .collect();
    let top = peaks.iter().map(|&k| r[k]).fold(f64::NEG_INFINITY, f64::max);
    if top < VOICING_THRESHOLD {
        return None;
    }
    // the first peak close to the best one is the period, later ones are multiples
    let k = *peaks.iter().find(|&&k| r[k] >= 0.9 * top)?;
    let denom = r[k - 1] - 2.0 * r[k] + r[k + 1];
    let shift = if denom.abs() > 1e-12 {
        (0.5 * (r[k - 1] - r[k + 1]) / denom).clamp(-0.5, 0.5)
    } else {
        0.0
    };
    let lag = (min_lag - 1 + k) as f64 + shift;
    let f0 = rate / lag;
    (PITCH_MIN_HZ..=PITCH_MAX_HZ).contains(&f0).then_some(f0)
}

fn normalized_autocorr(frame: &[f64], lag: usize) -> f64 {
    let a = &frame[..frame.len() - lag];
    let b = &frame[lag..];
    let (mut num, mut ea, mut eb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        num += x * y;
        ea += x * x;
        eb += y * y;
    }
    let den = (ea * eb).sqrt();
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

fn db(rms: f64, floor_db: f64) -> f64 {
    let floor = 10f64.powf(floor_db / 20.0);
    20.0 * rms.max(floor).log10()
}

/// Order-independent mean: values are summed in sorted order.
fn mean(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.iter().sum::<f64>() / sorted.len() as f64
}

fn z_scores(values: &[f64], min_spread: f64) -> Vec<f64> {
    let mu = mean(values);
    let deviations: Vec<f64> = values.iter().map(|v| (v - mu) * (v - mu)).collect();
    let sd = mean(&deviations).sqrt();
    if sd <= 1e-9 * mu.abs().max(1.0) {
        return vec![0.0; values.len()];
    }
    let spread = sd.max(min_spread);
    values.iter().map(|v| (v - mu) / spread).collect()
}

/// Heuristic stress decisions for the words of one clip.
///
/// Scores are relative to the clip: each feature is z-normalized over all of
/// its words, so the input must be the whole clip.
pub fn classify_stress(features: &[ProminenceFeatures], cfg: &StressConfig) -> Vec<StressDecision> {
    match features.len() {
        0 => Vec::new(),
        1 => {
            let f = &features[0];
            let stressed = f.duration_s >= cfg.single_word_min_duration_s
                && db(f.rms_energy, cfg.energy_floor_db) > cfg.single_word_min_db;
            vec![StressDecision {
                stressed,
                score: 0.0,
                source: StressSource::Heuristic,
            }]
        }
        _ => {
            let log_dur: Vec<f64> = features.iter().map(|f| f.duration_s.ln()).collect();
            let energy: Vec<f64> = features
                .iter()
                .map(|f| db(f.rms_energy, cfg.energy_floor_db))
                .collect();
            let voiced: Vec<f64> = features.iter().filter_map(|f| f.peak_f0_hz).collect();
            let f0_fill = if voiced.is_empty() { 0.0 } else { mean(&voiced) };
            let f0: Vec<f64> = features
                .iter()
                .map(|f| f.peak_f0_hz.unwrap_or(f0_fill))
                .collect();

            let z_dur = z_scores(&log_dur, cfg.min_spread_log_duration);
            let z_rms = z_scores(&energy, cfg.min_spread_db);
            let z_f0 = z_scores(&f0, cfg.min_spread_f0_hz);
            (0..features.len())
                .map(|i| {
                    let score = cfg.weight_duration * z_dur[i]
                        + cfg.weight_energy * z_rms[i]
                        + cfg.weight_pitch * z_f0[i];
                    StressDecision {
                        stressed: score > 0.0 && (z_dur[i] > cfg.gate || z_rms[i] > cfg.gate),
                        score,
                        source: StressSource::Heuristic,
                    }
                })
                .collect()
        }
    }
}

/// Feature extraction plus heuristic classification for one clip.
pub fn heuristic_classify(
    words: &[WordAudio],
    cfg: &StressConfig,
) -> Result<Vec<StressDecision>, StressError> {
    let features = words
        .iter()
        .map(extract_features)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(classify_stress(&features, cfg))
}

/// Something that scores one word slice with a stress probability in [0, 1].
pub trait StressModel: Sync {
    fn stress_probability(&self, word: &WordAudio) -> Result<f64, StressError>;
}

/// Stress model reached over HTTP.
///
/// Each request carries the word as 16-bit little-endian mono PCM with an
/// `X-Sample-Rate` header; the response body is one decimal probability.
#[derive(Debug, Clone)]
pub struct HttpStressAdapter {
    url: String,
    agent: ureq::Agent,
}

impl HttpStressAdapter {
    pub fn new(url: impl Into<String>, timeout: Duration) -> Self {
        Self {
            url: url.into(),
            agent: ureq::AgentBuilder::new().timeout(timeout).build(),
        }
    }
}

pub fn encode_pcm16(samples: &[f32]) -> Vec<u8> {
    samples.iter().flat_map(|&s| to_i16(s).to_le_bytes()).collect()
}

pub fn parse_probability(body: &str) -> Result<f64, StressError> {
    let p: f64 = body
        .trim()
        .parse()
        .map_err(|_| StressError::Adapter(format!("not a probability: {:?}", body.trim())))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(StressError::Adapter(format!("probability {p} outside [0, 1]")))
    }
}

impl StressModel for HttpStressAdapter {
    fn stress_probability(&self, word: &WordAudio) -> Result<f64, StressError> {
        let response = self
            .agent
            .post(&self.url)
            .set("Content-Type", "application/octet-stream")
            .set("X-Sample-Rate", &word.sample_rate_hz.to_string())
            .send_bytes(&encode_pcm16(&word.samples))
            .map_err(|e| StressError::Adapter(e.to_string()))?;
        let body = response
            .into_string()
            .map_err(|e| StressError::Adapter(e.to_string()))?;
        parse_probability(&body)
    }
}

/// Asks `model` about every word concurrently. A probability of 0.5 or more
/// counts as stressed. If any request fails the clip is classified by the
/// heuristic instead.
pub fn external_classify(
    model: &dyn StressModel,
    words: &[WordAudio],
    cfg: &StressConfig,
) -> Result<Vec<StressDecision>, StressError> {
    let answers: Vec<Result<f64, StressError>> = thread::scope(|scope| {
        let handles: Vec<_> = words
            .iter()
            .map(|w| scope.spawn(move || model.stress_probability(w)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(StressError::Adapter("adapter call panicked".into())))
            })
            .collect()
    });

    let mut decisions = Vec::with_capacity(words.len());
    for (word, answer) in words.iter().zip(answers) {
        match answer {
            Ok(p) => decisions.push(StressDecision {
                stressed: p >= 0.5,
                score: p,
                source: StressSource::External,
            }),
            Err(e) => {
                log::warn!(
                    "stress adapter failed on {:?} ({e}); using heuristic for the whole clip",
                    word.word.text
                );
                return heuristic_classify(words, cfg);
            }
        }
    }
    Ok(decisions)
}
