mod common;

use std::f64::consts::PI;

use common::corpus;
use proptest::prelude::*;
use rhythm_coach::rhythm::WordToken;
use rhythm_coach::stress::{
    classify_stress, external_classify, extract_features, heuristic_classify, peak_f0, ProminenceFeatures,
    StressConfig, StressError, StressModel, StressSource, WordAudio,
};

const SR: u32 = 16_000;

fn tone(freq: f64, amp: f64, secs: f64) -> Vec<f32> {
    let n = (secs * f64::from(SR)).round() as usize;
    (0..n)
        .map(|i| (amp * (2.0 * PI * freq * i as f64 / f64::from(SR)).sin()) as f32)
        .collect()
}

fn features() -> impl Strategy<Value = Vec<ProminenceFeatures>> {
    prop::collection::vec(
        (0.05f64..0.8, 0.001f64..0.8, prop::option::of(80.0f64..400.0)).prop_map(|(d, e, f)| ProminenceFeatures {
            duration_s: d,
            rms_energy: e,
            peak_f0_hz: f,
        }),
        0..12,
    )
}

proptest! {
    #[test]
    fn length_and_determinism(f in features()) {
        let cfg = StressConfig::default();
        let a = classify_stress(&f, &cfg);
        prop_assert_eq!(a.len(), f.len());
        prop_assert_eq!(a, classify_stress(&f, &cfg));
    }

    #[test]
    fn permutation_permutes_decisions(f in features(), seed in any::<u64>()) {
        let cfg = StressConfig::default();
        let mut order: Vec<usize> = (0..f.len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted: Vec<ProminenceFeatures> = order.iter().map(|&i| f[i]).collect();
        let base = classify_stress(&f, &cfg);
        let moved = classify_stress(&permuted, &cfg);
        for (k, &i) in order.iter().enumerate() {
            prop_assert_eq!(moved[k].stressed, base[i].stressed);
            prop_assert_eq!(moved[k].score.to_bits(), base[i].score.to_bits());
        }
    }

    #[test]
    fn uniform_gain_keeps_decisions(f in features(), gain in 0.05f64..20.0) {
        let cfg = StressConfig::default();
        prop_assume!(f.iter().all(|x| x.rms_energy * gain.min(1.0) > 0.002));
        let scaled: Vec<ProminenceFeatures> = f
            .iter()
            .map(|x| ProminenceFeatures { rms_energy: x.rms_energy * gain, ..*x })
            .collect();
        let a = classify_stress(&f, &cfg);
        let b = classify_stress(&scaled, &cfg);
        if f.len() > 1 {
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x.score - y.score).abs() < 1e-9);
                if x.score.abs() > 1e-9 {
                    prop_assert_eq!(x.stressed, y.stressed);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pitch_of_pure_tones(freq in 80.0f64..400.0, amp in 0.05f64..0.9, secs in 0.12f64..0.5) {
        let f0 = peak_f0(&tone(freq, amp, secs), SR).expect("voiced");
        prop_assert!((f0 - freq).abs() / freq <= 0.03, "{freq} Hz estimated as {f0}");
    }
}

#[test]
fn audio_level_invariances() {
    let clips = corpus::prominent(7, 10);
    let cfg = StressConfig::default();
    for c in &clips {
        let base = heuristic_classify(&c.words, &cfg).unwrap();
        let louder: Vec<WordAudio> = c
            .words
            .iter()
            .map(|w| WordAudio {
                samples: w.samples.iter().map(|s| s * 1.8).collect(),
                ..w.clone()
            })
            .collect();
        let reversed: Vec<WordAudio> = c.words.iter().rev().cloned().collect();
        let gained = heuristic_classify(&louder, &cfg).unwrap();
        let back = heuristic_classify(&reversed, &cfg).unwrap();
        for (i, d) in base.iter().enumerate() {
            assert_eq!(d.stressed, gained[i].stressed);
            assert_eq!(d.stressed, back[base.len() - 1 - i].stressed);
        }
    }
}

#[test]
fn silence_features() {
    let w = WordAudio {
        samples: vec![0.0; 3200],
        sample_rate_hz: SR,
        word: WordToken::new("x", 0.0, 0.2, false),
    };
    let f = extract_features(&w).unwrap();
    assert_eq!(f.rms_energy, 0.0);
    assert_eq!(f.peak_f0_hz, None);
    let empty = WordAudio { samples: Vec::new(), ..w };
    assert!(matches!(extract_features(&empty), Err(StressError::EmptyAudio(_))));
}

struct Fixed(Vec<f64>);

impl StressModel for Fixed {
    fn stress_probability(&self, word: &WordAudio) -> Result<f64, StressError> {
        let i: usize = word.word.text[1..].parse().unwrap();
        Ok(self.0[i])
    }
}

struct Broken;

impl StressModel for Broken {
    fn stress_probability(&self, _: &WordAudio) -> Result<f64, StressError> {
        Err(StressError::Adapter("offline".into()))
    }
}

#[test]
fn external_model_seam() {
    let clip = &corpus::prominent(3, 1)[0];
    let cfg = StressConfig::default();
    let probs = vec![0.1, 0.5, 0.49, 0.9, 0.0, 1.0];
    let d = external_classify(&Fixed(probs), &clip.words, &cfg).unwrap();
    assert_eq!(
        d.iter().map(|x| x.stressed).collect::<Vec<_>>(),
        vec![false, true, false, true, false, true]
    );
    assert!(d.iter().all(|x| x.source == StressSource::External));

    let fallback = external_classify(&Broken, &clip.words, &cfg).unwrap();
    assert_eq!(fallback, heuristic_classify(&clip.words, &cfg).unwrap());
    assert!(fallback.iter().all(|x| x.source == StressSource::Heuristic));
}
