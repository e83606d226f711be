//! Synthetic stress corpus: clips of six tone-burst words.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rhythm_coach::ingest::slice_words;
use rhythm_coach::rhythm::WordToken;
use rhythm_coach::stress::WordAudio;
use rhythm_coach::synth::{self, Burst};

pub const WORDS_PER_CLIP: usize = 6;

pub struct CorpusClip {
    pub words: Vec<WordAudio>,
    /// Index of the prominent word, if any.
    pub designated: Option<usize>,
}

/// One clip. Every word gets a slightly jittered base shape; the designated
/// word is then given twice the amplitude and 1.5 times the duration.
pub fn clip(rng: &mut StdRng, designated: Option<usize>) -> CorpusClip {
    let base_dur = rng.gen_range(0.16..0.24);
    let base_amp = rng.gen_range(0.1..0.3);
    let base_f0 = rng.gen_range(110.0..220.0);
    let mut t = 0.2;
    let mut bursts = Vec::new();
    for k in 0..WORDS_PER_CLIP {
        let jitter = |rng: &mut StdRng| 1.0 + rng.gen_range(-0.03..0.03);
        let mut dur = base_dur * jitter(rng);
        let mut amp = base_amp * jitter(rng);
        if designated == Some(k) {
            dur *= 1.5;
            amp *= 2.0;
        }
        bursts.push(Burst {
            text: format!("w{k}"),
            start_s: t,
            dur_s: dur,
            amp,
            f0_hz: base_f0 * jitter(rng),
            stressed: designated == Some(k),
        });
        t += dur + rng.gen_range(0.05..0.12);
    }
    let pcm = synth::render(&bursts, t + 0.2);
    let tokens: Vec<WordToken> = bursts
        .iter()
        .map(|b| WordToken::new(b.text.clone(), b.start_s, b.end_s(), false))
        .collect();
    CorpusClip {
        words: slice_words(&pcm, &tokens).expect("bursts lie inside the clip"),
        designated,
    }
}

/// `n` clips with a designated word at a random position.
pub fn prominent(seed: u64, n: usize) -> Vec<CorpusClip> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let k = rng.gen_range(0..WORDS_PER_CLIP);
            clip(&mut rng, Some(k))
        })
        .collect()
}

/// `n` clips where no word is made prominent.
pub fn uniform(seed: u64, n: usize) -> Vec<CorpusClip> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n).map(|_| clip(&mut rng, None)).collect()
}
