//! Scripted tone-burst recordings shared by the tests and `make_fixtures`.
//!
//! A script is a list of phrases. Upper-case words are stressed and sit on
//! the phrase's beat grid; lower-case words are fitted between beats.

#![allow(dead_code)]

use rhythm_coach::ingest::{encode_wav, write_alignment, AlignedRow, Pcm};
use rhythm_coach::synth::{self, Burst, Voice};

pub const VOICE: Voice = Voice {
    stressed_dur_s: 0.26,
    stressed_amp: 0.5,
    stressed_f0_hz: 190.0,
    plain_dur_s: 0.12,
    plain_amp: 0.18,
    plain_f0_hz: 140.0,
};

const EDGE_GAP_S: f64 = 0.04;
const LEAD_IN_S: f64 = 0.3;
const TAIL_S: f64 = 0.4;

pub struct Phrase {
    pub script: &'static str,
    pub beat_s: f64,
    /// Silence before the phrase's first word.
    pub gap_before_s: f64,
}

pub const TARGET: &[Phrase] = &[
    Phrase {
        script: "we SHALL FIGHT on the BEACHES",
        beat_s: 0.6,
        gap_before_s: 0.0,
    },
    Phrase {
        script: "in the FIELDS and the STREETS",
        beat_s: 0.6,
        gap_before_s: 0.12,
    },
    Phrase {
        script: "we SHALL NEVER SURRENDER",
        beat_s: 0.36,
        gap_before_s: 0.12,
    },
];

/// The target with SHALL and STREETS spoken without stress.
pub const USER_DESTRESSED: &[Phrase] = &[
    Phrase {
        script: "we shall FIGHT on the BEACHES",
        beat_s: 0.6,
        gap_before_s: 0.0,
    },
    Phrase {
        script: "in the FIELDS and the streets",
        beat_s: 0.6,
        gap_before_s: 0.12,
    },
    Phrase {
        script: "we SHALL NEVER SURRENDER",
        beat_s: 0.36,
        gap_before_s: 0.12,
    },
];

const SENTENCE_GAP_S: f64 = 0.6;

/// Eight sentences separated by clear pauses.
pub const SPEECH8: &[Phrase] = &[
    Phrase { script: "the FIRST STEP is the HARDEST one", beat_s: 0.55, gap_before_s: 0.0 },
    Phrase { script: "you WILL FIND your OWN WAY", beat_s: 0.5, gap_before_s: SENTENCE_GAP_S },
    Phrase { script: "KEEP your EYES on the ROAD AHEAD", beat_s: 0.6, gap_before_s: SENTENCE_GAP_S },
    Phrase { script: "and DO not FEAR the DARK", beat_s: 0.55, gap_before_s: SENTENCE_GAP_S },
    Phrase { script: "WORK for the THINGS you LOVE", beat_s: 0.6, gap_before_s: SENTENCE_GAP_S },
    Phrase { script: "the WORLD will MEET you HALF WAY", beat_s: 0.5, gap_before_s: SENTENCE_GAP_S },
    Phrase { script: "so TAKE the CHANCE when it COMES", beat_s: 0.6, gap_before_s: SENTENCE_GAP_S },
    Phrase { script: "and NEVER STOP LEARNING from it", beat_s: 0.5, gap_before_s: SENTENCE_GAP_S },
];

fn words(script: &str) -> Vec<(String, bool)> {
    script
        .split_whitespace()
        .map(|w| {
            let stressed = w.chars().all(|c| c.is_ascii_uppercase());
            (w.to_lowercase(), stressed)
        })
        .collect()
}

fn burst(text: &str, start_s: f64, stressed: bool) -> Burst {
    let v = VOICE;
    let (dur_s, amp, f0_hz) = if stressed {
        (v.stressed_dur_s, v.stressed_amp, v.stressed_f0_hz)
    } else {
        (v.plain_dur_s, v.plain_amp, v.plain_f0_hz)
    };
    Burst {
        text: text.to_string(),
        start_s,
        dur_s,
        amp,
        f0_hz,
        stressed,
    }
}

/// Lays out the phrases one after another.
pub fn bursts(phrases: &[Phrase]) -> Vec<Burst> {
    let mut out: Vec<Burst> = Vec::new();
    let mut cursor = LEAD_IN_S;
    for phrase in phrases {
        cursor += phrase.gap_before_s;
        let ws = words(phrase.script);
        let first_stress = ws.iter().position(|w| w.1).expect("phrase has a stressed word");
        for (text, _) in &ws[..first_stress] {
            out.push(burst(text, cursor, false));
            cursor += VOICE.plain_dur_s + EDGE_GAP_S;
        }
        let mut beat_mid = cursor + VOICE.stressed_dur_s / 2.0;
        let mut k = first_stress;
        loop {
            out.push(burst(&ws[k].0, beat_mid - VOICE.stressed_dur_s / 2.0, true));
            let next = ws[k + 1..].iter().position(|w| w.1).map(|p| p + k + 1);
            let Some(next) = next else {
                cursor = beat_mid + VOICE.stressed_dur_s / 2.0 + EDGE_GAP_S;
                for (text, _) in &ws[k + 1..] {
                    out.push(burst(text, cursor, false));
                    cursor += VOICE.plain_dur_s + EDGE_GAP_S;
                }
                cursor -= EDGE_GAP_S;
                break;
            };
            let between = next - k - 1;
            let free = phrase.beat_s - VOICE.stressed_dur_s - between as f64 * VOICE.plain_dur_s;
            let slack = free / (between + 1) as f64;
            assert!(slack >= 0.01, "beat too short for {:?}", phrase.script);
            let mut t = beat_mid + VOICE.stressed_dur_s / 2.0 + slack;
            for (text, _) in &ws[k + 1..next] {
                out.push(burst(text, t, false));
                t += VOICE.plain_dur_s + slack;
            }
            beat_mid += phrase.beat_s;
            k = next;
        }
    }
    out
}

pub fn render(phrases: &[Phrase]) -> (Pcm, Vec<Burst>) {
    let b = bursts(phrases);
    let end = b.iter().map(Burst::end_s).fold(0.0, f64::max);
    (synth::render(&b, end + TAIL_S), b)
}

/// WAV bytes and an unlabelled alignment file.
pub fn files(phrases: &[Phrase]) -> (Vec<u8>, String) {
    let (pcm, b) = render(phrases);
    (encode_wav(&pcm), write_alignment(&synth::rows(&b, false)))
}

pub fn labelled_rows(phrases: &[Phrase]) -> Vec<AlignedRow> {
    synth::rows(&bursts(phrases), true)
}

/// Every stored fixture: file stem and script.
pub const ALL: &[(&str, &[Phrase])] = &[
    ("target", TARGET),
    ("user_destressed", USER_DESTRESSED),
    ("speech8", SPEECH8),
];
