//! Word-level transcription through an external recognizer.

use std::time::Duration;

use super::alignment::{parse_rows, AlignedRow};
use super::audio::{encode_wav, Pcm};
use super::IngestError;

/// Recordings quieter than this RMS (-60 dBFS) are treated as silence.
pub const SILENCE_RMS: f64 = 0.001;

/// A recognizer that returns one `text<TAB>start<TAB>end` line per word.
pub trait AsrModel: Sync {
    fn transcribe_wav(&self, wav: &[u8]) -> Result<String, IngestError>;
}

#[derive(Debug, Clone)]
pub struct HttpAsrAdapter {
    url: String,
    agent: ureq::Agent,
}

impl HttpAsrAdapter {
    pub fn new(url: impl Into<String>, timeout: Duration) -> Self {
        Self {
            url: url.into(),
            agent: ureq::AgentBuilder::new().timeout(timeout).build(),
        }
    }
}

impl AsrModel for HttpAsrAdapter {
    fn transcribe_wav(&self, wav: &[u8]) -> Result<String, IngestError> {
        let response = self
            .agent
            .post(&self.url)
            .set("Content-Type", "audio/wav")
            .send_bytes(wav)
            .map_err(|e| IngestError::AsrUnavailable(e.to_string()))?;
        response
            .into_string()
            .map_err(|e| IngestError::AsrUnavailable(e.to_string()))
    }
}

/// Sorts rows by start time and resolves overlaps by cutting both words at
/// the midpoint of the overlapping region.
pub fn clip_overlaps(mut rows: Vec<AlignedRow>) -> Vec<AlignedRow> {
    rows.sort_by(|a, b| a.start_s.total_cmp(&b.start_s));
    for k in 1..rows.len() {
        let (prev_end, next_start) = (rows[k - 1].end_s, rows[k].start_s);
        if prev_end > next_start {
            let cut = (prev_end + next_start) / 2.0;
            rows[k - 1].end_s = cut;
            rows[k].start_s = cut;
        }
    }
    rows.retain(|r| r.end_s > r.start_s);
    rows
}

/// Timestamped words of a recording. Silent audio yields no words without
/// consulting the recognizer.
pub fn transcribe(pcm: &Pcm, model: Option<&dyn AsrModel>) -> Result<Vec<AlignedRow>, IngestError> {
    if pcm.rms() < SILENCE_RMS {
        return Ok(Vec::new());
    }
    let model = model.ok_or_else(|| {
        IngestError::AsrUnavailable("no speech recognizer is configured".to_string())
    })?;
    let body = model.transcribe_wav(&encode_wav(pcm))?;
    let rows = parse_rows(&body).map_err(|e| IngestError::AsrUnavailable(format!("bad response: {e}")))?;
    Ok(clip_overlaps(
        rows.into_iter()
            .map(|r| AlignedRow { stressed: None, ..r })
            .collect(),
    ))
}
