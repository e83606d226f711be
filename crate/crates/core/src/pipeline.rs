//! End-to-end analysis used by both the CLI and the HTTP service.

use std::time::Duration;

use thiserror::Error;

use crate::compare::{compare_tracks, CompareConfig, ComparisonReport};
use crate::config::Config;
use crate::ingest::alignment::{fully_labelled, parse_alignment, AlignedRow};
use crate::ingest::{decode_audio, segment_clips, slice_words, transcribe, AsrModel, Clip, ClipConfig, HttpAsrAdapter, IngestError, Pcm};
use crate::rhythm::{RhythmError, RhythmTrack, SegmentationConfig, WordToken};
use crate::stress::{external_classify, heuristic_classify, HttpStressAdapter, StressConfig, StressError, StressModel};

const ADAPTER_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Stress(#[from] StressError),
    #[error(transparent)]
    Rhythm(#[from] RhythmError),
    #[error("no words were recognized in the recording")]
    EmptyTranscription,
}

/// Configured pipeline: adapters plus every tunable.
#[derive(Default)]
pub struct Analyzer {
    pub segmentation: SegmentationConfig,
    pub stress: StressConfig,
    pub compare: CompareConfig,
    pub clips: ClipConfig,
    asr: Option<Box<dyn AsrModel + Send>>,
    stress_model: Option<Box<dyn StressModel + Send>>,
}

impl Analyzer {
    pub fn from_config(cfg: &Config) -> Result<Self, RhythmError> {
        let mut analyzer = Self {
            segmentation: SegmentationConfig::new(cfg.tau)?,
            compare: CompareConfig {
                fuzzy_threshold: cfg.fuzzy,
            },
            ..Self::default()
        };
        if let Some(url) = &cfg.asr_url {
            analyzer.asr = Some(Box::new(HttpAsrAdapter::new(url.clone(), ADAPTER_TIMEOUT)));
        }
        if let Some(url) = &cfg.stress_adapter_url {
            analyzer.stress_model = Some(Box::new(HttpStressAdapter::new(url.clone(), ADAPTER_TIMEOUT)));
        }
        Ok(analyzer)
    }

    pub fn with_asr(mut self, model: impl AsrModel + Send + 'static) -> Self {
        self.asr = Some(Box::new(model));
        self
    }

    pub fn with_stress_model(mut self, model: impl StressModel + Send + 'static) -> Self {
        self.stress_model = Some(Box::new(model));
        self
    }

    /// Word rows from an alignment file when given, the recognizer otherwise.
    pub fn word_rows(&self, pcm: &Pcm, alignment: Option<&str>) -> Result<Vec<AlignedRow>, PipelineError> {
        let rows = match alignment {
            Some(text) => parse_alignment(text)?,
            None => transcribe(pcm, self.asr.as_deref().map(|m| m as &dyn AsrModel))?,
        };
        if rows.is_empty() {
            return Err(PipelineError::EmptyTranscription);
        }
        Ok(rows)
    }

    /// Stress-labelled words of one clip. Labels already present on every
    /// row are trusted; otherwise every word is classified.
    pub fn label_stress(&self, pcm: &Pcm, rows: &[AlignedRow]) -> Result<Vec<WordToken>, PipelineError> {
        let mut words: Vec<WordToken> = rows.iter().map(AlignedRow::to_token).collect();
        if fully_labelled(rows) {
            return Ok(words);
        }
        let slices = slice_words(pcm, &words)?;
        let decisions = match &self.stress_model {
            Some(model) => external_classify(model.as_ref(), &slices, &self.stress)?,
            None => heuristic_classify(&slices, &self.stress)?,
        };
        for (w, d) in words.iter_mut().zip(decisions) {
            w.stressed = d.stressed;
        }
        Ok(words)
    }

    pub fn analyze_rows(&self, pcm: &Pcm, rows: &[AlignedRow]) -> Result<RhythmTrack, PipelineError> {
        let words = self.label_stress(pcm, rows)?;
        Ok(RhythmTrack::analyze(words, &self.segmentation)?)
    }

    /// Treats a whole recording as a single clip.
    pub fn analyze_recording(&self, wav: &[u8], alignment: Option<&str>) -> Result<(Pcm, RhythmTrack), PipelineError> {
        let pcm = decode_audio(wav)?;
        let rows = self.word_rows(&pcm, alignment)?;
        let track = self.analyze_rows(&pcm, &rows)?;
        Ok((pcm, track))
    }

    /// Cuts a recording into dubbing clips and analyzes each one; stress is
    /// normalized per clip.
    pub fn prepare_clips(&self, wav: &[u8], alignment: Option<&str>) -> Result<(Pcm, Vec<Clip>), PipelineError> {
        let pcm = decode_audio(wav)?;
        let rows = self.word_rows(&pcm, alignment)?;
        let bounds = segment_clips(&rows, pcm.duration_s(), &self.clips);
        let clips = bounds
            .into_iter()
            .enumerate()
            .map(|(clip_index, b)| {
                Ok(Clip {
                    clip_index,
                    start_s: b.start_s,
                    end_s: b.end_s,
                    target: self.analyze_rows(&pcm, &rows[b.words.clone()])?,
                })
            })
            .collect::<Result<Vec<_>, PipelineError>>()?;
        Ok((pcm, clips))
    }

    pub fn compare(&self, target: &RhythmTrack, user: &RhythmTrack) -> ComparisonReport {
        compare_tracks(target, user, &self.compare)
    }
}
