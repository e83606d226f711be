//! WAV decoding to 16 kHz mono and back.

use std::io::Cursor;

use super::IngestError;

/// Working sample rate of the whole pipeline.
pub const TARGET_RATE: u32 = 16_000;

/// Mono PCM, samples in [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Pcm {
    pub samples: Vec<f32>,
    pub sample_rate_hz: u32,
}

impl Pcm {
    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / f64::from(self.sample_rate_hz)
    }

    pub fn rms(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        let sum: f64 = self.samples.iter().map(|&s| f64::from(s) * f64::from(s)).sum();
        (sum / self.samples.len() as f64).sqrt()
    }
}

pub fn to_i16(sample: f32) -> i16 {
    (f64::from(sample) * 32768.0).round().clamp(-32768.0, 32767.0) as i16
}

pub fn from_i16(sample: i16) -> f32 {
    f32::from(sample) / 32768.0
}

/// Best-effort name of a container from its leading bytes.
pub fn sniff_container(bytes: &[u8]) -> &'static str {
    match bytes {
        [b'R', b'I', b'F', b'F', _, _, _, _, b'W', b'A', b'V', b'E', ..] => "wav",
        [b'I', b'D', b'3', ..] => "mp3",
        [0xFF, b, ..] if b & 0xE0 == 0xE0 => "mp3",
        [b'O', b'g', b'g', b'S', ..] => "ogg",
        [b'f', b'L', b'a', b'C', ..] => "flac",
        [_, _, _, _, b'f', b't', b'y', b'p', ..] => "mp4",
        [0x1A, 0x45, 0xDF, 0xA3, ..] => "webm",
        _ => "unknown",
    }
}

/// Decodes a RIFF/WAVE file with 16-bit PCM payload into 16 kHz mono.
///
/// Channels are averaged; other sample rates are linearly resampled.
pub fn decode_audio(bytes: &[u8]) -> Result<Pcm, IngestError> {
    let container = sniff_container(bytes);
    if container != "wav" {
        return Err(IngestError::UnsupportedContainer(container.to_string()));
    }
    let mut reader = hound::WavReader::new(Cursor::new(bytes))
        .map_err(|e| IngestError::MalformedAudio(e.to_string()))?;
    let spec = reader.spec();
    if spec.sample_format != hound::SampleFormat::Int || spec.bits_per_sample != 16 {
        return Err(IngestError::UnsupportedCodec(format!(
            "{:?} {}-bit",
            spec.sample_format, spec.bits_per_sample
        )));
    }
    let channels = usize::from(spec.channels.max(1));
    let interleaved = reader
        .samples::<i16>()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| IngestError::MalformedAudio(e.to_string()))?;
    let mono: Vec<f32> = if channels == 1 {
        interleaved.into_iter().map(from_i16).collect()
    } else {
        interleaved
            .chunks_exact(channels)
            .map(|frame| {
                frame.iter().map(|&s| f64::from(from_i16(s))).sum::<f64>() as f32 / channels as f32
            })
            .collect()
    };
    Ok(Pcm {
        samples: resample_linear(&mono, spec.sample_rate, TARGET_RATE),
        sample_rate_hz: TARGET_RATE,
    })
}

pub fn resample_linear(samples: &[f32], from_hz: u32, to_hz: u32) -> Vec<f32> {
    if from_hz == to_hz || samples.is_empty() {
        return samples.to_vec();
    }
    let out_len = (samples.len() as u64 * u64::from(to_hz) / u64::from(from_hz)) as usize;
    let step = f64::from(from_hz) / f64::from(to_hz);
    (0..out_len)
        .map(|i| {
            let pos = i as f64 * step;
            let left = pos.floor() as usize;
            let frac = pos - left as f64;
            let a = f64::from(samples[left.min(samples.len() - 1)]);
            let b = f64::from(samples[(left + 1).min(samples.len() - 1)]);
            (a + (b - a) * frac) as f32
        })
        .collect()
}

/// Encodes mono PCM as a 16-bit WAV file.
pub fn encode_wav(pcm: &Pcm) -> Vec<u8> {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: pcm.sample_rate_hz,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut cursor = Cursor::new(Vec::new());
    {
        let mut writer = hound::WavWriter::new(&mut cursor, spec).expect("in-memory writer");
        for &s in &pcm.samples {
            writer.write_sample(to_i16(s)).expect("in-memory write");
        }
        writer.finalize().expect("in-memory finalize");
    }
    cursor.into_inner()
}
