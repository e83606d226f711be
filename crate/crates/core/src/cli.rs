//! `rhythm` command line.
//!
//! Exit codes: 0 success (for `compare`: every waterfall green), 1 bad input,
//! 2 a speech recognizer was needed but none is available, 3 `compare` found
//! at least one red waterfall.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::compare::{ComparisonReport, Verdict};
use crate::config::Config;
use crate::ingest::IngestError;
use crate::notation::{render_comparison_svg, render_track_svg, NotationOptions};
use crate::pipeline::{Analyzer, PipelineError};
use crate::rhythm::{RhythmTrack, SegmentationConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_BAD_INPUT: u8 = 1;
pub const EXIT_NEEDS_ASR: u8 = 2;
pub const EXIT_NOT_GREEN: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "rhythm", version, about = "Stress-timing rhythm analysis and dubbing feedback")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract the rhythm of one recording.
    Analyze {
        audio: PathBuf,
        /// Word alignment (text, start, end and optional S/U per line).
        #[arg(long)]
        alignment: Option<PathBuf>,
        /// nPVI threshold for rhythm groups.
        #[arg(long)]
        tau: Option<f64>,
        /// Write JSON to this path, `-` for standard output.
        #[arg(long)]
        json: Option<String>,
        /// Write SVG notation to this path, `-` for standard output.
        #[arg(long)]
        svg: Option<String>,
        /// Cut the recording into 5-18 word dubbing clips.
        #[arg(long)]
        split: bool,
    },
    /// Compare a dubbing attempt with its target.
    Compare {
        target: PathBuf,
        user: PathBuf,
        #[arg(long)]
        alignment_target: Option<PathBuf>,
        #[arg(long)]
        alignment_user: Option<PathBuf>,
        #[arg(long)]
        tau: Option<f64>,
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Write the comparison notation as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the HTTP service.
    Serve {
        /// Listen address, overriding RHYTHM_BIND.
        #[arg(long)]
        bind: Option<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_BAD_INPUT,
            message: message.into(),
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = match e {
            PipelineError::Ingest(IngestError::AsrUnavailable(_)) => EXIT_NEEDS_ASR,
            _ => EXIT_BAD_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(dest: &str, content: &str, out: &mut dyn Write) -> Result<(), Failure> {
    if dest == "-" {
        out.write_all(content.as_bytes())
            .map_err(|e| Failure::input(format!("stdout: {e}")))
    } else {
        fs::write(dest, content).map_err(|e| Failure::input(format!("{dest}: {e}")))
    }
}

fn analyzer(tau: Option<f64>) -> Result<Analyzer, Failure> {
    let cfg = Config::from_env().map_err(|e| Failure::input(e.to_string()))?;
    let mut analyzer = Analyzer::from_config(&cfg).map_err(|e| Failure::input(e.to_string()))?;
    if let Some(tau) = tau {
        analyzer.segmentation = SegmentationConfig::new(tau).map_err(|e| Failure::input(e.to_string()))?;
    }
    Ok(analyzer)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn summary(track: &RhythmTrack) -> String {
    let mut s = String::new();
    let words: Vec<String> = track
        .words
        .iter()
        .map(|w| if w.stressed { w.text.to_uppercase() } else { w.text.clone() })
        .collect();
    s.push_str(&format!("words ({} stressed): {}\n", track.stressed_count(), words.join(" ")));
    let intervals: Vec<String> = track.intervals.iter().map(|i| format!("{:.3}", i.value_s)).collect();
    s.push_str(&format!("stress intervals (s): [{}]\n", intervals.join(", ")));
    for (k, g) in track.groups.iter().enumerate() {
        let span: Vec<&str> = track.words[g.word_span()].iter().map(|w| w.text.as_str()).collect();
        s.push_str(&format!(
            "group {k}: \"{}\" avg {:.3} s, pace bin {}\n",
            span.join(" "),
            g.avg_interval_s,
            g.pace_bin()
        ));
    }
    if track.groups.is_empty() {
        s.push_str("no rhythm groups\n");
    }
    s
}

fn triple(t: Option<crate::compare::DeviationTriple>) -> String {
    t.map_or_else(|| "-".to_string(), |t| format!("{},{},{}", t.d_stress, t.d_beat, t.d_pace))
}

/// Human-readable report table.
pub fn report_table(target: &RhythmTrack, report: &ComparisonReport) -> String {
    let mut s = format!(
        "{:<4} {:<32} {:<7} {:<9} {:<9} feedback\n",
        "wf", "target words", "verdict", "raw s,b,p", "smoothed"
    );
    for (wf, item) in report.waterfalls.iter().zip(&report.feedback) {
        let words: Vec<&str> = target.words[wf.target_span.0..=wf.target_span.1]
            .iter()
            .map(|w| w.text.as_str())
            .collect();
        let mut words = words.join(" ");
        if words.chars().count() > 32 {
            words = words.chars().take(29).collect::<String>() + "...";
        }
        let verdict = match item.verdict {
            Verdict::Green => "green",
            Verdict::Red => "red",
        };
        s.push_str(&format!(
            "{:<4} {:<32} {:<7} {:<9} {:<9} {}\n",
            item.waterfall_id,
            words,
            verdict,
            triple(item.raw),
            triple(item.smoothed),
            item.messages.join(" ")
        ));
    }
    if report.waterfalls.is_empty() {
        s.push_str("target has no rhythm groups\n");
    }
    s
}

fn analyze(
    audio: &Path,
    alignment: Option<&Path>,
    tau: Option<f64>,
    json: Option<&str>,
    svg: Option<&str>,
    split: bool,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let analyzer = analyzer(tau)?;
    let wav = read_bytes(audio)?;
    let alignment = alignment.map(read_text).transpose()?;
    if split {
        let (_, clips) = analyzer.prepare_clips(&wav, alignment.as_deref())?;
        if let Some(dest) = json {
            emit(dest, &to_json(&clips), out)?;
        }
        if let Some(dest) = svg {
            let svgs: Vec<String> = clips
                .iter()
                .map(|c| {
                    render_track_svg(
                        &c.target,
                        &NotationOptions {
                            origin_s: c.start_s,
                            ..Default::default()
                        },
                    )
                })
                .collect();
            if dest == "-" {
                emit(dest, &svgs.concat(), out)?;
            } else {
                let path = Path::new(dest);
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("clip");
                for (k, s) in svgs.iter().enumerate() {
                    let file = path.with_file_name(format!("{stem}-{k}.svg"));
                    emit(&file.to_string_lossy(), s, out)?;
                }
            }
        }
        if json.is_none() && svg.is_none() {
            for c in &clips {
                let text = format!("clip {} ({:.3}-{:.3} s)\n{}", c.clip_index, c.start_s, c.end_s, summary(&c.target));
                emit("-", &text, out)?;
            }
        }
        return Ok(EXIT_OK);
    }

    let (_, track) = analyzer.analyze_recording(&wav, alignment.as_deref())?;
    if let Some(dest) = json {
        emit(dest, &to_json(&track), out)?;
    }
    if let Some(dest) = svg {
        let origin = track.words.first().map_or(0.0, |w| w.start_s.min(0.0));
        let opts = NotationOptions {
            origin_s: origin,
            ..Default::default()
        };
        emit(dest, &render_track_svg(&track, &opts), out)?;
    }
    if json.is_none() && svg.is_none() {
        emit("-", &summary(&track), out)?;
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn compare(
    target: &Path,
    user: &Path,
    alignment_target: Option<&Path>,
    alignment_user: Option<&Path>,
    tau: Option<f64>,
    json: bool,
    svg: Option<&Path>,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let analyzer = analyzer(tau)?;
    let target_wav = read_bytes(target)?;
    let user_wav = read_bytes(user)?;
    let target_alignment = alignment_target.map(read_text).transpose()?;
    let user_alignment = alignment_user.map(read_text).transpose()?;
    let (_, target_track) = analyzer.analyze_recording(&target_wav, target_alignment.as_deref())?;
    let (_, user_track) = analyzer.analyze_recording(&user_wav, user_alignment.as_deref())?;
    let report = analyzer.compare(&target_track, &user_track);
    if json {
        emit("-", &to_json(&report), out)?;
    } else {
        emit("-", &report_table(&target_track, &report), out)?;
    }
    if let Some(path) = svg {
        let view = render_comparison_svg(&target_track, 0.0, &user_track, 0.0, &report);
        emit(&path.to_string_lossy(), &view, out)?;
    }
    Ok(if report.all_green { EXIT_OK } else { EXIT_NOT_GREEN })
}

fn serve(bind: Option<String>) -> Result<u8, Failure> {
    let mut cfg = Config::from_env().map_err(|e| Failure::input(e.to_string()))?;
    if let Some(bind) = bind {
        cfg.bind = bind;
    }
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::input(e.to_string()))?;
    runtime
        .block_on(crate::service::serve(cfg))
        .map_err(|e| Failure::input(e.to_string()))?;
    Ok(EXIT_OK)
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Analyze {
            audio,
            alignment,
            tau,
            json,
            svg,
            split,
        } => analyze(&audio, alignment.as_deref(), tau, json.as_deref(), svg.as_deref(), split, out),
        Command::Compare {
            target,
            user,
            alignment_target,
            alignment_user,
            tau,
            json,
            svg,
        } => compare(
            &target,
            &user,
            alignment_target.as_deref(),
            alignment_user.as_deref(),
            tau,
            json,
            svg.as_deref(),
            out,
        ),
        Command::Serve { bind } => serve(bind),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
