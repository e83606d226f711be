//! Tab-separated word alignments.
//!
//! One word per line: `text<TAB>start_s<TAB>end_s[<TAB>S|U]`. Lines starting
//! with `#` and blank lines are ignored. The ASR adapter answers in the same
//! format without the stress column.

use serde::{Deserialize, Serialize};

use super::IngestError;
use crate::rhythm::{RhythmTrack, WordToken, ORDER_SLACK_S};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignedRow {
    pub text: String,
    pub start_s: f64,
    pub end_s: f64,
    pub stressed: Option<bool>,
}

impl AlignedRow {
    pub fn new(text: impl Into<String>, start_s: f64, end_s: f64, stressed: Option<bool>) -> Self {
        Self {
            text: text.into(),
            start_s,
            end_s,
            stressed,
        }
    }

    pub fn to_token(&self) -> WordToken {
        WordToken::new(
            self.text.clone(),
            self.start_s,
            self.end_s,
            self.stressed.unwrap_or(false),
        )
    }
}

/// True when every row carries a stress label.
pub fn fully_labelled(rows: &[AlignedRow]) -> bool {
    !rows.is_empty() && rows.iter().all(|r| r.stressed.is_some())
}

fn line_error(line: usize, message: impl Into<String>) -> IngestError {
    IngestError::Alignment {
        line,
        message: message.into(),
    }
}

/// Parses rows without checking their order.
pub fn parse_rows(input: &str) -> Result<Vec<AlignedRow>, IngestError> {
    let mut rows = Vec::new();
    for (n, raw) in input.split('\n').enumerate() {
        let line_no = n + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if !(3..=4).contains(&cols.len()) {
            return Err(line_error(
                line_no,
                format!("expected 3 or 4 tab-separated columns, found {}", cols.len()),
            ));
        }
        let text = cols[0].trim();
        if text.is_empty() {
            return Err(line_error(line_no, "empty word text"));
        }
        let time = |col: &str, what: &str| {
            col.trim()
                .parse::<f64>()
                .ok()
                .filter(|t| t.is_finite() && *t >= 0.0)
                .ok_or_else(|| line_error(line_no, format!("bad {what} time {col:?}")))
        };
        let start_s = time(cols[1], "start")?;
        let end_s = time(cols[2], "end")?;
        if end_s <= start_s {
            return Err(line_error(line_no, "end time must be after start time"));
        }
        let stressed = match cols.get(3).map(|c| c.trim()) {
            None | Some("") => None,
            Some("S") | Some("s") => Some(true),
            Some("U") | Some("u") => Some(false),
            Some(other) => {
                return Err(line_error(line_no, format!("stress column must be S or U, got {other:?}")))
            }
        };
        rows.push(AlignedRow::new(text, start_s, end_s, stressed));
    }
    Ok(rows)
}

/// Parses an alignment file; rows must be sorted and non-overlapping.
pub fn parse_alignment(input: &str) -> Result<Vec<AlignedRow>, IngestError> {
    let rows = parse_rows(input)?;
    for (i, pair) in rows.windows(2).enumerate() {
        if pair[1].start_s + ORDER_SLACK_S < pair[0].end_s {
            return Err(IngestError::Alignment {
                line: 0,
                message: format!(
                    "rows {} ({:?}) and {} ({:?}) overlap or are out of order",
                    i + 1,
                    pair[0].text,
                    i + 2,
                    pair[1].text
                ),
            });
        }
    }
    Ok(rows)
}

fn format_seconds(t: f64) -> String {
    let ms = (t * 1000.0).round() / 1000.0;
    if (t - ms).abs() < 1e-9 {
        format!("{ms:.3}")
    } else {
        format!("{t:.6}")
    }
}

pub fn write_alignment(rows: &[AlignedRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&r.text);
        out.push('\t');
        out.push_str(&format_seconds(r.start_s));
        out.push('\t');
        out.push_str(&format_seconds(r.end_s));
        if let Some(s) = r.stressed {
            out.push('\t');
            out.push(if s { 'S' } else { 'U' });
        }
        out.push('\n');
    }
    out
}

/// Alignment file of a track, with its stress labels.
pub fn export_track(track: &RhythmTrack) -> String {
    let rows: Vec<AlignedRow> = track
        .words
        .iter()
        .map(|w| AlignedRow::new(w.text.clone(), w.start_s, w.end_s, Some(w.stressed)))
        .collect();
    write_alignment(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_and_without_stress() {
        let text = "# comment\nThe\t0.000\t0.120\tU\nquick\t0.150\t0.480\tS\n\nfox\t0.5\t0.9\n";
        let rows = parse_alignment(text).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0], AlignedRow::new("The", 0.0, 0.12, Some(false)));
        assert_eq!(rows[1].stressed, Some(true));
        assert_eq!(rows[2].stressed, None);
        assert!(!fully_labelled(&rows));
    }

    #[test]
    fn reports_bad_lines() {
        let err = parse_alignment("a\t0.0\t0.2\nb\t0.3\n").unwrap_err();
        assert!(matches!(err, IngestError::Alignment { line: 2, .. }), "{err}");
        let err = parse_alignment("a\t0.0\tzero\n").unwrap_err();
        assert!(err.to_string().contains("end"));
        assert!(parse_alignment("a\t0.5\t0.2\n").is_err());
        assert!(parse_alignment("a\t0.0\t0.2\tX\n").is_err());
        assert!(parse_alignment("a\t0.0\t0.6\nb\t0.5\t0.9\n").is_err());
    }

    #[test]
    fn writes_three_decimals() {
        let rows = vec![
            AlignedRow::new("a", 0.0, 0.5, Some(true)),
            AlignedRow::new("b", 0.5, 0.9, None),
        ];
        assert_eq!(write_alignment(&rows), "a\t0.000\t0.500\tS\nb\t0.500\t0.900\n");
    }

    #[test]
    fn crlf_is_tolerated() {
        let rows = parse_alignment("a\t0.0\t0.2\tS\r\nb\t0.3\t0.4\tU\r\n").unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].stressed, Some(false));
    }
}
