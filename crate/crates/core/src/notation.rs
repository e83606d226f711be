//! Static SVG rhythm notation.
//!
//! The script row sits above a timeline; every word is a circle at its
//! midpoint, filled when stressed and hollow otherwise. Circles are grey
//! unless the word lies inside a rhythm group, in which case the group's
//! pace colour is used: purple for the fastest beats, yellow for the slowest.
//! The comparison view stacks target and user notation, both starting at
//! t = 0, and joins each target group to the user's words with a waterfall band.

use std::fmt::Write;

use crate::compare::{ComparisonReport, Verdict};
use crate::rhythm::{RhythmTrack, PACE_BINS};

pub const GREY: &str = "#9e9e9e";
const PURPLE: (u8, u8, u8) = (0x7b, 0x2c, 0xbf);
const YELLOW: (u8, u8, u8) = (0xff, 0xd6, 0x0a);
const GREEN: &str = "#2e9d4f";
const RED: &str = "#d62f2f";

const PX_PER_S: f64 = 220.0;
const MARGIN: f64 = 24.0;
const NOTE_R: f64 = 7.0;
/// Height of one notation (script row + timeline).
const TRACK_H: f64 = 80.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NotationOptions {
    pub px_per_s: f64,
    /// Source time drawn at the left edge.
    pub origin_s: f64,
}

impl Default for NotationOptions {
    fn default() -> Self {
        Self {
            px_per_s: PX_PER_S,
            origin_s: 0.0,
        }
    }
}

/// Colour of a pace bin, interpolated from purple (bin 0) to yellow (bin 5).
pub fn pace_color(bin: u8) -> String {
    let t = f64::from(bin.min(PACE_BINS - 1)) / f64::from(PACE_BINS - 1);
    let mix = |a: u8, b: u8| (f64::from(a) + (f64::from(b) - f64::from(a)) * t).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(PURPLE.0, YELLOW.0),
        mix(PURPLE.1, YELLOW.1),
        mix(PURPLE.2, YELLOW.2)
    )
}

/// Colour of every word of a track.
pub fn word_colors(track: &RhythmTrack) -> Vec<String> {
    (0..track.words.len())
        .map(|i| match track.group_of_word(i) {
            Some(g) => pace_color(track.groups[g].pace_bin()),
            None => GREY.to_string(),
        })
        .collect()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn x_of(t: f64, opts: &NotationOptions) -> f64 {
    MARGIN + (t - opts.origin_s) * opts.px_per_s
}

fn track_end(track: &RhythmTrack) -> f64 {
    track.words.last().map_or(0.0, |w| w.end_s)
}

fn draw_track(out: &mut String, track: &RhythmTrack, opts: &NotationOptions, top: f64, width: f64) {
    let text_y = top + 24.0;
    let line_y = top + 56.0;
    let _ = writeln!(
        out,
        r#"<line x1="{:.1}" y1="{line_y:.1}" x2="{:.1}" y2="{line_y:.1}" stroke="{GREY}" stroke-width="1"/>"#,
        MARGIN,
        width - MARGIN
    );
    for g in &track.groups {
        let x0 = x_of(track.words[g.first_word_idx].midpoint(), opts);
        let x1 = x_of(track.words[g.last_word_idx].midpoint(), opts);
        let _ = writeln!(
            out,
            r#"<rect class="group" x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" rx="{NOTE_R}" fill="{}" fill-opacity="0.25"/>"#,
            x0 - NOTE_R - 3.0,
            line_y - NOTE_R - 3.0,
            x1 - x0 + 2.0 * (NOTE_R + 3.0),
            2.0 * (NOTE_R + 3.0),
            pace_color(g.pace_bin())
        );
    }
    for (w, color) in track.words.iter().zip(word_colors(track)) {
        let x = x_of(w.midpoint(), opts);
        let _ = writeln!(
            out,
            r#"<text x="{x:.1}" y="{text_y:.1}" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
            escape(&w.text)
        );
        let fill = if w.stressed { color.as_str() } else { "none" };
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.1}" cy="{line_y:.1}" r="{NOTE_R}" fill="{fill}" stroke="{color}" stroke-width="2"/>"#
        );
    }
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
}

/// Dual-track notation of one track.
pub fn render_track_svg(track: &RhythmTrack, opts: &NotationOptions) -> String {
    let width = 2.0 * MARGIN + (track_end(track) - opts.origin_s).max(0.0) * opts.px_per_s;
    let mut out = String::new();
    header(&mut out, width, TRACK_H);
    draw_track(&mut out, track, opts, 0.0, width);
    out.push_str("</svg>\n");
    out
}

/// Target notation above the user's, with a waterfall per target group and a
/// verdict-coloured brace under the covered user words.
pub fn render_comparison_svg(
    target: &RhythmTrack,
    target_origin_s: f64,
    user: &RhythmTrack,
    user_origin_s: f64,
    report: &ComparisonReport,
) -> String {
    let t_opts = NotationOptions {
        origin_s: target_origin_s,
        ..Default::default()
    };
    let u_opts = NotationOptions {
        origin_s: user_origin_s,
        ..Default::default()
    };
    let span = (track_end(target) - target_origin_s).max(track_end(user) - user_origin_s);
    let width = 2.0 * MARGIN + span.max(0.0) * PX_PER_S;
    let user_top = TRACK_H + 60.0;
    let height = user_top + TRACK_H + 30.0;

    let mut out = String::new();
    header(&mut out, width, height);
    for (wf, item) in report.waterfalls.iter().zip(&report.feedback) {
        let Some((u0, u1)) = wf.user_span else {
            continue;
        };
        let group = &target.groups[wf.group_idx];
        let color = pace_color(group.pace_bin());
        let tx0 = x_of(target.words[wf.target_span.0].midpoint(), &t_opts) - NOTE_R;
        let tx1 = x_of(target.words[wf.target_span.1].midpoint(), &t_opts) + NOTE_R;
        let ux0 = x_of(user.words[u0].midpoint(), &u_opts) - NOTE_R;
        let ux1 = x_of(user.words[u1].midpoint(), &u_opts) + NOTE_R;
        let (ty, uy) = (56.0 + NOTE_R, user_top + 56.0 - NOTE_R);
        let _ = writeln!(
            out,
            r#"<polygon class="waterfall" points="{tx0:.1},{ty:.1} {tx1:.1},{ty:.1} {ux1:.1},{uy:.1} {ux0:.1},{uy:.1}" fill="{color}" fill-opacity="0.3"/>"#
        );
        let brace = if item.verdict == Verdict::Green { GREEN } else { RED };
        let by = user_top + 56.0 + NOTE_R + 8.0;
        let mid = (ux0 + ux1) / 2.0;
        let _ = writeln!(
            out,
            r#"<path class="brace" d="M{ux0:.1},{by:.1} q0,8 8,8 L{:.1},{:.1} q8,0 8,8 q0,-8 8,-8 L{:.1},{:.1} q8,0 8,-8" fill="none" stroke="{brace}" stroke-width="2"/>"#,
            mid - 8.0,
            by + 8.0,
            ux1 - 8.0,
            by + 8.0
        );
    }
    draw_track(&mut out, target, &t_opts, 0.0, width);
    draw_track(&mut out, user, &u_opts, user_top, width);
    out.push_str("</svg>\n");
    out
}
