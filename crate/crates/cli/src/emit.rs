//! Track output as CSV, JSON or an SVG of the Poincaré disk.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use horocurve::lorentz::poincare_project;
use horocurve::Vec3L;
use serde::Serialize;

use crate::report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrackKind {
    /// Points of H²; the only kind drawn in SVG output.
    Point,
    /// Unit vectors of de Sitter space (ν or μ).
    Direction,
    /// Rows (m, n, 0).
    Curvature,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub t: f64,
    pub x: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Track {
    pub label: String,
    pub kind: TrackKind,
    pub rows: Vec<Row>,
}

impl Track {
    pub fn new(label: impl Into<String>, kind: TrackKind, rows: Vec<Row>) -> Self {
        Self { label: label.into(), kind, rows }
    }

    pub fn points(label: impl Into<String>, pts: impl IntoIterator<Item = (f64, Vec3L)>) -> Self {
        Self::new(label, TrackKind::Point, pts.into_iter().map(|(t, p)| Row { t, x: p.to_array() }).collect())
    }
}

/// A singular point drawn as a cross.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Marker {
    pub t: f64,
    pub point: [f64; 3],
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    /// The format named by a path's extension, if any.
    pub fn from_path(p: &Path) -> Option<Self> {
        match p.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            "svg" => Some(Format::Svg),
            _ => None,
        }
    }
}

/// Seventeen significant digits, enough to round-trip every f64.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv(tracks: &[Track], w: impl Write) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["t", "x1", "x2", "x3", "label"])?;
    for tr in tracks {
        for r in &tr.rows {
            out.write_record([num(r.t), num(r.x[0]), num(r.x[1]), num(r.x[2]), tr.label.clone()])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Rows of a CSV written by [`write_csv`], grouped back into tracks by label.
pub fn read_csv(r: impl Read) -> Result<Vec<(String, Vec<Row>)>> {
    let mut rd = csv::Reader::from_reader(r);
    if rd.headers()?.iter().collect::<Vec<_>>() != ["t", "x1", "x2", "x3", "label"] {
        bail!("unexpected CSV header");
    }
    let mut out: Vec<(String, Vec<Row>)> = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let f = |i: usize| -> Result<f64> { rec[i].parse::<f64>().with_context(|| format!("column {i}")) };
        let row = Row { t: f(0)?, x: [f(1)?, f(2)?, f(3)?] };
        match out.last_mut() {
            Some((l, rows)) if l == &rec[4] => rows.push(row),
            _ => out.push((rec[4].to_string(), vec![row])),
        }
    }
    Ok(out)
}

const STROKES: [&str; 6] = ["#1f4e9c", "#c0392b", "#27ae60", "#8e44ad", "#d68910", "#17202a"];

/// Disk coordinates of an H² point, or None when rounding puts it on the boundary.
fn disk(x: [f64; 3]) -> Option<(f64, f64)> {
    let (a, b) = poincare_project(&Vec3L::from_array(x)).ok()?;
    (a * a + b * b < 1.0).then_some((a, b))
}

pub fn svg(tracks: &[Track], markers: &[Marker]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.05 -1.05 2.1 2.1" width="640" height="640">"#);
    let _ = writeln!(s, r##"<circle cx="0" cy="0" r="1" fill="none" stroke="#555" stroke-width="0.004"/>"##);
    for (i, tr) in tracks.iter().filter(|t| t.kind == TrackKind::Point).enumerate() {
        let pts: Vec<String> =
            tr.rows.iter().filter_map(|r| disk(r.x)).map(|(a, b)| format!("{a:.6},{:.6}", -b)).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="0.005" points="{}"><title>{}</title></polyline>"#,
            STROKES[i % STROKES.len()],
            pts.join(" "),
            escape(&tr.label)
        );
    }
    for m in markers {
        if let Some((a, b)) = disk(m.point) {
            let (b, d) = (-b, 0.02);
            let _ = writeln!(
                s,
                r#"<g stroke="black" stroke-width="0.006"><title>{} at t = {}</title><line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/><line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/></g>"#,
                escape(&m.label),
                m.t,
                a - d,
                b - d,
                a + d,
                b + d,
                a - d,
                b + d,
                a + d,
                b - d
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[derive(Serialize)]
struct JsonOut<'a> {
    report: &'a RunReport,
    tracks: &'a [Track],
    markers: &'a [Marker],
}

pub fn render(tracks: &[Track], markers: &[Marker], report: &RunReport, format: Format) -> Result<Vec<u8>> {
    if tracks.iter().all(|t| t.rows.is_empty()) {
        bail!("refusing to write an empty track");
    }
    Ok(match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(tracks, &mut buf)?;
            buf
        }
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(&JsonOut { report, tracks, markers })?;
            v.push(b'\n');
            v
        }
        Format::Svg => svg(tracks, markers).into_bytes(),
    })
}

/// Renders first so that nothing is created when there is nothing to write.
pub fn emit(tracks: &[Track], markers: &[Marker], report: &RunReport, format: Format, path: &Path) -> Result<()> {
    let bytes = render(tracks, markers, report, format)?;
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}
