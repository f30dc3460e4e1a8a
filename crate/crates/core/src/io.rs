//! Point-file parsing, result documents and SVG rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::CaseLabel;
use crate::geom::{GeomError, Point, PointSet};
use crate::partition::{InfeasibleReason, KangulateOutcome, Kangulation, PontoonRecord};
use crate::plane_graph::PlaneGraph;

pub const SCHEMA: &str = "kangulate/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{error} (input lines {lines:?})")]
    Geom { error: GeomError, lines: Vec<usize> },
    #[error("invalid result document: {0}")]
    Document(String),
}

/// Reads lines of `x y` integers; `#` starts a comment and blank lines are
/// skipped. Errors name 1-based input lines.
pub fn parse_points(text: &str) -> Result<PointSet, ParseError> {
    let (pts, lines) = parse_raw(text)?;
    PointSet::new(pts).map_err(|error| {
        let lines = match error {
            GeomError::DuplicatePoint(a, b) => vec![lines[a], lines[b]],
            GeomError::CollinearTriple(a, b, c) => {
                let mut v = vec![lines[a], lines[b], lines[c]];
                v.sort_unstable();
                v
            }
            GeomError::CoordinateOutOfRange(i) | GeomError::NotInterior(i) => vec![lines[i]],
            GeomError::TooFewPoints(_) => Vec::new(),
        };
        ParseError::Geom { error, lines }
    })
}

/// Parses coordinates without the general-position check.
pub fn parse_raw(text: &str) -> Result<(Vec<Point>, Vec<usize>), ParseError> {
    let mut pts = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(ParseError::Syntax {
                line,
                message: format!("expected two integers, found {} field(s)", fields.len()),
            });
        }
        let num = |s: &str| {
            s.parse::<i64>().map_err(|e| ParseError::Syntax {
                line,
                message: format!("{s:?}: {e}"),
            })
        };
        pts.push(Point::new(num(fields[0])?, num(fields[1])?));
        lines.push(line);
    }
    Ok((pts, lines))
}

pub fn format_points(ps: &PointSet) -> String {
    ps.points().iter().fold(String::new(), |mut s, p| {
        let _ = writeln!(s, "{} {}", p.x, p.y);
        s
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema: String,
    pub feasible: bool,
    pub k: usize,
    pub n: usize,
    pub j: usize,
    pub interior: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<InfeasibleReason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseLabel>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub internal_faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outer_face: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pontoon_orders: Vec<PontoonRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// Rotates a cycle to start at its smallest vertex.
fn canonical_cycle(mut c: Vec<usize>) -> Vec<usize> {
    if let Some(i) = (0..c.len()).min_by_key(|&i| c[i]) {
        c.rotate_left(i);
    }
    c
}

pub fn internal_faces_sorted(g: &PlaneGraph) -> Vec<Vec<usize>> {
    let mut faces: Vec<Vec<usize>> = g.internal_faces().into_iter().map(canonical_cycle).collect();
    faces.sort();
    faces
}

impl ResultDocument {
    pub fn from_outcome(ps: &PointSet, k: usize, outcome: &KangulateOutcome) -> Self {
        match outcome {
            KangulateOutcome::Found(kg) => Self::found(ps, kg),
            &KangulateOutcome::Infeasible { j, interior, reason } => ResultDocument {
                schema: SCHEMA.into(),
                feasible: false,
                k,
                n: ps.len(),
                j,
                interior,
                reason: Some(reason),
                case: None,
                edges: Vec::new(),
                internal_faces: Vec::new(),
                outer_face: Vec::new(),
                pontoon_orders: Vec::new(),
                timing_ms: None,
            },
        }
    }

    pub fn found(ps: &PointSet, kg: &Kangulation) -> Self {
        let g = &kg.graph;
        let t = &kg.trace;
        ResultDocument {
            schema: SCHEMA.into(),
            feasible: true,
            k: t.k,
            n: ps.len(),
            j: t.j,
            interior: ps.interior().len(),
            reason: None,
            case: Some(t.case),
            edges: g.edges_iter().map(|(a, b)| [a, b]).collect(),
            internal_faces: internal_faces_sorted(g),
            outer_face: canonical_cycle(g.outer_cycle()),
            pontoon_orders: t.pontoon_orders.clone(),
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let doc: ResultDocument = serde_json::from_str(text).map_err(|e| ParseError::Document(e.to_string()))?;
        if doc.schema != SCHEMA {
            return Err(ParseError::Document(format!("unsupported schema {:?}", doc.schema)));
        }
        Ok(doc)
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e[0], e[1])).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SvgStyle {
    pub shade_faces: bool,
    pub size_px: u32,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            shade_faces: true,
            size_px: 800,
        }
    }
}

/// Straight-line drawing of `g`, y axis pointing up.
pub fn emit_svg(g: &PlaneGraph, style: SvgStyle) -> String {
    let pts = g.points();
    let min_x = pts.iter().map(|p| p.x).min().unwrap_or(0);
    let max_x = pts.iter().map(|p| p.x).max().unwrap_or(0);
    let min_y = pts.iter().map(|p| p.y).min().unwrap_or(0);
    let max_y = pts.iter().map(|p| p.y).max().unwrap_or(0);
    let span = (max_x - min_x).max(max_y - min_y).max(1);
    let margin = (span / 20).max(1);
    let (vx, vy) = (min_x - margin, -max_y - margin);
    let (vw, vh) = (max_x - min_x + 2 * margin, max_y - min_y + 2 * margin);
    let stroke = span as f64 / 400.0;
    let radius = span as f64 / 120.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{vx} {vy} {vw} {vh}">"#,
        style.size_px,
        (style.size_px as i128 * vh as i128 / vw.max(1) as i128).max(1),
    );
    if style.shade_faces {
        let _ = writeln!(s, r##"<g fill="#cfe3f7" stroke="none">"##);
        for (i, f) in internal_faces_sorted(g).iter().enumerate() {
            let coords: Vec<String> = f.iter().map(|&v| format!("{},{}", pts[v].x, -pts[v].y)).collect();
            let shade = if i % 2 == 0 { "" } else { r#" fill-opacity="0.6""# };
            let _ = writeln!(s, r#"<polygon points="{}"{shade}/>"#, coords.join(" "));
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, r##"<g stroke="#1f3b57" stroke-width="{stroke:.3}" stroke-linecap="round">"##);
    for (a, b) in g.edges_iter() {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            pts[a].x, -pts[a].y, pts[b].x, -pts[b].y
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g fill="#c0392b">"##);
    for p in pts {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{radius:.3}"/>"#, p.x, -p.y);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::kangulate;

    #[test]
    fn parses_with_comments() {
        let ps = parse_points("# square\n0 0\n10 0\n\n10 10  # corner\n0 10\n6 5\n").unwrap();
        assert_eq!(ps.len(), 5);
        assert_eq!(ps.interior(), &[4]);
    }

    #[test]
    fn collinear_lines_reported() {
        match parse_points("0 0\n1 1\n2 2\n0 5").unwrap_err() {
            ParseError::Geom { error, lines } => {
                assert!(matches!(error, GeomError::CollinearTriple(..)));
                assert_eq!(lines, vec![1, 2, 3]);
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn syntax_error_line() {
        assert_eq!(
            parse_points("0 0\nfoo").unwrap_err(),
            ParseError::Syntax {
                line: 2,
                message: "expected two integers, found 1 field(s)".into()
            }
        );
        assert!(matches!(parse_points("0 0\n1 x\n").unwrap_err(), ParseError::Syntax { line: 2, .. }));
    }

    #[test]
    fn document_round_trip() {
        let ps = parse_points("0 0\n10 0\n10 10\n0 10\n6 5").unwrap();
        let out = kangulate(&ps, 4).unwrap();
        let doc = ResultDocument::from_outcome(&ps, 4, &out);
        assert_eq!(doc.internal_faces.len(), 2);
        assert!(doc.internal_faces.iter().all(|f| f.len() == 4));
        let back = ResultDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn infeasible_document_is_small() {
        let ps = parse_points("0 0\n4 -2\n8 0\n8 5\n4 7").unwrap();
        let out = kangulate(&ps, 4).unwrap();
        let v: serde_json::Value = serde_json::from_str(&ResultDocument::from_outcome(&ps, 4, &out).to_json()).unwrap();
        assert_eq!(v["feasible"], false);
        assert_eq!(v["j"], 1);
        assert_eq!(v["interior"], 0);
        assert!(v.get("edges").is_none());
    }

    #[test]
    fn svg_element_counts() {
        let ps = parse_points("0 0\n10 0\n10 10\n0 10\n6 5").unwrap();
        let g = kangulate(&ps, 4).unwrap().found().unwrap().graph;
        let svg = emit_svg(&g, SvgStyle::default());
        assert_eq!(svg.matches("<line ").count(), 6);
        assert_eq!(svg.matches("<circle ").count(), 5);
        assert_eq!(svg.matches("<polygon ").count(), 2);
        assert_eq!(svg.matches("<g").count(), svg.matches("</g>").count());
        assert_eq!(svg, emit_svg(&g, SvgStyle::default()));
    }
}
