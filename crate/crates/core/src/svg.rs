//! Static SVG 1.1 figures of a graph and its witness-line arrangement.

use std::fmt::Write as _;

use crate::dirplan::WitnessLine;
use crate::ecc::{compute_ecc, witness_heights};
use crate::error::RenderError;
use crate::geom::{Direction, PlaneGraph, Point};

const DEFAULT_PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    width: u32,
    height: u32,
    pub vertices: bool,
    pub edges: bool,
    pub lines: bool,
    pub triple_points: bool,
    /// Stroke colour per direction, cycled in the order directions are given.
    pub palette: Vec<String>,
}

impl RenderSpec {
    pub fn new(width: u32, height: u32) -> Result<Self, RenderError> {
        if width == 0 || height == 0 {
            return Err(RenderError::Dimensions(width, height));
        }
        Ok(RenderSpec {
            width,
            height,
            vertices: true,
            edges: true,
            lines: true,
            triple_points: true,
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    fn colour(&self, k: usize) -> &str {
        if self.palette.is_empty() {
            "#000000"
        } else {
            &self.palette[k % self.palette.len()]
        }
    }
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec::new(800, 800).expect("positive size")
    }
}

struct Frame {
    min: (f64, f64),
    max: (f64, f64),
    scale: f64,
    offset: (f64, f64),
    height: f64,
}

impl Frame {
    fn new(points: &[Point], spec: &RenderSpec) -> Frame {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            let (x, y) = (p.x.to_f64(), p.y.to_f64());
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        if points.is_empty() {
            min = (-1.0, -1.0);
            max = (1.0, 1.0);
        }
        let span = (max.0 - min.0).max(max.1 - min.1).max(1e-9);
        let pad = 0.1 * span;
        min = (min.0 - pad, min.1 - pad);
        max = (max.0 + pad, max.1 + pad);
        let (w, h) = (spec.width as f64, spec.height as f64);
        let scale = (w / (max.0 - min.0)).min(h / (max.1 - min.1));
        let offset = (
            (w - scale * (max.0 - min.0)) / 2.0,
            (h - scale * (max.1 - min.1)) / 2.0,
        );
        Frame {
            min,
            max,
            scale,
            offset,
            height: h,
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.offset.0 + (x - self.min.0) * self.scale,
            self.height - (self.offset.1 + (y - self.min.1) * self.scale),
        )
    }

    /// Endpoints of `a x + b y = c` inside the frame, if it passes through.
    fn clip(&self, line: &WitnessLine) -> Option<((f64, f64), (f64, f64))> {
        let a = line.a.to_string().parse::<f64>().ok()?;
        let b = line.b.to_string().parse::<f64>().ok()?;
        let c = line.c.to_f64();
        let mut hits = Vec::new();
        if b != 0.0 {
            for x in [self.min.0, self.max.0] {
                let y = (c - a * x) / b;
                if y >= self.min.1 && y <= self.max.1 {
                    hits.push((x, y));
                }
            }
        }
        if a != 0.0 {
            for y in [self.min.1, self.max.1] {
                let x = (c - b * y) / a;
                if x >= self.min.0 && x <= self.max.0 {
                    hits.push((x, y));
                }
            }
        }
        let first = *hits.first()?;
        let far = hits
            .iter()
            .copied()
            .max_by(|p, q| dist2(first, *p).total_cmp(&dist2(first, *q)))?;
        Some((first, far))
    }
}

fn dist2(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)
}

/// Renders `g`, the witness lines of each direction in `directions` and
/// markers at `markers`.
pub fn render(
    g: &PlaneGraph,
    directions: &[Direction],
    markers: &[Point],
    spec: &RenderSpec,
) -> String {
    let frame = Frame::new(g.vertices(), spec);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    if spec.lines {
        for (k, s) in directions.iter().enumerate() {
            let _ = writeln!(
                out,
                r#"<g class="lines" data-direction="{} {}" stroke="{}" stroke-width="1" opacity="0.7">"#,
                s.dx(),
                s.dy(),
                spec.colour(k)
            );
            for h in witness_heights(&compute_ecc(g, s)) {
                if let Some((p, q)) = frame.clip(&WitnessLine::new(s, &h)) {
                    let (x1, y1) = frame.map(p.0, p.1);
                    let (x2, y2) = frame.map(q.0, q.1);
                    let _ = writeln!(
                        out,
                        r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
                    );
                }
            }
            out.push_str("</g>\n");
        }
    }
    if spec.edges {
        out.push_str("<g class=\"edges\" stroke=\"black\" stroke-width=\"2\">\n");
        for &(i, j) in g.edges() {
            let (a, b) = (g.vertex(i), g.vertex(j));
            let (x1, y1) = frame.map(a.x.to_f64(), a.y.to_f64());
            let (x2, y2) = frame.map(b.x.to_f64(), b.y.to_f64());
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
            );
        }
        out.push_str("</g>\n");
    }
    if spec.triple_points {
        out.push_str(
            "<g class=\"triple-points\" fill=\"none\" stroke=\"#e377c2\" stroke-width=\"2\">\n",
        );
        for p in markers {
            let (x, y) = frame.map(p.x.to_f64(), p.y.to_f64());
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="8"/>"#);
        }
        out.push_str("</g>\n");
    }
    if spec.vertices {
        out.push_str("<g class=\"vertices\" fill=\"black\">\n");
        for p in g.vertices() {
            let (x, y) = frame.map(p.x.to_f64(), p.y.to_f64());
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4"/>"#);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::fixture;

    #[test]
    fn zero_size_rejected() {
        assert!(RenderSpec::new(0, 10).is_err());
        assert!(RenderSpec::new(10, 0).is_err());
    }

    #[test]
    fn counts_elements() {
        let g = fixture("fig1_trick").unwrap();
        let dirs = Direction::cardinals();
        let svg = render(
            &g,
            &dirs[..2],
            &[g.vertex(0).clone()],
            &RenderSpec::default(),
        );
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        // five vertices plus one marker
        assert_eq!(svg.matches("<circle").count(), 6);
        // two edges, then the distinct witness lines of E and W
        let e = witness_heights(&compute_ecc(&g, &dirs[0])).len();
        let w = witness_heights(&compute_ecc(&g, &dirs[1])).len();
        assert_eq!(svg.matches("<line").count(), 2 + e + w);
    }

    #[test]
    fn toggles_hide_layers() {
        let g = fixture("fig3_same").unwrap();
        let mut spec = RenderSpec::new(100, 50).unwrap();
        spec.vertices = false;
        spec.edges = false;
        spec.lines = false;
        let svg = render(&g, &Direction::cardinals(), &[], &spec);
        assert!(!svg.contains("<line") && !svg.contains("<circle"));
        assert!(svg.contains(r#"width="100" height="50""#));
    }
}
