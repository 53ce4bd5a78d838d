//! Plain-text formats for graphs, ECCs and direction plans.
//!
//! Graph:
//! ```text
//! n m
//! x y        (n lines)
//! i j        (m lines, 0-based, i < j)
//! ```
//! ECC:
//! ```text
//! # direction dx dy
//! height value   (one line per breakpoint)
//! ```
//! Plan: one line `v dx1 dy1 dx2 dy2 dx3 dy3` per vertex.
//!
//! Lines starting with `#` are comments (the ECC header excepted), blank
//! lines are ignored, and numbers may be integers, decimals or `p/q`.
//! Writers always emit reduced `p/q` or integers, so written files parse back
//! to identical text.

use std::fmt::Write as _;

use crate::dirplan::DirectionPlan;
use crate::ecc::StepFunction;
use crate::error::ParseError;
use crate::geom::{Direction, PlaneGraph, Point};
use crate::scalar::ExactScalar;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next non-blank, non-comment line as `(1-based line number, tokens)`.
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (k, line) in self.inner.by_ref() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((k + 1, t.split_whitespace().collect()));
        }
        None
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn expect_len(line: usize, toks: &[&str], n: usize) -> Result<(), ParseError> {
    if toks.len() != n {
        return Err(syntax(
            line,
            format!("expected {n} fields, found {}", toks.len()),
        ));
    }
    Ok(())
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| {
        syntax(
            line,
            format!("expected a non-negative integer, found {tok:?}"),
        )
    })
}

fn parse_scalar(line: usize, tok: &str) -> Result<ExactScalar, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("malformed number {tok:?}")))
}

pub fn parse_graph(text: &str) -> Result<PlaneGraph, ParseError> {
    let mut lines = Lines::new(text);
    let (ln, head) = lines
        .next_tokens()
        .ok_or_else(|| ParseError::Truncated("missing header".into()))?;
    expect_len(ln, &head, 2)?;
    let n = parse_usize(ln, head[0])?;
    let m = parse_usize(ln, head[1])?;

    let mut vertices = Vec::with_capacity(n);
    for k in 0..n {
        let (ln, t) = lines
            .next_tokens()
            .ok_or_else(|| ParseError::Truncated(format!("expected {n} vertices, found {k}")))?;
        expect_len(ln, &t, 2)?;
        vertices.push(Point::new(parse_scalar(ln, t[0])?, parse_scalar(ln, t[1])?));
    }
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let (ln, t) = lines
            .next_tokens()
            .ok_or_else(|| ParseError::Truncated(format!("expected {m} edges, found {k}")))?;
        expect_len(ln, &t, 2)?;
        let (i, j) = (parse_usize(ln, t[0])?, parse_usize(ln, t[1])?);
        if i >= j {
            return Err(syntax(ln, format!("edge ({i}, {j}) must satisfy i < j")));
        }
        edges.push((i, j));
    }
    if let Some((ln, _)) = lines.next_tokens() {
        return Err(syntax(ln, "trailing data after edge list"));
    }
    PlaneGraph::new(vertices, edges).map_err(|e| syntax(0, e.to_string()))
}

pub fn format_graph(g: &PlaneGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for p in g.vertices() {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

/// A vertex list in graph format with no edges.
pub fn format_points(points: &[Point]) -> String {
    let mut out = format!("{} 0\n", points.len());
    for p in points {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

pub fn parse_direction(text: &str) -> Result<Direction, ParseError> {
    let parts: Vec<&str> = text.split([',', ' ']).filter(|s| !s.is_empty()).collect();
    if parts.len() != 2 {
        return Err(ParseError::Number(text.to_string()));
    }
    let dx = parts[0].parse::<ExactScalar>()?;
    let dy = parts[1].parse::<ExactScalar>()?;
    Direction::new(dx, dy).map_err(|_| ParseError::Number(text.to_string()))
}

pub fn format_ecc(s: &Direction, f: &StepFunction) -> String {
    let mut out = format!("# direction {} {}\n", s.dx(), s.dy());
    for (h, v) in f.breakpoints() {
        let _ = writeln!(out, "{h} {v}");
    }
    out
}

pub fn parse_ecc(text: &str) -> Result<(Direction, StepFunction), ParseError> {
    let mut direction = None;
    let mut breakpoints = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let ln = k + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix('#') {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.first() == Some(&"direction") {
                if direction.is_some() {
                    return Err(syntax(ln, "duplicate direction header"));
                }
                expect_len(ln, &toks, 3)?;
                let d = Direction::new(parse_scalar(ln, toks[1])?, parse_scalar(ln, toks[2])?)
                    .map_err(|e| syntax(ln, e.to_string()))?;
                direction = Some(d);
            }
            continue;
        }
        if direction.is_none() {
            return Err(syntax(ln, "breakpoint before the direction header"));
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        expect_len(ln, &toks, 2)?;
        let v: i64 = toks[1].parse().map_err(|_| {
            syntax(
                ln,
                format!("expected an integer value, found {:?}", toks[1]),
            )
        })?;
        breakpoints.push((parse_scalar(ln, toks[0])?, v));
    }
    let direction =
        direction.ok_or_else(|| ParseError::Truncated("missing '# direction' header".into()))?;
    let f = StepFunction::new(breakpoints).map_err(|msg| syntax(0, msg))?;
    Ok((direction, f))
}

pub fn format_plan(p: &DirectionPlan) -> String {
    let mut out = String::new();
    for (v, dirs) in &p.triples {
        let _ = write!(out, "{v}");
        for d in dirs {
            let _ = write!(out, " {} {}", d.dx(), d.dy());
        }
        out.push('\n');
    }
    out
}

pub fn parse_plan(text: &str) -> Result<DirectionPlan, ParseError> {
    let mut lines = Lines::new(text);
    let mut triples = Vec::new();
    while let Some((ln, t)) = lines.next_tokens() {
        expect_len(ln, &t, 7)?;
        let v = parse_usize(ln, t[0])?;
        let mut dirs = Vec::with_capacity(3);
        for pair in t[1..].chunks(2) {
            let d = Direction::new(parse_scalar(ln, pair[0])?, parse_scalar(ln, pair[1])?)
                .map_err(|e| syntax(ln, e.to_string()))?;
            dirs.push(d);
        }
        let dirs: [Direction; 3] = dirs.try_into().expect("three directions");
        triples.push((v, dirs));
    }
    Ok(DirectionPlan { triples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecc::compute_ecc;

    const TRIANGLE: &str = "# a triangle\n3 3\n0 0\n1 2\n2 1\n\n0 1\n1 2\n0 2\n";

    #[test]
    fn graph_parses_and_writes_canonically() {
        let g = parse_graph(TRIANGLE).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        let text = format_graph(&g);
        assert_eq!(text, "3 3\n0 0\n1 2\n2 1\n0 1\n1 2\n0 2\n");
        assert_eq!(format_graph(&parse_graph(&text).unwrap()), text);
    }

    #[test]
    fn decimal_coordinates_become_rationals() {
        let g = parse_graph("2 1\n0.5 -1.25\n5/4 3\n0 1\n").unwrap();
        assert_eq!(format_graph(&g), "2 1\n1/2 -5/4\n5/4 3\n0 1\n");
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph(""), Err(ParseError::Truncated(_))));
        assert!(matches!(
            parse_graph("2 0\n0 0\n"),
            Err(ParseError::Truncated(_))
        ));
        assert!(matches!(
            parse_graph("2 1\n0 0\n1 1\n1 0\n"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_graph("1 0\n0 x\n"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_graph("1 0\n0 0\n5 5\n"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_graph("2 1\n0 0\n1 1\n0 7\n"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn ecc_round_trip() {
        let g = parse_graph(TRIANGLE).unwrap();
        let s = Direction::new(ExactScalar::one(), ExactScalar::ratio(1, 3)).unwrap();
        let f = compute_ecc(&g, &s);
        let text = format_ecc(&s, &f);
        assert!(text.starts_with("# direction 1 1/3\n"));
        let (s2, f2) = parse_ecc(&text).unwrap();
        assert_eq!(s2.dx(), s.dx());
        assert_eq!(s2.dy(), s.dy());
        assert_eq!(f2, f);
        assert_eq!(format_ecc(&s2, &f2), text);
    }

    #[test]
    fn ecc_errors() {
        assert!(parse_ecc("0 1\n").is_err());
        assert!(parse_ecc("# direction 0 0\n").is_err());
        assert!(parse_ecc("# direction 1 0\n0 1\n0 2\n").is_err());
        assert!(parse_ecc("# direction 1 0\n0 1\n1 1\n").is_err());
        let (_, f) = parse_ecc("# direction 1 0\n").unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn direction_arguments() {
        let d = parse_direction("1,-1/2").unwrap();
        assert_eq!(
            (d.dx().to_string(), d.dy().to_string()),
            ("1".into(), "-1/2".into())
        );
        assert!(parse_direction("0,0").is_err());
        assert!(parse_direction("1").is_err());
    }

    #[test]
    fn plan_round_trip() {
        let text = "0 1 0 0 1 -1 2\n3 5/2 1 -1 -1 7 3\n";
        let p = parse_plan(text).unwrap();
        assert_eq!(p.triples.len(), 2);
        assert_eq!(format_plan(&p), text);
        assert!(parse_plan("0 1 0 0 1\n").is_err());
    }
}
