//! Vertex reconstruction from six ECCs.
//!
//! For a plane graph with no degree-2 vertex, each vertex is witnessed by at
//! least one of `s`, `-s` whenever no two vertices share an `s`-height. The
//! four cardinal curves therefore give every vertex x-coordinate (`xs`) and
//! y-coordinate (`ys`). A sixth and fifth curve from `(1, t)` and `-(1, t)`
//! contribute one line `x + t*y = h` per vertex; `t` is chosen small enough
//! that each such line crosses exactly one grid point of `xs` x `ys`, and
//! that grid point is the vertex.
//!
//! Antipodal curves are merged by negating heights: a height `h` under `-s`
//! is the height `-h` under `s`.

use crate::ecc::{compute_ecc, witness_heights, StepFunction};
use crate::error::ReconstructError;
use crate::geom::{Direction, PlaneGraph, Point};
use crate::scalar::ExactScalar;

/// Abscissae of the vertical witness lines and ordinates of the horizontal
/// ones, each strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CardinalLines {
    pub xs: Vec<ExactScalar>,
    pub ys: Vec<ExactScalar>,
}

/// Six curves: the four cardinals plus `s3 = (1, t)` (up to positive scale,
/// `t > 0`) and `-s3`.
#[derive(Debug, Clone)]
pub struct ReconstructionInput {
    east: StepFunction,
    west: StepFunction,
    north: StepFunction,
    south: StepFunction,
    /// `(direction, curve)` with positive x-component.
    third: (Direction, StepFunction),
    third_opposite: (Direction, StepFunction),
}

/// Witness heights of `f`, rescaled to the canonical integer representative
/// of `s`'s ray.
fn canonical_heights(s: &Direction, f: &StepFunction) -> Vec<ExactScalar> {
    let k = s.scale_from_canonical();
    witness_heights(f).into_iter().map(|h| h / &k).collect()
}

impl ReconstructionInput {
    /// Sorts six `(direction, curve)` pairs into their roles. Directions may
    /// be any positive multiple of the expected rays.
    pub fn from_curves(curves: Vec<(Direction, StepFunction)>) -> Result<Self, ReconstructError> {
        if curves.len() != 6 {
            return Err(ReconstructError::Input(format!(
                "expected 6 curves, got {}",
                curves.len()
            )));
        }
        let [e, w, n, s] = Direction::cardinals();
        let mut slots: [Option<StepFunction>; 4] = Default::default();
        let mut others = Vec::new();
        for (d, f) in curves {
            let role = [&e, &w, &n, &s].iter().position(|c| **c == d);
            match role {
                Some(r) => {
                    if slots[r].is_some() {
                        return Err(ReconstructError::Input(format!(
                            "direction {d} given twice"
                        )));
                    }
                    // Store at unit scale so cardinal heights are coordinates.
                    let k = d.scale_from_canonical();
                    let bp = f.breakpoints().iter().map(|(h, v)| (h / &k, *v)).collect();
                    slots[r] = Some(StepFunction::new(bp).expect("rescaling keeps order"));
                }
                None => others.push((d, f)),
            }
        }
        let [Some(east), Some(west), Some(north), Some(south)] = slots else {
            return Err(ReconstructError::Input(
                "missing a cardinal direction".into(),
            ));
        };
        let (a, b) = (others.remove(0), others.remove(0));
        if a.0 != b.0.negate() {
            return Err(ReconstructError::Input(format!(
                "non-cardinal directions {} and {} are not antipodal",
                a.0, b.0
            )));
        }
        let (third, third_opposite) = if a.0.dx().signum() > 0 {
            (a, b)
        } else {
            (b, a)
        };
        if third.0.dy().signum() <= 0 || third.0.dx().signum() <= 0 {
            return Err(ReconstructError::Input(format!(
                "third direction {} is not of the form (1, t) with t > 0",
                third.0
            )));
        }
        Ok(ReconstructionInput {
            east,
            west,
            north,
            south,
            third,
            third_opposite,
        })
    }

    pub fn third_direction(&self) -> &Direction {
        &self.third.0
    }

    /// Slope parameter `t` of `s3 = (1, t)`.
    pub fn t(&self) -> ExactScalar {
        self.third.0.dy() / self.third.0.dx()
    }

    pub fn cardinal_lines(&self) -> CardinalLines {
        let [e, w, n, s] = Direction::cardinals();
        cardinal_witness_lines(&[
            (e, self.east.clone()),
            (w, self.west.clone()),
            (n, self.north.clone()),
            (s, self.south.clone()),
        ])
    }

    /// Heights of the `s3` witness lines measured along `(1, t)`: the union
    /// of the `s3` heights and the negated `-s3` heights.
    pub fn third_heights(&self) -> Vec<ExactScalar> {
        let (d, f) = &self.third;
        let (od, of) = &self.third_opposite;
        let scale = d.dx().clone();
        let oscale = -od.dx();
        let mut w: Vec<ExactScalar> = witness_heights(f)
            .into_iter()
            .map(|h| h / &scale)
            .chain(witness_heights(of).into_iter().map(|h| -(h / &oscale)))
            .collect();
        w.sort();
        w.dedup();
        w
    }
}

fn merge_antipodal(pos: Vec<ExactScalar>, neg: Vec<ExactScalar>) -> Vec<ExactScalar> {
    let mut out: Vec<ExactScalar> = pos.into_iter().chain(neg.into_iter().map(|h| -h)).collect();
    out.sort();
    out.dedup();
    out
}

/// Vertical and horizontal witness lines from the four cardinal curves,
/// given in any order and at any positive scale.
pub fn cardinal_witness_lines(curves: &[(Direction, StepFunction)]) -> CardinalLines {
    let [e, w, n, s] = Direction::cardinals();
    let heights = |c: &Direction| {
        curves
            .iter()
            .filter(|(d, _)| d == c)
            .flat_map(|(d, f)| canonical_heights(d, f))
            .collect::<Vec<_>>()
    };
    CardinalLines {
        xs: merge_antipodal(heights(&e), heights(&w)),
        ys: merge_antipodal(heights(&n), heights(&s)),
    }
}

/// `(1, t)` with `t = delta / (2 H)`, `delta` the smallest gap in `xs` and
/// `H` the spread of `ys`; `(1, 1)` for a single vertex.
///
/// Along any line `x + t*y = h` the abscissa drifts by at most `t*H =
/// delta/2` over the whole vertical extent of the grid, so the line meets at
/// most one column, and within a column heights are injective in `y`.
pub fn select_third_direction(lines: &CardinalLines) -> Direction {
    let t = third_direction_slope(lines);
    Direction::new(ExactScalar::one(), t).expect("t is positive")
}

fn third_direction_slope(lines: &CardinalLines) -> ExactScalar {
    let (xs, ys) = (&lines.xs, &lines.ys);
    if xs.len() < 2 || ys.len() < 2 {
        return ExactScalar::one();
    }
    let delta = xs
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .expect("at least one gap");
    let spread = &ys[ys.len() - 1] - &ys[0];
    delta / (ExactScalar::from(2) * spread)
}

/// Matches each `s3` height (measured along `(1, t)`, in any order) against
/// the cardinal grid.
///
/// For a height `h` the column is the largest `x <= h - t*min(ys)`; the row
/// is then the exact solution `y = (h - x) / t`, which must be present in
/// `ys`. Each lookup is a binary search.
pub fn match_grid(
    lines: &CardinalLines,
    t: &ExactScalar,
    heights: &[ExactScalar],
) -> Result<Vec<Point>, ReconstructError> {
    let (xs, ys) = (&lines.xs, &lines.ys);
    let mut out = Vec::with_capacity(heights.len());
    let Some(ymin) = ys.first() else {
        return match heights.first() {
            Some(h) => Err(ReconstructError::NoRowMatch(h.to_string())),
            None => Ok(out),
        };
    };
    let lift = t * ymin;
    for h in heights {
        let u = h - &lift;
        let col = xs.partition_point(|x| x <= &u);
        if col == 0 {
            return Err(ReconstructError::NoColumnMatch(h.to_string()));
        }
        let x = &xs[col - 1];
        let y = (h - x) / t;
        if ys.binary_search(&y).is_err() {
            return Err(ReconstructError::NoRowMatch(h.to_string()));
        }
        out.push(Point { x: x.clone(), y });
    }
    out.sort();
    out.dedup();
    if out.len() != xs.len() || out.len() != ys.len() {
        return Err(ReconstructError::CountMismatch {
            expected: xs.len().max(ys.len()),
            found: out.len(),
        });
    }
    Ok(out)
}

/// Vertex locations from six curves, sorted by `(x, y)`.
///
/// Fails with [`ReconstructError::Input`] if `t` is too large for the grid
/// (`t * H >= delta`), since lines could then meet two columns.
pub fn reconstruct_vertices(input: &ReconstructionInput) -> Result<Vec<Point>, ReconstructError> {
    let lines = input.cardinal_lines();
    let t = input.t();
    if lines.xs.len() >= 2 && lines.ys.len() >= 2 {
        let limit = third_direction_slope(&lines) * ExactScalar::from(2);
        if t >= limit {
            return Err(ReconstructError::Input(format!(
                "third direction slope {t} is not below {limit}, the grid's separation bound"
            )));
        }
    }
    match_grid(&lines, &t, &input.third_heights())
}

/// The six curves of `g` that [`reconstruct_vertices`] consumes, with the
/// third direction chosen from `g`'s own cardinal lines.
pub fn six_curves(g: &PlaneGraph) -> Vec<(Direction, StepFunction)> {
    let mut curves: Vec<(Direction, StepFunction)> = Direction::cardinals()
        .into_iter()
        .map(|c| {
            let f = compute_ecc(g, &c);
            (c, f)
        })
        .collect();
    let lines = cardinal_witness_lines(&curves);
    let s3 = select_third_direction(&lines);
    let f3 = compute_ecc(g, &s3);
    let f3n = compute_ecc(g, &s3.negate());
    curves.push((s3.negate(), f3n));
    curves.push((s3, f3));
    curves
}

/// Validates `g`, rejects degree-2 vertices, then reconstructs from the six
/// curves of `g`. The result equals `g`'s vertex set.
pub fn reconstruct_from_graph(g: &PlaneGraph) -> Result<Vec<Point>, ReconstructError> {
    g.validate()?;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 2) {
        return Err(ReconstructError::Degree2Present(v));
    }
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    reconstruct_vertices(&ReconstructionInput::from_curves(six_curves(g))?)
}
