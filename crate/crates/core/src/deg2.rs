//! Visibility of degree-2 vertices.
//!
//! A degree-2 vertex `v` with neighbour offsets `u1`, `u2` changes the Euler
//! characteristic only when both neighbours lie strictly on the same side of
//! `v`'s filtration line: both below gives -1, both above +1. Those
//! directions form two antipodal open cones bounded by the rays
//! perpendicular to `u1` and `u2`, and the cones shrink to nothing as the
//! three points approach a line.

use std::f64::consts::PI;
use std::fmt;

use crate::ecc::delta_chi;
use crate::error::{Deg2Error, EccError};
use crate::geom::{quadrant, Direction, PlaneGraph, Point};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Deg2Kind {
    SameQuadrant,
    NeighboringQuadrants,
    OppositeQuadrants,
}

impl fmt::Display for Deg2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Deg2Kind::SameQuadrant => "same",
            Deg2Kind::NeighboringQuadrants => "neighboring",
            Deg2Kind::OppositeQuadrants => "opposite",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Deg2Config {
    pub kind: Deg2Kind,
    /// Quadrants of the two neighbours relative to the vertex, sorted.
    pub quadrants: (u8, u8),
}

impl Deg2Config {
    pub fn from_quadrants(a: u8, b: u8) -> Self {
        let quadrants = (a.min(b), a.max(b));
        let kind = match (quadrants.1 - quadrants.0) % 4 {
            0 => Deg2Kind::SameQuadrant,
            2 => Deg2Kind::OppositeQuadrants,
            _ => Deg2Kind::NeighboringQuadrants,
        };
        Deg2Config { kind, quadrants }
    }
}

fn degree_two_offsets(g: &PlaneGraph, v: usize) -> Result<(Point, Point), Deg2Error> {
    g.check_vertex(v)?;
    match g.neighbors(v) {
        &[a, b] => {
            let p = g.vertex(v);
            Ok((g.vertex(a).sub(p), g.vertex(b).sub(p)))
        }
        other => Err(Deg2Error::NotDegreeTwo {
            vertex: v,
            degree: other.len(),
        }),
    }
}

pub fn classify_deg2(g: &PlaneGraph, v: usize) -> Result<Deg2Config, Deg2Error> {
    g.check_vertex(v)?;
    if g.degree(v) != 2 {
        return Err(Deg2Error::NotDegreeTwo {
            vertex: v,
            degree: g.degree(v),
        });
    }
    let p = g.vertex(v);
    let [a, b] = [g.neighbors(v)[0], g.neighbors(v)[1]];
    let qa = quadrant(g.vertex(a), p)?;
    let qb = quadrant(g.vertex(b), p)?;
    Ok(Deg2Config::from_quadrants(qa, qb))
}

/// Cardinal directions from which a degree-2 vertex in configuration `cfg`
/// changes the ECC, in the order `(1,0), (-1,0), (0,1), (0,-1)`.
///
/// Neighbours in adjacent quadrants share the sign of one coordinate; the
/// vertex is then witnessed exactly along that coordinate's axis.
pub fn predicted_cardinal_witnesses(cfg: Deg2Config) -> Vec<Direction> {
    let [east, west, north, south] = Direction::cardinals();
    match cfg.kind {
        Deg2Kind::SameQuadrant => vec![east, west, north, south],
        Deg2Kind::OppositeQuadrants => vec![],
        Deg2Kind::NeighboringQuadrants => match cfg.quadrants {
            // 1|2 share +y, 3|4 share -y
            (1, 2) | (3, 4) => vec![north, south],
            // 2|3 share -x, 1|4 share +x
            _ => vec![east, west],
        },
    }
}

/// Cardinal directions (same order as the prediction) where `delta_chi` of
/// `v` is nonzero. Works for any degree.
pub fn cardinal_witness_profile(g: &PlaneGraph, v: usize) -> Result<Vec<Direction>, EccError> {
    let mut out = Vec::new();
    for c in Direction::cardinals() {
        if delta_chi(g, v, &c)? != 0 {
            out.push(c);
        }
    }
    Ok(out)
}

/// Strictly acute angle at `v`: the neighbour offsets have positive dot
/// product. A right angle is not acute.
pub fn is_acute(g: &PlaneGraph, v: usize) -> Result<bool, Deg2Error> {
    let (u1, u2) = degree_two_offsets(g, v)?;
    Ok(u1.dot(&u2).signum() > 0)
}

fn cross(a: &Point, b: &Point) -> ExactScalar {
    &a.x * &b.y - &a.y * &b.x
}

/// Open cone of directions strictly counter-clockwise from `from` and
/// strictly clockwise from `to`; the angle from `from` to `to` is below pi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub from: Direction,
    pub to: Direction,
    /// +1 where the ECC rises at the vertex, -1 where it falls.
    pub sign: i8,
}

impl Arc {
    pub fn contains(&self, s: &Direction) -> bool {
        let (a, b, v) = (self.from.as_vector(), self.to.as_vector(), s.as_vector());
        cross(&a, &v).signum() > 0 && cross(&v, &b).signum() > 0
    }

    /// Angle from `from` to `to` in radians.
    pub fn measure(&self) -> f64 {
        let (a, b) = (self.from.as_vector(), self.to.as_vector());
        let c = cross(&a, &b).to_f64();
        let d = a.dot(&b).to_f64();
        c.atan2(d)
    }

    /// A direction strictly inside: `alpha * from + beta * to` for positive
    /// weights.
    pub fn interior(&self, alpha: &ExactScalar, beta: &ExactScalar) -> Direction {
        let dx = alpha * self.from.dx() + beta * self.to.dx();
        let dy = alpha * self.from.dy() + beta * self.to.dy();
        Direction::new(dx, dy).expect("cone narrower than pi has nonzero interior")
    }
}

/// Directions witnessing a degree-2 vertex: zero or two antipodal arcs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArcSet {
    pub arcs: Vec<Arc>,
}

impl ArcSet {
    /// Sign of the ECC change at the vertex seen from `s`, or 0 outside
    /// every arc.
    pub fn sign_at(&self, s: &Direction) -> i8 {
        self.arcs
            .iter()
            .find(|a| a.contains(s))
            .map_or(0, |a| a.sign)
    }

    pub fn contains(&self, s: &Direction) -> bool {
        self.sign_at(s) != 0
    }
}

pub fn witness_arcs(g: &PlaneGraph, v: usize) -> Result<ArcSet, Deg2Error> {
    let (u1, u2) = degree_two_offsets(g, v)?;
    let c = cross(&u1, &u2);
    if c.is_zero() {
        if u1.dot(&u2).signum() < 0 {
            // v strictly between its neighbours on one line: one is always
            // above and one below.
            return Ok(ArcSet::default());
        }
        return Err(Deg2Error::Geom(crate::error::GeomError::Edge(
            g.neighbors(v)[0],
            g.neighbors(v)[1],
            "neighbours on one ray from the vertex",
        )));
    }
    // Of the two rays perpendicular to u1, the boundary of the cone
    // {s.u1 > 0, s.u2 > 0} is the one with a positive product against u2;
    // that is rot90(u1) exactly when cross(u1, u2) > 0.
    let rot_ccw = |u: &Point| Direction::new(-&u.y, u.x.clone()).expect("nonzero offset");
    let rot_cw = |u: &Point| Direction::new(u.y.clone(), -&u.x).expect("nonzero offset");
    let (b1, b2) = if c.signum() > 0 {
        (rot_ccw(&u1), rot_cw(&u2))
    } else {
        (rot_cw(&u1), rot_ccw(&u2))
    };
    let (from, to) = if cross(&b1.as_vector(), &b2.as_vector()).signum() > 0 {
        (b1, b2)
    } else {
        (b2, b1)
    };
    let above = Arc {
        from: from.clone(),
        to: to.clone(),
        sign: 1,
    };
    let below = Arc {
        from: from.negate(),
        to: to.negate(),
        sign: -1,
    };
    Ok(ArcSet {
        arcs: vec![above, below],
    })
}

/// Total angular measure of the arcs (radians, floating point).
pub fn arc_measure(a: &ArcSet) -> f64 {
    a.arcs
        .iter()
        .map(Arc::measure)
        .sum::<f64>()
        .clamp(0.0, 2.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::fixture;

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn deg2_graph(v: (&str, &str), a: (&str, &str), b: (&str, &str)) -> PlaneGraph {
        let p = |(x, y): (&str, &str)| Point::new(q(x), q(y));
        PlaneGraph::new(vec![p(v), p(a), p(b)], vec![(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn classification_examples() {
        let same = deg2_graph(("0", "0"), ("1", "2"), ("2", "1"));
        assert_eq!(
            classify_deg2(&same, 0).unwrap(),
            Deg2Config {
                kind: Deg2Kind::SameQuadrant,
                quadrants: (1, 1)
            }
        );
        let neighbor = deg2_graph(("1", "2"), ("0", "0"), ("2", "1/2"));
        assert_eq!(
            classify_deg2(&neighbor, 0).unwrap(),
            Deg2Config {
                kind: Deg2Kind::NeighboringQuadrants,
                quadrants: (3, 4)
            }
        );
        let opposite = deg2_graph(("0", "0"), ("-1", "1/2"), ("1", "-1/3"));
        assert_eq!(
            classify_deg2(&opposite, 0).unwrap(),
            Deg2Config {
                kind: Deg2Kind::OppositeQuadrants,
                quadrants: (2, 4)
            }
        );
        assert!(matches!(
            classify_deg2(&opposite, 1),
            Err(Deg2Error::NotDegreeTwo {
                vertex: 1,
                degree: 1
            })
        ));
        assert_eq!(
            Deg2Config::from_quadrants(4, 1).kind,
            Deg2Kind::NeighboringQuadrants
        );
    }

    #[test]
    fn predictions() {
        let [e, w, n, s] = Direction::cardinals();
        assert_eq!(
            predicted_cardinal_witnesses(Deg2Config::from_quadrants(1, 1)),
            vec![e.clone(), w.clone(), n.clone(), s.clone()]
        );
        assert_eq!(
            predicted_cardinal_witnesses(Deg2Config::from_quadrants(3, 4)),
            vec![n.clone(), s.clone()]
        );
        assert_eq!(
            predicted_cardinal_witnesses(Deg2Config::from_quadrants(1, 4)),
            vec![e, w]
        );
        assert!(predicted_cardinal_witnesses(Deg2Config::from_quadrants(2, 4)).is_empty());
    }

    #[test]
    fn measured_profiles_match() {
        let same = deg2_graph(("0", "0"), ("1", "2"), ("2", "1"));
        let deltas: Vec<i64> = Direction::cardinals()
            .iter()
            .map(|c| delta_chi(&same, 0, c).unwrap())
            .collect();
        assert_eq!(deltas, vec![1, -1, 1, -1]);
        assert_eq!(cardinal_witness_profile(&same, 0).unwrap().len(), 4);

        let neighbor = deg2_graph(("1", "2"), ("0", "0"), ("2", "1/2"));
        assert_eq!(
            cardinal_witness_profile(&neighbor, 0).unwrap(),
            vec![Direction::from_ints(0, 1), Direction::from_ints(0, -1)]
        );
        let opposite = deg2_graph(("0", "0"), ("-1", "1/2"), ("1", "-1/3"));
        assert!(cardinal_witness_profile(&opposite, 0).unwrap().is_empty());
    }

    #[test]
    fn acute_examples() {
        assert!(is_acute(&deg2_graph(("0", "0"), ("1", "2"), ("2", "1")), 0).unwrap());
        assert!(!is_acute(&deg2_graph(("0", "0"), ("1", "1/10"), ("-1", "1/10")), 0).unwrap());
        // dot = -1/100 + 1/100 = 0: a right angle is excluded.
        assert!(!is_acute(&deg2_graph(("0", "0"), ("1", "1/100"), ("-1/100", "1")), 0).unwrap());
    }

    #[test]
    fn right_angle_arcs_are_quarter_turns() {
        let g = deg2_graph(("0", "0"), ("1", "1/100"), ("-1/100", "1"));
        let arcs = witness_arcs(&g, 0).unwrap();
        assert_eq!(arcs.arcs.len(), 2);
        for a in &arcs.arcs {
            assert!((a.measure() - PI / 2.0).abs() < 1e-12);
        }
        assert!((arc_measure(&arcs) - PI).abs() < 1e-12);
    }

    #[test]
    fn arcs_are_antipodal_and_signed() {
        let g = fixture("fig2_collinear(1/8)").unwrap();
        let arcs = witness_arcs(&g, 1).unwrap();
        let up = &arcs.arcs[0];
        let down = &arcs.arcs[1];
        assert_eq!((up.sign, down.sign), (1, -1));
        let mid = up.interior(&ExactScalar::one(), &ExactScalar::one());
        assert_eq!(arcs.sign_at(&mid), 1);
        assert_eq!(arcs.sign_at(&mid.negate()), -1);
        assert_eq!(delta_chi(&g, 1, &mid).unwrap(), 1);
        assert_eq!(delta_chi(&g, 1, &mid.negate()).unwrap(), -1);
        // The boundary rays themselves are excluded.
        assert!(!arcs.contains(&up.from));
        assert!(!arcs.contains(&up.to));
    }

    #[test]
    fn collinear_limit_has_no_arcs() {
        let g = deg2_graph(("1", "1/3"), ("0", "0"), ("2", "2/3"));
        let arcs = witness_arcs(&g, 0).unwrap();
        assert!(arcs.arcs.is_empty());
        assert_eq!(arc_measure(&arcs), 0.0);
    }

    #[test]
    fn arc_measure_shrinks_with_t() {
        let mut prev = f64::INFINITY;
        for k in 0..=10 {
            let g = fixture(&format!("fig2_collinear(1/{})", 1u32 << k)).unwrap();
            let m = arc_measure(&witness_arcs(&g, 1).unwrap());
            assert!(m < prev, "t = 2^-{k}: {m} !< {prev}");
            prev = m;
        }
        assert!(prev < 0.01);
    }
}
