//! Points, direction rays, plane graphs and the exact predicates over them.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{GeomError, InvalidGraph};
use crate::scalar::{sign, ExactScalar};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: ExactScalar,
    pub y: ExactScalar,
}

impl Point {
    pub fn new(x: impl Into<ExactScalar>, y: impl Into<ExactScalar>) -> Self {
        Point {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        }
    }

    pub fn dot(&self, other: &Point) -> ExactScalar {
        &self.x * &other.x + &self.y * &other.y
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

/// A direction ray. Any positive multiple denotes the same ray, and
/// equality/hashing follow that equivalence; the stored components are
/// the representative used to measure heights.
#[derive(Clone)]
pub struct Direction {
    dx: ExactScalar,
    dy: ExactScalar,
}

impl Direction {
    pub fn new(dx: impl Into<ExactScalar>, dy: impl Into<ExactScalar>) -> Result<Self, GeomError> {
        let (dx, dy) = (dx.into(), dy.into());
        if dx.is_zero() && dy.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        Ok(Direction { dx, dy })
    }

    /// Integer components; panics on `(0, 0)`.
    pub fn from_ints(dx: i64, dy: i64) -> Self {
        Direction::new(dx, dy).expect("nonzero direction")
    }

    pub fn dx(&self) -> &ExactScalar {
        &self.dx
    }

    pub fn dy(&self) -> &ExactScalar {
        &self.dy
    }

    pub fn as_vector(&self) -> Point {
        Point {
            x: self.dx.clone(),
            y: self.dy.clone(),
        }
    }

    pub fn negate(&self) -> Direction {
        Direction {
            dx: -&self.dx,
            dy: -&self.dy,
        }
    }

    /// `k * self` for positive `k`.
    pub fn scaled(&self, k: &ExactScalar) -> Direction {
        assert!(k.signum() > 0, "scale must be positive");
        Direction {
            dx: &self.dx * k,
            dy: &self.dy * k,
        }
    }

    /// Coprime integer components of the same ray.
    pub fn canonical_ints(&self) -> (BigInt, BigInt) {
        let l = self.dx.denom().lcm(self.dy.denom());
        let a = self.dx.numer() * (&l / self.dx.denom());
        let b = self.dy.numer() * (&l / self.dy.denom());
        let g = a.gcd(&b);
        (a / &g, b / g)
    }

    pub fn canonical(&self) -> Direction {
        let (a, b) = self.canonical_ints();
        Direction {
            dx: a.into(),
            dy: b.into(),
        }
    }

    /// Positive factor `k` with `self == k * self.canonical()`.
    pub fn scale_from_canonical(&self) -> ExactScalar {
        let (a, b) = self.canonical_ints();
        if !a.is_zero() {
            &self.dx / ExactScalar::from(a)
        } else {
            &self.dy / ExactScalar::from(b)
        }
    }

    /// Canonical representative of the line class `{s, -s}`: coprime
    /// integers with positive leading nonzero entry.
    pub fn axis(&self) -> (BigInt, BigInt) {
        let (a, b) = self.canonical_ints();
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            (-a, -b)
        } else {
            (a, b)
        }
    }

    pub fn is_parallel(&self, other: &Direction) -> bool {
        (&self.dx * &other.dy - &self.dy * &other.dx).is_zero()
    }

    pub fn is_cardinal(&self) -> bool {
        self.dx.is_zero() || self.dy.is_zero()
    }

    pub fn cardinals() -> [Direction; 4] {
        [
            Direction::from_ints(1, 0),
            Direction::from_ints(-1, 0),
            Direction::from_ints(0, 1),
            Direction::from_ints(0, -1),
        ]
    }
}

impl PartialEq for Direction {
    fn eq(&self, other: &Self) -> bool {
        self.is_parallel(other) && (&self.dx * &other.dx + &self.dy * &other.dy).signum() > 0
    }
}

impl Eq for Direction {}

impl Hash for Direction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_ints().hash(state);
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.dx, self.dy)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.dx, self.dy)
    }
}

/// Inner product of `p` with the ray representative `s`.
pub fn height(p: &Point, s: &Direction) -> ExactScalar {
    &p.x * &s.dx + &p.y * &s.dy
}

/// Quadrant of `p` relative to `origin`: 1 (+,+), 2 (-,+), 3 (-,-), 4 (+,-).
pub fn quadrant(p: &Point, origin: &Point) -> Result<u8, GeomError> {
    let d = p.sub(origin);
    match (d.x.signum(), d.y.signum()) {
        (1, 1) => Ok(1),
        (-1, 1) => Ok(2),
        (-1, -1) => Ok(3),
        (1, -1) => Ok(4),
        _ => Err(GeomError::QuadrantBoundary),
    }
}

/// Sign of the determinant `(b - a) x (c - a)`; `Greater` is a left turn.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Ordering {
    let det = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    sign(&det)
}

/// Straight-line embedded graph. Structural invariants (edge ordering,
/// ranges, no loops or duplicates) hold by construction; geometric ones are
/// checked by [`validate_general_position`] and [`validate_planarity`].
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    vertices: Vec<Point>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl PlaneGraph {
    /// Edges may be given in either orientation; they are stored as `(i, j)`
    /// with `i < j` in input order.
    pub fn new(vertices: Vec<Point>, edges: Vec<(usize, usize)>) -> Result<Self, GeomError> {
        let n = vertices.len();
        let mut seen = HashSet::with_capacity(edges.len());
        let mut normalized = Vec::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GeomError::Edge(a, b, "index out of range"));
            }
            if a == b {
                return Err(GeomError::Edge(a, b, "self-loop"));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GeomError::Edge(a, b, "duplicate edge"));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            normalized.push(e);
        }
        Ok(PlaneGraph {
            vertices,
            edges: normalized,
            adjacency,
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &Point {
        &self.vertices[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GeomError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GeomError::VertexIndex(v))
        }
    }

    /// Runs both validators, general position first.
    pub fn validate(&self) -> Result<(), InvalidGraph> {
        let gp = validate_general_position(self);
        if !gp.is_empty() {
            return Err(InvalidGraph::GeneralPosition(gp));
        }
        let pl = validate_planarity(self);
        if !pl.is_empty() {
            return Err(InvalidGraph::Planarity(pl));
        }
        Ok(())
    }
}

impl fmt::Debug for PlaneGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlaneGraph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    DuplicateX(Vec<usize>),
    DuplicateY(Vec<usize>),
    Collinear(Vec<usize>),
    Crossing((usize, usize), (usize, usize)),
    VertexOnEdge { vertex: usize, edge: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateX(v) => write!(f, "vertices {v:?} share an x-coordinate"),
            Violation::DuplicateY(v) => write!(f, "vertices {v:?} share a y-coordinate"),
            Violation::Collinear(v) => write!(f, "vertices {v:?} are collinear"),
            Violation::Crossing(a, b) => write!(f, "edges {a:?} and {b:?} cross"),
            Violation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies inside edge {edge:?}")
            }
        }
    }
}

fn duplicate_groups(g: &PlaneGraph, key: impl Fn(&Point) -> &ExactScalar) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| key(g.vertex(a)).cmp(key(g.vertex(b))).then(a.cmp(&b)));
    let mut groups = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && key(g.vertex(order[j])) == key(g.vertex(order[i])) {
            j += 1;
        }
        if j - i > 1 {
            let mut grp = order[i..j].to_vec();
            grp.sort_unstable();
            groups.push(grp);
        }
        i = j;
    }
    groups.sort();
    groups
}

/// Slope key of the line through two distinct points; `None` is vertical.
fn slope(a: &Point, b: &Point) -> Option<ExactScalar> {
    let dx = &b.x - &a.x;
    if dx.is_zero() {
        None
    } else {
        Some((&b.y - &a.y) / dx)
    }
}

/// Distinct coordinates and no three collinear vertices. Violations are
/// reported in a canonical order, so the result does not depend on vertex
/// order beyond the indices it names.
pub fn validate_general_position(g: &PlaneGraph) -> Vec<Violation> {
    let mut out: Vec<Violation> = duplicate_groups(g, |p| &p.x)
        .into_iter()
        .map(Violation::DuplicateX)
        .collect();
    out.extend(
        duplicate_groups(g, |p| &p.y)
            .into_iter()
            .map(Violation::DuplicateY),
    );

    // Coincident points would make every triple through them collinear; they
    // are already flagged above, so only distinct points take part here.
    let mut reported: HashSet<Vec<usize>> = HashSet::new();
    let mut collinear = Vec::new();
    for i in 0..g.n() {
        let mut lines: HashMap<Option<ExactScalar>, Vec<usize>> = HashMap::new();
        for j in (i + 1)..g.n() {
            if g.vertex(i) == g.vertex(j) {
                continue;
            }
            lines
                .entry(slope(g.vertex(i), g.vertex(j)))
                .or_default()
                .push(j);
        }
        for (_, js) in lines {
            if js.len() < 2 {
                continue;
            }
            let mut set = Vec::with_capacity(js.len() + 1);
            set.push(i);
            set.extend(js);
            set.sort_unstable();
            // A line whose smallest member precedes i was reported from there.
            if reported.iter().any(|r| set.iter().all(|v| r.contains(v))) {
                continue;
            }
            reported.insert(set.clone());
            collinear.push(set);
        }
    }
    collinear.sort();
    out.extend(collinear.into_iter().map(Violation::Collinear));
    out
}

fn on_closed_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orientation(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Whether closed segments `ab` and `cd` share a point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
    {
        return true;
    }
    on_closed_segment(a, b, c)
        || on_closed_segment(a, b, d)
        || on_closed_segment(c, d, a)
        || on_closed_segment(c, d, b)
}

/// No two open edges meet and no vertex lies inside an edge.
pub fn validate_planarity(g: &PlaneGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let edges = g.edges();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    let min_x = |e: (usize, usize)| g.vertex(e.0).x.clone().min(g.vertex(e.1).x.clone());
    let max_x = |e: (usize, usize)| g.vertex(e.0).x.clone().max(g.vertex(e.1).x.clone());
    order.sort_by_key(|&k| min_x(edges[k]));
    let maxes: Vec<ExactScalar> = edges.iter().map(|&e| max_x(e)).collect();

    for (pos, &ei) in order.iter().enumerate() {
        let (a, b) = edges[ei];
        for &ej in &order[pos + 1..] {
            let (c, d) = edges[ej];
            if min_x(edges[ej]) > maxes[ei] {
                break;
            }
            if a == c || a == d || b == c || b == d {
                // Adjacent edges only overlap if collinear, which general
                // position excludes; the vertex-on-edge scan below still
                // catches a shared endpoint lying inside the other edge.
                continue;
            }
            let (pa, pb, pc, pd) = (g.vertex(a), g.vertex(b), g.vertex(c), g.vertex(d));
            if segments_intersect(pa, pb, pc, pd) {
                let (e1, e2) = if edges[ei] < edges[ej] {
                    (edges[ei], edges[ej])
                } else {
                    (edges[ej], edges[ei])
                };
                out.push(Violation::Crossing(e1, e2));
            }
        }
    }
    for &(a, b) in edges {
        let (pa, pb) = (g.vertex(a), g.vertex(b));
        for v in 0..g.n() {
            if v == a || v == b {
                continue;
            }
            let p = g.vertex(v);
            if p != pa && p != pb && on_closed_segment(pa, pb, p) {
                out.push(Violation::VertexOnEdge {
                    vertex: v,
                    edge: (a, b),
                });
            }
        }
    }
    out.sort_by_key(|v| format!("{v:?}"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn pt(x: &str, y: &str) -> Point {
        Point::new(q(x), q(y))
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(&pt("0", "0"), &Direction::from_ints(1, 0)), q("0"));
        assert_eq!(height(&pt("2", "3"), &Direction::from_ints(0, 1)), q("3"));
        let s = Direction::new(q("1"), q("1/2")).unwrap();
        assert_eq!(height(&pt("2", "3"), &s), q("7/2"));
    }

    #[test]
    fn quadrant_examples() {
        let o = pt("0", "0");
        assert_eq!(quadrant(&pt("1", "2"), &o), Ok(1));
        assert_eq!(quadrant(&pt("-1", "2"), &o), Ok(2));
        assert_eq!(quadrant(&pt("-1", "-2"), &o), Ok(3));
        assert_eq!(quadrant(&pt("1", "-2"), &o), Ok(4));
        assert_eq!(
            quadrant(&pt("1", "0"), &o),
            Err(GeomError::QuadrantBoundary)
        );
        assert_eq!(
            quadrant(&pt("0", "5"), &o),
            Err(GeomError::QuadrantBoundary)
        );
    }

    #[test]
    fn direction_rays() {
        let a = Direction::from_ints(2, 4);
        let b = Direction::new(q("1/3"), q("2/3")).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, a.negate());
        assert!(a.is_parallel(&a.negate()));
        assert_eq!(a.canonical_ints(), (1.into(), 2.into()));
        assert_eq!(b.scale_from_canonical(), q("1/3"));
        assert_eq!(
            Direction::from_ints(0, -3).canonical_ints(),
            (0.into(), (-1).into())
        );
        assert_eq!(Direction::from_ints(0, -3).axis(), (0.into(), 1.into()));
        assert_eq!(Direction::new(0, 0).unwrap_err(), GeomError::ZeroDirection);
    }

    #[test]
    fn general_position_examples() {
        let tri = PlaneGraph::new(
            vec![pt("0", "0"), pt("1", "2"), pt("2", "1")],
            vec![(0, 1), (1, 2), (0, 2)],
        )
        .unwrap();
        assert!(validate_general_position(&tri).is_empty());

        let dup = PlaneGraph::new(vec![pt("0", "0"), pt("0", "1")], vec![]).unwrap();
        assert_eq!(
            validate_general_position(&dup),
            vec![Violation::DuplicateX(vec![0, 1])]
        );

        let line = PlaneGraph::new(vec![pt("0", "0"), pt("1", "1"), pt("2", "2")], vec![]).unwrap();
        assert_eq!(
            validate_general_position(&line),
            vec![Violation::Collinear(vec![0, 1, 2])]
        );
    }

    #[test]
    fn four_collinear_reported_once() {
        let g = PlaneGraph::new(
            vec![
                pt("3", "3"),
                pt("0", "0"),
                pt("1", "1"),
                pt("2", "2"),
                pt("5", "-7"),
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(
            validate_general_position(&g),
            vec![Violation::Collinear(vec![0, 1, 2, 3])]
        );
    }

    #[test]
    fn planarity_examples() {
        let path = PlaneGraph::new(
            vec![pt("0", "0"), pt("1", "2"), pt("2", "1")],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        assert!(validate_planarity(&path).is_empty());

        let cross = PlaneGraph::new(
            vec![pt("0", "0"), pt("2", "2"), pt("0", "2"), pt("2", "0")],
            vec![(0, 1), (2, 3)],
        )
        .unwrap();
        assert_eq!(
            validate_planarity(&cross),
            vec![Violation::Crossing((0, 1), (2, 3))]
        );

        let near = PlaneGraph::new(
            vec![pt("0", "0"), pt("1", "1001/1000"), pt("2", "2")],
            vec![(0, 2)],
        )
        .unwrap();
        assert!(validate_planarity(&near).is_empty());

        let on =
            PlaneGraph::new(vec![pt("0", "0"), pt("1", "1"), pt("2", "2")], vec![(0, 2)]).unwrap();
        assert_eq!(
            validate_planarity(&on),
            vec![Violation::VertexOnEdge {
                vertex: 1,
                edge: (0, 2)
            }]
        );
    }

    #[test]
    fn structural_errors() {
        let v = vec![pt("0", "0"), pt("1", "2")];
        assert!(PlaneGraph::new(v.clone(), vec![(0, 0)]).is_err());
        assert!(PlaneGraph::new(v.clone(), vec![(0, 2)]).is_err());
        assert!(PlaneGraph::new(v.clone(), vec![(0, 1), (1, 0)]).is_err());
        let g = PlaneGraph::new(v, vec![(1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }
}
