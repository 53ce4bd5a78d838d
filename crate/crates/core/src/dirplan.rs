//! Direction plans: three witnessing directions per vertex such that the
//! full arrangement of witness lines has three-way crossings exactly at the
//! vertices.
//!
//! Selection is greedy over vertices in index order. Candidate directions
//! are integer rays drawn from a window that doubles after repeated
//! failures; for degree-2 vertices candidates are drawn from inside the
//! witness arcs, which can be arbitrarily thin. A candidate is accepted when
//! it witnesses its vertex, separates all vertex heights, is parallel to no
//! accepted direction, and none of its witness lines passes through an
//! existing crossing of two lines away from a vertex.
//!
//! Selection bookkeeping runs on integer homogeneous coordinates (the graph
//! is scaled by the common denominator of its coordinates). Verification is
//! separate: it recomputes every ECC, intersects every pair of witness
//! lines in exact rationals, and compares the three-way crossings with the
//! vertex set.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deg2::witness_arcs;
use crate::ecc::{compute_ecc, witness_heights};
use crate::error::PlanError;
use crate::geom::{Direction, PlaneGraph, Point};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DirectionPlan {
    /// `(vertex, its three directions)`.
    pub triples: Vec<(usize, [Direction; 3])>,
}

impl DirectionPlan {
    /// Every direction in the plan, duplicates (same ray) removed, in plan
    /// order.
    pub fn directions(&self) -> Vec<Direction> {
        let mut seen = HashSet::new();
        self.triples
            .iter()
            .flat_map(|(_, d)| d.iter())
            .filter(|d| seen.insert((*d).clone()))
            .cloned()
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArrangementReport {
    pub line_count: usize,
    /// Points where at least three pairwise non-parallel lines meet.
    pub triple_points: Vec<Point>,
    pub spurious: Vec<Point>,
    pub missing: Vec<Point>,
}

impl ArrangementReport {
    pub fn passes(&self) -> bool {
        self.spurious.is_empty() && self.missing.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Proposal {
    Uniform,
    /// Inside the witness arcs for degree-2 vertices, uniform otherwise.
    ArcGuided,
}

const START_WINDOW: i128 = 8;
const MAX_WINDOW: i128 = 1 << 16;
const ARC_MAX_WINDOW: i128 = 1 << 10;
const FAILS_PER_DOUBLING: usize = 16;

fn to_i128(v: &BigInt) -> Result<i128, PlanError> {
    v.to_i128().ok_or(PlanError::Overflow)
}

/// The graph scaled to integer coordinates.
struct IntGraph<'a> {
    g: &'a PlaneGraph,
    pts: Vec<(i128, i128)>,
}

impl<'a> IntGraph<'a> {
    fn new(g: &'a PlaneGraph) -> Result<Self, PlanError> {
        let mut l = BigInt::one();
        for p in g.vertices() {
            l = l.lcm(p.x.denom()).lcm(p.y.denom());
        }
        let scale = |v: &ExactScalar| to_i128(&(v.numer() * (&l / v.denom())));
        let pts = g
            .vertices()
            .iter()
            .map(|p| Ok((scale(&p.x)?, scale(&p.y)?)))
            .collect::<Result<Vec<_>, PlanError>>()?;
        // Keep enough headroom for products of three such magnitudes.
        if pts
            .iter()
            .any(|&(x, y)| x.abs() > 1 << 36 || y.abs() > 1 << 36)
        {
            return Err(PlanError::Overflow);
        }
        Ok(IntGraph { g, pts })
    }

    fn heights(&self, (a, b): (i128, i128)) -> Result<Vec<i128>, PlanError> {
        self.pts
            .iter()
            .map(|&(x, y)| {
                a.checked_mul(x)
                    .zip(b.checked_mul(y))
                    .and_then(|(p, q)| p.checked_add(q))
                    .ok_or(PlanError::Overflow)
            })
            .collect()
    }

    /// Heights if pairwise distinct.
    fn separating_heights(&self, d: (i128, i128)) -> Result<Option<Vec<i128>>, PlanError> {
        let hs = self.heights(d)?;
        let mut seen = HashSet::with_capacity(hs.len());
        Ok(hs.iter().all(|h| seen.insert(*h)).then_some(hs))
    }

    fn delta(&self, v: usize, hs: &[i128]) -> i64 {
        1 - self
            .g
            .neighbors(v)
            .iter()
            .filter(|&&u| hs[u] < hs[v])
            .count() as i64
    }
}

fn reduce((a, b): (i128, i128)) -> (i128, i128) {
    let g = a.gcd(&b);
    (a / g, b / g)
}

struct Proposer {
    rng: ChaCha8Rng,
    window: i128,
    fails: usize,
    /// Boundary rays of the `+1` arc, when arc guidance applies.
    arc: Option<((i128, i128), (i128, i128))>,
}

impl Proposer {
    fn new(g: &PlaneGraph, v: usize, seed: u64, proposal: Proposal) -> Result<Self, PlanError> {
        let arc = if proposal == Proposal::ArcGuided && g.degree(v) == 2 {
            let arcs = witness_arcs(g, v).map_err(|_| PlanError::ExhaustedTries {
                vertex: v,
                tries: 0,
            })?;
            match arcs.arcs.first() {
                Some(a) => {
                    let (f0, f1) = a.from.canonical_ints();
                    let (t0, t1) = a.to.canonical_ints();
                    Some((
                        (to_i128(&f0)?, to_i128(&f1)?),
                        (to_i128(&t0)?, to_i128(&t1)?),
                    ))
                }
                None => {
                    return Err(PlanError::ExhaustedTries {
                        vertex: v,
                        tries: 0,
                    })
                }
            }
        } else {
            None
        };
        Ok(Proposer {
            rng: ChaCha8Rng::seed_from_u64(seed),
            window: START_WINDOW,
            fails: 0,
            arc,
        })
    }

    fn failed(&mut self) {
        self.fails += 1;
        let cap = if self.arc.is_some() {
            ARC_MAX_WINDOW
        } else {
            MAX_WINDOW
        };
        if self.fails.is_multiple_of(FAILS_PER_DOUBLING) && self.window < cap {
            self.window *= 2;
        }
    }

    fn propose(&mut self) -> Result<(i128, i128), PlanError> {
        let w = self.window;
        if let Some((from, to)) = self.arc {
            let alpha = self.rng.gen_range(1..=w);
            let beta = self.rng.gen_range(1..=w);
            let comp = |p: i128, q: i128| {
                alpha
                    .checked_mul(p)
                    .zip(beta.checked_mul(q))
                    .and_then(|(x, y)| x.checked_add(y))
                    .ok_or(PlanError::Overflow)
            };
            let mut d = reduce((comp(from.0, to.0)?, comp(from.1, to.1)?));
            if self.rng.gen_bool(0.5) {
                d = (-d.0, -d.1);
            }
            return Ok(d);
        }
        loop {
            let d = (self.rng.gen_range(-w..=w), self.rng.gen_range(-w..=w));
            if d != (0, 0) {
                return Ok(reduce(d));
            }
        }
    }
}

fn to_direction((a, b): (i128, i128)) -> Direction {
    Direction::new(BigInt::from(a), BigInt::from(b)).expect("nonzero candidate")
}

/// A direction separating all vertex heights from which `v` is witnessed.
/// Degree-2 vertices are sampled inside their witness arcs.
pub fn sample_witnessing_direction(
    g: &PlaneGraph,
    v: usize,
    seed: u64,
    max_tries: usize,
) -> Result<Direction, PlanError> {
    sample_with_proposal(g, v, seed, max_tries, Proposal::ArcGuided).map(|(d, _)| d)
}

/// As [`sample_witnessing_direction`], with an explicit proposal scheme;
/// also returns the number of candidates drawn.
pub fn sample_with_proposal(
    g: &PlaneGraph,
    v: usize,
    seed: u64,
    max_tries: usize,
    proposal: Proposal,
) -> Result<(Direction, usize), PlanError> {
    g.check_vertex(v)?;
    let ig = IntGraph::new(g)?;
    let mut prop = Proposer::new(g, v, seed, proposal)?;
    for tries in 1..=max_tries {
        let d = prop.propose()?;
        if let Some(hs) = ig.separating_heights(d)? {
            if ig.delta(v, &hs) != 0 {
                return Ok((to_direction(d), tries));
            }
        }
        prop.failed();
    }
    Err(PlanError::ExhaustedTries {
        vertex: v,
        tries: max_tries,
    })
}

/// Normalised homogeneous point `(X, Y, W)` with `W > 0` and
/// `gcd(X, Y, W) = 1`.
type HPoint = (i128, i128, i128);

struct IntLine {
    a: i128,
    b: i128,
    c: i128,
    vertex: usize,
}

fn intersect(l: &IntLine, m: &IntLine) -> Result<HPoint, PlanError> {
    let mul = |p: i128, q: i128| p.checked_mul(q).ok_or(PlanError::Overflow);
    let sub = |p: i128, q: i128| p.checked_sub(q).ok_or(PlanError::Overflow);
    let w = sub(mul(l.a, m.b)?, mul(m.a, l.b)?)?;
    let x = sub(mul(l.c, m.b)?, mul(m.c, l.b)?)?;
    let y = sub(mul(l.a, m.c)?, mul(m.a, l.c)?)?;
    let s = if w < 0 { -1 } else { 1 };
    let g = x.gcd(&y).gcd(&w);
    Ok((s * x / g, s * y / g, s * w / g))
}

/// Accumulated arrangement during selection.
struct Arrangement {
    directions: Vec<(i128, i128)>,
    lines: Vec<IntLine>,
    /// Crossings of two lines through different vertices.
    crossings: HashSet<HPoint>,
}

impl Arrangement {
    fn new() -> Self {
        Arrangement {
            directions: Vec::new(),
            lines: Vec::new(),
            crossings: HashSet::new(),
        }
    }

    fn parallel_to_existing(&self, (a, b): (i128, i128)) -> bool {
        self.directions.iter().any(|&(p, q)| a * q == b * p)
    }

    /// Whether a line `a x + b y = c` with `c` in `cs` passes through a
    /// stored crossing.
    fn hits_crossing(&self, (a, b): (i128, i128), cs: &HashSet<i128>) -> Result<bool, PlanError> {
        for &(x, y, w) in &self.crossings {
            let num = a
                .checked_mul(x)
                .zip(b.checked_mul(y))
                .and_then(|(p, q)| p.checked_add(q))
                .ok_or(PlanError::Overflow)?;
            if num % w == 0 && cs.contains(&(num / w)) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn add(&mut self, d: (i128, i128), new_lines: Vec<IntLine>) -> Result<(), PlanError> {
        for l in &new_lines {
            for m in &self.lines {
                if l.vertex != m.vertex {
                    self.crossings.insert(intersect(l, m)?);
                }
            }
        }
        self.lines.extend(new_lines);
        self.directions.push(d);
        Ok(())
    }
}

/// Three directions per vertex whose witness-line arrangement has triple
/// points exactly at the vertices. Deterministic in `(g, seed)`.
pub fn select_3n_directions(
    g: &PlaneGraph,
    seed: u64,
    max_tries: usize,
) -> Result<DirectionPlan, PlanError> {
    g.validate()?;
    let ig = IntGraph::new(g)?;
    let mut arr = Arrangement::new();
    let mut plan = DirectionPlan::default();
    for v in 0..g.n() {
        let vseed = seed ^ (v as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut prop = Proposer::new(g, v, vseed, Proposal::ArcGuided)?;
        let mut chosen = Vec::with_capacity(3);
        let mut tries = 0;
        while chosen.len() < 3 {
            if tries == max_tries {
                return Err(PlanError::ExhaustedTries { vertex: v, tries });
            }
            tries += 1;
            let mut d = prop.propose()?;
            if arr.parallel_to_existing(d) {
                prop.failed();
                continue;
            }
            let Some(mut hs) = ig.separating_heights(d)? else {
                prop.failed();
                continue;
            };
            if ig.delta(v, &hs) == 0 && g.degree(v) != 2 {
                // Every vertex of degree other than 2 is witnessed from s or -s.
                d = (-d.0, -d.1);
                hs.iter_mut().for_each(|h| *h = -*h);
            }
            if ig.delta(v, &hs) == 0 {
                prop.failed();
                continue;
            }
            let witnessed: Vec<usize> = (0..g.n()).filter(|&u| ig.delta(u, &hs) != 0).collect();
            let cs: HashSet<i128> = witnessed.iter().map(|&u| hs[u]).collect();
            if arr.hits_crossing(d, &cs)? {
                prop.failed();
                continue;
            }
            let lines = witnessed
                .iter()
                .map(|&u| IntLine {
                    a: d.0,
                    b: d.1,
                    c: hs[u],
                    vertex: u,
                })
                .collect();
            arr.add(d, lines)?;
            chosen.push(to_direction(d));
        }
        let triple: [Direction; 3] = chosen.try_into().expect("three directions");
        plan.triples.push((v, triple));
    }
    Ok(plan)
}

/// A witness line `a x + b y = c` in canonical form: `(a, b)` coprime
/// integers with positive leading entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessLine {
    pub a: BigInt,
    pub b: BigInt,
    pub c: ExactScalar,
}

impl WitnessLine {
    /// The line at height `h` measured along `s`.
    pub fn new(s: &Direction, h: &ExactScalar) -> Self {
        let k = s.scale_from_canonical();
        let (ca, cb) = s.canonical_ints();
        let (a, b) = s.axis();
        let c = h / &k;
        // axis() flips the canonical ray for half of all directions.
        let c = if a == ca && b == cb { c } else { -c };
        WitnessLine { a, b, c }
    }

    pub fn intersect(&self, other: &WitnessLine) -> Option<Point> {
        let det = &self.a * &other.b - &other.a * &self.b;
        if det == BigInt::from(0) {
            return None;
        }
        let det = ExactScalar::from(det);
        let (a1, b1) = (
            ExactScalar::from(self.a.clone()),
            ExactScalar::from(self.b.clone()),
        );
        let (a2, b2) = (
            ExactScalar::from(other.a.clone()),
            ExactScalar::from(other.b.clone()),
        );
        let x = (&self.c * &b2 - &other.c * &b1) / &det;
        let y = (&a1 * &other.c - &a2 * &self.c) / &det;
        Some(Point { x, y })
    }
}

/// Every witness line of every direction, from full ECCs, duplicates
/// collapsed.
pub fn witness_lines(g: &PlaneGraph, directions: &[Direction]) -> Vec<WitnessLine> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in directions {
        for h in witness_heights(&compute_ecc(g, s)) {
            let l = WitnessLine::new(s, &h);
            if seen.insert(l.clone()) {
                out.push(l);
            }
        }
    }
    out
}

/// Brute-force check of a plan: all witness lines of all plan directions,
/// all pairwise crossings, and the points where three or more pairwise
/// non-parallel lines meet.
pub fn verify_plan(g: &PlaneGraph, plan: &DirectionPlan) -> ArrangementReport {
    let lines = witness_lines(g, &plan.directions());
    let mut classes: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let class: Vec<usize> = lines
        .iter()
        .map(|l| {
            let k = classes.len();
            *classes.entry((l.a.clone(), l.b.clone())).or_insert(k)
        })
        .collect();

    let mut triple: HashSet<Point> = HashSet::new();
    for (i, li) in lines.iter().enumerate() {
        // Crossings along line i, keyed by point, with the set of other
        // parallel classes through each.
        let mut along: HashMap<Point, HashSet<usize>> = HashMap::new();
        for (j, lj) in lines.iter().enumerate() {
            if class[j] == class[i] {
                continue;
            }
            if let Some(p) = li.intersect(lj) {
                along.entry(p).or_default().insert(class[j]);
            }
        }
        for (p, through) in along {
            if through.len() >= 2 {
                triple.insert(p);
            }
        }
    }

    let vertices: HashSet<&Point> = g.vertices().iter().collect();
    let mut triple_points: Vec<Point> = triple.into_iter().collect();
    triple_points.sort();
    let spurious = triple_points
        .iter()
        .filter(|p| !vertices.contains(p))
        .cloned()
        .collect();
    let found: HashSet<&Point> = triple_points.iter().collect();
    let mut missing: Vec<Point> = g
        .vertices()
        .iter()
        .filter(|p| !found.contains(p))
        .cloned()
        .collect();
    missing.sort();
    ArrangementReport {
        line_count: lines.len(),
        triple_points,
        spurious,
        missing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecc::delta_chi;
    use crate::gen::fixture;

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    #[test]
    fn witness_line_canonical_form() {
        let p = Point::new(q("2"), q("3"));
        for s in [
            Direction::from_ints(2, -4),
            Direction::from_ints(-1, 2),
            Direction::new(q("-1/3"), q("2/3")).unwrap(),
        ] {
            let l = WitnessLine::new(&s, &crate::geom::height(&p, &s));
            assert_eq!(
                (l.a.clone(), l.b.clone()),
                (BigInt::from(1), BigInt::from(-2))
            );
            assert_eq!(l.c, q("-4"));
        }
    }

    #[test]
    fn isolated_vertex_first_sample() {
        let g = PlaneGraph::new(vec![Point::new(3, 5)], vec![]).unwrap();
        let (_, tries) = sample_with_proposal(&g, 0, 1, 10, Proposal::Uniform).unwrap();
        assert_eq!(tries, 1);
    }

    #[test]
    fn same_quadrant_samples_quickly() {
        let g = fixture("fig3_same").unwrap();
        for seed in 0..20 {
            let (d, tries) = sample_with_proposal(&g, 0, seed, 100, Proposal::Uniform).unwrap();
            assert!(tries <= 10, "seed {seed}: {tries} tries");
            assert_ne!(delta_chi(&g, 0, &d).unwrap(), 0);
        }
    }

    #[test]
    fn thin_arcs_need_guidance() {
        let g = fixture("fig2_collinear(1/1024)").unwrap();
        for seed in 0..10 {
            let (d, tries) = sample_with_proposal(&g, 1, seed, 10, Proposal::ArcGuided).unwrap();
            assert!(tries <= 10);
            assert_ne!(delta_chi(&g, 1, &d).unwrap(), 0);
        }
    }

    #[test]
    fn single_vertex_plan() {
        let g = PlaneGraph::new(vec![Point::new(q("1/2"), q("1/3"))], vec![]).unwrap();
        let plan = select_3n_directions(&g, 0, 100).unwrap();
        assert_eq!(plan.triples.len(), 1);
        let [a, b, c] = &plan.triples[0].1;
        assert!(!a.is_parallel(b) && !a.is_parallel(c) && !b.is_parallel(c));
        let report = verify_plan(&g, &plan);
        assert_eq!(report.triple_points, g.vertices().to_vec());
        assert!(report.passes());
    }

    #[test]
    fn two_isolated_vertices() {
        let g = PlaneGraph::new(vec![Point::new(0, 0), Point::new(1, 1)], vec![]).unwrap();
        let plan = select_3n_directions(&g, 4, 1000).unwrap();
        assert_eq!(plan.directions().len(), 6);
        assert!(verify_plan(&g, &plan).passes());
    }

    #[test]
    fn deterministic_plans() {
        let g = fixture("fig1_trick").unwrap();
        assert_eq!(
            select_3n_directions(&g, 9, 10_000).unwrap(),
            select_3n_directions(&g, 9, 10_000).unwrap()
        );
    }

    #[test]
    fn corrupted_plan_fails() {
        let g = PlaneGraph::new(vec![Point::new(0, 0), Point::new(1, 1)], vec![]).unwrap();
        let mut plan = select_3n_directions(&g, 4, 1000).unwrap();
        // Isolated vertices are witnessed from everywhere, so one vertex's
        // directions cover the other; break both triples down to two
        // parallel classes.
        let [e, _, n, _] = Direction::cardinals();
        plan.triples[0].1[1] = e.clone();
        plan.triples[0].1[2] = n.clone();
        plan.triples[1].1 = [e.clone(), e, n];
        let report = verify_plan(&g, &plan);
        assert!(!report.passes());
        assert_eq!(report.missing.len(), 2, "{report:?}");
    }

    #[test]
    fn fig1_naive_direction_creates_spurious_point() {
        let g = fixture("fig1_trick").unwrap();
        let naive = Direction::from_ints(-1, -3);
        assert_ne!(delta_chi(&g, 0, &naive).unwrap(), 0);
        let [e, _, n, _] = Direction::cardinals();
        let plan = DirectionPlan {
            triples: (0..g.n())
                .map(|v| (v, [e.clone(), n.clone(), naive.clone()]))
                .collect(),
        };
        let report = verify_plan(&g, &plan);
        assert_eq!(report.spurious, vec![Point::new(3, -1)]);
    }

    #[test]
    fn exhausted_tries_reported() {
        let g = fixture("fig2_collinear(1/1024)").unwrap();
        let res = select_3n_directions(&g, 0, 1);
        assert!(
            matches!(res, Err(PlanError::ExhaustedTries { .. })),
            "{res:?}"
        );
    }
}
