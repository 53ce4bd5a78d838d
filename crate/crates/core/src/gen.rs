//! Seeded plane graphs in general position, and hand-built gadgets.

use std::collections::HashSet;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deg2::Deg2Kind;
use crate::error::GenError;
use crate::geom::{PlaneGraph, Point};
use crate::scalar::ExactScalar;

/// How vertex positions are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Layout {
    /// Uniform on the `1/D` grid in the unit square, rejecting duplicate
    /// coordinates and collinear triples. Quadratic in `n`.
    #[default]
    Uniform,
    /// Points `(i, a*i^2 + c mod p) / p` for a prime `p > 2n`: in general
    /// position without any rejection, so it scales to large `n`.
    ModularParabola,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    pub forbid_deg2: bool,
    pub coord_denominator: u64,
    pub seed: u64,
    pub max_rejects: usize,
    pub layout: Layout,
}

impl GenConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        GenConfig {
            n,
            forbid_deg2: false,
            coord_denominator: 1 << 20,
            seed,
            max_rejects: 100_000,
            layout: Layout::Uniform,
        }
    }

    pub fn forbid_deg2(mut self, yes: bool) -> Self {
        self.forbid_deg2 = yes;
        self
    }

    pub fn denominator(mut self, d: u64) -> Self {
        self.coord_denominator = d;
        self
    }

    pub fn layout(mut self, layout: Layout) -> Self {
        self.layout = layout;
        self
    }
}

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i128 {
    (b.0 - a.0) as i128 * (c.1 - a.1) as i128 - (b.1 - a.1) as i128 * (c.0 - a.0) as i128
}

/// Reduced direction of `b - a` with positive x (x-coordinates are distinct).
fn slope_key(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    let (mut dx, mut dy) = (b.0 - a.0, b.1 - a.1);
    if dx < 0 {
        dx = -dx;
        dy = -dy;
    }
    let g = dx.gcd(&dy);
    (dx / g, dy / g)
}

fn uniform_points(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Result<Vec<(i64, i64)>, GenError> {
    let d = i64::try_from(cfg.coord_denominator)
        .map_err(|_| GenError::Config("denominator too large".into()))?;
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(cfg.n);
    let mut xs = HashSet::new();
    let mut ys = HashSet::new();
    let mut rejects = 0;
    while pts.len() < cfg.n {
        let p = (rng.gen_range(0..=d), rng.gen_range(0..=d));
        let mut ok = !xs.contains(&p.0) && !ys.contains(&p.1);
        if ok {
            let mut slopes = HashSet::with_capacity(pts.len());
            ok = pts.iter().all(|&q| slopes.insert(slope_key(p, q)));
        }
        if ok {
            xs.insert(p.0);
            ys.insert(p.1);
            pts.push(p);
        } else {
            rejects += 1;
            if rejects > cfg.max_rejects {
                return Err(GenError::ExhaustedRejects(rejects));
            }
        }
    }
    Ok(pts)
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|k| k * k <= p)
            .all(|k| !p.is_multiple_of(k))
}

fn parabola_points(n: usize, rng: &mut ChaCha8Rng) -> (Vec<(i64, i64)>, i64) {
    let mut p = 2 * n as u64 + 1;
    while !is_prime(p) {
        p += 1;
    }
    let a = rng.gen_range(1..p) as i128;
    let c = rng.gen_range(0..p) as i128;
    let pts = (0..n as i128)
        .map(|i| (i as i64, ((a * i * i + c) % p as i128) as i64))
        .collect();
    (pts, p as i64)
}

/// Triangulates by inserting points in x order and joining each to every
/// hull vertex it can see.
fn hull_triangulation(pts: &[(i64, i64)]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by_key(|&i| pts[i].0);
    let mut edges = Vec::new();
    let mut upper: Vec<usize> = Vec::new();
    let mut lower: Vec<usize> = Vec::new();
    for &p in &order {
        if let Some(&last) = upper.last() {
            edges.push((last, p));
        }
        while upper.len() >= 2
            && orient(
                pts[upper[upper.len() - 2]],
                pts[upper[upper.len() - 1]],
                pts[p],
            ) > 0
        {
            upper.pop();
            edges.push((*upper.last().unwrap(), p));
        }
        while lower.len() >= 2
            && orient(
                pts[lower[lower.len() - 2]],
                pts[lower[lower.len() - 1]],
                pts[p],
            ) < 0
        {
            lower.pop();
            edges.push((*lower.last().unwrap(), p));
        }
        upper.push(p);
        lower.push(p);
    }
    edges
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect()
}

/// Random plane graph per `cfg`: general-position points, a hull-visibility
/// triangulation, then random edge deletions (each edge considered once, in
/// random order, dropped with probability 1/2). With `forbid_deg2` no
/// deletion may leave a vertex of degree exactly 2, and degree-2 vertices
/// of the triangulation itself are first repaired by deleting edges.
pub fn generate(cfg: &GenConfig) -> Result<PlaneGraph, GenError> {
    if cfg.n == 0 {
        return Err(GenError::Config("n must be at least 1".into()));
    }
    if cfg.coord_denominator == 0 {
        return Err(GenError::Config("denominator must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (pts, denom) = match cfg.layout {
        Layout::Uniform => (uniform_points(cfg, &mut rng)?, cfg.coord_denominator as i64),
        Layout::ModularParabola => {
            let (mut pts, p) = parabola_points(cfg.n, &mut rng);
            pts.shuffle(&mut rng);
            (pts, p)
        }
    };

    let mut edges = hull_triangulation(&pts);
    edges.sort_unstable();
    let mut degree = vec![0usize; cfg.n];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let mut alive = vec![true; edges.len()];

    if cfg.forbid_deg2 {
        repair_degree_two(&edges, &mut alive, &mut degree);
    }

    let mut visit: Vec<usize> = (0..edges.len()).filter(|&k| alive[k]).collect();
    visit.shuffle(&mut rng);
    for k in visit {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let (a, b) = edges[k];
        if cfg.forbid_deg2 && (degree[a] == 3 || degree[b] == 3) {
            continue;
        }
        alive[k] = false;
        degree[a] -= 1;
        degree[b] -= 1;
    }

    let vertices = pts
        .iter()
        .map(|&(x, y)| Point::new(ExactScalar::new(x, denom), ExactScalar::new(y, denom)))
        .collect();
    let kept = edges
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(e, _)| e)
        .collect();
    Ok(PlaneGraph::new(vertices, kept).expect("triangulation edges are well formed"))
}

/// Deletes edges until no vertex has degree 2, preferring deletions that do
/// not create a new degree-2 vertex. Always terminates since every step
/// removes an edge.
fn repair_degree_two(edges: &[(usize, usize)], alive: &mut [bool], degree: &mut [usize]) {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); degree.len()];
    for (k, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(k);
        incident[b].push(k);
    }
    let mut stack: Vec<usize> = (0..degree.len()).filter(|&v| degree[v] == 2).collect();
    while let Some(v) = stack.pop() {
        if degree[v] != 2 {
            continue;
        }
        let live: Vec<usize> = incident[v].iter().copied().filter(|&k| alive[k]).collect();
        let other = |k: usize| {
            if edges[k].0 == v {
                edges[k].1
            } else {
                edges[k].0
            }
        };
        let k = live
            .iter()
            .copied()
            .find(|&k| degree[other(k)] != 3)
            .unwrap_or(live[0]);
        alive[k] = false;
        let u = other(k);
        degree[v] -= 1;
        degree[u] -= 1;
        if degree[u] == 2 {
            stack.push(u);
        }
    }
}

fn pt(x: &str, y: &str) -> Point {
    Point::new(
        x.parse::<ExactScalar>().unwrap(),
        y.parse::<ExactScalar>().unwrap(),
    )
}

/// Index of the vertex a named fixture is built around.
pub fn fixture_focus(name: &str) -> usize {
    if name.starts_with("fig2_collinear") {
        1
    } else {
        0
    }
}

/// Hand-built gadgets:
///
/// * `fig1_trick`: a degree-2 vertex (0) seen from no cardinal direction,
///   plus two isolated vertices whose cardinal lines cross at `(3, -1)`.
///   The direction `(-1, -3)` witnesses vertex 0 and its line through the
///   vertex passes through that crossing.
/// * `fig2_collinear(t)`: the path `(0,0) - (1,t) - (2,t/2)`; the middle
///   vertex approaches collinearity as `t` shrinks.
/// * `fig3_same`, `fig3_neighbor`, `fig3_opposite`: a degree-2 vertex (0)
///   with neighbours in one quadrant, adjacent quadrants, or opposite
///   quadrants.
pub fn fixture(name: &str) -> Result<PlaneGraph, GenError> {
    let unknown = || GenError::UnknownFixture(name.to_string());
    let (vertices, edges) = match name {
        "fig1_trick" => (
            vec![
                pt("0", "0"),
                pt("-4", "1"),
                pt("4", "-2"),
                pt("3", "5"),
                pt("-5", "-1"),
            ],
            vec![(0, 1), (0, 2)],
        ),
        "fig3_same" => (
            vec![pt("0", "0"), pt("1", "2"), pt("2", "1")],
            vec![(0, 1), (0, 2)],
        ),
        "fig3_neighbor" => (
            vec![pt("1", "2"), pt("0", "0"), pt("2", "1/2")],
            vec![(0, 1), (0, 2)],
        ),
        "fig3_opposite" => (
            vec![pt("0", "0"), pt("-1", "1/2"), pt("1", "-1/3")],
            vec![(0, 1), (0, 2)],
        ),
        _ => {
            let t = name
                .strip_prefix("fig2_collinear(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(unknown)?
                .parse::<ExactScalar>()
                .map_err(|_| unknown())?;
            if t.signum() <= 0 {
                return Err(unknown());
            }
            let half = &t / ExactScalar::from(2);
            (
                vec![Point::new(0, 0), Point::new(1, t), Point::new(2, half)],
                vec![(0, 1), (1, 2)],
            )
        }
    };
    Ok(PlaneGraph::new(vertices, edges).expect("fixture edges are well formed"))
}

/// Offset with both components nonzero and signs given by quadrant `q`.
fn offset_in_quadrant(q: u8, rng: &mut ChaCha8Rng, range: i64) -> (i64, i64) {
    let (sx, sy) = match q {
        1 => (1, 1),
        2 => (-1, 1),
        3 => (-1, -1),
        _ => (1, -1),
    };
    (sx * rng.gen_range(1..=range), sy * rng.gen_range(1..=range))
}

/// A random degree-2 gadget of the requested kind: vertex 0 has exactly two
/// neighbours placed in quadrants realising `kind`, and a few isolated
/// bystanders are scattered around. Returns the graph and vertex 0.
pub fn random_deg2_gadget(kind: Deg2Kind, seed: u64) -> (PlaneGraph, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const R: i64 = 1000;
    loop {
        let q1 = rng.gen_range(1..=4u8);
        let q2 = match kind {
            Deg2Kind::SameQuadrant => q1,
            Deg2Kind::NeighboringQuadrants => {
                if rng.gen_bool(0.5) {
                    q1 % 4 + 1
                } else {
                    (q1 + 2) % 4 + 1
                }
            }
            Deg2Kind::OppositeQuadrants => (q1 + 1) % 4 + 1,
        };
        let center = (rng.gen_range(-R..=R), rng.gen_range(-R..=R));
        let a = offset_in_quadrant(q1, &mut rng, R);
        let b = offset_in_quadrant(q2, &mut rng, R);
        let mut pts = vec![
            center,
            (center.0 + a.0, center.1 + a.1),
            (center.0 + b.0, center.1 + b.1),
        ];
        for _ in 0..rng.gen_range(0..=3) {
            pts.push((rng.gen_range(-3 * R..=3 * R), rng.gen_range(-3 * R..=3 * R)));
        }
        let vertices = pts.iter().map(|&(x, y)| Point::new(x, y)).collect();
        let g = PlaneGraph::new(vertices, vec![(0, 1), (0, 2)]).expect("gadget edges");
        if g.validate().is_ok() {
            return (g, 0);
        }
    }
}
