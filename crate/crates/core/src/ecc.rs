//! Lower-star filtrations of plane graphs and their Euler characteristic
//! curves.
//!
//! A vertex enters the filtration at its height in the chosen direction and
//! an edge at the larger of its endpoint heights. The curve is stored as the
//! list of heights where the running Euler characteristic actually changes,
//! so "is this height witnessed" is plain set membership.

use std::collections::HashMap;

use crate::error::EccError;
use crate::geom::{height, Direction, PlaneGraph};
use crate::scalar::ExactScalar;

/// Right-continuous integer step function starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StepFunction {
    breakpoints: Vec<(ExactScalar, i64)>,
}

impl StepFunction {
    /// Checks that heights strictly increase and every breakpoint changes
    /// the value (the first one away from 0).
    pub fn new(breakpoints: Vec<(ExactScalar, i64)>) -> Result<Self, String> {
        let mut prev_value = 0;
        for (k, (h, v)) in breakpoints.iter().enumerate() {
            if k > 0 && breakpoints[k - 1].0 >= *h {
                return Err(format!("breakpoint heights not increasing at {h}"));
            }
            if *v == prev_value {
                return Err(format!("breakpoint at {h} does not change the value"));
            }
            prev_value = *v;
        }
        Ok(StepFunction { breakpoints })
    }

    pub fn breakpoints(&self) -> &[(ExactScalar, i64)] {
        &self.breakpoints
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// Value of the greatest breakpoint at or below `h`, else 0.
    pub fn value_at(&self, h: &ExactScalar) -> i64 {
        match self.breakpoints.partition_point(|(b, _)| b <= h) {
            0 => 0,
            k => self.breakpoints[k - 1].1,
        }
    }

    pub fn final_value(&self) -> i64 {
        self.breakpoints.last().map_or(0, |b| b.1)
    }

    /// `(height, jump)` at every breakpoint.
    pub fn jumps(&self) -> Vec<(ExactScalar, i64)> {
        let mut prev = 0;
        self.breakpoints
            .iter()
            .map(|(h, v)| {
                let d = v - prev;
                prev = *v;
                (h.clone(), d)
            })
            .collect()
    }
}

/// The heights at which one direction's curve changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessLineSet {
    pub direction: Direction,
    pub heights: Vec<ExactScalar>,
}

impl WitnessLineSet {
    pub fn from_ecc(direction: Direction, f: &StepFunction) -> Self {
        WitnessLineSet {
            direction,
            heights: witness_heights(f),
        }
    }
}

/// Filtration value of a vertex (`[v]`) or edge (`[u, v]`).
pub fn lower_star_height(simplex: &[usize], g: &PlaneGraph, s: &Direction) -> ExactScalar {
    simplex
        .iter()
        .map(|&v| height(g.vertex(v), s))
        .max()
        .expect("simplex has at least one vertex")
}

pub fn vertex_heights(g: &PlaneGraph, s: &Direction) -> Vec<ExactScalar> {
    g.vertices().iter().map(|p| height(p, s)).collect()
}

/// Euler characteristic curve of the lower-star filtration of `g` in
/// direction `s`. Simplices entering at one height are merged into a single
/// net change; zero net changes are not recorded.
pub fn compute_ecc(g: &PlaneGraph, s: &Direction) -> StepFunction {
    let hv = vertex_heights(g, s);
    ecc_from_heights(g, &hv)
}

pub(crate) fn ecc_from_heights(g: &PlaneGraph, hv: &[ExactScalar]) -> StepFunction {
    let mut events: Vec<(&ExactScalar, i64)> = Vec::with_capacity(g.n() + g.m());
    events.extend(hv.iter().map(|h| (h, 1)));
    events.extend(
        g.edges()
            .iter()
            .map(|&(a, b)| (std::cmp::max(&hv[a], &hv[b]), -1)),
    );
    events.sort_by(|a, b| a.0.cmp(b.0));

    let mut breakpoints = Vec::new();
    let mut chi = 0i64;
    let mut i = 0;
    while i < events.len() {
        let h = events[i].0;
        let mut delta = 0;
        while i < events.len() && events[i].0 == h {
            delta += events[i].1;
            i += 1;
        }
        if delta != 0 {
            chi += delta;
            breakpoints.push((h.clone(), chi));
        }
    }
    StepFunction { breakpoints }
}

/// Breakpoint heights of `f`.
pub fn witness_heights(f: &StepFunction) -> Vec<ExactScalar> {
    f.breakpoints.iter().map(|(h, _)| h.clone()).collect()
}

/// `1 - (number of neighbours strictly below v in direction s)`.
///
/// Fails if another vertex shares `v`'s height: witnessing is then not a
/// property of `v` alone.
pub fn delta_chi(g: &PlaneGraph, v: usize, s: &Direction) -> Result<i64, EccError> {
    g.check_vertex(v)?;
    let hv = height(g.vertex(v), s);
    if let Some(other) = (0..g.n()).find(|&u| u != v && height(g.vertex(u), s) == hv) {
        return Err(EccError::TiedHeight { vertex: v, other });
    }
    let below = g
        .neighbors(v)
        .iter()
        .filter(|&&u| height(g.vertex(u), s) < hv)
        .count() as i64;
    Ok(1 - below)
}

/// Returns the first pair of vertices sharing a height, if any.
pub fn find_tie(hv: &[ExactScalar]) -> Option<(usize, usize)> {
    let mut seen: HashMap<&ExactScalar, usize> = HashMap::with_capacity(hv.len());
    for (v, h) in hv.iter().enumerate() {
        if let Some(&u) = seen.get(h) {
            return Some((u.min(v), u.max(v)));
        }
        seen.insert(h, v);
    }
    None
}

/// Per-vertex `delta_chi` for every vertex, given pairwise-distinct heights.
pub(crate) fn deltas_from_heights(g: &PlaneGraph, hv: &[ExactScalar]) -> Vec<i64> {
    (0..g.n())
        .map(|v| 1 - g.neighbors(v).iter().filter(|&&u| hv[u] < hv[v]).count() as i64)
        .collect()
}

/// Vertices whose arrival changes the Euler characteristic, in index order.
pub fn witnessed_vertices(g: &PlaneGraph, s: &Direction) -> Result<Vec<usize>, EccError> {
    let hv = vertex_heights(g, s);
    if let Some((vertex, other)) = find_tie(&hv) {
        return Err(EccError::TiedHeight { vertex, other });
    }
    Ok(deltas_from_heights(g, &hv)
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d != 0)
        .map(|(v, _)| v)
        .collect())
}
