//! Python bindings. Exact rationals cross the boundary as
//! `fractions.Fraction`; inputs may be ints, Fractions, or strings such as
//! `"3/4"` or `"0.25"`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use planecc::deg2::{
    arc_measure, cardinal_witness_profile, classify_deg2, predicted_cardinal_witnesses,
    witness_arcs,
};
use planecc::dirplan::{select_3n_directions, verify_plan, DirectionPlan};
use planecc::gen::{generate as gen_graph, GenConfig};
use planecc::io::{format_graph, parse_ecc, parse_graph};
use planecc::reconstruct::{reconstruct_from_graph, reconstruct_vertices, ReconstructionInput};
use planecc::svg::{render, RenderSpec};
use planecc::{
    compute_ecc, delta_chi, witness_heights, witnessed_vertices, Direction, ExactScalar,
    PlaneGraph, Point,
};

create_exception!(
    planecc_py,
    PlaneccError,
    PyValueError,
    "Raised with a message of the form `CODE: detail`."
);

fn err<E: std::fmt::Display>(code: &str, e: E) -> PyErr {
    PlaneccError::new_err(format!("{code}: {e}"))
}

macro_rules! coded {
    ($e:expr) => {
        $e.map_err(|e| err(e.code(), e))
    };
}

fn scalar(obj: &Bound<'_, PyAny>) -> PyResult<ExactScalar> {
    let text = obj.str()?.to_string();
    text.parse().map_err(|e| err("PARSE", e))
}

fn fraction<'py>(py: Python<'py>, v: &ExactScalar) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((v.to_string(),))
}

fn point<'py>(py: Python<'py>, p: &Point) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    Ok((fraction(py, &p.x)?, fraction(py, &p.y)?))
}

fn direction(dx: &Bound<'_, PyAny>, dy: &Bound<'_, PyAny>) -> PyResult<Direction> {
    coded!(Direction::new(scalar(dx)?, scalar(dy)?))
}

fn direction_pair(pair: &Bound<'_, PyAny>) -> PyResult<Direction> {
    let (dx, dy): (Bound<'_, PyAny>, Bound<'_, PyAny>) = pair.extract()?;
    direction(&dx, &dy)
}

type Pair<'py> = (Bound<'py, PyAny>, Bound<'py, PyAny>);

fn dir_tuple<'py>(
    py: Python<'py>,
    d: &Direction,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    Ok((fraction(py, d.dx())?, fraction(py, d.dy())?))
}

/// A straight-line plane graph.
#[pyclass(name = "Graph", module = "planecc_py", frozen, skip_from_py_object)]
struct PyGraph {
    inner: PlaneGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (vertices, edges=Vec::new()))]
    fn new(
        vertices: Vec<(Bound<'_, PyAny>, Bound<'_, PyAny>)>,
        edges: Vec<(usize, usize)>,
    ) -> PyResult<Self> {
        let pts = vertices
            .iter()
            .map(|(x, y)| Ok(Point::new(scalar(x)?, scalar(y)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyGraph {
            inner: coded!(PlaneGraph::new(pts, edges))?,
        })
    }

    /// Parses the `n m / x y / i j` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: coded!(parse_graph(text))?,
        })
    }

    fn to_text(&self) -> String {
        format_graph(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn vertices<'py>(
        &self,
        py: Python<'py>,
    ) -> PyResult<Vec<(Bound<'py, PyAny>, Bound<'py, PyAny>)>> {
        self.inner.vertices().iter().map(|p| point(py, p)).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        coded!(self.inner.check_vertex(v))?;
        Ok(self.inner.degree(v))
    }

    /// Raises unless the graph is in general position and plane.
    fn validate(&self) -> PyResult<()> {
        coded!(self.inner.validate())
    }

    /// ECC breakpoints `[(height, chi), ...]`.
    fn ecc<'py>(
        &self,
        py: Python<'py>,
        dx: &Bound<'py, PyAny>,
        dy: &Bound<'py, PyAny>,
    ) -> PyResult<Vec<(Bound<'py, PyAny>, i64)>> {
        let f = compute_ecc(&self.inner, &direction(dx, dy)?);
        f.breakpoints()
            .iter()
            .map(|(h, v)| Ok((fraction(py, h)?, *v)))
            .collect()
    }

    fn witness_heights<'py>(
        &self,
        py: Python<'py>,
        dx: &Bound<'py, PyAny>,
        dy: &Bound<'py, PyAny>,
    ) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let f = compute_ecc(&self.inner, &direction(dx, dy)?);
        witness_heights(&f)
            .iter()
            .map(|h| fraction(py, h))
            .collect()
    }

    fn witnessed(&self, dx: &Bound<'_, PyAny>, dy: &Bound<'_, PyAny>) -> PyResult<Vec<usize>> {
        coded!(witnessed_vertices(&self.inner, &direction(dx, dy)?))
    }

    fn delta_chi(&self, v: usize, dx: &Bound<'_, PyAny>, dy: &Bound<'_, PyAny>) -> PyResult<i64> {
        coded!(delta_chi(&self.inner, v, &direction(dx, dy)?))
    }

    /// Degree-2 analysis of vertex `v` as a dict.
    fn deg2<'py>(&self, py: Python<'py>, v: usize) -> PyResult<Bound<'py, PyDict>> {
        let g = &self.inner;
        let cfg = coded!(classify_deg2(g, v))?;
        let predicted = predicted_cardinal_witnesses(cfg);
        let measured = coded!(cardinal_witness_profile(g, v))?;
        let arcs = coded!(witness_arcs(g, v))?;
        let d = PyDict::new(py);
        d.set_item("kind", cfg.kind.to_string())?;
        d.set_item("quadrants", cfg.quadrants)?;
        let tuples = |ds: &[Direction]| {
            ds.iter()
                .map(|d| dir_tuple(py, d))
                .collect::<PyResult<Vec<_>>>()
        };
        d.set_item("predicted", tuples(&predicted)?)?;
        d.set_item("measured", tuples(&measured)?)?;
        d.set_item("arc_measure", arc_measure(&arcs))?;
        Ok(d)
    }

    /// Vertex locations recovered from this graph's six ECCs.
    fn reconstruct<'py>(
        &self,
        py: Python<'py>,
    ) -> PyResult<Vec<(Bound<'py, PyAny>, Bound<'py, PyAny>)>> {
        let pts = coded!(reconstruct_from_graph(&self.inner))?;
        pts.iter().map(|p| point(py, p)).collect()
    }

    /// Three directions per vertex: `[(v, [(dx, dy)] * 3), ...]`.
    #[pyo3(signature = (seed=0, max_tries=100_000))]
    fn plan3n<'py>(
        &self,
        py: Python<'py>,
        seed: u64,
        max_tries: usize,
    ) -> PyResult<Vec<(usize, Vec<Pair<'py>>)>> {
        let plan = coded!(select_3n_directions(&self.inner, seed, max_tries))?;
        plan.triples
            .iter()
            .map(|(v, ds)| {
                Ok((
                    *v,
                    ds.iter()
                        .map(|d| dir_tuple(py, d))
                        .collect::<PyResult<Vec<_>>>()?,
                ))
            })
            .collect()
    }

    /// Arrangement report for a plan in the format returned by `plan3n`.
    fn verify_plan<'py>(
        &self,
        py: Python<'py>,
        plan: Vec<(usize, Vec<Bound<'py, PyAny>>)>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let plan = to_plan(plan)?;
        let r = verify_plan(&self.inner, &plan);
        let pts = |ps: &[Point]| {
            ps.iter()
                .map(|p| point(py, p))
                .collect::<PyResult<Vec<_>>>()
        };
        let d = PyDict::new(py);
        d.set_item("line_count", r.line_count)?;
        d.set_item("triple_points", pts(&r.triple_points)?)?;
        d.set_item("spurious", pts(&r.spurious)?)?;
        d.set_item("missing", pts(&r.missing)?)?;
        d.set_item("passes", r.passes())?;
        Ok(d)
    }

    /// SVG 1.1 drawing with the witness lines of `directions`.
    #[pyo3(signature = (directions=Vec::new(), markers=Vec::new(), width=800, height=800))]
    fn render_svg(
        &self,
        directions: Vec<Bound<'_, PyAny>>,
        markers: Vec<(Bound<'_, PyAny>, Bound<'_, PyAny>)>,
        width: u32,
        height: u32,
    ) -> PyResult<String> {
        let spec = coded!(RenderSpec::new(width, height))?;
        let dirs = directions
            .iter()
            .map(direction_pair)
            .collect::<PyResult<Vec<_>>>()?;
        let marks = markers
            .iter()
            .map(|(x, y)| Ok(Point::new(scalar(x)?, scalar(y)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(render(&self.inner, &dirs, &marks, &spec))
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

fn to_plan(plan: Vec<(usize, Vec<Bound<'_, PyAny>>)>) -> PyResult<DirectionPlan> {
    let mut triples = Vec::with_capacity(plan.len());
    for (v, ds) in plan {
        let ds = ds
            .iter()
            .map(direction_pair)
            .collect::<PyResult<Vec<_>>>()?;
        let ds: [Direction; 3] = ds
            .try_into()
            .map_err(|_| err("PARSE", "each vertex needs three directions"))?;
        triples.push((v, ds));
    }
    Ok(DirectionPlan { triples })
}

/// Seeded random plane graph.
#[pyfunction]
#[pyo3(signature = (n, seed=0, forbid_deg2=false, denominator=None))]
fn generate(n: usize, seed: u64, forbid_deg2: bool, denominator: Option<u64>) -> PyResult<PyGraph> {
    let mut cfg = GenConfig::new(n, seed).forbid_deg2(forbid_deg2);
    if let Some(d) = denominator {
        cfg = cfg.denominator(d);
    }
    Ok(PyGraph {
        inner: coded!(gen_graph(&cfg))?,
    })
}

#[pyfunction]
fn fixture(name: &str) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: coded!(planecc::gen::fixture(name))?,
    })
}

/// Vertex locations from six ECC texts (`# direction dx dy` plus breakpoints).
#[pyfunction]
fn reconstruct_from_eccs<'py>(
    py: Python<'py>,
    texts: Vec<String>,
) -> PyResult<Vec<(Bound<'py, PyAny>, Bound<'py, PyAny>)>> {
    let curves = texts
        .iter()
        .map(|t| coded!(parse_ecc(t)))
        .collect::<PyResult<Vec<_>>>()?;
    let input = coded!(ReconstructionInput::from_curves(curves))?;
    let pts = coded!(reconstruct_vertices(&input))?;
    pts.iter().map(|p| point(py, p)).collect()
}

#[pymodule]
fn planecc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct_from_eccs, m)?)?;
    m.add("PlaneccError", m.py().get_type::<PlaneccError>())?;
    Ok(())
}
