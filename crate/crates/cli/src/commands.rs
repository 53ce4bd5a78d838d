use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use planecc::deg2::{
    arc_measure, cardinal_witness_profile, classify_deg2, is_acute, predicted_cardinal_witnesses,
    witness_arcs,
};
use planecc::dirplan::{select_3n_directions, verify_plan, ArrangementReport};
use planecc::gen::{fixture, generate, GenConfig, Layout};
use planecc::io::{
    format_ecc, format_graph, format_plan, format_points, parse_direction, parse_ecc, parse_graph,
    parse_plan,
};
use planecc::reconstruct::{reconstruct_vertices, six_curves, ReconstructionInput};
use planecc::svg::{render, RenderSpec};
use planecc::{
    compute_ecc, witness_heights, witnessed_vertices, Direction, PlaneGraph, Point,
    ReconstructError,
};

use crate::error::CliError;
use crate::{Command, LayoutArg};

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Gen {
            n,
            seed,
            forbid_deg2,
            denom,
            layout,
            fixture: name,
            output,
        } => {
            let g = match name {
                Some(name) => fixture(&name)?,
                None => {
                    let mut cfg =
                        GenConfig::new(n, seed)
                            .forbid_deg2(forbid_deg2)
                            .layout(match layout {
                                LayoutArg::Uniform => Layout::Uniform,
                                LayoutArg::Parabola => Layout::ModularParabola,
                            });
                    if let Some(d) = denom {
                        cfg = cfg.denominator(d);
                    }
                    generate(&cfg)?
                }
            };
            emit(output.as_deref(), &format_graph(&g))
        }
        Command::Ecc { graph, dir, output } => {
            let g = load_graph(&graph)?;
            let s = parse_direction(&dir)?;
            emit(output.as_deref(), &format_ecc(&s, &compute_ecc(&g, &s)))
        }
        Command::Witness { graph, dir } => {
            let g = load_graph(&graph)?;
            let s = parse_direction(&dir)?;
            let hs = witness_heights(&compute_ecc(&g, &s));
            let vs = witnessed_vertices(&g, &s)?;
            let mut out = format!("direction {s}\n");
            let _ = writeln!(out, "heights {}", join(hs.iter()));
            let _ = writeln!(out, "witnessed {}", join(vs.iter()));
            emit(None, &out)
        }
        Command::Deg2 { graph, vertex } => {
            let g = load_graph(&graph)?;
            let targets: Vec<usize> = match vertex {
                Some(v) => vec![v],
                None => (0..g.n()).filter(|&v| g.degree(v) == 2).collect(),
            };
            if targets.is_empty() {
                return emit(None, "no degree-2 vertices\n");
            }
            let mut out = String::new();
            for v in targets {
                deg2_report(&g, v, &mut out)?;
            }
            emit(None, &out)
        }
        Command::Reconstruct {
            graph,
            ecc,
            output,
            report,
        } => reconstruct(graph, ecc, output, report),
        Command::Plan3n {
            graph,
            seed,
            max_tries,
            output,
            verify,
            svg,
        } => {
            let g = load_graph(&graph)?;
            let plan = select_3n_directions(&g, seed, max_tries)?;
            emit(output.as_deref(), &format_plan(&plan))?;
            if verify {
                let rep = verify_plan(&g, &plan);
                eprint!("{}", summary(&rep));
                if let Some(path) = svg {
                    let spec = RenderSpec::default();
                    emit(
                        Some(&path),
                        &render(&g, &plan.directions(), &rep.triple_points, &spec),
                    )?;
                }
                if !rep.passes() {
                    return Err(CliError::Verify(format!(
                        "{} spurious, {} missing",
                        rep.spurious.len(),
                        rep.missing.len()
                    )));
                }
            }
            Ok(())
        }
        Command::Render {
            graph,
            plan,
            lines,
            width,
            height,
            no_vertices,
            no_edges,
            no_lines,
            no_markers,
            output,
        } => {
            let g = load_graph(&graph)?;
            let mut spec = RenderSpec::new(width, height)?;
            spec.vertices = !no_vertices;
            spec.edges = !no_edges;
            spec.lines = !no_lines;
            spec.triple_points = !no_markers;
            let mut dirs = Vec::new();
            let mut markers = Vec::new();
            if let Some(path) = plan {
                let plan = parse_plan(&read(&path)?)?;
                markers = verify_plan(&g, &plan).triple_points;
                dirs = plan.directions();
            }
            for d in &lines {
                let d = parse_direction(d)?;
                if !dirs.contains(&d) {
                    dirs.push(d);
                }
            }
            emit(output.as_deref(), &render(&g, &dirs, &markers, &spec))
        }
        Command::Bench { sizes, seed, reps } => bench(&sizes, seed, reps),
    }
}

fn deg2_report(g: &PlaneGraph, v: usize, out: &mut String) -> Result<()> {
    let cfg = classify_deg2(g, v)?;
    let predicted = predicted_cardinal_witnesses(cfg);
    let measured = cardinal_witness_profile(g, v)?;
    let same = predicted.len() == measured.len() && predicted.iter().all(|d| measured.contains(d));
    let arcs = witness_arcs(g, v)?;
    let _ = writeln!(out, "vertex {v}");
    let _ = writeln!(
        out,
        "kind {} (quadrants {} {})",
        cfg.kind, cfg.quadrants.0, cfg.quadrants.1
    );
    let _ = writeln!(out, "predicted {}", dir_set(&predicted));
    let _ = writeln!(out, "measured {}", dir_set(&measured));
    let _ = writeln!(out, "match={same}");
    let _ = writeln!(out, "acute={}", is_acute(g, v)?);
    for a in &arcs.arcs {
        let _ = writeln!(out, "arc {:+} from {} to {}", a.sign, a.from, a.to);
    }
    let _ = writeln!(out, "arc_measure {:.6}", arc_measure(&arcs));
    Ok(())
}

fn dir_set(ds: &[Direction]) -> String {
    if ds.is_empty() {
        return "∅".into();
    }
    let parts: Vec<String> = ds
        .iter()
        .map(|d| format!("({}, {})", d.dx(), d.dy()))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn reconstruct(
    graph: Option<PathBuf>,
    ecc: Vec<PathBuf>,
    output: Option<PathBuf>,
    report: bool,
) -> Result<()> {
    let mut truth = None;
    let start = Instant::now();
    let curves = match graph {
        Some(path) => {
            let g = load_graph(&path)?;
            if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 2) {
                return Err(ReconstructError::Degree2Present(v).into());
            }
            let curves = six_curves(&g);
            truth = Some(g);
            curves
        }
        None => ecc
            .iter()
            .map(|p| Ok(parse_ecc(&read(p)?)?))
            .collect::<Result<Vec<_>>>()?,
    };
    let ecc_time = start.elapsed();
    let start = Instant::now();
    let input = ReconstructionInput::from_curves(curves)?;
    let mut points = reconstruct_vertices(&input)?;
    let match_time = start.elapsed();
    points.sort();
    emit(output.as_deref(), &format_points(&points))?;
    if report {
        let s3 = input.third_direction();
        let mut r = format!("vertices {}\nthird_direction {s3}\n", points.len());
        let _ = writeln!(
            r,
            "ecc_ms {:.3}\nmatch_ms {:.3}",
            ms(ecc_time),
            ms(match_time)
        );
        if let Some(g) = truth {
            let mut want: Vec<Point> = g.vertices().to_vec();
            want.sort();
            let _ = writeln!(r, "matches_input {}", want == points);
        }
        eprint!("{r}");
    }
    Ok(())
}

fn bench(sizes: &[usize], seed: u64, reps: usize) -> Result<()> {
    let reps = reps.max(1);
    let mut out = format!(
        "{:>8} {:>12} {:>12} {:>12}\n",
        "n", "ecc_ms", "match_ms", "total_ms"
    );
    for &n in sizes {
        let g = generate(
            &GenConfig::new(n, seed)
                .forbid_deg2(true)
                .layout(Layout::ModularParabola),
        )?;
        let (mut best_ecc, mut best_match) = (Duration::MAX, Duration::MAX);
        for _ in 0..reps {
            let start = Instant::now();
            let curves = six_curves(&g);
            best_ecc = best_ecc.min(start.elapsed());
            let input = ReconstructionInput::from_curves(curves)?;
            let start = Instant::now();
            let pts = reconstruct_vertices(&input)?;
            best_match = best_match.min(start.elapsed());
            if pts.len() != n {
                return Err(ReconstructError::CountMismatch {
                    expected: n,
                    found: pts.len(),
                }
                .into());
            }
        }
        let _ = writeln!(
            out,
            "{n:>8} {:>12.3} {:>12.3} {:>12.3}",
            ms(best_ecc),
            ms(best_match),
            ms(best_ecc + best_match)
        );
    }
    emit(None, &out)
}

fn summary(r: &ArrangementReport) -> String {
    format!(
        "lines {}\ntriple_points {}\nspurious {}\nmissing {}\npass {}\n",
        r.line_count,
        r.triple_points.len(),
        r.spurious.len(),
        r.missing.len(),
        r.passes()
    )
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn join<T: std::fmt::Display>(it: impl Iterator<Item = T>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(&path.display().to_string(), e))
}

fn load_graph(path: &Path) -> Result<PlaneGraph> {
    let g = parse_graph(&read(path)?)?;
    g.validate()?;
    Ok(g)
}

/// Writes `text` to `path` via a temporary file and rename, or to stdout.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e));
    };
    let shown = path.display().to_string();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(&shown, e))?;
    tmp.write_all(text.as_bytes())
        .map_err(|e| CliError::io(&shown, e))?;
    tmp.persist(path)
        .map_err(|e| CliError::io(&shown, e.error))?;
    Ok(())
}
