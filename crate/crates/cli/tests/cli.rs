use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use planecc::io::{parse_ecc, parse_graph, parse_plan};

fn planecc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planecc"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = planecc(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fails_with(dir: &Path, args: &[&str], code: &str) {
    let out = planecc(dir, args);
    assert!(!out.status.success(), "{args:?} succeeded");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("error {code}: ")), "{err}");
}

#[test]
fn single_vertex_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["gen", "--n", "1", "--seed", "7", "-o", "g.txt"]);
    ok(d, &["reconstruct", "-g", "g.txt", "-o", "v.txt"]);
    assert_eq!(
        fs::read_to_string(d.join("g.txt")).unwrap(),
        fs::read_to_string(d.join("v.txt")).unwrap()
    );
}

#[test]
fn opposite_fixture_has_no_cardinal_witness() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["gen", "--fixture", "fig3_opposite", "-o", "g.txt"]);
    let out = ok(d, &["deg2", "-g", "g.txt"]);
    assert!(
        out.contains("predicted ∅\nmeasured ∅\nmatch=true\n"),
        "{out}"
    );
}

#[test]
fn error_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["gen", "--fixture", "fig3_same", "-o", "deg2.txt"]);
    fails_with(d, &["reconstruct", "-g", "deg2.txt"], "DEG2_PRESENT");
    fs::write(d.join("dupx.txt"), "2 0\n0 0\n0 1\n").unwrap();
    fails_with(
        d,
        &["ecc", "-g", "dupx.txt", "--dir", "1,0"],
        "GENERAL_POSITION",
    );
    fs::write(d.join("cross.txt"), "4 2\n0 0\n3 2\n1 3\n2 -1\n0 1\n2 3\n").unwrap();
    fails_with(d, &["ecc", "-g", "cross.txt", "--dir", "1,0"], "PLANARITY");
    fs::write(d.join("junk.txt"), "1 0\n0\n").unwrap();
    fails_with(d, &["ecc", "-g", "junk.txt", "--dir", "1,0"], "PARSE");
    ok(
        d,
        &[
            "gen",
            "--fixture",
            "fig2_collinear(1/1024)",
            "-o",
            "thin.txt",
        ],
    );
    fails_with(
        d,
        &["plan3n", "-g", "thin.txt", "--max-tries", "1"],
        "EXHAUSTED_TRIES",
    );
}

#[test]
fn six_ecc_files_reconstruct_the_graph() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(
        d,
        &[
            "gen",
            "--n",
            "20",
            "--seed",
            "5",
            "--forbid-deg2",
            "-o",
            "g.txt",
        ],
    );
    for (name, dir) in [("e", "1,0"), ("w", "-1,0"), ("n", "0,1"), ("s", "0,-1")] {
        ok(
            d,
            &[
                "ecc",
                "-g",
                "g.txt",
                "--dir",
                dir,
                "-o",
                &format!("{name}.txt"),
            ],
        );
    }
    // A steep third direction is refused, a shallow one works.
    ok(d, &["ecc", "-g", "g.txt", "--dir", "1,1", "-o", "p.txt"]);
    ok(d, &["ecc", "-g", "g.txt", "--dir", "-1,-1", "-o", "m.txt"]);
    let six = [
        "reconstruct",
        "--ecc",
        "e.txt",
        "w.txt",
        "n.txt",
        "s.txt",
        "p.txt",
        "m.txt",
        "-o",
        "v.txt",
    ];
    fails_with(d, &six, "PARSE");
    ok(
        d,
        &[
            "ecc",
            "-g",
            "g.txt",
            "--dir",
            "1,1/1000000000000",
            "-o",
            "p.txt",
        ],
    );
    ok(
        d,
        &[
            "ecc",
            "-g",
            "g.txt",
            "--dir",
            "-1,-1/1000000000000",
            "-o",
            "m.txt",
        ],
    );
    ok(d, &six);
    let g = parse_graph(&fs::read_to_string(d.join("g.txt")).unwrap()).unwrap();
    let v = parse_graph(&fs::read_to_string(d.join("v.txt")).unwrap()).unwrap();
    let mut want = g.vertices().to_vec();
    want.sort();
    assert_eq!(v.vertices(), &want[..]);
}

#[test]
fn report_confirms_ground_truth() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    for seed in 0..10 {
        ok(
            d,
            &[
                "gen",
                "--n",
                "16",
                "--seed",
                &seed.to_string(),
                "--forbid-deg2",
                "-o",
                "g.txt",
            ],
        );
        let out = planecc(
            d,
            &["reconstruct", "-g", "g.txt", "-o", "v.txt", "--report"],
        );
        assert!(out.status.success());
        assert!(String::from_utf8_lossy(&out.stderr).contains("matches_input true"));
    }
}

#[test]
fn written_files_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["gen", "--n", "10", "--seed", "2", "-o", "g.txt"]);
    let text = fs::read_to_string(d.join("g.txt")).unwrap();
    assert_eq!(
        planecc::io::format_graph(&parse_graph(&text).unwrap()),
        text
    );

    ok(d, &["ecc", "-g", "g.txt", "--dir", "3,-1/2", "-o", "e.txt"]);
    let text = fs::read_to_string(d.join("e.txt")).unwrap();
    let (s, f) = parse_ecc(&text).unwrap();
    assert_eq!(planecc::io::format_ecc(&s, &f), text);

    ok(d, &["plan3n", "-g", "g.txt", "--seed", "4", "-o", "p.txt"]);
    let text = fs::read_to_string(d.join("p.txt")).unwrap();
    assert_eq!(planecc::io::format_plan(&parse_plan(&text).unwrap()), text);
}

#[test]
fn deterministic_stdout() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let a = ok(d, &["gen", "--n", "12", "--seed", "9"]);
    let b = ok(d, &["gen", "--n", "12", "--seed", "9"]);
    assert_eq!(a, b);
    fs::write(d.join("g.txt"), &a).unwrap();
    assert_eq!(
        ok(d, &["plan3n", "-g", "g.txt", "--seed", "1"]),
        ok(d, &["plan3n", "-g", "g.txt", "--seed", "1"])
    );
}

#[test]
fn plan_verify_and_render() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["gen", "--n", "8", "--seed", "1", "-o", "g.txt"]);
    let out = planecc(
        d,
        &[
            "plan3n", "-g", "g.txt", "-o", "p.txt", "--verify", "--svg", "p.svg",
        ],
    );
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("triple_points 8\nspurious 0\nmissing 0\npass true"),
        "{err}"
    );
    assert!(fs::read_to_string(d.join("p.svg"))
        .unwrap()
        .contains("<svg"));

    ok(
        d,
        &[
            "render", "-g", "g.txt", "--plan", "p.txt", "--lines", "-1,2", "--lines", "1,0", "-o",
            "r.svg",
        ],
    );
    let svg = fs::read_to_string(d.join("r.svg")).unwrap();
    assert!(svg.contains(r#"version="1.1""#));
    assert_eq!(svg.matches("triple-points").count(), 1);
    fails_with(d, &["render", "-g", "g.txt", "--width", "0"], "PARSE");
}

#[test]
fn witness_output() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    fs::write(d.join("path.txt"), "3 2\n0 0\n1 2\n2 1\n0 1\n1 2\n").unwrap();
    let out = ok(d, &["witness", "-g", "path.txt", "--dir", "0,1"]);
    assert_eq!(out, "direction 0 1\nheights 0 1 2\nwitnessed 0 1 2\n");
}

#[test]
fn bench_table() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ok(tmp.path(), &["bench", "--sizes", "64,128", "--reps", "1"]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].contains("match_ms"));
    assert!(rows[2].trim_start().starts_with("128 "));
}
