use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn streamcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_streamcolor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path_str(&path)]);
    let out = streamcolor(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn gen_and_maxdeg_round_trip() {
    let dir = TempDir::new().unwrap();
    let star = gen(&dir, "star.txt", &["--family", "star", "--n", "9"]);
    let text = fs::read_to_string(&star).unwrap();
    assert!(text.starts_with("9 8\n"));
    let out = streamcolor(&["maxdeg", "-i", path_str(&star)]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "8");
}

#[test]
fn verify_detects_conflicts() {
    let dir = TempDir::new().unwrap();
    let c5 = gen(&dir, "c5.txt", &["--family", "cycle", "--n", "5"]);
    let good = dir.path().join("good.txt");
    fs::write(&good, "0 0\n1 1\n2 0\n3 1\n4 2\n").unwrap();
    let out = streamcolor(&["verify", "-i", path_str(&c5), "-c", path_str(&good)]);
    assert_eq!(code(&out), 0);

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 0\n1 1\n2 0\n3 1\n4 0\n").unwrap();
    let out = streamcolor(&["verify", "-i", path_str(&c5), "-c", path_str(&bad)]);
    assert_eq!(code(&out), 1);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("conflict 0 4 color 0") || stdout.contains("conflict 4 0 color 0"));
}

#[test]
fn color_delta_output_verifies() {
    let dir = TempDir::new().unwrap();
    let g = gen(
        &dir,
        "g.txt",
        &[
            "--family", "gnm", "--n", "500", "--m", "4000", "--seed", "3",
        ],
    );
    let col = dir.path().join("col.txt");
    let metrics = dir.path().join("m.json");
    let out = streamcolor(&[
        "color-delta",
        "-i",
        path_str(&g),
        "--epsilon",
        "0.5",
        "--c",
        "1",
        "--seed",
        "4",
        "-o",
        path_str(&col),
        "--metrics",
        path_str(&metrics),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&metrics).unwrap()).unwrap();
    let keys: Vec<&str> = m.as_object().unwrap().keys().map(String::as_str).collect();
    for key in [
        "n",
        "m",
        "ell",
        "r",
        "passes",
        "colors_used",
        "peak_stored_edges",
        "max_class_degree",
        "aborted",
        "seed",
    ] {
        assert!(keys.contains(&key), "missing {key}");
    }
    assert_eq!(m["passes"], 1);
    assert_eq!(m["aborted"], false);
    let out = streamcolor(&["verify", "-i", path_str(&g), "-c", path_str(&col)]);
    assert_eq!(code(&out), 0);
}

#[test]
fn color_arb_and_peel() {
    let dir = TempDir::new().unwrap();
    let g = gen(
        &dir,
        "fu.txt",
        &[
            "--family",
            "forest-union",
            "--n",
            "800",
            "--alpha",
            "4",
            "--seed",
            "1",
        ],
    );
    let col = dir.path().join("col.txt");
    let metrics = dir.path().join("m.json");
    let out = streamcolor(&[
        "color-arb",
        "-i",
        path_str(&g),
        "--alpha",
        "4",
        "--epsilon",
        "0.5",
        "--c",
        "1",
        "-o",
        path_str(&col),
        "--metrics",
        path_str(&metrics),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&metrics).unwrap()).unwrap();
    assert_eq!(m["passes"], m["k"]);
    assert_eq!(m["stalled"], false);
    let out = streamcolor(&["verify", "-i", path_str(&g), "-c", path_str(&col)]);
    assert_eq!(code(&out), 0);

    let layers = dir.path().join("layers.txt");
    let out = streamcolor(&[
        "peel",
        "-i",
        path_str(&g),
        "--alpha",
        "4",
        "--gamma",
        "0.5",
        "-o",
        path_str(&layers),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_to_string(&layers).unwrap().lines().count(), 800);
}

#[test]
fn stall_exits_three_with_metrics() {
    let dir = TempDir::new().unwrap();
    let c5 = gen(&dir, "c5.txt", &["--family", "cycle", "--n", "5"]);
    let metrics = dir.path().join("m.json");
    let out = streamcolor(&[
        "color-arb",
        "-i",
        path_str(&c5),
        "--alpha",
        "0",
        "--epsilon",
        "0.5",
        "--metrics",
        path_str(&metrics),
    ]);
    assert_eq!(code(&out), 3);
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&metrics).unwrap()).unwrap();
    assert_eq!(m["stalled"], true);

    let out = streamcolor(&[
        "peel",
        "-i",
        path_str(&c5),
        "--alpha",
        "0",
        "--gamma",
        "0.5",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let out = streamcolor(&["color-delta", "--epsilon", "0.5"]);
    assert_eq!(code(&out), 2);
    let out = streamcolor(&["no-such-command"]);
    assert_eq!(code(&out), 2);

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "3 1\n0 0\n").unwrap();
    let out = streamcolor(&["maxdeg", "-i", path_str(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let g = gen(
        &dir,
        "g.txt",
        &[
            "--family", "gnm", "--n", "1000", "--m", "10000", "--seed", "8", "--order", "random",
        ],
    );
    for cmd in [["color-delta", "--c", "1"], ["color-arb", "--alpha", "12"]] {
        let mut files = Vec::new();
        for run in 0..2 {
            let col = dir.path().join(format!("{}-{run}.txt", cmd[0]));
            let metrics = dir.path().join(format!("{}-{run}.json", cmd[0]));
            let mut args = vec![
                cmd[0],
                "-i",
                path_str(&g),
                "--epsilon",
                "0.5",
                "--seed",
                "17",
            ];
            args.extend_from_slice(&cmd[1..]);
            args.extend_from_slice(&["-o", path_str(&col), "--metrics", path_str(&metrics)]);
            let out = streamcolor(&args);
            assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
            files.push((fs::read(&col).unwrap(), fs::read(&metrics).unwrap()));
        }
        assert!(
            files[0] == files[1],
            "{} output differs between runs",
            cmd[0]
        );
    }
}

#[test]
fn oracle_queries() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "p.txt", &["--family", "petersen", "--n", "10"]);
    let out = streamcolor(&["oracle", "arboricity", "-i", path_str(&p)]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
    let out = streamcolor(&["oracle", "degeneracy", "-i", path_str(&p)]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3");
    let col = dir.path().join("greedy.txt");
    let out = streamcolor(&["oracle", "greedy", "-i", path_str(&p), "-o", path_str(&col)]);
    assert_eq!(code(&out), 0);
    let out = streamcolor(&["verify", "-i", path_str(&p), "-c", path_str(&col)]);
    assert_eq!(code(&out), 0);
}

#[test]
fn sweep_writes_summary() {
    let dir = TempDir::new().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(
        &spec,
        r#"{"cells": [{"gen": {"family": "forest-union", "n": 300, "alpha": 3, "seed": 1},
                       "algorithm": "arb", "epsilon": [0.5], "c": [1.0],
                       "seeds": {"start": 0, "count": 3}}]}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = streamcolor(&[
        "sweep",
        "--spec",
        path_str(&spec),
        "--out",
        path_str(&out_dir),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().next().unwrap().starts_with("family,n,m,alpha"));
}
