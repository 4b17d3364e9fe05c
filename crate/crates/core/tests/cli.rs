use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use spectrum_games::report::read_csv;

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spectrum-eq-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn spectrum_eq(out_dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectrum-eq")).args(args).env("SPECTRUM_EQ_OUT_DIR", out_dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn detect_writes_a_front_near_cournot_nash() {
    let dir = scratch_dir("detect");
    let args = "detect --game cournot --W 10 --K 1 --rationality NN --pop 100 --seed 7 --out fig1.csv";
    let text = stdout(&spectrum_eq(&dir, &args.split(' ').collect::<Vec<_>>()));
    assert!(text.contains("wrote"), "{text}");
    let rows = read_csv(dir.join("fig1.csv")).unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        assert!(row.profile.distance(&[3.0, 3.0]) < 0.1, "{}", row.profile);
        assert_eq!(row.seed, Some(7));
    }
}

#[test]
fn closed_form_prints_stackelberg_point() {
    let dir = scratch_dir("closed");
    let text = stdout(&spectrum_eq(&dir, &["closed-form", "--game", "stackelberg", "--W", "10", "--K", "1"]));
    assert!(text.contains("(4.5, 2.25)"), "{text}");
    assert!(text.contains("(10.125, 5.0625)"), "{text}");
}

#[test]
fn sweep_scales_to_wide_whitespace() {
    let dir = scratch_dir("sweep");
    let args = [
        "sweep",
        "--game",
        "cournot",
        "--W",
        "10,100",
        "--K",
        "1",
        "--rationality",
        "NN",
        "--seed",
        "2",
        "--out",
        "sweep.csv",
    ];
    stdout(&spectrum_eq(&dir, &args));
    let table = std::fs::read_to_string(dir.join("sweep.csv")).unwrap();
    let mut lines = table.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    let wide = rows.iter().find(|r| r[col("W")] == "100").unwrap();
    for i in ["centroid_1", "centroid_2"] {
        let v: f64 = wide[col(i)].parse().unwrap();
        assert!((v - 33.0).abs() < 1.0, "{i} = {v}");
    }
    assert_eq!(wide[col("closed_form_1")], "33.000000");
}

#[test]
fn oracle_finds_bertrand_nash() {
    let dir = scratch_dir("oracle");
    let args = [
        "oracle",
        "--game",
        "bertrand",
        "--W",
        "10",
        "--K",
        "1",
        "--rationality",
        "NN",
        "--step",
        "0.5",
        "--out",
        "b.csv",
    ];
    stdout(&spectrum_eq(&dir, &args));
    let rows = read_csv(dir.join("b.csv")).unwrap();
    assert!(rows.iter().any(|r| r.profile.0 == vec![1.0, 1.0]));
}

#[test]
fn subcommands_agree_on_cournot() {
    let dir = scratch_dir("agree");
    let base = ["--game", "cournot", "--W", "10", "--K", "1"];
    let with = |cmd: &str, extra: &[&str]| {
        let mut v = vec![cmd];
        v.extend_from_slice(&base);
        v.extend_from_slice(extra);
        stdout(&spectrum_eq(&dir, &v));
    };
    with("closed-form", &["--out", "cf.csv"]);
    with("oracle", &["--rationality", "NN", "--out", "or.csv"]);
    with("detect", &["--rationality", "NN", "--seed", "1", "--out", "ev.csv"]);
    let cf = read_csv(dir.join("cf.csv")).unwrap();
    let or = read_csv(dir.join("or.csv")).unwrap();
    let ev = read_csv(dir.join("ev.csv")).unwrap();
    assert!(or.iter().any(|r| r.profile == cf[0].profile));
    for r in &ev {
        assert!(r.profile.distance(&cf[0].profile) < 0.1);
    }
}

#[test]
fn preset_writes_every_relation_and_an_overlay() {
    let dir = scratch_dir("preset");
    let args = ["detect", "--preset", "fig2", "--generations", "10", "--out", "fig2.csv", "--svg", "fig2.svg"];
    let text = stdout(&spectrum_eq(&dir, &args));
    for label in ["NN", "pareto", "NP", "PN"] {
        assert!(dir.join(format!("fig2_{label}.csv")).exists(), "{label}: {text}");
    }
    let svg = std::fs::read_to_string(dir.join("fig2.svg")).unwrap();
    assert!(svg.contains("<polygon"), "closed-form marker missing");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = scratch_dir("config");
    let cfg = dir.join("scenario.ini");
    std::fs::write(&cfg, "[scenario]\ngame = cournot\nW = 10\nK = 1\nrationality = NN\n\n[detect]\nseed = 3\n")
        .unwrap();
    let cfg = cfg.to_str().unwrap();
    stdout(&spectrum_eq(&dir, &["detect", "--config", cfg, "--generations", "30", "--seed", "9", "--out", "a.csv"]));
    let rows = read_csv(dir.join("a.csv")).unwrap();
    assert!(rows.iter().all(|r| r.seed == Some(9)));
    let text = stdout(&spectrum_eq(&dir, &["closed-form", "--config", cfg, "--game", "bertrand"]));
    assert!(text.contains("(1, 1)"), "{text}");
}

#[test]
fn usage_errors_exit_nonzero_with_a_message() {
    let dir = scratch_dir("errors");
    let cases: [&[&str]; 4] = [
        &["closed-form", "--game", "hotelling", "--W", "10", "--K", "1"],
        &["detect", "--game", "cournot", "--W", "10", "--K", "1", "--rationality", "NX"],
        &["sweep", "--game", "cournot", "--K", "1"],
        &["detect", "--config", "/nonexistent/scenario.ini"],
    ];
    for args in cases {
        let o = spectrum_eq(&dir, args);
        assert!(!o.status.success(), "{args:?} succeeded");
        assert!(!o.stderr.is_empty(), "{args:?} printed no diagnostic");
    }
    let o = spectrum_eq(&dir, &["frobnicate"]);
    assert!(!o.status.success());
}
