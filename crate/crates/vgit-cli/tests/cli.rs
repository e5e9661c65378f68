use std::path::PathBuf;
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};

use proptest::prelude::*;
use serde_json::Value;
use vgit_cli::cache::{Cache, CACHE_DIR_ENV};
use vgit_cli::{run_with, Outcome, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn vgit(args: &[&str]) -> Outcome {
    let argv = std::iter::once("vgit").chain(args.iter().copied());
    run_with(argv, |_| Cache::disabled())
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = vgit(&full);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    static N: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "vgit-cli-{name}-{}-{}",
        std::process::id(),
        N.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn degree_three_walls_as_json() {
    let v = json(&["walls", "--degree", "3"]);
    let ts: Vec<&str> = v["realized"].as_array().unwrap().iter().map(|w| w["t"].as_str().unwrap()).collect();
    assert_eq!(ts, ["0", "3/5", "1", "3/2"]);
    assert_eq!(v["d"], 3);
}

#[test]
fn discriminant_of_m() {
    let v = json(&["lattice", "disc", "--spec", "M"]);
    assert_eq!(v["invariant_factors"], serde_json::json!([2, 2, 2, 2]));
    assert_eq!(v["isotropic_nonzero"], 5);
    let text = vgit(&["lattice", "disc", "--spec", "M"]).stdout;
    assert!(text.contains("[2, 2, 2, 2]") && text.contains("isotropic elements: 5"));
}

#[test]
fn a13_takes_the_mismatch_exit() {
    let out = vgit(&["occurs", "--roots", "A13"]);
    assert_eq!(out.code, EXIT_MISMATCH);
    assert!(out.stdout.contains("length obstruction"), "{}", out.stdout);
    assert_eq!(vgit(&["occurs", "--roots", "A12"]).code, EXIT_OK);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["walls"],
        vec!["walls", "--degree", "0"],
        vec!["frobnicate"],
        vec!["threshold", "--monomials", "0"],
        vec!["threshold", "--monomials", "x0^2 + x1"],
        vec!["lattice", "disc", "--spec", "Q7"],
        vec!["occurs", "--roots", "B3"],
        vec!["vinberg", "--spec", "A2+U", "--norms", "3"],
        vec!["interval", "--config", "/nonexistent/config.json"],
        vec!["lct", "--weights", "3", "--form", "x^3"],
    ] {
        let out = vgit(&args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn parse_errors_carry_positions() {
    let out = vgit(&["threshold", "--monomials", "x0^5 + z^5"]);
    assert!(out.stderr.contains("byte 7"), "{}", out.stderr);
    let out = vgit(&["lattice", "roots", "--spec", "E8+Q"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn help_goes_to_stdout() {
    let out = vgit(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("walls"));
}

#[test]
fn thresholds_and_lct() {
    assert_eq!(json(&["threshold", "--monomials", "x0^2*x2^3 + x1^5"])["threshold"], "5/8");
    let v = json(&["threshold", "--monomials", "x^2 + x*y^3", "--affine", "--degree", "4"]);
    assert_eq!(v["monomials"], serde_json::json!(["x1^3*x2", "x0^2*x2^2"]));
    assert_eq!(v["threshold"], "1/2");
    let v = json(&["lct", "--weights", "5,3", "--form", "x^3 + y^5", "--degree", "5"]);
    assert_eq!(v["lct"], "8/15");
    assert_eq!(v["threshold_bound"], "5/8");
}

#[test]
fn intervals_from_files() {
    let dir = scratch("interval");
    let pair = dir.join("pair.json");
    std::fs::write(&pair, r#"{"curve": "x0^2*x1*x2^2 - 2*x0*x1^3*x2 + x1^5", "line": "x1"}"#).unwrap();
    let v = json(&["interval", "--pair", pair.to_str().unwrap(), "--diagonal"]);
    assert_eq!(v["interval"], serde_json::json!({"empty": false, "lower": "0", "upper": "1"}));
    let cfg = dir.join("config.json");
    std::fs::write(&cfg, r#"{"d": 5, "curve": [[2,0,3],[0,5,0]], "line": ["x0"]}"#).unwrap();
    let v = json(&["interval", "--config", cfg.to_str().unwrap()]);
    assert_eq!(v["interval"]["lower"], "5/8");
    let triples = dir.join("triples.json");
    std::fs::write(&triples, r#"{"curve": [[2,1,2],[1,3,1],[0,5,0]], "line": "x1"}"#).unwrap();
    let v = json(&["interval", "--pair", triples.to_str().unwrap(), "--diagonal"]);
    assert_eq!(v["interval"]["upper"], "1");
    assert_eq!(vgit(&["interval", "--config", cfg.to_str().unwrap(), "--diagonal"]).code, EXIT_USAGE);
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn lattice_predicates() {
    assert_eq!(vgit(&["lattice", "genus", "--spec", "D4+E8", "--other", "D12"]).code, EXIT_OK);
    assert_eq!(vgit(&["lattice", "genus", "--spec", "D4+E8", "--other", "D4+D8"]).code, EXIT_MISMATCH);
    assert_eq!(vgit(&["lattice", "embed", "--spec", "M"]).code, EXIT_OK);
    assert_eq!(vgit(&["lattice", "embed", "--spec", "M+A13"]).code, EXIT_MISMATCH);
    let v = json(&["lattice", "roots", "--spec", "[[-2,1],[1,-2]]"]);
    assert_eq!(v["count"], 6);
    assert_eq!(v["type"], "A2");
    let v = json(&["lattice", "overlattices", "--spec", "M"]);
    assert_eq!(v["overlattices"].as_array().unwrap().len(), 6);
}

#[test]
fn vinberg_and_boundary() {
    let v = json(&["vinberg", "--spec", "E8+D4+U(2)", "--budget", "64"]);
    assert_eq!(v["stopped"], true);
    assert_eq!(v["roots"].as_array().unwrap().len(), 20);
    assert_eq!(v["parabolic"].as_array().unwrap().len(), 4);
    let dot = vgit(&["vinberg", "--spec", "E8+D4+U(2)", "--dot"]).stdout;
    assert!(dot.starts_with("graph"), "{dot}");
    let v = json(&["boundary", "--spec", "E8+D4+U(2)"]);
    assert_eq!(v["rank1"].as_array().unwrap().len(), 2);
    assert_eq!(v["rank2"].as_array().unwrap().len(), 4);
    assert_eq!(vgit(&["vinberg", "--spec", "E8+A2+U"]).code, EXIT_USAGE);
    let v = json(&["vinberg", "--spec", "U+A2", "--h", "1,1,0,0"]);
    assert_eq!(v["h"], serde_json::json!([1, 1, 0, 0]));
}

#[test]
fn verify_suites_pass() {
    for suite in ["tables", "orbits", "strata", "lattice", "boundary"] {
        let out = vgit(&["verify", suite]);
        assert_eq!(out.code, EXIT_OK, "{suite}: {}", out.stdout);
        assert!(!out.stdout.contains("FAIL"));
    }
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [
        vec!["walls", "--degree", "5", "--json"],
        vec!["boundary", "--spec", "E8+D4+U(2)", "--json"],
        vec!["occurs", "--roots", "6A1", "--json"],
        vec!["verify", "tables", "--json"],
    ] {
        assert_eq!(vgit(&args), vgit(&args), "{args:?}");
    }
}

#[test]
fn binary_reads_the_cache_directory() {
    let dir = scratch("binary");
    let exe = env!("CARGO_BIN_EXE_vgit");
    let cold = Command::new(exe).env(CACHE_DIR_ENV, &dir).args(["walls", "--degree", "4", "--json"]).output().unwrap();
    assert!(cold.status.success());
    let entries: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let warm = Command::new(exe).env(CACHE_DIR_ENV, &dir).args(["walls", "--degree", "4", "--json"]).output().unwrap();
    let bypass = Command::new(exe)
        .env(CACHE_DIR_ENV, &dir)
        .args(["--no-cache", "walls", "--degree", "4", "--json"])
        .output()
        .unwrap();
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, bypass.stdout);
    let out = Command::new(exe).args(["occurs", "--roots", "A13"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_MISMATCH));
    let _ = std::fs::remove_dir_all(dir);
}

const ATOMS: [&str; 8] = ["A1", "A2", "A3", "D4", "<-4>", "<-6>", "A4", "E6"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cache_is_transparent(
        degree in 1u32..=4,
        atoms in prop::collection::vec(0usize..ATOMS.len(), 1..=3),
        text in any::<bool>(),
    ) {
        static DIR: std::sync::OnceLock<PathBuf> = std::sync::OnceLock::new();
        let dir = DIR.get_or_init(|| scratch("transparent")).clone();
        let spec = atoms.iter().map(|&i| ATOMS[i]).collect::<Vec<_>>().join("+");
        let d = degree.to_string();
        let mut commands = vec![
            vec!["vgit", "walls", "--degree", d.as_str()],
            vec!["vgit", "lattice", "roots", "--spec", spec.as_str()],
        ];
        if !text {
            commands.iter_mut().for_each(|c| c.push("--json"));
        }
        for args in commands {
            let cached = || {
                let d = dir.clone();
                run_with(args.clone(), move |no| if no { Cache::disabled() } else { Cache::at(d) })
            };
            let (first, second) = (cached(), cached());
            let mut bypass = args.clone();
            bypass.push("--no-cache");
            let direct = run_with(bypass, |no| {
                assert!(no);
                Cache::disabled()
            });
            prop_assert_eq!(first.code, EXIT_OK);
            prop_assert_eq!(&first, &second);
            prop_assert_eq!(&first, &direct);
        }
    }
}
