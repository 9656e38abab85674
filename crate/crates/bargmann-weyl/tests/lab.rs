use std::process::Command;

use bargmann_weyl::lab::report::{COMPOSE_HEADER, DECOMP_CHECK_HEADER, GEVREY_FIT_HEADER, NORM_SWEEP_HEADER};
use bargmann_weyl::lab::{run, run_compose, run_decomp_check, run_gevrey_fit, run_verify, write_outputs, ExperimentConfig};
use bargmann_weyl::Error;

fn cfg(text: &str) -> ExperimentConfig {
    ExperimentConfig::from_toml(text).expect("valid config")
}

fn config_error(text: &str) -> String {
    match ExperimentConfig::from_toml(text) {
        Err(e @ Error::Config(_)) => {
            assert_eq!(e.exit_code(), 2);
            e.to_string()
        }
        other => panic!("expected a configuration error, got {other:?}"),
    }
}

#[test]
fn headers_are_exact() {
    assert_eq!(NORM_SWEEP_HEADER, "h,s,C,N,M,route,norm,bound,ratio_flag");
    assert_eq!(GEVREY_FIT_HEADER, "symbol,s_nominal,rho_fit,C_fit,residual,window,flag");
    assert_eq!(DECOMP_CHECK_HEADER, "h,N,max_rel_diff,M_h,M_h_over_h_n");
}

#[test]
fn defaults_round_trip() {
    let c = ExperimentConfig::default();
    assert_eq!(c.h, vec![0.2, 0.1, 0.05]);
    assert_eq!(c.C, 50.0);
    assert_eq!(c.perturbation, bargmann_weyl::bargmann_core::Perturbation::TanhGauss { amp: 1.0, width: 5.0 });
    assert_eq!(cfg(&c.to_toml()), c);
}

#[test]
fn config_errors_are_reported() {
    assert!(config_error("bogus = 1").contains("bogus"));
    assert!(config_error("[symbol]\nkind = \"bump\"\ns = 2.0\nradius = 1.0\nextra = 3").contains("extra"));
    assert!(config_error("[perturbation]\nkind = \"tanh_gauss\"\namp = 1.0\nwidth = 5.0\nslope = 2").contains("slope"));
    assert!(config_error("h = [0.1, 1.5]").contains("outside"));
    assert!(config_error("h = []").contains("empty"));
    assert!(config_error("s = 1.0").contains("must exceed 1"));
    assert!(config_error("C = -2.0").contains("C"));
    assert!(config_error("[verify]\ncriteria = [11]").contains("11"));
    assert!(config_error("h = \"small\"").len() > 0);
}

#[test]
fn cli_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_bwlab");
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "unknown_key = 1\n").unwrap();
    let status = Command::new(bin)
        .args(["compose", "--config", bad.to_str().unwrap(), "--out", dir.path().to_str().unwrap(), "--seed", "1", "--threads", "1"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    let missing = dir.path().join("missing.toml");
    let status = Command::new(bin)
        .args(["verify", "--config", missing.to_str().unwrap(), "--out", dir.path().to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    let good = dir.path().join("compose.toml");
    std::fs::write(&good, "h = [0.1]\n[compose]\npairs = 2\n").unwrap();
    let out = dir.path().join("out");
    let status = Command::new(bin)
        .args(["compose", "--config", good.to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", "7", "--threads", "1"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("compose.json")).unwrap()).unwrap();
    assert_eq!(json["provenance"]["seed"], 7);
    assert!(std::fs::read_to_string(out.join("compose.csv")).unwrap().starts_with(COMPOSE_HEADER));
}

#[test]
fn compose_is_deterministic_and_echoes_knobs() {
    let c = cfg("seed = 11\nh = [0.1]\n[compose]\npairs = 3\n");
    let (r1, t1) = run_compose(&c).unwrap();
    let (r2, t2) = run_compose(&c).unwrap();
    assert_eq!(r1.body(), r2.body());
    assert_eq!(t1.render(), t2.render());
    assert!(r1.passed);
    assert_eq!(r1.records.len(), 3);
    for rec in &r1.records {
        for key in ["h", "N", "M", "R", "s", "C"] {
            assert!(rec.get(key).is_some(), "record lacks {key}");
        }
    }
    let prov = &r1.body()["provenance"];
    assert!(prov["version"].as_str().unwrap().starts_with('v'));
    assert!(prov["tolerances"].is_object());
    assert_eq!(prov["config"]["seed"], 11);
    assert!(r1.body().get("timing").is_none());

    let other = cfg("seed = 12\nh = [0.1]\n[compose]\npairs = 3\n");
    assert_ne!(run_compose(&other).unwrap().0.body()["records"], r1.body()["records"]);
}

#[test]
fn halving_compose_nodes_warns() {
    let c = cfg("h = [0.1]\n[compose]\npairs = 3\nM = 64\n");
    let (r, _) = run_compose(&c).unwrap();
    assert!(!r.warnings.is_empty());
    assert!(r.warnings.iter().any(|w| w.contains("increase M")));
}

#[test]
fn decomp_check_with_single_basis_function() {
    let c = cfg("h = [0.2]\nN = 0\n[symbol]\nkind = \"gaussian\"\nwidth = 0.6\n");
    let (r, t) = run_decomp_check(&c).unwrap();
    assert!(r.passed, "{:?}", r.records);
    assert_eq!(r.records[0]["N"], 0);
    assert!(r.records[0]["max_rel_diff"].as_f64().unwrap() < 1e-6);
    let text = t.render();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(DECOMP_CHECK_HEADER));
    assert_eq!(lines.next().unwrap().split(',').count(), 5);
}

#[test]
fn schur_divergence_below_threshold_is_expected() {
    let c = cfg("s = 1.5\n[verify]\ncriteria = [9]\n");
    let (r, t) = run_verify(&c).unwrap();
    assert!(r.passed);
    let rec = &r.records[0];
    assert_eq!(rec["expected_divergence"], true);
    assert!(t.render().lines().nth(1).unwrap().starts_with("9,schur_threshold,true,true"));
}

#[test]
fn gevrey_fit_rows() {
    let c = cfg("h = [0.05]\n[[gevrey.symbols]]\nkind = \"bump\"\ns = 2.0\nradius = 1.0\n");
    let (r, t) = run_gevrey_fit(&c).unwrap();
    let text = t.render();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 7);
    assert_eq!(row[1], "2");
    let rho: f64 = row[2].parse().unwrap();
    assert!((rho - 0.5).abs() < 0.1, "rho = {rho}");
    assert_eq!(row[6], "ok");
    assert_eq!(r.records.len(), 1);
}

#[test]
fn outputs_are_written_under_command_names() {
    let dir = tempfile::tempdir().unwrap();
    let c = cfg("h = [0.1]\n[compose]\npairs = 1\n");
    let (r, t) = run("compose", &c).unwrap();
    let (csv, json) = write_outputs(dir.path(), &c, "compose", &t, &r).unwrap();
    assert!(csv.ends_with("compose.csv") && json.ends_with("compose.json"));
    assert!(matches!(run("nonsense", &c), Err(Error::Config(_))));
}
