//! One runner per `bwlab` subcommand. Each returns the JSON report and the
//! CSV table; writing them is left to [`crate::lab::report::write_outputs`].

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::bargmann_core::basis::MAX_GRAM_CONDITION;
use crate::bargmann_core::{BargmannTransform, Grid2};
use crate::error::{Error, Result};
use crate::gevrey::{fit_symbol, ProfileOptions, FIT_BAND, RESIDUAL_THRESHOLD};
use crate::lab::checks::{run_check, CheckParams};
use crate::lab::config::{ExperimentConfig, Route};
use crate::lab::report::*;
use crate::lab::sweep::*;
use crate::weyl_calculus::{compose_direct, compose_fourier, direct_sampling_check, ComposeOptions, GaussianPoly, Symbol};
use crate::C64;

fn tolerances(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Suite parameters taken from a configuration. The Schur check always
/// covers s = 2 and s = 4 and adds the configured s.
pub fn check_params(cfg: &ExperimentConfig) -> CheckParams {
    let mut schur_s = vec![2.0, 4.0];
    if !schur_s.contains(&cfg.s) {
        schur_s.push(cfg.s);
    }
    CheckParams {
        seed: cfg.seed,
        basis_m: cfg.M,
        compose_m: cfg.compose.M,
        schur_s,
        schur_c: cfg.verify.schur_C,
        perturbation: cfg.perturbation.clone(),
    }
}

/// Runs the selected numbered checks. Fails (passed = false) if any check
/// fails; expected divergences count as passes.
pub fn run_verify(cfg: &ExperimentConfig) -> Result<(Report, Table)> {
    let start = Instant::now();
    let params = check_params(cfg);
    let mut report = Report::new("verify", cfg, tolerances(&[("schur_stable_ratio", 3.0), ("schur_divergent_ratio", 10.0)]));
    let mut table = Table::new(VERIFY_HEADER);
    for &id in &cfg.verify.criteria {
        let t0 = Instant::now();
        let o = run_check(id, &params)?;
        report.timing.record_seconds.push(t0.elapsed().as_secs_f64());
        report.passed &= o.passed;
        for w in &o.warnings {
            report.warnings.push(format!("[{}] {w}", o.name));
        }
        report.records.push(o.echo.record(json!({
            "criterion": o.id,
            "name": o.name,
            "passed": o.passed,
            "expected_divergence": o.expected_divergence,
            "tolerance": o.tolerance,
            "metrics": o.metrics,
            "notes": o.notes,
            "warnings": o.warnings,
        })));
        table.push([o.id.to_string(), o.name.clone(), o.passed.to_string(), o.expected_divergence.to_string(), o.tolerance.clone()]);
    }
    report.summary = json!({ "checks": cfg.verify.criteria.len(), "passed": report.passed });
    report.timing.total_seconds = start.elapsed().as_secs_f64();
    Ok((report, table))
}

/// Operator norm of Op(a) on Φ₁ = Φ₀ + (h^{1−1/s}/C)·g for each h, with
/// the unperturbed norm alongside.
pub fn run_norm_sweep(cfg: &ExperimentConfig) -> Result<(Report, Table)> {
    let start = Instant::now();
    let setup = SweepSetup::from_config(cfg);
    let mut report = Report::new(
        "norm-sweep",
        cfg,
        tolerances(&[
            ("norm_ratio_limit", NORM_RATIO_LIMIT),
            ("bound_blowup_limit", BOUND_BLOWUP_LIMIT),
            ("truncation_drift_limit", TRUNCATION_DRIFT_LIMIT),
            ("max_gram_condition", MAX_GRAM_CONDITION),
        ]),
    );
    let results: Vec<(Vec<NormPoint>, f64)> = cfg
        .h
        .par_iter()
        .map(|&h| {
            let t0 = Instant::now();
            norms_at(&setup, h, &[cfg.C, f64::INFINITY]).map(|p| (p, t0.elapsed().as_secs_f64()))
        })
        .collect::<Result<_>>()?;
    let perturbed: Vec<&NormPoint> = results.iter().map(|(p, _)| &p[0]).collect();
    let summary = SweepSummary::new(&perturbed);
    let mut table = Table::new(NORM_SWEEP_HEADER);
    for (points, secs) in &results {
        let (q, q0) = (&points[0], &points[1]);
        let drift = q.truncation_drift();
        if drift > TRUNCATION_DRIFT_LIMIT {
            report.warnings.push(format!(
                "h = {}: norm changes by {:.1}% between the last two truncations (Gram condition {:.2e})",
                q.h,
                100.0 * drift,
                q.report.gram_condition
            ));
        }
        let mut echo = Echo::from_config(cfg, q.h);
        echo.R = Some(q.radius);
        report.records.push(echo.record(json!({
            "route": cfg.route.name(),
            "norm": q.report.norm,
            "norm_phi0": q0.report.norm,
            "bound": q.bound,
            "by_truncation": q.report.by_truncation,
            "gram_condition": q.report.gram_condition,
            "truncation_drift": drift,
            "ratio_flag": summary.flag,
        })));
        report.timing.record_seconds.push(*secs);
        table.push([
            q.h.to_string(),
            cfg.s.to_string(),
            cfg.C.to_string(),
            cfg.N.to_string(),
            cfg.M.to_string(),
            cfg.route.name().to_string(),
            q.report.norm.to_string(),
            q.bound.to_string(),
            summary.flag.clone(),
        ]);
    }
    let norms0: Vec<f64> = results.iter().map(|(p, _)| p[1].report.norm).collect();
    report.summary = json!({
        "norm_ratio": summary.norm_ratio,
        "bound_ratio": summary.bound_ratio,
        "ratio_flag": summary.flag,
        "norm_ratio_phi0": spread(&norms0),
    });
    report.timing.total_seconds = start.elapsed().as_secs_f64();
    Ok((report, table))
}

/// Decay fits of windowed transforms for each configured symbol and h.
pub fn run_gevrey_fit(cfg: &ExperimentConfig) -> Result<(Report, Table)> {
    let start = Instant::now();
    let mut report = Report::new(
        "gevrey-fit",
        cfg,
        tolerances(&[
            ("fit_band_low", FIT_BAND.0),
            ("fit_band_high", FIT_BAND.1),
            ("residual_threshold", RESIDUAL_THRESHOLD),
        ]),
    );
    let mut table = Table::new(GEVREY_FIT_HEADER);
    let window = cfg.gevrey.window;
    let opts = ProfileOptions::default();
    for &h in &cfg.h {
        let transform = BargmannTransform::new(cfg.phase(), h)?;
        for spec in &cfg.gevrey.symbols {
            let t0 = Instant::now();
            let a = spec.build(&transform)?;
            let (profile, fit) = fit_symbol(&a, window, &opts)?;
            report.timing.record_seconds.push(t0.elapsed().as_secs_f64());
            let s_nominal = spec.gevrey_index();
            if fit.flagged() {
                report.warnings.push(format!("h = {h}, {}: fit flagged {}", spec.label(), fit.flag_label()));
            }
            report.records.push(Echo::from_config(cfg, h).record(json!({
                "symbol": spec.label(),
                "s_nominal": s_nominal,
                "inverse_s": s_nominal.map(|s| 1.0 / s),
                "rho_fit": fit.rho,
                "C_fit": fit.c,
                "power": fit.power,
                "log_amplitude": fit.log_a,
                "residual": fit.residual,
                "radius_range": [fit.radius_range.0, fit.radius_range.1],
                "n_points": fit.n_points,
                "k_max": profile.k_max,
                "window": window,
                "flag": fit.flag_label(),
            })));
            table.push([
                spec.label(),
                s_nominal.map(|s| s.to_string()).unwrap_or_default(),
                fit.rho.to_string(),
                fit.c.to_string(),
                fit.residual.to_string(),
                window.name(),
                fit.flag_label(),
            ]);
        }
    }
    report.summary = json!({ "fits": report.records.len(), "flagged": report.warnings.len() });
    report.timing.total_seconds = start.elapsed().as_secs_f64();
    Ok((report, table))
}

/// Entrywise agreement of the three quantization routes and the window
/// mass M(h) against h.
pub fn run_decomp_check(cfg: &ExperimentConfig) -> Result<(Report, Table)> {
    let start = Instant::now();
    let tol = cfg.decomp.tol;
    let mut report = Report::new("decomp-check", cfg, tolerances(&[("max_rel_diff", tol), ("M_h_over_h_n_spread", 4.0), ("edge_warning", EDGE_WARNING)]));
    let mut table = Table::new(DECOMP_CHECK_HEADER);
    let mut ratios = Vec::new();
    for &h in &cfg.h {
        let t0 = Instant::now();
        let transform = BargmannTransform::new(cfg.phase(), h)?;
        let basis = quadratic_basis(&transform, cfg.N, cfg.M, cfg.R)?;
        let radius = box_radius(&basis);
        let a = cfg.symbol.build(&transform)?;
        let edge = edge_fraction(&a, radius);
        if edge > EDGE_WARNING {
            report.warnings.push(format!(
                "h = {h}: the symbol reaches {edge:.2e} of its peak on the boundary of the basis box (half-width {radius:.3}); rank-one terms beyond the box are dropped"
            ));
        }
        let base = SweepSetup::from_config(cfg);
        let with = |route| SweepSetup { route, ..base.clone() };
        let sup = assemble(&with(Route::Superposition), &transform, &basis)?;
        let dir = assemble(&with(Route::Direct), &transform, &basis)?;
        let opts = crate::weyl_calculus::RankOneOptions { spacing: cfg.decomp.spacing, ..Default::default() };
        let r1 = crate::weyl_calculus::rank_one_decomposition(&a, &transform, &basis, &opts)?;
        let diffs = [dir.rel_diff(&sup), r1.matrix.rel_diff(&sup), r1.matrix.rel_diff(&dir)];
        let max_rel_diff = diffs.iter().cloned().fold(0.0, f64::max);
        let ratio = r1.m_h / h;
        ratios.push(ratio);
        if !(max_rel_diff < tol) {
            report.passed = false;
        }
        let mut echo = Echo::from_config(cfg, h);
        echo.R = Some(radius);
        report.records.push(echo.record(json!({
            "direct_vs_superposition": diffs[0],
            "rank_one_vs_superposition": diffs[1],
            "rank_one_vs_direct": diffs[2],
            "max_rel_diff": max_rel_diff,
            "M_h": r1.m_h,
            "M_h_over_h_n": ratio,
            "rank_one_terms": r1.terms,
        })));
        report.timing.record_seconds.push(t0.elapsed().as_secs_f64());
        table.push([h.to_string(), cfg.N.to_string(), max_rel_diff.to_string(), r1.m_h.to_string(), ratio.to_string()]);
    }
    let (c1, c2) = (ratios.iter().cloned().fold(f64::MAX, f64::min), ratios.iter().cloned().fold(f64::MIN, f64::max));
    if !(c2 / c1 < 4.0) {
        report.passed = false;
    }
    report.summary = json!({ "c1": c1, "c2": c2, "c2_over_c1": c2 / c1, "passed": report.passed });
    report.timing.total_seconds = start.elapsed().as_secs_f64();
    Ok((report, table))
}

/// a # b at points by the direct four-dimensional integral and by the
/// Fourier route, for the configured pair and for random Gaussian pairs.
pub fn run_compose(cfg: &ExperimentConfig) -> Result<(Report, Table)> {
    let start = Instant::now();
    let cc = &cfg.compose;
    let mut report = Report::new("compose", cfg, tolerances(&[("rel_diff", cc.tol), ("rel_diff_floor", REL_DIFF_FLOOR)]));
    let mut table = Table::new(COMPOSE_HEADER);
    let opts = ComposeOptions { points: cc.M };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst: f64 = 0.0;
    for &h in &cfg.h {
        let transform = BargmannTransform::new(cfg.phase(), h)?;
        let w = transform.weight;
        let mut cases: Vec<(String, Symbol, Symbol, Vec<C64>)> = Vec::new();
        if let (Some(a), Some(b)) = (&cc.a, &cc.b) {
            let xs = if cc.x.is_empty() { vec![C64::new(0.0, 0.0)] } else { cc.x.iter().map(|v| C64::new(v[0], v[1])).collect() };
            cases.push((format!("{}#{}", a.label(), b.label()), a.build(&transform)?, b.build(&transform)?, xs));
        }
        let [lo, hi] = cc.width_range;
        let draw = |rng: &mut ChaCha8Rng| -> Result<Symbol> {
            let centre = C64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
            let width = if hi > lo { rng.gen_range(lo..hi) } else { lo };
            let amp = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            Ok(Symbol::gaussian(GaussianPoly::isotropic(centre, width, amp)?, h, w))
        };
        for k in 0..cc.pairs {
            let a = draw(&mut rng)?;
            let b = draw(&mut rng)?;
            let x = C64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
            cases.push((format!("random_{k}"), a, b, vec![x]));
        }
        for (label, a, b, xs) in cases {
            if let Some(msg) = direct_sampling_check(&a, &b, cc.M) {
                report.warnings.push(format!("h = {h}, {label}: {msg}"));
            }
            for x in xs {
                let t0 = Instant::now();
                let d = compose_direct(&a, &b, x, &opts)?;
                let f = compose_fourier(&a, &b, &Grid2::point(x), &opts)?.eval(x);
                let rel = (d - f).norm() / d.norm().max(REL_DIFF_FLOOR);
                worst = worst.max(rel);
                report.timing.record_seconds.push(t0.elapsed().as_secs_f64());
                let mut echo = Echo::from_config(cfg, h);
                echo.M = Some(cc.M);
                report.records.push(echo.record(json!({
                    "pair": label,
                    "x": [x.re, x.im],
                    "direct": [d.re, d.im],
                    "fourier": [f.re, f.im],
                    "rel_diff": rel,
                })));
                table.push([
                    label.clone(),
                    h.to_string(),
                    cc.M.to_string(),
                    x.re.to_string(),
                    x.im.to_string(),
                    d.re.to_string(),
                    d.im.to_string(),
                    f.re.to_string(),
                    f.im.to_string(),
                    rel.to_string(),
                ]);
            }
        }
    }
    if report.records.is_empty() {
        return Err(Error::Config("compose has nothing to evaluate: set a and b, or pairs > 0".into()));
    }
    report.passed = worst < cc.tol;
    report.summary = json!({ "max_rel_diff": worst, "passed": report.passed });
    report.timing.total_seconds = start.elapsed().as_secs_f64();
    Ok((report, table))
}

/// Relative size of a symbol on the basis box boundary above which
/// decomp-check warns about truncation.
pub const EDGE_WARNING: f64 = 1e-6;

/// max |a| on the boundary of the square of half-width r, relative to
/// max |a| over the square, both sampled on a 101×101 grid.
fn edge_fraction(a: &Symbol, r: f64) -> f64 {
    let Ok(grid) = Grid2::centered(C64::new(0.0, 0.0), r, 101) else {
        return 0.0;
    };
    let (mut peak, mut edge): (f64, f64) = (0.0, 0.0);
    for i in 0..grid.m1 {
        for j in 0..grid.m2 {
            let v = a.eval(grid.node(i * grid.m2 + j)).norm();
            peak = peak.max(v);
            if i == 0 || j == 0 || i + 1 == grid.m1 || j + 1 == grid.m2 {
                edge = edge.max(v);
            }
        }
    }
    if peak > 0.0 {
        edge / peak
    } else {
        0.0
    }
}

/// Values of a # b below this modulus are compared in absolute terms.
pub const REL_DIFF_FLOOR: f64 = 1e-3;

/// Dispatches a subcommand by name.
pub fn run(command: &str, cfg: &ExperimentConfig) -> Result<(Report, Table)> {
    match command {
        "verify" => run_verify(cfg),
        "norm-sweep" => run_norm_sweep(cfg),
        "gevrey-fit" => run_gevrey_fit(cfg),
        "decomp-check" => run_decomp_check(cfg),
        "compose" => run_compose(cfg),
        other => Err(Error::Config(format!("unknown command {other}"))),
    }
}
