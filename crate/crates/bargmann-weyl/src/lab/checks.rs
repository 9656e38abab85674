//! The numbered verification suite shared by `bwlab verify` and the
//! acceptance test. Each check returns its metrics, its tolerance and a
//! pass flag; numerical errors propagate as `Err`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bargmann_core::{
    norm, BargmannPhase, BargmannTransform, Grid2, HoloFunction, OperatorMatrix, Perturbation, QuadRule, RealGaussian, WeightFunction,
};
use crate::gevrey::{fit_symbol, gevrey_bump, wiener_profile, FitFlag, ProfileOptions, Window};
use crate::lab::config::{Route, SymbolSpec};
use crate::lab::report::Echo;
use crate::lab::sweep::{norms_at, quadratic_basis, spread, SweepSetup, SweepSummary, NORM_RATIO_LIMIT};
use crate::magnetic::{compose_cocycle, transport_weight, MagneticTranslation, Sign};
use crate::phase_space::{lift, sigma, LinearFormOnLambda, QuadraticWeight, WeightPreset};
use crate::weyl_calculus::{
    compose_direct, compose_fourier, compose_plane_wave, direct_sampling_check, fourier_at, fourier_symplectic, operator_norm,
    projection_window, quantize_direct, quantize_superposition, rank_one_decomposition, rank_one_projection, schur_sweep, twisted_convolution,
    window_mass, ComposeOptions, FourierOptions, GaussianPoly, QuantizeOptions, RankOneOptions, Side, Symbol,
};
use crate::{Result, C64};

/// Knobs of the suite that a configuration may change.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub seed: u64,
    /// Quadrature nodes per axis of basis boxes.
    pub basis_m: usize,
    /// Nodes per axis of the composition boxes.
    pub compose_m: usize,
    /// Gevrey indices of the Schur kernel check; s < 2 is expected to diverge.
    pub schur_s: Vec<f64>,
    pub schur_c: f64,
    pub perturbation: Perturbation,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self {
            seed: 20240601,
            basis_m: 96,
            compose_m: 128,
            schur_s: vec![2.0, 4.0, 1.5],
            schur_c: 1.4,
            perturbation: Perturbation::TanhGauss { amp: 1.0, width: 5.0 },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub tolerance: String,
    pub metrics: BTreeMap<String, f64>,
    pub echo: Echo,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    /// A divergence was observed and was the expected outcome.
    pub expected_divergence: bool,
}

impl CheckOutcome {
    fn new(id: u8, name: &str, tolerance: &str, echo: Echo) -> Self {
        Self {
            id,
            name: name.into(),
            passed: true,
            tolerance: tolerance.into(),
            metrics: BTreeMap::new(),
            echo,
            notes: Vec::new(),
            warnings: Vec::new(),
            expected_divergence: false,
        }
    }

    fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.into(), value);
    }

    /// Records `value` and requires it to be below `limit`.
    fn below(&mut self, key: &str, value: f64, limit: f64) {
        self.metric(key, value);
        if !(value < limit) {
            self.passed = false;
            self.notes.push(format!("{key} = {value:.3e} is not below {limit:.0e}"));
        }
    }

    fn require(&mut self, ok: bool, note: String) {
        if !ok {
            self.passed = false;
            self.notes.push(note);
        }
    }
}

pub const CHECK_NAMES: [&str; 10] = [
    "unitarity",
    "algebra",
    "composition_cross_route",
    "quantization_cross_route",
    "oscillator_spectrum",
    "projection",
    "gevrey_fit",
    "norm_sweep",
    "schur_threshold",
    "l1_bound_probe",
];

pub fn run_check(id: u8, p: &CheckParams) -> Result<CheckOutcome> {
    match id {
        1 => unitarity(p),
        2 => algebra(p),
        3 => composition_cross_route(p),
        4 => quantization_cross_route(p),
        5 => oscillator_spectrum(p),
        6 => projection(p),
        7 => gevrey_fit(p),
        8 => norm_sweep(p),
        9 => schur_threshold(p),
        10 => l1_bound_probe(p),
        _ => Err(crate::Error::Config(format!("no check numbered {id}"))),
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rc(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    c(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn iso(center: C64, width: f64, amp: C64, h: f64, w: QuadraticWeight) -> Result<Symbol> {
    Ok(Symbol::gaussian(GaussianPoly::isotropic(center, width, amp)?, h, w))
}

fn echo(h: &[f64], n: Option<usize>, m: Option<usize>, s: Option<f64>, cc: Option<f64>) -> Echo {
    Echo { h: serde_json::to_value(h).expect("h serializes"), N: n, M: m, R: None, s, C: cc }
}

fn max_entry(m: &nalgebra::DMatrix<C64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Random state: the Bargmann transform of a degree-4 Hermite combination.
fn random_state(rng: &mut ChaCha8Rng, t: &BargmannTransform) -> Result<HoloFunction> {
    let coeffs: Vec<C64> = (0..5).map(|_| rc(rng, 1.0)).collect();
    t.transform(&RealGaussian::hermite_combination(&coeffs, t.h))
}

fn norm_near(u: &HoloFunction, w: &WeightFunction, centre: C64) -> Result<f64> {
    let lambda = w.base.margin_against(u.q[2]);
    let r = QuadRule::radius_for(u.h, 4, lambda) + 0.5;
    norm(u, w, &QuadRule::new(centre, r, 160)?)
}

const UNITARITY_HS: [f64; 3] = [0.2, 0.1, 0.05];
const UNITARITY_DRAWS: usize = 50;

/// Magnetic translations are isometries H_Φ₀ → H_Φ₀ and H_Φ₁ → H_Φ₂ with
/// Φ₂ the transported weight.
fn unitarity(p: &CheckParams) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(1, CHECK_NAMES[0], "relative norm change < 1e-8", echo(&UNITARITY_HS, None, Some(160), Some(2.0), Some(1.0)));
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x01);
    let (mut worst0, mut worst1): (f64, f64) = (0.0, 0.0);
    for h in UNITARITY_HS {
        for k in 0..UNITARITY_DRAWS {
            let phase = if k % 2 == 0 { BargmannPhase::fbi() } else { BargmannPhase::bargmann() };
            let tr = BargmannTransform::new(phase, h)?;
            let w0 = WeightFunction::quadratic(tr.weight);
            let w1 = WeightFunction::gevrey_scaled(tr.weight, &p.perturbation, h, 2.0, 1.0)?;
            let u = random_state(&mut rng, &tr)?;
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            let t = MagneticTranslation::new(LinearFormOnLambda::from_xstar(rc(&mut rng, 1.5), &tr.weight), h, sign)?;
            let v = t.apply(&u)?;
            let s = t.shift();
            let (n0, m0) = (norm_near(&u, &w0, c(0.0, 0.0))?, norm_near(&v, &w0, s)?);
            worst0 = worst0.max((m0 / n0 - 1.0).abs());
            let w2 = transport_weight(&w1, &t);
            let (n1, m1) = (norm_near(&u, &w1, c(0.0, 0.0))?, norm_near(&v, &w2, s)?);
            worst1 = worst1.max((m1 / n1 - 1.0).abs());
        }
    }
    out.metric("draws", (UNITARITY_HS.len() * UNITARITY_DRAWS) as f64);
    out.below("max_rel_change_phi0", worst0, 1e-8);
    out.below("max_rel_change_phi1_phi2", worst1, 1e-8);
    Ok(out)
}

/// Cocycle law, involution of F_h, the transform of a twisted convolution
/// and the plane-wave composition rules.
fn algebra(p: &CheckParams) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(
        2,
        CHECK_NAMES[1],
        "cocycle < 1e-10, involution < 1e-7, convolution transform < 1e-6, plane-wave rules < 1e-6",
        echo(&[0.1, 0.2, 0.5], None, Some(128), None, None),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x02);

    // Cocycle: T_Y T_Z = e^{2iσ(Y,Z)/h} T_{Y+Z}.
    let h = 0.1;
    let tr = BargmannTransform::new(BargmannPhase::fbi(), h)?;
    let w = tr.weight;
    let u = random_state(&mut rng, &tr)?;
    let mut cocycle: f64 = 0.0;
    for _ in 0..20 {
        let (y, z) = (rc(&mut rng, 1.0), rc(&mut rng, 1.0));
        let ty = MagneticTranslation::exp_sigma(y, 2.0, &w, h)?;
        let tz = MagneticTranslation::exp_sigma(z, 2.0, &w, h)?;
        let (tyz, phase) = compose_cocycle(&ty, &tz)?;
        let expected = (c(0.0, 2.0) * sigma(&lift(y, &w), &lift(z, &w)) / h).exp();
        cocycle = cocycle.max((phase - expected).norm());
        let twice = ty.apply(&tz.apply(&u)?)?;
        let once = tyz.apply(&u)?;
        for _ in 0..20 {
            let x = rc(&mut rng, 1.5);
            let (a, b) = (twice.eval(x), once.eval(x) * phase);
            cocycle = cocycle.max((a - b).norm() / (1.0 + a.norm()));
        }
    }
    out.below("cocycle_residual", cocycle, 1e-10);

    // F_h ∘ F_h = I on closed-form Gaussians and on a sampled Gevrey bump.
    let mut involution: f64 = 0.0;
    for w in [QuadraticWeight::fbi(), QuadraticWeight::bargmann()] {
        let fopts = FourierOptions::default();
        for _ in 0..3 {
            let a = iso(rc(&mut rng, 1.0), rng.gen_range(0.3..1.0), rc(&mut rng, 1.0), 0.1, w)?;
            let ffa = fourier_symplectic(&fourier_symplectic(&a, &fopts)?, &fopts)?;
            for _ in 0..5 {
                let x = rc(&mut rng, 1.5);
                involution = involution.max((ffa.eval(x) - a.eval(x)).norm());
            }
        }
        let b = Symbol::bump(gevrey_bump(2.0, 1.0)?, 0.5, w);
        let sopts = FourierOptions { points: 128 };
        let ffb = fourier_symplectic(&fourier_symplectic(&b, &sopts)?, &sopts)?;
        for x in [c(0.0, 0.0), c(0.3, 0.2), c(-0.5, 0.1), c(0.7, -0.4)] {
            involution = involution.max((ffb.eval(x) - b.eval(x)).norm());
        }
    }
    out.below("involution_residual", involution, 1e-7);

    // F_h(u *_σ v) = (F_h u) *_σ v.
    let (w, h) = (QuadraticWeight::bargmann(), 0.5);
    let u = iso(c(0.1, 0.0), 0.5, c(1.0, 0.0), h, w)?;
    let v = iso(c(0.0, -0.1), 0.6, c(0.5, 0.5), h, w)?;
    let yg = Grid2::centered(c(0.0, -0.1), 4.0, 161)?;
    let box_ = Grid2::centered(c(0.0, 0.0), 5.0, 121)?;
    let conv = Symbol::grid(twisted_convolution(&u, &v, &box_, &yg)?, h, w);
    let pts = [c(0.0, 0.0), c(0.2, 0.1), c(-0.3, 0.25)];
    let lhs = fourier_at(&conv, &pts, &FourierOptions { points: 121 })?;
    let fu = fourier_symplectic(&u, &FourierOptions::default())?;
    let mut commute: f64 = 0.0;
    for (k, &x) in pts.iter().enumerate() {
        let rhs = twisted_convolution(&fu, &v, &Grid2::point(x), &yg)?.values[0];
        commute = commute.max((lhs[k] - rhs).norm());
    }
    out.below("convolution_transform_residual", commute, 1e-6);

    // Plane-wave rules against twisted convolution with the closed-form transform.
    let h = 0.2;
    let mut plane: f64 = 0.0;
    for w in [QuadraticWeight::fbi(), QuadraticWeight::bargmann()] {
        let form = LinearFormOnLambda::from_xstar(rc(&mut rng, 0.4), &w);
        let a = iso(rc(&mut rng, 0.2), 0.6, c(1.0, 0.0), h, w)?;
        let pw = Symbol::plane_wave(form, h, w);
        let left = compose_plane_wave(&form, &a, Side::Left)?;
        let right = compose_plane_wave(&form, &a, Side::Right)?;
        let sandwich = compose_plane_wave(&form, &left, Side::Right)?;
        let conj = compose_plane_wave(&form.scaled(-1.0), &left, Side::Right)?;
        let opts = ComposeOptions::default();
        for x in [c(0.0, 0.0), c(0.15, -0.1), c(-0.2, 0.05)] {
            let o = Grid2::point(x);
            let lf = compose_fourier(&pw, &a, &o, &opts)?.eval(x);
            let rf = compose_fourier(&pw.conj(), &a.conj(), &o, &opts)?.eval(x).conj();
            let expect = C64::new(0.0, 2.0 * form.eval_on_lambda(x, &w) / h).exp() * a.eval(x);
            plane = plane
                .max((left.eval(x) - lf).norm())
                .max((right.eval(x) - rf).norm())
                .max((sandwich.eval(x) - expect).norm())
                .max((conj.eval(x) - a.eval(x + form.xstar)).norm());
        }
    }
    out.below("plane_wave_residual", plane, 1e-6);
    Ok(out)
}

const COMPOSE_PAIRS: usize = 10;

/// compose_direct against compose_fourier on random Gaussian pairs.
fn composition_cross_route(p: &CheckParams) -> Result<CheckOutcome> {
    let h = 0.1;
    let mut out = CheckOutcome::new(3, CHECK_NAMES[2], "relative difference < 1e-5", echo(&[h], None, Some(p.compose_m), None, None));
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x03);
    let w = QuadraticWeight::bargmann();
    let opts = ComposeOptions { points: p.compose_m };
    let mut worst: f64 = 0.0;
    for _ in 0..COMPOSE_PAIRS {
        let a = iso(rc(&mut rng, 0.3), rng.gen_range(0.3..0.45), rc(&mut rng, 1.0), h, w)?;
        let b = iso(rc(&mut rng, 0.3), rng.gen_range(0.3..0.45), rc(&mut rng, 1.0), h, w)?;
        let x = rc(&mut rng, 0.3);
        if let Some(msg) = direct_sampling_check(&a, &b, p.compose_m) {
            if !out.warnings.contains(&msg) {
                out.warnings.push(msg);
            }
        }
        let d = compose_direct(&a, &b, x, &opts)?;
        let f = compose_fourier(&a, &b, &Grid2::point(x), &opts)?.eval(x);
        worst = worst.max((d - f).norm() / d.norm().max(1e-3));
    }
    out.metric("pairs", COMPOSE_PAIRS as f64);
    out.below("max_rel_diff", worst, 1e-5);
    Ok(out)
}

const MASS_HS: [f64; 3] = [0.2, 0.1, 0.05];

/// Three quantization routes on one Gaussian, and M(h)/h bounds.
fn quantization_cross_route(p: &CheckParams) -> Result<CheckOutcome> {
    let (h, n) = (0.1, 12);
    let mut out = CheckOutcome::new(
        4,
        CHECK_NAMES[3],
        "entrywise relative difference < 1e-3, max/min of M(h)/h < 4",
        echo(&[h], Some(n), Some(p.basis_m), None, None),
    );
    let t = BargmannTransform::new(BargmannPhase::bargmann(), h)?;
    let basis = quadratic_basis(&t, n, p.basis_m, None)?;
    let a = iso(c(0.1, -0.1), 0.6, c(1.0, 0.0), h, t.weight)?;
    let s = quantize_superposition(&a, &basis, &QuantizeOptions::default())?;
    let d = quantize_direct(&a, &basis, &QuantizeOptions { points: 128, drop_below: 1e-15 })?;
    let r = rank_one_decomposition(&a, &t, &basis, &RankOneOptions::default())?.matrix;
    let diff = d.rel_diff(&s).max(r.rel_diff(&s)).max(r.rel_diff(&d));
    out.metric("direct_vs_superposition", d.rel_diff(&s));
    out.metric("rank_one_vs_superposition", r.rel_diff(&s));
    out.metric("rank_one_vs_direct", r.rel_diff(&d));
    out.below("max_rel_diff", diff, 1e-3);
    let mut ratios = Vec::new();
    for hh in MASS_HS {
        let tt = BargmannTransform::new(BargmannPhase::bargmann(), hh)?;
        let m = window_mass(&tt)? / hh;
        out.metric(&format!("M_h_over_h@{hh}"), m);
        ratios.push(m);
    }
    out.below("M_h_over_h_spread", spread(&ratios), 4.0);
    Ok(out)
}

fn hermitian_eigenvalues(m: &OperatorMatrix, k: usize) -> Vec<f64> {
    let a = m.truncated(k).entries;
    let herm = (&a + a.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().cloned().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

/// The oscillator symbol has eigenvalues h(2k + 1).
fn oscillator_spectrum(p: &CheckParams) -> Result<CheckOutcome> {
    let (h, n) = (0.1, 40);
    let mut out = CheckOutcome::new(5, CHECK_NAMES[4], "relative eigenvalue error < 1% for k = 0..4", echo(&[h], Some(n), Some(p.basis_m), None, None));
    let phase = BargmannPhase::bargmann();
    let t = BargmannTransform::new(phase, h)?;
    let basis = quadratic_basis(&t, n, p.basis_m, None)?;
    let a = Symbol::oscillator(&phase, 1e-3, h)?;
    let m = quantize_superposition(&a, &basis, &QuantizeOptions { points: 128, drop_below: 1e-15 })?;
    let ev = hermitian_eigenvalues(&m, 20);
    let mut worst: f64 = 0.0;
    for (k, e) in ev.iter().take(5).enumerate() {
        let exact = h * (2 * k + 1) as f64;
        out.metric(&format!("eigenvalue_{k}"), *e);
        worst = worst.max((e - exact).abs() / exact);
    }
    out.below("max_rel_error", worst, 0.01);
    Ok(out)
}

/// P = |v₀⟩⟨v₀| is an orthogonal projection of trace one whose Weyl
/// symbol is χ₀(X/√h).
fn projection(p: &CheckParams) -> Result<CheckOutcome> {
    let (h, n) = (0.1, 16);
    let mut out = CheckOutcome::new(
        6,
        CHECK_NAMES[5],
        "P² = P, P* = P, tr P = 1 to 1e-6; symbol match < 1e-4",
        echo(&[h], Some(n), Some(p.basis_m), None, None),
    );
    let t = BargmannTransform::new(BargmannPhase::bargmann(), h)?;
    let basis = quadratic_basis(&t, n, p.basis_m, None)?;
    let pm = rank_one_projection(&t.v0()?, &basis)?;
    out.below("idempotence", pm.compose(&pm).rel_diff(&pm), 1e-6);
    out.below("self_adjointness", pm.adjoint().rel_diff(&pm), 1e-6);
    let trace: C64 = (0..pm.dim()).map(|k| pm.entries[(k, k)]).sum();
    out.below("trace_error", (trace - 1.0).norm(), 1e-6);
    let gram = basis.gram_in(&basis.weight)?;
    out.metric("operator_norm", operator_norm(&pm, &gram)?.norm);
    let q = quantize_superposition(&projection_window(&t, h)?, &basis, &QuantizeOptions::default())?;
    out.below("symbol_match", max_entry(&(&q.entries - &pm.entries)), 1e-4);
    Ok(out)
}

/// Decay exponents of windowed transforms of Gevrey bumps, and the
/// Gaussian control.
fn gevrey_fit(_p: &CheckParams) -> Result<CheckOutcome> {
    let h = 0.05;
    let mut out = CheckOutcome::new(7, CHECK_NAMES[6], "|ρ − 1/s| < 0.1 for s = 2, 3; Gaussian flagged model_mismatch", echo(&[h], None, None, None, None));
    let w = QuadraticWeight::bargmann();
    let opts = ProfileOptions::default();
    for s in [2.0, 3.0] {
        let (_, fit) = fit_symbol(&Symbol::bump(gevrey_bump(s, 1.0)?, h, w), Window::Gaussian, &opts)?;
        out.metric(&format!("rho@s={s}"), fit.rho);
        out.below(&format!("rho_error@s={s}"), (fit.rho - 1.0 / s).abs(), 0.1);
        if fit.flagged() {
            out.warnings.push(format!("s = {s} fit flagged {}", fit.flag_label()));
        }
    }
    let g = iso(c(0.0, 0.0), 0.5, c(1.0, 0.0), h, w)?;
    let (_, fit) = fit_symbol(&g, Window::Gaussian, &opts)?;
    out.metric("rho@gaussian", fit.rho);
    out.require(fit.flags.contains(&FitFlag::ModelMismatch), format!("Gaussian control not flagged ({})", fit.flag_label()));
    Ok(out)
}

pub const SWEEP_HS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// The norm-sweep setup used by the suite: a Gevrey-2 bump quantized by
/// superposition in a degree-40 basis.
pub fn suite_sweep_setup(p: &CheckParams, s: f64, symbol: SymbolSpec) -> SweepSetup {
    SweepSetup {
        preset: WeightPreset::Bargmann,
        symbol,
        n: 40,
        m: p.basis_m,
        r: None,
        route: Route::Superposition,
        points: 64,
        direct_points: 128,
        rank_one_spacing: 0.18,
        s,
        perturbation: p.perturbation.clone(),
    }
}

/// Uniform norms for C = 50 and the blow-up contrast at C = 1.
fn norm_sweep(p: &CheckParams) -> Result<CheckOutcome> {
    let setup = suite_sweep_setup(p, 2.0, SymbolSpec::Bump { s: 2.0, radius: 1.0, center: [0.0, 0.0], amplitude: 1.0 });
    let mut out = CheckOutcome::new(
        8,
        CHECK_NAMES[7],
        "C = 50: norm max/min < 2; C = 1: norm max/min > 2 or bound blow-up",
        echo(&SWEEP_HS, Some(setup.n), Some(setup.m), Some(2.0), Some(50.0)),
    );
    let cs = [50.0, 1.0];
    let mut points = Vec::new();
    for h in SWEEP_HS {
        points.push(norms_at(&setup, h, &cs)?);
    }
    for (k, &cc) in cs.iter().enumerate() {
        let col: Vec<_> = points.iter().map(|row| &row[k]).collect();
        for q in &col {
            out.metric(&format!("norm@C={cc},h={}", q.h), q.report.norm);
            let drift = q.truncation_drift();
            if drift > crate::lab::sweep::TRUNCATION_DRIFT_LIMIT {
                out.warnings.push(format!(
                    "C = {cc}, h = {}: norm changes by {:.1}% between truncations N = {} and N = {} (Gram condition {:.2e})",
                    q.h,
                    100.0 * drift,
                    q.report.by_truncation[q.report.by_truncation.len() - 2].0,
                    setup.n,
                    q.report.gram_condition
                ));
            }
        }
        let summary = SweepSummary::new(&col);
        out.metric(&format!("norm_ratio@C={cc}"), summary.norm_ratio);
        out.metric(&format!("bound_ratio@C={cc}"), summary.bound_ratio);
        if cc == 50.0 {
            out.require(summary.norm_ratio < NORM_RATIO_LIMIT, format!("C = 50 norm ratio {:.3} is not below 2", summary.norm_ratio));
        } else {
            out.require(
                summary.norm_ratio > NORM_RATIO_LIMIT || summary.bound_blowup(),
                format!("C = 1 shows neither norm growth ({:.3}) nor bound blow-up ({:.3})", summary.norm_ratio, summary.bound_ratio),
            );
        }
    }
    Ok(out)
}

/// h-stability of the Schur kernel integral: stable for s ≥ 2, divergent below.
fn schur_threshold(p: &CheckParams) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(
        9,
        CHECK_NAMES[8],
        "ratio < 3 for s ≥ 2; divergence flag for s < 2",
        echo(&SWEEP_HS, None, None, None, Some(p.schur_c)),
    );
    for &s in &p.schur_s {
        let sw = schur_sweep(s, p.schur_c, &SWEEP_HS)?;
        out.metric(&format!("ratio@s={s}"), sw.ratio);
        if s >= 2.0 {
            out.require(sw.stable, format!("s = {s}: ratio {:.3} is not below 3", sw.ratio));
        } else {
            out.require(sw.divergent, format!("s = {s}: expected divergence, ratio {:.3}", sw.ratio));
            if sw.divergent {
                out.expected_divergence = true;
                out.notes.push(format!("s = {s}: divergent as expected (ratio {:.3e})", sw.ratio));
            }
        }
    }
    Ok(out)
}

/// A Gevrey-3 bump has an integrable windowed-transform envelope, so its
/// quantization is bounded on H_Φ₀ uniformly in h.
fn l1_bound_probe(p: &CheckParams) -> Result<CheckOutcome> {
    let symbol = SymbolSpec::Bump { s: 3.0, radius: 1.0, center: [0.0, 0.0], amplitude: 1.0 };
    let setup = suite_sweep_setup(p, 2.0, symbol.clone());
    let mut out = CheckOutcome::new(10, CHECK_NAMES[9], "norm max/min on H_Φ₀ < 2", echo(&SWEEP_HS, Some(setup.n), Some(setup.m), None, None));
    // ∫ sup_T |F_h(χ_T a)|(r) 2πr dr over the sampled radii (units of h).
    let probe = symbol.build(&BargmannTransform::new(BargmannPhase::bargmann(), 0.05)?)?;
    let prof = wiener_profile(&probe, Window::Gaussian, &ProfileOptions::default())?;
    let mut l1 = 0.0;
    for k in 1..prof.radii.len() {
        let (r0, r1) = (prof.radii[k - 1], prof.radii[k]);
        l1 += 0.5 * (r1 - r0) * std::f64::consts::TAU * (r0 * prof.moduli[k - 1] + r1 * prof.moduli[k]);
    }
    out.metric("envelope_l1", l1);
    out.require(l1.is_finite(), "windowed-transform envelope is not integrable".into());
    let mut norms = Vec::new();
    for h in SWEEP_HS {
        let q = norms_at(&setup, h, &[f64::INFINITY])?.remove(0);
        out.metric(&format!("norm@h={h}"), q.report.norm);
        norms.push(q.report.norm);
    }
    out.below("norm_ratio", spread(&norms), 2.0);
    Ok(out)
}
