//! Operator norms of one quantized symbol on perturbed weights
//! Φ₁ = Φ₀ + (h^{1−1/s}/C)·g across an h-grid.
//!
//! The matrix of Op(a) is assembled once per h in a basis orthonormal for
//! Φ₀; each weight only changes the Gram matrix.

use serde::{Deserialize, Serialize};

use crate::bargmann_core::{BargmannPhase, BargmannTransform, Basis, OperatorMatrix, Perturbation, QuadRule, WeightFunction};
use crate::error::Result;
use crate::lab::config::{ExperimentConfig, Route, SymbolSpec};
use crate::phase_space::WeightPreset;
use crate::weyl_calculus::{
    operator_norm, quantize_direct, quantize_superposition, rank_one_decomposition, NormReport, QuantizeOptions, RankOneOptions,
};
use crate::C64;

/// Norm ratio across the h-grid at or above which a sweep is not uniform.
pub const NORM_RATIO_LIMIT: f64 = 2.0;
/// Ratio of the a-priori bound across the h-grid above which it is reported
/// as blowing up.
pub const BOUND_BLOWUP_LIMIT: f64 = 10.0;
/// Relative change between the 3N/4 and N truncations above which a
/// warning is attached.
pub const TRUNCATION_DRIFT_LIMIT: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSetup {
    pub preset: WeightPreset,
    pub symbol: SymbolSpec,
    pub n: usize,
    pub m: usize,
    pub r: Option<f64>,
    pub route: Route,
    pub points: usize,
    pub direct_points: usize,
    pub rank_one_spacing: f64,
    pub s: f64,
    pub perturbation: Perturbation,
}

impl SweepSetup {
    pub fn from_config(cfg: &ExperimentConfig) -> Self {
        Self {
            preset: cfg.preset,
            symbol: cfg.symbol.clone(),
            n: cfg.N,
            m: cfg.M,
            r: cfg.R,
            route: cfg.route,
            points: cfg.points,
            direct_points: cfg.decomp.direct_points,
            rank_one_spacing: cfg.decomp.spacing,
            s: cfg.s,
            perturbation: cfg.perturbation.clone(),
        }
    }
}

/// Basis of degree `n` orthonormal for Φ₀, on an m×m box of half-width `r`
/// (sized automatically when None).
pub fn quadratic_basis(transform: &BargmannTransform, n: usize, m: usize, r: Option<f64>) -> Result<Basis> {
    let w0 = WeightFunction::quadratic(transform.weight);
    match r {
        None => Basis::new(transform, n, &w0, m),
        Some(r) => Basis::with_rule(transform, n, &w0, QuadRule::new(C64::new(0.0, 0.0), r, m)?),
    }
}

/// Half-width of the basis quadrature box.
pub fn box_radius(basis: &Basis) -> f64 {
    0.5 * (basis.rule.grid.m1 - 1) as f64 * basis.rule.grid.d
}

/// Op(a) by the chosen route.
pub fn assemble(setup: &SweepSetup, transform: &BargmannTransform, basis: &Basis) -> Result<OperatorMatrix> {
    let a = setup.symbol.build(transform)?;
    match setup.route {
        Route::Superposition => quantize_superposition(&a, basis, &QuantizeOptions { points: setup.points, drop_below: 1e-15 }),
        Route::Direct => quantize_direct(&a, basis, &QuantizeOptions { points: setup.direct_points, drop_below: 1e-15 }),
        Route::RankOne => {
            let opts = RankOneOptions { spacing: setup.rank_one_spacing, ..RankOneOptions::default() };
            Ok(rank_one_decomposition(&a, transform, basis, &opts)?.matrix)
        }
    }
}

/// A-priori factor exp(2h^{−1/s}/C) of the translation bound on Φ₁.
pub fn bound_factor(h: f64, s: f64, c: f64) -> f64 {
    if c.is_infinite() {
        1.0
    } else {
        (2.0 * h.powf(-1.0 / s) / c).exp()
    }
}

/// Norm of Op(a) on one weight at one h.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormPoint {
    pub h: f64,
    /// Perturbation constant; infinite for the unperturbed weight.
    pub c: f64,
    pub report: NormReport,
    pub bound: f64,
    /// Half-width of the basis box actually used.
    pub radius: f64,
}

impl NormPoint {
    /// |‖A‖_N / ‖A‖_{3N/4} − 1|.
    pub fn truncation_drift(&self) -> f64 {
        let t = &self.report.by_truncation;
        if t.len() < 2 {
            return 0.0;
        }
        let prev = t[t.len() - 2].1;
        (self.report.norm / prev.max(1e-300) - 1.0).abs()
    }
}

/// Norms at one h for every constant in `cs` (f64::INFINITY gives Φ₀).
pub fn norms_at(setup: &SweepSetup, h: f64, cs: &[f64]) -> Result<Vec<NormPoint>> {
    let transform = BargmannTransform::new(BargmannPhase::preset(setup.preset), h)?;
    let basis = quadratic_basis(&transform, setup.n, setup.m, setup.r)?;
    let a = assemble(setup, &transform, &basis)?;
    let radius = box_radius(&basis);
    cs.iter()
        .map(|&c| {
            let w = if c.is_infinite() {
                WeightFunction::quadratic(transform.weight)
            } else {
                WeightFunction::gevrey_scaled(transform.weight, &setup.perturbation, h, setup.s, c)?
            };
            let gram = basis.gram_in(&w)?;
            let report = operator_norm(&a, &gram)?;
            Ok(NormPoint { h, c, report, bound: bound_factor(h, setup.s, c), radius })
        })
        .collect()
}

/// max/min of the values.
pub fn spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    max / min
}

/// Summary of a sweep at fixed C.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepSummary {
    pub c: f64,
    pub norm_ratio: f64,
    pub bound_ratio: f64,
    pub flag: String,
}

impl SweepSummary {
    pub fn new(points: &[&NormPoint]) -> Self {
        let norms: Vec<f64> = points.iter().map(|p| p.report.norm).collect();
        let bounds: Vec<f64> = points.iter().map(|p| p.bound).collect();
        let (norm_ratio, bound_ratio) = (spread(&norms), spread(&bounds));
        let mut flags = Vec::new();
        if !(norm_ratio < NORM_RATIO_LIMIT) {
            flags.push("norm_ratio");
        }
        if bound_ratio > BOUND_BLOWUP_LIMIT {
            flags.push("bound_blowup");
        }
        let flag = if flags.is_empty() { "stable".to_string() } else { flags.join("|") };
        Self { c: points.first().map(|p| p.c).unwrap_or(f64::NAN), norm_ratio, bound_ratio, flag }
    }

    pub fn bound_blowup(&self) -> bool {
        self.bound_ratio > BOUND_BLOWUP_LIMIT
    }
}
