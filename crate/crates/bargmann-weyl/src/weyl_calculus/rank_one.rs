//! Quantization through superpositions of rank-one operators built from the
//! ground state v₀ and its magnetic translates:
//!
//! ```text
//! M(h)·Op(a)u = (C/h) ∫∫ e^{iσ(Y,T)/2h} F_h(χ_{−(Y+T)/2} a)((Y−T)/2)
//!                (u, e^{iσ(·,T)/h} v₀) e^{iσ(·,Y)/h} v₀ dY dT,
//! ```
//!
//! with χ_T = χ₀(· − T), χ₀ the Weyl symbol of |e₀⟩⟨e₀| pulled back to Λ,
//! M(h) = ∫ χ₀(T) χ₀(T/√h) dT and C = (4π)^{-1}. The sum is taken over
//! c = −(Y+T)/2 and D = (Y−T)/2 on a common lattice, which turns each
//! window centre c into one closed-form transform.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::fourier::{fourier_symplectic, FourierOptions};
use super::symbol::{Symbol, SymbolKind};
use crate::bargmann_core::{BargmannTransform, Basis, Grid2, OperatorMatrix};
use crate::error::{Error, Result};
use crate::magnetic::MagneticTranslation;
use crate::phase_space::sigma_base;

/// Constant in front of the changed-variable rank-one decomposition (n = 1).
pub fn rank_one_constant() -> f64 {
    1.0 / (4.0 * std::f64::consts::PI)
}

/// χ₀(X/√scale): the projection symbol (4π)^{1/2}C₀² e^{−(y²+η²)/scale}
/// pulled back to Λ.
pub fn projection_window(transform: &BargmannTransform, scale: f64) -> Result<Symbol> {
    let amp = (4.0 * std::f64::consts::PI).sqrt() * transform.e0_constant.powi(2);
    Symbol::real_gaussian(&transform.phase, amp, scale, transform.h)
}

/// M(h) = ∫_Λ χ₀(T) χ₀(T/√h) dT.
pub fn window_mass(transform: &BargmannTransform) -> Result<f64> {
    let a = projection_window(transform, 1.0)?;
    let b = projection_window(transform, transform.h)?;
    let p = a.mul(&b)?;
    let g = p.as_gaussian().ok_or_else(|| Error::Invariant("window product is not Gaussian".into()))?;
    let m = 4.0 * transform.weight.l * g.integral().re;
    if !(m > 1e-300) {
        return Err(Error::Conditioning(format!("window mass M(h) = {m:.3e} is too small")));
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RankOneOptions {
    /// Lattice spacing of D = (Y−T)/2, as a multiple of √h.
    pub spacing: f64,
    /// Lattice spacing of c = −(Y+T)/2, as an integer multiple of the D spacing.
    pub centre_stride: usize,
    /// Relative magnitude below which terms are skipped.
    pub drop_below: f64,
}

impl Default for RankOneOptions {
    fn default() -> Self {
        Self { spacing: 0.18, centre_stride: 1, drop_below: 1e-14 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankOneResult {
    pub matrix: OperatorMatrix,
    pub m_h: f64,
    pub terms: usize,
}

/// Coefficients (e^{iσ(·,Z)/h} v₀, e_j) for Z on a lattice box.
struct CoherentTable {
    grid: Grid2,
    coeffs: DMatrix<C64>,
    index: HashMap<(i64, i64), usize>,
}

impl CoherentTable {
    fn build(transform: &BargmannTransform, basis: &Basis, grid: Grid2) -> Result<Self> {
        let v0 = transform.v0()?;
        let nodes = grid.nodes();
        let npts = basis.rule.len();
        let mut samples = DMatrix::<C64>::zeros(npts, nodes.len());
        for (k, &z) in nodes.iter().enumerate() {
            let t = MagneticTranslation::exp_sigma(z, 1.0, &transform.weight, transform.h)?;
            samples.set_column(k, &basis.damped_samples(&t.apply(&v0)?));
        }
        let coeffs = basis.project_columns(&samples);
        let mut index = HashMap::new();
        for k in 0..nodes.len() {
            index.insert(Self::key(&grid, nodes[k]), k);
        }
        Ok(Self { grid, coeffs, index })
    }

    fn key(grid: &Grid2, z: C64) -> (i64, i64) {
        ((z.re / grid.d).round() as i64, (z.im / grid.d).round() as i64)
    }

    fn column(&self, z: C64) -> Option<usize> {
        self.index.get(&Self::key(&self.grid, z)).copied()
    }
}

/// Op(a) assembled from rank-one terms; also returns M(h).
pub fn rank_one_decomposition(a: &Symbol, transform: &BargmannTransform, basis: &Basis, opts: &RankOneOptions) -> Result<RankOneResult> {
    let (h, w) = (a.h, a.weight);
    if (h - transform.h).abs() > 1e-14 || w != transform.weight || (basis.h - h).abs() > 1e-14 {
        return Err(Error::Incompatible("symbol, transform and basis must share h and Φ₀".into()));
    }
    if matches!(a.kind, SymbolKind::PlaneWave { .. }) {
        return Err(Error::InvalidParameter("rank-one route needs a decaying symbol".into()));
    }
    let m_h = window_mass(transform)?;
    let chi = projection_window(transform, 1.0)?;
    let (ca, ra) = a.support().ok_or_else(|| Error::InvalidParameter("symbol has no bounded support".into()))?;
    let (_, rchi) = chi.support().expect("Gaussian window");
    let d = opts.spacing * h.sqrt();
    let dc = d * opts.centre_stride.max(1) as f64;
    // Coherent states beyond the basis box have negligible overlap.
    let rb = 0.5 * (basis.rule.grid.m1 - 1) as f64 * basis.rule.grid.d;
    let zgrid = Grid2::aligned(C64::new(0.0, 0.0), rb, d)?;
    let table = CoherentTable::build(transform, basis, zgrid)?;

    let fopts = FourierOptions::default();
    let probe = fourier_symplectic(&chi.translate(-ca).mul(a)?, &fopts)?;
    let (cd, rd) = probe.support().ok_or_else(|| Error::InvalidParameter("windowed transform has no bounded support".into()))?;
    let dgrid = Grid2::aligned(cd, 1.2 * rd, d)?;
    let cgrid = Grid2::aligned(ca, (ra + rchi).min(rb), dc)?;
    let dnodes = dgrid.nodes();

    // First pass: windowed transforms per centre, to find the global scale.
    let mut per_centre: Vec<(C64, Vec<C64>)> = Vec::new();
    let mut vmax: f64 = 0.0;
    for c in cgrid.nodes() {
        if c.norm() > rb * std::f64::consts::SQRT_2 {
            continue;
        }
        let fc = fourier_symplectic(&chi.translate(-c).mul(a)?, &fopts)?;
        let vals: Vec<C64> = dnodes
            .iter()
            .map(|&dd| fc.eval(dd) * C64::new(0.0, sigma_base(c, dd, &w) / h).exp())
            .collect();
        vmax = vmax.max(vals.iter().map(|v| v.norm()).fold(0.0, f64::max));
        per_centre.push((c, vals));
    }
    let dim = basis.dim();
    let mut acc = DMatrix::<C64>::zeros(dim, dim);
    let mut terms = 0usize;
    for (c, vals) in &per_centre {
        let mut left: Vec<DVector<C64>> = Vec::new();
        let mut right: Vec<DVector<C64>> = Vec::new();
        for (k, &dd) in dnodes.iter().enumerate() {
            let v = vals[k];
            if v.norm() <= opts.drop_below * vmax {
                continue;
            }
            let (y, t) = (dd - c, -dd - c);
            if let (Some(iy), Some(it)) = (table.column(y), table.column(t)) {
                left.push(table.coeffs.column(iy) * v);
                right.push(table.coeffs.column(it).map(|z| z.conj()));
            }
        }
        if left.is_empty() {
            continue;
        }
        terms += left.len();
        let l = DMatrix::from_columns(&left);
        let r = DMatrix::from_columns(&right);
        acc += l * r.transpose();
    }
    // dY dT = 4 dc dD, each with symplectic density 4l.
    let cell = 4.0 * (4.0 * w.l * dc * dc) * (4.0 * w.l * d * d);
    let scale = rank_one_constant() / h * cell / m_h;
    Ok(RankOneResult { matrix: OperatorMatrix { entries: acc * C64::new(scale, 0.0), h, n_max: basis.n_max }, m_h, terms })
}
