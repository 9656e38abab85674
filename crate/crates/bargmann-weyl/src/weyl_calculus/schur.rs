//! Numerical evaluation of the Schur-test kernel integrals controlling the
//! norm of magnetic-translation superpositions on a perturbed weight
//! Φ₁ = Φ₀ + f with |f(z) − f(x)| ≤ (2/C)h^{1−1/s} min(1, |z − x|).
//!
//! The kernel is bounded by (1/h) e^{−|x|²/(C_g h)} e^{β min(1,|x|)} with
//! β = (2/C) h^{−1/s}. Its L¹ norm splits at |x| = C̃ h^{1−1/s}: the outer
//! part I₁ is dominated by the Gaussian and the inner part I₂ carries the
//! factor exp(C_g h^{1−2/s}/C²), which stays bounded exactly when s ≥ 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gaussian constant of the intermediate kernel for the Bargmann weight.
pub const GAUSSIAN_CONSTANT: f64 = 4.0;
/// Decay constant assumed for the windowed transforms in the plane-wave integral.
pub const DECAY_CONSTANT: f64 = 1.0;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SchurReport {
    pub s: f64,
    pub c: f64,
    pub h: f64,
    pub i1: f64,
    pub i2: f64,
    pub total: f64,
    /// exp(C_g h^{1−2/s}/C²)
    pub bound_factor: f64,
    /// h^{-2} ∫ exp(h^{−1/s}(−|y|^{1/s}/C₀ + (2/C) min(1,|y|))) L(dy)
    pub plane_wave_integral: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchurSweep {
    pub records: Vec<SchurReport>,
    /// max/min of I₁ + I₂ over the h-grid.
    pub ratio: f64,
    pub stable: bool,
    pub divergent: bool,
}

fn simpson<F: Fn(f64) -> f64>(a: f64, b: f64, n: usize, f: F) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = if n % 2 == 1 { n + 1 } else { n };
    let hh = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let x = a + k as f64 * hh;
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    s * hh / 3.0
}

pub fn schur_kernel_report(s: f64, c: f64, h: f64) -> Result<SchurReport> {
    if !(s > 1.0) || !(c > 0.0) || !(h > 0.0 && h < 1.0) {
        return Err(Error::InvalidParameter(format!("need s > 1, C > 0, 0 < h < 1 (s = {s}, C = {c}, h = {h})")));
    }
    let cg = GAUSSIAN_CONSTANT;
    let beta = 2.0 / c * h.powf(-1.0 / s);
    let split = 4.0 * cg / c * h.powf(1.0 - 1.0 / s);
    let kernel = |r: f64| 2.0 * std::f64::consts::PI * r * (-r * r / (cg * h) + beta * r.min(1.0)).exp() / h;
    let peak = (0.5 * cg * h * beta).min(1.0);
    let rmax = peak + 12.0 * (cg * h).sqrt() + split;
    let n = 40_000;
    let i2 = simpson(0.0, split.min(rmax), n, kernel);
    let i1 = simpson(split.min(rmax), rmax, n, kernel);
    // Plane-wave integral after y = h z: 2π ∫ z exp(−z^{1/s}/C₀ + β min(1, h z)) dz.
    let zmax = (DECAY_CONSTANT * (60.0 + beta)).powf(s);
    let g = |u: f64| {
        let z = u.exp();
        2.0 * std::f64::consts::PI * z * z * (-z.powf(1.0 / s) / DECAY_CONSTANT + beta * (h * z).min(1.0)).exp()
    };
    let plane_wave_integral = simpson(-30.0, zmax.ln(), 200_000, g);
    Ok(SchurReport {
        s,
        c,
        h,
        i1,
        i2,
        total: i1 + i2,
        bound_factor: (cg * h.powf(1.0 - 2.0 / s) / (c * c)).exp(),
        plane_wave_integral,
    })
}

/// Reports over an h-grid with the stability (ratio < 3) and divergence
/// (ratio > 10) flags.
pub fn schur_sweep(s: f64, c: f64, hs: &[f64]) -> Result<SchurSweep> {
    let records = hs.iter().map(|&h| schur_kernel_report(s, c, h)).collect::<Result<Vec<_>>>()?;
    let max = records.iter().map(|r| r.total).fold(f64::MIN, f64::max);
    let min = records.iter().map(|r| r.total).fold(f64::MAX, f64::min);
    let ratio = max / min;
    Ok(SchurSweep { records, ratio, stable: ratio < 3.0, divergent: ratio > 10.0 })
}
