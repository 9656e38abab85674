//! The semiclassical symplectic Fourier transform on Λ,
//!
//! ```text
//! F_h a(X) = (πh)^{-1} ∫_Λ e^{2iσ(X,Y)/h} a(Y) dY,
//! ```
//!
//! in closed form on Gaussian symbols and by separable trapezoid sums
//! otherwise. In base coordinates 2σ(X,Y)/h = κ(x₁y₂ − x₂y₁) with κ = 8l/h
//! and dY = 4l·dy.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::symbol::{GridSampled, Symbol, SymbolKind};
use crate::bargmann_core::Grid2;
use crate::error::{Error, Result};

/// Phase frequency κ = 8l/h of 2σ(X,Y)/h in base coordinates.
pub fn kappa(l: f64, h: f64) -> f64 {
    8.0 * l / h
}

/// Matrix K with 2σ(X,Y)/h = (K x)·y.
pub fn phase_matrix(l: f64, h: f64) -> [[f64; 2]; 2] {
    let k = kappa(l, h);
    [[0.0, -k], [k, 0.0]]
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FourierOptions {
    /// Nodes per axis of sampled inputs and outputs.
    pub points: usize,
}

impl Default for FourierOptions {
    fn default() -> Self {
        Self { points: 128 }
    }
}

/// Grid on which sampled transforms of data on `input` are returned; the
/// spacings satisfy κ·d_in·d_out·M = 2π, so transforming twice returns to
/// a grid with the input spacing.
pub fn dual_grid(input: &Grid2, l: f64, h: f64) -> Result<Grid2> {
    let m = input.m1.max(input.m2);
    let d = 2.0 * std::f64::consts::PI / (m as f64 * kappa(l, h) * input.d);
    Grid2::centered(C64::new(0.0, 0.0), 0.5 * (m - 1) as f64 * d, m)
}

/// F_h of sampled data, evaluated on a tensor output grid with two matrix
/// products.
pub fn fourier_sampled(data: &GridSampled, out: &Grid2, l: f64, h: f64) -> GridSampled {
    let k = kappa(l, h);
    let gi = &data.grid;
    let (y1, y2) = (gi.xs(), gi.ys());
    let (x1, x2) = (out.xs(), out.ys());
    let u = DMatrix::from_fn(gi.m1, gi.m2, |i, j| data.at(i, j));
    let e2 = DMatrix::from_fn(out.m1, gi.m2, |p, j| C64::new(0.0, k * x1[p] * y2[j]).exp());
    let e1t = DMatrix::from_fn(gi.m1, out.m2, |i, q| C64::new(0.0, -k * x2[q] * y1[i]).exp());
    let pref = 4.0 * l / (std::f64::consts::PI * h) * gi.cell_area();
    let f = e2 * u.transpose() * e1t * C64::new(pref, 0.0);
    let mut values = Vec::with_capacity(out.len());
    for p in 0..out.m1 {
        for q in 0..out.m2 {
            values.push(f[(p, q)]);
        }
    }
    GridSampled { grid: *out, values }
}

/// Grid on which a symbol is sampled before a numerical transform.
pub fn sampling_grid(a: &Symbol, points: usize) -> Result<Grid2> {
    match &a.kind {
        SymbolKind::GridSampled(g) => Ok(g.grid),
        _ => {
            let (c, r) = a
                .compact_support()
                .or_else(|| a.support())
                .ok_or_else(|| Error::InvalidParameter("symbol has no bounded support".into()))?;
            Grid2::centered(c, r, points)
        }
    }
}

/// F_h a, in closed form for Gaussian symbols and sampled on the dual grid
/// otherwise. Plane waves have distributional transforms and are rejected.
pub fn fourier_symplectic(a: &Symbol, opts: &FourierOptions) -> Result<Symbol> {
    let (l, h) = (a.weight.l, a.h);
    match &a.kind {
        SymbolKind::GaussianPoly(g) => {
            let f = g.fourier_linear(phase_matrix(l, h), 4.0 * l / (std::f64::consts::PI * h))?;
            Ok(Symbol::gaussian(f, h, a.weight))
        }
        SymbolKind::PlaneWave { .. } => Err(Error::InvalidParameter("the transform of a plane wave is a point mass".into())),
        _ => {
            let gin = sampling_grid(a, opts.points)?;
            let data = a.sample(&gin);
            let out = dual_grid(&gin, l, h)?;
            Ok(Symbol::grid(fourier_sampled(&data, &out, l, h), h, a.weight))
        }
    }
}

/// F_h a evaluated at explicit points by direct summation over a sampling
/// grid (closed form for Gaussian symbols).
pub fn fourier_at(a: &Symbol, points: &[C64], opts: &FourierOptions) -> Result<Vec<C64>> {
    if let SymbolKind::GaussianPoly(_) = a.kind {
        let f = fourier_symplectic(a, opts)?;
        return Ok(points.iter().map(|&x| f.eval(x)).collect());
    }
    let (l, h) = (a.weight.l, a.h);
    let k = kappa(l, h);
    let gin = sampling_grid(a, opts.points)?;
    let data = a.sample(&gin);
    let nodes = gin.nodes();
    let pref = 4.0 * l / (std::f64::consts::PI * h) * gin.cell_area();
    Ok(points
        .iter()
        .map(|x| {
            let mut acc = C64::new(0.0, 0.0);
            for (y, v) in nodes.iter().zip(&data.values) {
                acc += v * C64::new(0.0, k * (x.re * y.im - x.im * y.re)).exp();
            }
            acc * pref
        })
        .collect())
}
