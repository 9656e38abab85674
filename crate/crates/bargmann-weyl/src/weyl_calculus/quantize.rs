//! Weyl quantization of symbols on Λ as Galerkin matrices on H_Φ₀.
//!
//! Two independent routes are provided:
//!
//! * superposition of magnetic translations,
//!   Op(a) = (πh)^{-1} ∫ F_h a(Y) e^{2iσ((x,hD),Y)/h} dY;
//! * the contour integral
//!   Op(a)u(x) = (2πh)^{-1} ∫∫_{θ=(2/i)∂Φ₀((x+y)/2)} e^{(i/h)(x−y)θ} a((x+y)/2) u(y) dy∧dθ,
//!   written over the midpoint m = (x+y)/2 so that the integration runs
//!   over the support of a only.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fourier::{fourier_symplectic, FourierOptions};
use super::symbol::{Symbol, SymbolKind};
use crate::bargmann_core::{Basis, Grid2, HoloFunction, OperatorMatrix, QuadRule};
use crate::error::{Error, Result};
use crate::magnetic::{MagneticTranslation, Sign};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuantizeOptions {
    /// Nodes per axis of the Y grid (superposition) or midpoint grid (direct).
    pub points: usize,
    /// Relative magnitude below which F_h a(Y) samples are dropped.
    pub drop_below: f64,
}

impl Default for QuantizeOptions {
    fn default() -> Self {
        Self { points: 64, drop_below: 1e-15 }
    }
}

fn check_frame(a: &Symbol, basis: &Basis) -> Result<()> {
    if (a.h - basis.h).abs() > 1e-14 || a.weight != basis.weight.base {
        return Err(Error::Incompatible("symbol and basis use different h or weights".into()));
    }
    if !basis.weight.is_quadratic() {
        return Err(Error::Incompatible("quantization matrices are assembled in a basis orthonormal for Φ₀".into()));
    }
    Ok(())
}

/// One term of an operator applied to basis functions: at each basis node x
/// and source point with weight c, shift z and exponent E, accumulates
/// c·exp(E)·(z/scale)^m into g[x, m]. Returns damped images of e_k.
fn accumulate<F>(basis: &Basis, sources: usize, term: F) -> DMatrix<C64>
where
    F: Fn(C64, usize) -> Option<(C64, C64)> + Sync,
{
    let nodes = basis.rule.nodes();
    let dim = basis.dim();
    let h = basis.h;
    let q = basis.q_ref;
    let inv_scale = 1.0 / basis.scale;
    let mut g = vec![C64::new(0.0, 0.0); nodes.len() * dim];
    g.par_chunks_mut(dim).zip(nodes.par_iter()).for_each(|(row, &x)| {
        let phi = basis.weight.phi(x);
        for s in 0..sources {
            if let Some((z, expo)) = term(x, s) {
                let e = expo + (((q[2] * z + q[1]) * z + q[0]) - phi) / h;
                let mut pw = e.exp();
                if pw == C64::new(0.0, 0.0) {
                    continue;
                }
                let t = z * inv_scale;
                for v in row.iter_mut() {
                    *v += pw;
                    pw *= t;
                }
            }
        }
    });
    let mono = DMatrix::from_row_slice(nodes.len(), dim, &g);
    mono * basis.coeffs.transpose()
}

/// Op(a) by superposition of magnetic translations.
pub fn quantize_superposition(a: &Symbol, basis: &Basis, opts: &QuantizeOptions) -> Result<OperatorMatrix> {
    check_frame(a, basis)?;
    let (h, w) = (a.h, a.weight);
    if let SymbolKind::PlaneWave { form, amplitude } = &a.kind {
        let t = MagneticTranslation::new(*form, h, Sign::Plus)?;
        return Ok(t.matrix_in(basis)?.scaled(*amplitude));
    }
    if let SymbolKind::Windowed(x, y) = &a.kind {
        // Products that close in form are simplified by Symbol::mul.
        if let Ok(s) = x.mul(y) {
            if !matches!(s.kind, SymbolKind::Windowed(..)) {
                return quantize_superposition(&s, basis, opts);
            }
        }
    }
    let fa = fourier_symplectic(a, &FourierOptions { points: opts.points.max(64) })?;
    let (ys, vals, cell) = match &fa.kind {
        SymbolKind::GridSampled(g) => (g.grid.nodes(), g.values.clone(), g.grid.cell_area()),
        _ => {
            let (c, r) = fa.support().expect("closed-form transforms decay");
            let grid = Grid2::centered(c, r, opts.points)?;
            let nodes = grid.nodes();
            let vals = nodes.iter().map(|&y| fa.eval(y)).collect();
            (nodes, vals, grid.cell_area())
        }
    };
    let vmax = vals.iter().map(|v: &C64| v.norm()).fold(0.0, f64::max);
    let pref = 4.0 * w.l * cell / (std::f64::consts::PI * h);
    // Each Y contributes F_h a(Y)·T_Y with T_Y u(x) = e^{αx+β} u(x − x*).
    let mut terms: Vec<(C64, C64, C64, C64)> = Vec::new();
    for (y, v) in ys.iter().zip(&vals) {
        if v.norm() <= opts.drop_below * vmax {
            continue;
        }
        let t = MagneticTranslation::exp_sigma(*y, 2.0, &w, h)?;
        let (al, be, xs) = t.multiplier();
        terms.push((v * pref, al, be, xs));
    }
    let cols = accumulate(basis, terms.len(), |x, s| {
        let (c, al, be, xs) = terms[s];
        Some((x - xs, c.ln() + al * x + be))
    });
    Ok(OperatorMatrix { entries: basis.project_columns(&cols), h, n_max: basis.n_max })
}

/// Op(a) by the contour integral over the midpoint.
pub fn quantize_direct(a: &Symbol, basis: &Basis, opts: &QuantizeOptions) -> Result<OperatorMatrix> {
    check_frame(a, basis)?;
    let (h, w) = (a.h, a.weight);
    let grid = match &a.kind {
        SymbolKind::GridSampled(g) => g.grid,
        _ => {
            let (c, r) = a
                .compact_support()
                .or_else(|| a.support())
                .ok_or_else(|| Error::InvalidParameter("direct quantization needs a decaying symbol".into()))?;
            Grid2::centered(c, r, opts.points)?
        }
    };
    let ms = grid.nodes();
    let av: Vec<C64> = ms.iter().map(|&m| a.eval(m)).collect();
    let amax = av.iter().map(|v| v.norm()).fold(0.0, f64::max);
    // y = 2m − x sweeps L(dy) = 4 L(dm); the contour density is 2l.
    let pref = 2.0 * w.l * 4.0 * grid.cell_area() / (2.0 * std::f64::consts::PI * h);
    let terms: Vec<(C64, C64, C64)> = ms
        .iter()
        .zip(&av)
        .filter(|(_, v)| v.norm() > opts.drop_below * amax)
        .map(|(&m, &v)| (m, w.xi_of(m), (v * pref).ln()))
        .collect();
    let i = C64::new(0.0, 1.0);
    let cols = accumulate(basis, terms.len(), |x, s| {
        let (m, theta, lc) = terms[s];
        Some((2.0 * m - x, lc + (2.0 * i / h) * (x - m) * theta))
    });
    Ok(OperatorMatrix { entries: basis.project_columns(&cols), h, n_max: basis.n_max })
}

/// Op(a)u(x) by the contour integral over y on `rule`,
/// (l/πh) ∫ e^{(i/h)(x−y)θ((x+y)/2)} a((x+y)/2) u(y) L(dy). The integrand
/// carries the Gaussian decay of u in Φ₀, so bounded symbols such as plane
/// waves are admissible.
pub fn quantize_direct_at(a: &Symbol, u: &HoloFunction, x: C64, rule: &QuadRule) -> Result<C64> {
    if (a.h - u.h).abs() > 1e-14 {
        return Err(Error::Incompatible("symbol and function use different h".into()));
    }
    let (h, w) = (a.h, a.weight);
    let i = C64::new(0.0, 1.0);
    let sum = rule.integrate(|y| {
        let m = 0.5 * (x + y);
        let e = ((i * (x - y) * w.xi_of(m)) + u.exponent(y)) / h;
        let amp = a.eval(m) * u.poly.eval(u.local(y));
        if amp == C64::new(0.0, 0.0) {
            amp
        } else {
            amp * e.exp()
        }
    });
    Ok(sum * (w.l / (std::f64::consts::PI * h)))
}
