//! The twisted product a # b of Weyl symbols on Λ, by the plane-wave
//! decomposition (twisted convolution with F_h b) and by the direct
//! four-dimensional oscillatory integral, plus the exact rules for plane
//! wave factors.

use log::warn;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fourier::{fourier_symplectic, kappa, FourierOptions};
use super::symbol::{GridSampled, Symbol, SymbolKind};
use crate::bargmann_core::Grid2;
use crate::error::{Error, Result};
use crate::phase_space::LinearFormOnLambda;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ComposeOptions {
    /// Nodes per axis of each integration box.
    pub points: usize,
}

impl Default for ComposeOptions {
    fn default() -> Self {
        Self { points: 128 }
    }
}

/// Warns when a grid of spacing d has fewer than six nodes per wavelength
/// of e^{2iσ(Y,Z)/h} with |Z| ≤ r_other. Returns the message if so.
pub fn oscillation_check(d: f64, r_other: f64, l: f64, h: f64) -> Option<String> {
    let wavelength = 2.0 * std::f64::consts::PI / (kappa(l, h) * r_other.max(1e-300));
    let ppw = wavelength / d;
    if ppw < 6.0 {
        let msg = format!("quadrature has {ppw:.2} nodes per oscillation wavelength (< 6); increase M or shrink the box");
        warn!("{msg}");
        Some(msg)
    } else {
        None
    }
}

/// Euclidean frequency beyond which the spectrum of a Gaussian symbol is
/// below 1e-16 of its peak; None for other kinds.
fn gaussian_bandwidth(a: &Symbol) -> Option<f64> {
    let g = a.as_gaussian()?;
    Some(2.0 * (37.0 * g.max_decay()).sqrt() + g.poly.degree() as f64)
}

/// Alias-freedom of the [`compose_direct`] sum with `points` nodes per axis:
/// the Y spacing must resolve κ·R_Z + K_a (and symmetrically for Z), where
/// R is the box radius and K the bandwidth of a Gaussian factor. Returns a
/// message when either direction fails. Non-Gaussian factors are not checked.
pub fn direct_sampling_check(a: &Symbol, b: &Symbol, points: usize) -> Option<String> {
    let (ka, kb) = (gaussian_bandwidth(a)?, gaussian_bandwidth(b)?);
    let ((_, ra), (_, rb)) = (a.support()?, b.support()?);
    let k = kappa(a.weight.l, a.h);
    let nyquist = |r: f64| std::f64::consts::PI * (points.max(2) - 1) as f64 / r;
    let need_y = k * rb + ka;
    let need_z = k * ra + kb;
    let margin = (nyquist(ra) / need_y).min(nyquist(rb) / need_z);
    if margin < 1.0 {
        let msg = format!("direct composition with M = {points} aliases (resolution margin {margin:.2} < 1); increase M");
        warn!("{msg}");
        Some(msg)
    } else {
        None
    }
}

fn frame_check(a: &Symbol, b: &Symbol) -> Result<()> {
    if (a.h - b.h).abs() > 1e-14 || a.weight != b.weight {
        return Err(Error::Incompatible("symbols use different h or weights".into()));
    }
    Ok(())
}

/// (u *_σ v)(X) = ∫_Λ e^{2iσ(X,Y)/h} u(X − Y) v(Y) dY on the nodes of
/// `out`, integrating over the nodes of `ygrid`.
pub fn twisted_convolution(u: &Symbol, v: &Symbol, out: &Grid2, ygrid: &Grid2) -> Result<GridSampled> {
    frame_check(u, v)?;
    let (l, h) = (u.weight.l, u.h);
    let k = kappa(l, h);
    let dy = 4.0 * l * ygrid.cell_area();
    let ys = ygrid.nodes();
    let vw: Vec<C64> = ys.iter().map(|&y| v.eval(y) * dy).collect();
    let keep: Vec<usize> = (0..ys.len()).filter(|&i| vw[i] != C64::new(0.0, 0.0)).collect();
    let values: Vec<C64> = (0..out.len())
        .into_par_iter()
        .map(|p| {
            let x = out.node(p);
            let mut acc = C64::new(0.0, 0.0);
            for &i in &keep {
                let y = ys[i];
                let ph = C64::new(0.0, k * (x.re * y.im - x.im * y.re)).exp();
                acc += ph * u.eval(x - y) * vw[i];
            }
            acc
        })
        .collect();
    GridSampled::new(*out, values)
}

/// Grid for integrating against F_h b: the dual grid of a sampled
/// transform, or a box around the support of a closed-form one.
fn transform_grid(fb: &Symbol, points: usize) -> Result<Grid2> {
    match &fb.kind {
        SymbolKind::GridSampled(g) => Ok(g.grid),
        _ => {
            let (c, r) = fb.support().ok_or_else(|| Error::InvalidParameter("transform has no bounded support".into()))?;
            Grid2::centered(c, r, points)
        }
    }
}

/// a # b = (πh)^{-1} a *_σ F_h b, sampled on `out`.
pub fn compose_fourier(a: &Symbol, b: &Symbol, out: &Grid2, opts: &ComposeOptions) -> Result<Symbol> {
    frame_check(a, b)?;
    let fb = fourier_symplectic(b, &FourierOptions { points: opts.points })?;
    let yg = transform_grid(&fb, opts.points)?;
    match (gaussian_bandwidth(a), gaussian_bandwidth(&fb)) {
        (Some(ka), Some(kb)) => {
            let need = kappa(a.weight.l, a.h) * (out.center().norm() + out.max_radius()) + ka + kb;
            let margin = 2.0 * std::f64::consts::PI / yg.d / need;
            if margin < 1.0 {
                warn!("Fourier-route composition with {} nodes aliases (resolution margin {margin:.2} < 1); increase M", opts.points);
            }
        }
        _ => {
            if let Some((c, r)) = a.support() {
                oscillation_check(yg.d, out.max_radius().max(c.norm() + r), a.weight.l, a.h);
            }
        }
    }
    compose_fourier_on(a, &fb, out, &yg)
}

/// a # b given F_h b and an explicit integration grid for Y.
pub fn compose_fourier_on(a: &Symbol, fb: &Symbol, out: &Grid2, ygrid: &Grid2) -> Result<Symbol> {
    let conv = twisted_convolution(a, fb, out, ygrid)?;
    let s = 1.0 / (std::f64::consts::PI * a.h);
    let values = conv.values.iter().map(|v| v * s).collect();
    Ok(Symbol::grid(GridSampled::new(*out, values)?, a.h, a.weight))
}

/// a # b(X) = (πh)^{-2} ∫∫ e^{−2iσ(Y,Z)/h} a(X+Y) b(X+Z) dY dZ, with the
/// four-dimensional sum factored into two matrix products.
pub fn compose_direct(a: &Symbol, b: &Symbol, x: C64, opts: &ComposeOptions) -> Result<C64> {
    frame_check(a, b)?;
    let (l, h) = (a.weight.l, a.h);
    let k = kappa(l, h);
    let (ca, ra) = a.support().ok_or_else(|| Error::InvalidParameter("direct composition needs a decaying left factor".into()))?;
    let (cb, rb) = b.support().ok_or_else(|| Error::InvalidParameter("direct composition needs a decaying right factor".into()))?;
    let gy = Grid2::centered(ca - x, ra, opts.points)?;
    let gz = Grid2::centered(cb - x, rb, opts.points)?;
    if a.as_gaussian().is_some() && b.as_gaussian().is_some() {
        direct_sampling_check(a, b, opts.points);
    } else {
        oscillation_check(gy.d, gz.max_radius(), l, h);
        oscillation_check(gz.d, gy.max_radius(), l, h);
    }
    let (y1, y2, z1, z2) = (gy.xs(), gy.ys(), gz.xs(), gz.ys());
    let am = DMatrix::from_fn(gy.m1, gy.m2, |i, j| a.eval(x + C64::new(y1[i], y2[j])));
    let bm = DMatrix::from_fn(gz.m1, gz.m2, |i, j| b.eval(x + C64::new(z1[i], z2[j])));
    // −2σ(Y,Z)/h = −κ(y₁z₂ − y₂z₁)
    let f = DMatrix::from_fn(gy.m2, gz.m1, |i2, j1| C64::new(0.0, k * y2[i2] * z1[j1]).exp());
    let afb = am * f * bm;
    let mut acc = C64::new(0.0, 0.0);
    for i1 in 0..gy.m1 {
        for j2 in 0..gz.m2 {
            acc += C64::new(0.0, -k * y1[i1] * z2[j2]).exp() * afb[(i1, j2)];
        }
    }
    let w = (4.0 * l * gy.cell_area()) * (4.0 * l * gz.cell_area()) / (std::f64::consts::PI * h).powi(2);
    Ok(acc * w)
}

/// e^{iℓ/h} # a = e^{iℓ/h}·a(· + H_ℓ/2) and a # e^{iℓ/h} = e^{iℓ/h}·a(· − H_ℓ/2).
pub fn compose_plane_wave(form: &LinearFormOnLambda, a: &Symbol, side: Side) -> Result<Symbol> {
    let half = 0.5 * form.xstar;
    let shifted = match side {
        Side::Left => a.translate(half),
        Side::Right => a.translate(-half),
    };
    Symbol::plane_wave(*form, a.h, a.weight).mul(&shifted)
}
