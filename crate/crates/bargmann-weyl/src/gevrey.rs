//! Gevrey bumps, lattice partitions of unity, windowed symplectic Fourier
//! transforms and stretched-exponential decay fits.
//!
//! A compactly supported symbol a of Gevrey class s has windowed transforms
//! obeying sup_T |F_h(χ_T a)(Y)| ≲ exp(−|Y/h|^{1/s}/C). [`wiener_profile`]
//! samples that envelope along rays and [`decay_fit`] recovers the exponent.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::bargmann_core::TanhSinh;
use crate::error::{Error, Result};
use crate::weyl_calculus::{fourier_symplectic, FourierOptions, GaussianPoly, Symbol};

/// amplitude·exp(−(1 − |x − center|²/r²)^{−1/(s−1)}) inside the disc of
/// radius r, zero outside.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GevreyBump {
    pub s: f64,
    pub radius: f64,
    pub center: C64,
    pub amplitude: f64,
}

impl GevreyBump {
    pub fn new(s: f64, radius: f64, center: C64, amplitude: f64) -> Result<Self> {
        if !(s > 1.0) || !s.is_finite() {
            return Err(Error::InvalidParameter(format!("Gevrey index must exceed 1, got {s}")));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!("bump radius must be positive, got {radius}")));
        }
        Ok(Self { s, radius, center, amplitude })
    }

    pub fn eval(&self, x: C64) -> f64 {
        let t2 = (x - self.center).norm_sqr() / (self.radius * self.radius);
        if t2 >= 1.0 {
            return 0.0;
        }
        self.amplitude * (-(1.0 - t2).powf(-1.0 / (self.s - 1.0))).exp()
    }

    pub fn translated(&self, by: C64) -> Self {
        Self { center: self.center + by, ..*self }
    }
}

/// Unit-amplitude bump of index s and radius r centred at the origin.
pub fn gevrey_bump(s: f64, r: f64) -> Result<GevreyBump> {
    GevreyBump::new(s, r, C64::new(0.0, 0.0), 1.0)
}

/// χ₀ = ψ / Σ_j ψ(· − j) over a lattice Γ = ℤb₁ + ℤb₂ ⊂ ℂ.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LatticePartition {
    pub basis: [C64; 2],
    pub psi: GevreyBump,
    /// Inverse of the real 2×2 matrix with columns b₁, b₂.
    inverse: [[f64; 2]; 2],
    reach: i64,
}

impl LatticePartition {
    pub fn new(basis: [C64; 2], psi: GevreyBump) -> Result<Self> {
        let det = basis[0].re * basis[1].im - basis[1].re * basis[0].im;
        if det.abs() < 1e-12 {
            return Err(Error::InvalidParameter("lattice basis is degenerate".into()));
        }
        let inverse = [[basis[1].im / det, -basis[1].re / det], [-basis[0].im / det, basis[0].re / det]];
        let frob = inverse.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
        let reach = (psi.radius * frob).ceil() as i64 + 1;
        let psi = GevreyBump { center: C64::new(0.0, 0.0), ..psi };
        let part = Self { basis, psi, inverse, reach };
        // The denominator must stay away from zero on a fundamental cell.
        let m = 48;
        let mut min_den = f64::MAX;
        for i in 0..=m {
            for j in 0..=m {
                let x = basis[0] * (i as f64 / m as f64) + basis[1] * (j as f64 / m as f64);
                min_den = min_den.min(part.denominator(x));
            }
        }
        if !(min_den > 1e-100) {
            return Err(Error::InvalidParameter(format!(
                "bump of radius {} does not cover the lattice cell (min Σψ = {min_den:.3e})",
                psi.radius
            )));
        }
        Ok(part)
    }

    /// Unit square lattice with a bump of radius 0.9.
    pub fn unit_square(s: f64) -> Result<Self> {
        Self::new([C64::new(1.0, 0.0), C64::new(0.0, 1.0)], gevrey_bump(s, 0.9)?)
    }

    pub fn point(&self, j: (i64, i64)) -> C64 {
        self.basis[0] * j.0 as f64 + self.basis[1] * j.1 as f64
    }

    fn coords(&self, x: C64) -> (f64, f64) {
        let m = &self.inverse;
        (m[0][0] * x.re + m[0][1] * x.im, m[1][0] * x.re + m[1][1] * x.im)
    }

    /// Lattice points j with ψ(x − j) possibly nonzero.
    pub fn neighbours(&self, x: C64) -> Vec<(i64, i64)> {
        let (a, b) = self.coords(x);
        let (a0, b0) = (a.round() as i64, b.round() as i64);
        let mut out = Vec::new();
        for p in a0 - self.reach..=a0 + self.reach {
            for q in b0 - self.reach..=b0 + self.reach {
                if (x - self.point((p, q))).norm() < self.psi.radius {
                    out.push((p, q));
                }
            }
        }
        out
    }

    pub fn denominator(&self, x: C64) -> f64 {
        self.neighbours(x).into_iter().map(|j| self.psi.eval(x - self.point(j))).sum()
    }

    pub fn chi0(&self, x: C64) -> f64 {
        let p = self.psi.eval(x);
        if p == 0.0 {
            0.0
        } else {
            p / self.denominator(x)
        }
    }

    /// χ_j(x) = χ₀(x − j)
    pub fn chi(&self, j: (i64, i64), x: C64) -> f64 {
        self.chi0(x - self.point(j))
    }

    /// Σ_j χ_j(x), equal to one up to rounding.
    pub fn partition_sum(&self, x: C64) -> f64 {
        self.neighbours(x).into_iter().map(|j| self.chi(j, x)).sum()
    }
}

/// Window χ_T used in the Wiener-type decay probe.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Window {
    /// (2/π)^{1/2} e^{−|x − T|²}
    Gaussian,
    /// Gevrey bump of index s and radius r centred at T.
    Bump { s: f64, radius: f64 },
}

impl Default for Window {
    fn default() -> Self {
        Window::Gaussian
    }
}

impl Window {
    pub fn name(&self) -> String {
        match self {
            Window::Gaussian => "gaussian".into(),
            Window::Bump { s, radius } => format!("bump(s={s};r={radius})"),
        }
    }

    pub fn eval(&self, t: C64, x: C64) -> f64 {
        match self {
            Window::Gaussian => (2.0 / std::f64::consts::PI).sqrt() * (-(x - t).norm_sqr()).exp(),
            Window::Bump { s, radius } => GevreyBump { s: *s, radius: *radius, center: t, amplitude: 1.0 }.eval(x),
        }
    }

    /// The window as a symbol on Λ.
    pub fn symbol(&self, t: C64, like: &Symbol) -> Result<Symbol> {
        match self {
            Window::Gaussian => {
                let g = GaussianPoly::isotropic(t, 1.0, C64::new((2.0 / std::f64::consts::PI).sqrt(), 0.0))?;
                Ok(Symbol::gaussian(g, like.h, like.weight))
            }
            Window::Bump { s, radius } => Ok(Symbol::bump(GevreyBump::new(*s, *radius, t, 1.0)?, like.h, like.weight)),
        }
    }

    fn support_radius(&self) -> f64 {
        match self {
            Window::Gaussian => 6.2,
            Window::Bump { radius, .. } => *radius,
        }
    }
}

/// F_h(χ_T a), in closed form when both factors are Gaussian and sampled
/// otherwise.
pub fn windowed_transform(a: &Symbol, t: C64, window: Window, opts: &FourierOptions) -> Result<Symbol> {
    let w = window.symbol(t, a)?;
    fourier_symplectic(&w.mul(a)?, opts)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileOptions {
    /// Points per side of the square grid of window centres.
    pub t_points: usize,
    /// Spacing of the window-centre grid.
    pub t_spacing: f64,
    /// Ray directions in [0, π).
    pub directions: usize,
    /// Logarithmic radius bins.
    pub bins: usize,
    /// Step of the tanh-sinh rule for chord integrals.
    pub chord_step: f64,
    /// Zero padding factor of the ray FFT.
    pub padding: usize,
    /// Stop enlarging the frequency range once the tail falls below this
    /// fraction of the peak.
    pub tail: f64,
    /// Upper bound on the frequency range times the support radius.
    pub max_frequency: f64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self {
            t_points: 5,
            t_spacing: 0.25,
            directions: 6,
            bins: 200,
            chord_step: 1.0 / 16.0,
            padding: 8,
            tail: 1e-13,
            max_frequency: 2.0e4,
        }
    }
}

/// Envelope sup_T |F_h(χ_T a)| binned by radius |Y|/h.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WienerProfile {
    pub radii: Vec<f64>,
    pub moduli: Vec<f64>,
    pub centres: Vec<C64>,
    pub window: Window,
    /// Largest Euclidean frequency sampled.
    pub k_max: f64,
}

impl WienerProfile {
    /// (radius, modulus) pairs with modulus between lo and hi times the peak.
    pub fn in_window(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        let peak = self.moduli.iter().cloned().fold(0.0, f64::max);
        self.radii
            .iter()
            .zip(&self.moduli)
            .filter(|(_, &m)| m > lo * peak && m < hi * peak)
            .map(|(&r, &m)| (r, m))
            .collect()
    }
}

struct RayPlan {
    d_t: f64,
    n_t: usize,
    n_pad: usize,
    k_max: f64,
}

impl RayPlan {
    fn new(radius: f64, k_max: f64, padding: usize) -> Self {
        let d_t = 2.0 * std::f64::consts::PI / (3.0 * k_max);
        let n_t = (2.0 * radius / d_t).ceil() as usize + 1;
        let n_pad = (padding.max(1) * n_t).next_power_of_two();
        Self { d_t, n_t, n_pad, k_max }
    }

    fn frequency(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * j as f64 / (self.n_pad as f64 * self.d_t)
    }

    fn n_freq(&self) -> usize {
        ((self.k_max * self.n_pad as f64 * self.d_t / (2.0 * std::f64::consts::PI)).floor() as usize).min(self.n_pad / 2)
    }
}

/// |∫ e^{i k·x} b(x) dx| along the ray k = |k|(cos θ, sin θ), computed from
/// the projection of b onto that direction (chord integrals over the disc
/// `support`) and a zero-padded FFT.
fn ray_moduli<F: Fn(C64) -> C64 + Sync>(b: &F, support: (C64, f64), theta: f64, plan: &RayPlan, rule: &TanhSinh, fft: &dyn rustfft::Fft<f64>) -> Vec<f64> {
    let (c, r) = support;
    let e = C64::new(theta.cos(), theta.sin());
    let ep = e * C64::new(0.0, 1.0);
    let tc = c.re * e.re + c.im * e.im;
    let uc = c.re * ep.re + c.im * ep.im;
    let mut buf = vec![C64::new(0.0, 0.0); plan.n_pad];
    for (i, slot) in buf.iter_mut().take(plan.n_t).enumerate() {
        let t = -r + i as f64 * plan.d_t;
        let w2 = r * r - t * t;
        if w2 <= 0.0 {
            continue;
        }
        let w = w2.sqrt();
        let p = e * (tc + t);
        let mut acc = C64::new(0.0, 0.0);
        for (&x, &wt) in rule.nodes.iter().zip(&rule.weights) {
            let u = uc + w * x;
            acc += b(p + ep * u) * wt;
        }
        *slot = acc * w * plan.d_t;
    }
    fft.process(&mut buf);
    buf.iter().take(plan.n_freq() + 1).map(|v| v.norm()).collect()
}

/// Envelope of |F_h(χ_T a)(Y)| over a square grid of window centres T
/// around the support of a, sampled along several rays and reduced to the
/// maximum per logarithmic radius bin. Radii are |Y|/h.
pub fn wiener_profile(a: &Symbol, window: Window, opts: &ProfileOptions) -> Result<WienerProfile> {
    if let crate::weyl_calculus::SymbolKind::PlaneWave { .. } = a.kind {
        return Err(Error::InvalidParameter("plane waves have no decaying windowed transform".into()));
    }
    if opts.t_points == 0 || opts.directions == 0 || opts.bins < 2 {
        return Err(Error::InvalidParameter("profile needs window centres, directions and bins".into()));
    }
    let (centre, r_a) = a
        .compact_support()
        .or_else(|| a.support())
        .ok_or_else(|| Error::InvalidParameter("symbol has no bounded support".into()))?;
    let half = 0.5 * (opts.t_points - 1) as f64 * opts.t_spacing;
    let centres: Vec<C64> = (0..opts.t_points * opts.t_points)
        .map(|k| {
            let (i, j) = (k / opts.t_points, k % opts.t_points);
            centre + C64::new(-half + i as f64 * opts.t_spacing, -half + j as f64 * opts.t_spacing)
        })
        .collect();
    let support_for = |t: C64| -> (C64, f64) {
        let rw = window.support_radius();
        if a.compact_support().is_none() && rw < r_a {
            (t, rw)
        } else {
            (centre, r_a)
        }
    };
    let rule = TanhSinh::new(opts.chord_step);
    let mut planner = FftPlanner::<f64>::new();

    // Grow the frequency range until the tail of the central profile is
    // negligible.
    let r_s = support_for(centre).1;
    let mut k_max = 64.0 / r_s;
    let plan = loop {
        let plan = RayPlan::new(r_s, k_max, opts.padding);
        let fft = planner.plan_fft_inverse(plan.n_pad);
        let b = |x: C64| a.eval(x) * window.eval(centre, x);
        let m = ray_moduli(&b, support_for(centre), 0.0, &plan, &rule, fft.as_ref());
        let peak = m.iter().cloned().fold(0.0, f64::max);
        let n = m.len();
        let tail = m[n - n / 20 - 1..].iter().cloned().fold(0.0, f64::max);
        if !(peak > 0.0) {
            return Err(Error::InvalidParameter("windowed symbol vanishes".into()));
        }
        if tail < opts.tail * peak || k_max * r_s >= opts.max_frequency {
            break plan;
        }
        k_max *= 2.0;
    };
    let fft = planner.plan_fft_inverse(plan.n_pad);
    let tasks: Vec<(C64, f64)> = centres
        .iter()
        .flat_map(|&t| (0..opts.directions).map(move |d| (t, std::f64::consts::PI * d as f64 / opts.directions as f64)))
        .collect();
    let rays: Vec<Vec<f64>> = tasks
        .par_iter()
        .map(|&(t, theta)| {
            let b = |x: C64| a.eval(x) * window.eval(t, x);
            ray_moduli(&b, support_for(t), theta, &plan, &rule, fft.as_ref())
        })
        .collect();
    let mut env = vec![0.0f64; plan.n_freq() + 1];
    for ray in &rays {
        for (e, &v) in env.iter_mut().zip(ray) {
            *e = e.max(v);
        }
    }

    // |Y|/h = |k|/(8l) and |F_h b(Y)| = (4l/πh)|∫ e^{ik·x} b dx|.
    let (l, h) = (a.weight.l, a.h);
    let to_radius = 1.0 / (8.0 * l);
    let scale = 4.0 * l / (std::f64::consts::PI * h);
    let k_lo = plan.frequency(1);
    let k_hi = plan.frequency(plan.n_freq());
    let ratio = (k_hi / k_lo).ln() / opts.bins as f64;
    let mut radii = Vec::new();
    let mut moduli = Vec::new();
    for bin in 0..opts.bins {
        let (lo, hi) = (k_lo * (ratio * bin as f64).exp(), k_lo * (ratio * (bin + 1) as f64).exp());
        let mut best: Option<f64> = None;
        for (j, &v) in env.iter().enumerate().skip(1) {
            let k = plan.frequency(j);
            let inside = k >= lo && (k < hi || (bin + 1 == opts.bins && k <= hi));
            if inside {
                best = Some(best.map_or(v, |b: f64| b.max(v)));
            }
        }
        if let Some(v) = best {
            radii.push((lo * hi).sqrt() * to_radius);
            moduli.push(v * scale);
        }
    }
    Ok(WienerProfile { radii, moduli, centres, window, k_max: plan.k_max })
}

/// Reasons a decay fit is not trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitFlag {
    /// The exponent sits at the upper end ρ = 1 or the rate is not positive:
    /// the data decay faster than any stretched exponential in the family.
    ModelMismatch,
    /// Radii span less than one decade.
    NarrowRange,
    /// RMS log residual above [`RESIDUAL_THRESHOLD`].
    HighResidual,
}

impl FitFlag {
    pub fn name(&self) -> &'static str {
        match self {
            FitFlag::ModelMismatch => "model_mismatch",
            FitFlag::NarrowRange => "narrow_range",
            FitFlag::HighResidual => "high_residual",
        }
    }
}

/// RMS of log-modulus residuals above which a fit is flagged.
pub const RESIDUAL_THRESHOLD: f64 = 0.5;
/// Minimum number of samples accepted by [`decay_fit`].
pub const MIN_FIT_POINTS: usize = 8;

/// Fit of A·r^{−p}·exp(−r^ρ/C).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecayFit {
    pub rho: f64,
    pub c: f64,
    pub log_a: f64,
    /// Algebraic prefactor exponent p.
    pub power: f64,
    /// RMS of log residuals.
    pub residual: f64,
    pub radius_range: (f64, f64),
    pub n_points: usize,
    pub flags: Vec<FitFlag>,
}

impl DecayFit {
    pub fn flagged(&self) -> bool {
        !self.flags.is_empty()
    }

    pub fn flag_label(&self) -> String {
        if self.flags.is_empty() {
            "ok".into()
        } else {
            self.flags.iter().map(|f| f.name()).collect::<Vec<_>>().join("|")
        }
    }
}

/// Least squares in (log A, 1/C, p) for fixed ρ with p ≥ 0; returns
/// (sum of squares, log A, 1/C, p).
fn linear_part(r: &[f64], y: &[f64], rho: f64) -> (f64, f64, f64, f64) {
    let solve = |with_p: bool| -> (f64, DVector<f64>) {
        let cols = if with_p { 3 } else { 2 };
        let m = DMatrix::from_fn(r.len(), cols, |i, j| match j {
            0 => 1.0,
            1 => -r[i].powf(rho),
            _ => -r[i].ln(),
        });
        let rhs = DVector::from_column_slice(y);
        let coef = m.clone().svd(true, true).solve(&rhs, 1e-14).unwrap_or_else(|_| DVector::zeros(cols));
        let ss = (&m * &coef - &rhs).norm_squared();
        (ss, coef)
    };
    let (ss, coef) = solve(true);
    if coef[2] >= 0.0 {
        return (ss, coef[0], coef[1], coef[2]);
    }
    let (ss, coef) = solve(false);
    (ss, coef[0], coef[1], 0.0)
}

/// Fits log m = log A − p·log r − r^ρ/C with ρ ∈ [0.05, 1] and p ≥ 0 by
/// variable projection: the model is linear in (log A, 1/C, p) for fixed ρ, and the profiled sum of
/// squares is minimised over ρ by a grid scan refined by golden section.
pub fn decay_fit(samples: &[(f64, f64)]) -> Result<DecayFit> {
    if samples.len() < MIN_FIT_POINTS {
        return Err(Error::InvalidParameter(format!(
            "decay fit needs at least {MIN_FIT_POINTS} samples, got {}",
            samples.len()
        )));
    }
    if samples.iter().any(|&(r, m)| !(r > 0.0) || !(m > 0.0) || !r.is_finite() || !m.is_finite()) {
        return Err(Error::InvalidParameter("decay fit needs positive radii and moduli".into()));
    }
    let r: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let y: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let (rmin, rmax) = r.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    if !(rmax > rmin) {
        return Err(Error::InvalidParameter("decay fit needs distinct radii".into()));
    }
    let (lo, hi) = (0.05, 1.0);
    let n_scan = 96;
    let f = |rho: f64| linear_part(&r, &y, rho).0;
    let mut best = 0;
    let mut best_v = f64::MAX;
    for k in 0..=n_scan {
        let rho = lo + (hi - lo) * k as f64 / n_scan as f64;
        let v = f(rho);
        if v < best_v {
            best_v = v;
            best = k;
        }
    }
    let step = (hi - lo) / n_scan as f64;
    let (mut a, mut b) = ((lo + step * (best as f64 - 1.0)).max(lo), (lo + step * (best as f64 + 1.0)).min(hi));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    let mut rho = 0.5 * (a + b);
    for edge in [lo, hi] {
        if f(edge) < f(rho) {
            rho = edge;
        }
    }
    let (ss, log_a, inv_c, power) = linear_part(&r, &y, rho);
    let residual = (ss / r.len() as f64).sqrt();
    let mut flags = Vec::new();
    if rho >= 0.99 || inv_c <= 0.0 {
        flags.push(FitFlag::ModelMismatch);
    }
    if rmax / rmin < 10.0 {
        flags.push(FitFlag::NarrowRange);
    }
    if residual > RESIDUAL_THRESHOLD {
        flags.push(FitFlag::HighResidual);
    }
    Ok(DecayFit {
        rho,
        c: if inv_c > 0.0 { 1.0 / inv_c } else { f64::INFINITY },
        log_a,
        power,
        residual,
        radius_range: (rmin, rmax),
        n_points: r.len(),
        flags,
    })
}

/// Modulus band, relative to the peak, used to select fit samples.
pub const FIT_BAND: (f64, f64) = (1e-12, 1e-2);

/// Profile and fit in one call.
pub fn fit_symbol(a: &Symbol, window: Window, opts: &ProfileOptions) -> Result<(WienerProfile, DecayFit)> {
    let profile = wiener_profile(a, window, opts)?;
    let fit = decay_fit(&profile.in_window(FIT_BAND.0, FIT_BAND.1))?;
    Ok((profile, fit))
}
