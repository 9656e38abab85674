//! Exponentials e^{∓iℓ(x,hD)/h} of linear forms that are real on Λ_Φ₀.
//!
//! In normal form T = e^{−iℓ/h} with ℓ = ℓ_x·x + x*·ξ,
//!
//! ```text
//! T u(x) = e^{(i/2h) ℓ_x x*} · e^{−(i/h) ℓ_x x} · u(x − x*),
//! ```
//!
//! so T maps H_Φ unitarily onto H_Φ(·−x*) and acts on closed-form
//! functions exactly.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bargmann_core::{inner_product, Basis, HoloFunction, OperatorMatrix, QuadRule, WeightFunction};
use crate::error::{Error, Result};
use crate::phase_space::{sigma, LinearFormOnLambda, QuadraticWeight};

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    /// e^{−iℓ/h}
    Minus,
    /// e^{+iℓ/h}
    Plus,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MagneticTranslation {
    pub form: LinearFormOnLambda,
    pub h: f64,
    pub sign: Sign,
}

impl MagneticTranslation {
    pub fn new(form: LinearFormOnLambda, h: f64, sign: Sign) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter("h must be positive".into()));
        }
        Ok(Self { form, h, sign })
    }

    /// e^{i c σ((x,hD), Z)/h} for Z ∈ Λ above z.
    pub fn exp_sigma(z: C64, c: f64, w: &QuadraticWeight, h: f64) -> Result<Self> {
        Self::new(LinearFormOnLambda::sigma_with(z, w).scaled(c), h, Sign::Plus)
    }

    /// The form ℓ′ with T = e^{−iℓ′/h}.
    pub fn normal_form(&self) -> LinearFormOnLambda {
        match self.sign {
            Sign::Minus => self.form,
            Sign::Plus => self.form.scaled(-1.0),
        }
    }

    /// Translation vector x* of the normal form.
    pub fn shift(&self) -> C64 {
        self.normal_form().xstar
    }

    pub fn apply(&self, u: &HoloFunction) -> Result<HoloFunction> {
        if (u.h - self.h).abs() > 1e-14 {
            return Err(Error::Incompatible("translation and function use different h".into()));
        }
        let f = self.normal_form();
        Ok(u.translate(f.xstar).mul_exp_affine(-I * f.ell_x, 0.5 * I * f.ell_x * f.xstar))
    }

    /// Multiplier and shift: T u(x) = m(x)·u(x − x*), m(x) = exp(α x + β).
    pub fn multiplier(&self) -> (C64, C64, C64) {
        let f = self.normal_form();
        (-I * f.ell_x / self.h, 0.5 * I * f.ell_x * f.xstar / self.h, f.xstar)
    }

    pub fn inverse(&self) -> Self {
        Self { form: self.normal_form().scaled(-1.0), h: self.h, sign: Sign::Minus }
    }

    /// Matrix (T e_k, e_j) in an orthonormal basis.
    pub fn matrix_in(&self, basis: &Basis) -> Result<OperatorMatrix> {
        let n = basis.dim();
        let npts = basis.rule.len();
        let mut cols = DMatrix::<C64>::zeros(npts, n);
        for k in 0..n {
            let img = self.apply(&basis.function(k))?;
            cols.set_column(k, &basis.damped_samples(&img));
        }
        Ok(OperatorMatrix { entries: basis.project_columns(&cols), h: self.h, n_max: basis.n_max })
    }
}

/// T_a T_b = T_{a+b}·e^{(i/2h) σ(H_a, H_b)} in normal form. Returns the
/// composite and the scalar phase.
pub fn compose_cocycle(a: &MagneticTranslation, b: &MagneticTranslation) -> Result<(MagneticTranslation, C64)> {
    if (a.h - b.h).abs() > 1e-14 {
        return Err(Error::Incompatible("cocycle of translations with different h".into()));
    }
    let (fa, fb) = (a.normal_form(), b.normal_form());
    let sum = LinearFormOnLambda { xstar: fa.xstar + fb.xstar, ell_x: fa.ell_x + fb.ell_x };
    let s = sigma(&fa.hamilton_vector(), &fb.hamilton_vector());
    let phase = (I * s / (2.0 * a.h)).exp();
    Ok((MagneticTranslation { form: sum, h: a.h, sign: Sign::Minus }, phase))
}

/// Φ₂ = Φ₀ + f(· − x*), the weight T maps H_Φ₁ onto.
pub fn transport_weight(phi1: &WeightFunction, t: &MagneticTranslation) -> WeightFunction {
    WeightFunction { base: phi1.base, f: phi1.f.shifted(t.shift()) }
}

/// Ψ(·, t) = Φ₀ + f(· − t·x*), solving ∂_tΨ = Im ℓ′(x, (2/i)∂_xΨ).
pub fn hj_solution(phi1: &WeightFunction, t: &MagneticTranslation, time: f64) -> WeightFunction {
    WeightFunction { base: phi1.base, f: phi1.f.shifted(t.shift() * time) }
}

/// Bounds on ‖T‖ as an operator on H_Φ₁.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TranslationBound {
    /// exp(sup |f(x − x*) − f(x)| / h), with the sup estimated on a grid.
    pub sampled: f64,
    /// exp(min(2b₀, b₁|x*|) / h).
    pub envelope: f64,
}

/// ‖T‖_{H_Φ₁ → H_Φ₁} ≤ exp(‖Φ₂ − Φ₁‖_∞ / h).
pub fn norm_bound_on_weighted(t: &MagneticTranslation, phi1: &WeightFunction) -> TranslationBound {
    let xs = t.shift();
    let (b0, b1) = phi1.f.bounds();
    let envelope = ((2.0 * b0).min(b1 * xs.norm()) / t.h).exp();
    let r = 12.0 + 2.0 * xs.norm();
    let m = 401;
    let d = 2.0 * r / (m - 1) as f64;
    let mut sup: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let x = C64::new(-r + i as f64 * d, -r + j as f64 * d);
            sup = sup.max((phi1.f.value(x - xs) - phi1.f.value(x)).abs());
        }
    }
    // Grid sampling can miss the sup by at most b₁·d/√2.
    let sampled = ((sup + b1 * d / std::f64::consts::SQRT_2).min(2.0 * b0) / t.h).exp();
    TranslationBound { sampled, envelope }
}

/// ℓ(x, hD_x)u = ℓ_x·x·u + x*·(h/i)·u′, exact on the closed-form class.
pub fn apply_form(form: &LinearFormOnLambda, u: &HoloFunction) -> HoloFunction {
    let du = u.derivative().scaled(-I * u.h * form.xstar);
    let xu = u.mul_affine(C64::new(0.0, 0.0), form.ell_x);
    HoloFunction { poly: xu.poly.add(&du.poly), ..u.clone() }
}

/// Both sides of the quantization-multiplication identity
/// (ℓ(x,hD)u, u)_Ψ = ∫ ℓ(x, (2/i)∂Ψ/∂x) |u|² e^{−2Ψ/h} L(dx).
pub fn quantization_multiplication(form: &LinearFormOnLambda, u: &HoloFunction, psi: &WeightFunction, rule: &QuadRule) -> Result<(C64, C64)> {
    let lhs = inner_product(&apply_form(form, u), u, psi, rule)?;
    let rhs = rule.integrate(|x| {
        let xi = psi.dphi_dx(x) * (-2.0 * I);
        let l = form.ell_x * x + form.xstar * xi;
        l * u.damped(x, psi.phi(x)).norm_sqr()
    });
    Ok((lhs, rhs))
}
