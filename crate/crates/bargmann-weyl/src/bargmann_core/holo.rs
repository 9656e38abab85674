//! Holomorphic functions of the form p((x − c)/s)·exp(q(x)/h) with p a
//! polynomial and q a quadratic polynomial.
//!
//! The class is closed under differentiation, multiplication by affine
//! functions, translation and multiplication by exponentials of affine
//! functions, so magnetic translations and first order operators act on it
//! exactly.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::quadrature::QuadRule;
use super::weight::WeightFunction;
use crate::error::{Error, Result};
use crate::poly::Poly1;
use crate::phase_space::QuadraticWeight;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoloFunction {
    /// Polynomial in the local variable t = (x − center)/scale.
    pub poly: Poly1,
    pub center: C64,
    pub scale: f64,
    /// Exponent coefficients [q0, q1, q2] of q(x) = q2 x² + q1 x + q0.
    pub q: [C64; 3],
    pub h: f64,
}

impl HoloFunction {
    pub fn new(poly: Poly1, center: C64, scale: f64, q: [C64; 3], h: f64) -> Result<Self> {
        if !(h > 0.0) || !(scale > 0.0) {
            return Err(Error::InvalidParameter(format!("need h > 0 and scale > 0 (h = {h}, scale = {scale})")));
        }
        Ok(Self { poly, center, scale, q, h })
    }

    /// ((x − c)/s)^k · exp(q(x)/h)
    pub fn monomial(k: usize, center: C64, scale: f64, q: [C64; 3], h: f64) -> Result<Self> {
        Self::new(Poly1::monomial(k), center, scale, q, h)
    }

    pub fn exponent(&self, x: C64) -> C64 {
        (self.q[2] * x + self.q[1]) * x + self.q[0]
    }

    pub fn local(&self, x: C64) -> C64 {
        (x - self.center) / self.scale
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.poly.eval(self.local(x)) * (self.exponent(x) / self.h).exp()
    }

    /// e^{−φ/h}·u(x), computed without forming the two large factors separately.
    pub fn damped(&self, x: C64, phi: f64) -> C64 {
        self.poly.eval(self.local(x)) * ((self.exponent(x) - phi) / self.h).exp()
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self { poly: self.poly.scale(c), ..self.clone() }
    }

    /// u'(x) in closed form.
    pub fn derivative(&self) -> Self {
        let s = self.scale;
        let dq = Poly1::linear(self.q[2] * 2.0 * self.center + self.q[1], self.q[2] * 2.0 * s);
        let poly = self.poly.derivative().scale(C64::new(1.0 / s, 0.0)).add(&self.poly.mul(&dq).scale(C64::new(1.0 / self.h, 0.0)));
        Self { poly, ..self.clone() }
    }

    /// (a + b·x)·u
    pub fn mul_affine(&self, a: C64, b: C64) -> Self {
        let lin = Poly1::linear(a + b * self.center, b * self.scale);
        Self { poly: self.poly.mul(&lin), ..self.clone() }
    }

    /// exp((α x + β)/h)·u
    pub fn mul_exp_affine(&self, alpha: C64, beta: C64) -> Self {
        let mut out = self.clone();
        out.q[1] += alpha;
        out.q[0] += beta;
        out
    }

    /// x ↦ u(x − x*)
    pub fn translate(&self, xstar: C64) -> Self {
        let [q0, q1, q2] = self.q;
        Self {
            poly: self.poly.clone(),
            center: self.center + xstar,
            scale: self.scale,
            q: [q2 * xstar * xstar - q1 * xstar + q0, q1 - q2 * 2.0 * xstar, q2],
            h: self.h,
        }
    }

    /// Sum of two functions sharing the same exponent and local variable.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let same = (self.center - other.center).norm() < 1e-14
            && (self.scale - other.scale).abs() < 1e-14
            && (self.h - other.h).abs() < 1e-14
            && self.q.iter().zip(&other.q).all(|(a, b)| (a - b).norm() < 1e-12);
        if !same {
            return Err(Error::Incompatible("sum needs a common exponent and local variable".into()));
        }
        Ok(Self { poly: self.poly.add(&other.poly), ..self.clone() })
    }

    /// True when u has Gaussian decay in H_Φ₀.
    pub fn in_space(&self, w: &QuadraticWeight) -> bool {
        w.margin_against(self.q[2]) > 0.0
    }

    pub fn is_zero(&self) -> bool {
        self.poly.0.iter().all(|&c| c == ZERO)
    }
}

/// (u, v)_Φ = ∫ u·v̄·e^{−2Φ/h} L(dx) by the tensor trapezoid rule.
pub fn inner_product(u: &HoloFunction, v: &HoloFunction, phi: &WeightFunction, rule: &QuadRule) -> Result<C64> {
    if (u.h - v.h).abs() > 1e-14 {
        return Err(Error::Incompatible("inner product of functions with different h".into()));
    }
    if phi.base.margin_against(0.5 * (u.q[2] + v.q[2])) <= 0.0 {
        return Err(Error::NotIntegrable("integrand has no Gaussian decay".into()));
    }
    Ok(rule.integrate(|x| {
        let p = phi.phi(x);
        u.damped(x, p) * v.damped(x, p).conj()
    }))
}

pub fn norm(u: &HoloFunction, phi: &WeightFunction, rule: &QuadRule) -> Result<f64> {
    Ok(inner_product(u, u, phi, rule)?.re.max(0.0).sqrt())
}
