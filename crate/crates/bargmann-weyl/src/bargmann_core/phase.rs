//! Quadratic generating phases, the induced weight and canonical
//! transformation, and the metaplectic transform L²(ℝ) → H_Φ₀ on
//! polynomial-times-Gaussian inputs.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::holo::{norm, HoloFunction};
use super::quadrature::QuadRule;
use super::weight::WeightFunction;
use crate::error::{Error, Result};
use crate::phase_space::{PhasePoint, QuadraticWeight, WeightPreset};
use crate::poly::{binomial, Poly1};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// φ(x, y) = (a/2)x² + b·x·y + (c/2)y² with Im c > 0 and b ≠ 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BargmannPhase {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl BargmannPhase {
    pub fn new(a: C64, b: C64, c: C64) -> Result<Self> {
        if !(c.im > 0.0) {
            return Err(Error::InvalidParameter(format!("phase needs Im c > 0, got {c}")));
        }
        if b.norm() == 0.0 {
            return Err(Error::InvalidParameter("phase needs b ≠ 0".into()));
        }
        Ok(Self { a, b, c })
    }

    /// i(x − y)²/2
    pub fn fbi() -> Self {
        Self { a: I, b: -I, c: I }
    }

    /// i(x²/2 − √2·x·y + y²/2)
    pub fn bargmann() -> Self {
        Self { a: I, b: -I * std::f64::consts::SQRT_2, c: I }
    }

    pub fn preset(p: WeightPreset) -> Self {
        match p {
            WeightPreset::Fbi => Self::fbi(),
            WeightPreset::Bargmann => Self::bargmann(),
        }
    }

    pub fn eval(&self, x: C64, y: C64) -> C64 {
        0.5 * self.a * x * x + self.b * x * y + 0.5 * self.c * y * y
    }

    /// Φ₀(x) = sup over real y of −Im φ(x, y).
    pub fn derive_weight(&self) -> QuadraticWeight {
        let ic = self.c.im;
        QuadraticWeight {
            q: -self.b * self.b / (4.0 * ic) + 0.5 * I * self.a,
            l: self.b.norm_sqr() / (4.0 * ic),
        }
    }

    /// κ_φ(y, −∂_yφ) = (x, ∂_xφ).
    pub fn kappa(&self, y: f64, eta: f64) -> PhasePoint {
        let x = -(eta + self.c * y) / self.b;
        PhasePoint::new(x, self.a * x + self.b * y)
    }

    /// Real preimage (y, η) of the point of Λ above x.
    pub fn kappa_inv(&self, x: C64) -> (f64, f64) {
        let bx = self.b * x;
        let y = -bx.im / self.c.im;
        let eta = -bx.re - self.c.re * y;
        (y, eta)
    }

    /// Matrix of the real-linear map (Re x, Im x) ↦ (y, η).
    pub fn kappa_inv_matrix(&self) -> [[f64; 2]; 2] {
        let (y1, e1) = self.kappa_inv(C64::new(1.0, 0.0));
        let (y2, e2) = self.kappa_inv(C64::new(0.0, 1.0));
        [[y1, y2], [e1, e2]]
    }
}

/// p(y/√h)·exp(−(α y² + β y + γ)/h) on the real line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealGaussian {
    pub poly: Poly1,
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub h: f64,
}

impl RealGaussian {
    pub fn new(poly: Poly1, alpha: C64, beta: C64, gamma: C64, h: f64) -> Result<Self> {
        if !(alpha.re > 0.0) || !(h > 0.0) {
            return Err(Error::InvalidParameter("real Gaussian needs Re α > 0 and h > 0".into()));
        }
        Ok(Self { poly, alpha, beta, gamma, h })
    }

    /// L²-normalised semiclassical Hermite function h_k.
    pub fn hermite(k: usize, h: f64) -> Self {
        // Physicists' Hermite polynomials H_k(z).
        let mut prev = Poly1::constant(C64::new(1.0, 0.0));
        let mut cur = Poly1::linear(C64::new(0.0, 0.0), C64::new(2.0, 0.0));
        if k == 0 {
            cur = prev.clone();
        } else {
            for j in 1..k {
                let next = cur
                    .mul(&Poly1::linear(C64::new(0.0, 0.0), C64::new(2.0, 0.0)))
                    .add(&prev.scale(C64::new(-2.0 * j as f64, 0.0)));
                prev = cur;
                cur = next;
            }
        }
        let log_fact: f64 = (1..=k).map(|j| (j as f64).ln()).sum();
        let c = (-0.25 * std::f64::consts::PI.ln() - 0.25 * h.ln() - 0.5 * (k as f64 * 2f64.ln() + log_fact)).exp();
        Self { poly: cur.scale(C64::new(c, 0.0)), alpha: C64::new(0.5, 0.0), beta: C64::new(0.0, 0.0), gamma: C64::new(0.0, 0.0), h }
    }

    /// Σ c_k h_k
    pub fn hermite_combination(coeffs: &[C64], h: f64) -> Self {
        let mut poly = Poly1::constant(C64::new(0.0, 0.0));
        for (k, &c) in coeffs.iter().enumerate() {
            poly = poly.add(&Self::hermite(k, h).poly.scale(c));
        }
        Self { poly, alpha: C64::new(0.5, 0.0), beta: C64::new(0.0, 0.0), gamma: C64::new(0.0, 0.0), h }
    }

    pub fn eval(&self, y: f64) -> C64 {
        let e = -(self.alpha * y * y + self.beta * y + self.gamma) / self.h;
        self.poly.eval(C64::new(y / self.h.sqrt(), 0.0)) * e.exp()
    }

    /// ‖u‖_{L²(ℝ)} by the trapezoid rule.
    pub fn l2_norm(&self) -> f64 {
        let centre = -self.beta.re / (2.0 * self.alpha.re);
        let width = (self.h / self.alpha.re).sqrt();
        let r = width * (8.0 + (self.poly.degree() as f64).sqrt());
        let m = 4001;
        let d = 2.0 * r / (m - 1) as f64;
        let s: f64 = (0..m).map(|k| self.eval(centre - r + k as f64 * d).norm_sqr()).sum();
        (s * d).sqrt()
    }
}

/// T u(x) = C h^{-3/4} ∫ e^{iφ(x,y)/h} u(y) dy with C calibrated so that
/// ‖T e₀‖ = 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BargmannTransform {
    pub phase: BargmannPhase,
    pub weight: QuadraticWeight,
    pub h: f64,
    pub constant: f64,
    /// Normalising constant of e₀ = C₀ h^{-1/4} e^{−y²/2h}.
    pub e0_constant: f64,
}

impl BargmannTransform {
    pub fn new(phase: BargmannPhase, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter("h must be positive".into()));
        }
        let weight = phase.derive_weight();
        let e0_constant = {
            let g = RealGaussian::new(Poly1::constant(C64::new(1.0, 0.0)), C64::new(0.5, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), h)?;
            h.powf(0.25) / g.l2_norm()
        };
        let mut t = Self { phase, weight, h, constant: 1.0, e0_constant };
        let v = t.transform(&t.e0())?;
        let m = QuadRule::radius_for(h, 0, t.margin(&v));
        let rule = QuadRule::new(C64::new(0.0, 0.0), m, 161)?;
        let n = norm(&v, &WeightFunction::quadratic(weight), &rule)?;
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Conditioning("could not calibrate the transform constant".into()));
        }
        t.constant = 1.0 / n;
        Ok(t)
    }

    fn margin(&self, v: &HoloFunction) -> f64 {
        self.weight.margin_against(v.q[2])
    }

    /// e₀ = C₀ h^{-1/4} e^{−y²/2h}
    pub fn e0(&self) -> RealGaussian {
        RealGaussian {
            poly: Poly1::constant(C64::new(self.e0_constant * self.h.powf(-0.25), 0.0)),
            alpha: C64::new(0.5, 0.0),
            beta: C64::new(0.0, 0.0),
            gamma: C64::new(0.0, 0.0),
            h: self.h,
        }
    }

    /// v₀ = T e₀, the normalised ground state in H_Φ₀.
    pub fn v0(&self) -> Result<HoloFunction> {
        self.transform(&self.e0())
    }

    pub fn transform(&self, u: &RealGaussian) -> Result<HoloFunction> {
        if (u.h - self.h).abs() > 1e-14 {
            return Err(Error::Incompatible("input and transform use different h".into()));
        }
        let h = self.h;
        let (a, b, c) = (self.phase.a, self.phase.b, self.phase.c);
        let big_a = u.alpha - 0.5 * I * c;
        if !(big_a.re > 0.0) {
            return Err(Error::NotIntegrable("transform integrand does not decay".into()));
        }
        let sh = h.sqrt();
        // Mean and variance of z = y/√h under the complex Gaussian weight.
        let mu1 = I * b / (2.0 * big_a);
        let mu0 = -u.beta / (2.0 * big_a * sh);
        let var = 1.0 / (2.0 * big_a);
        let zpoly = Poly1::linear(mu0, mu1);
        let deg = u.poly.degree();
        let mut zpows = vec![Poly1::constant(C64::new(1.0, 0.0))];
        for k in 1..=deg {
            zpows.push(zpows[k - 1].mul(&zpoly));
        }
        let mut moments = vec![C64::new(1.0, 0.0); deg + 1];
        for j in 1..=deg {
            moments[j] = if j % 2 == 1 { C64::new(0.0, 0.0) } else { moments[j - 2] * var * (j - 1) as f64 };
        }
        let mut out = Poly1::constant(C64::new(0.0, 0.0));
        for (k, &pk) in u.poly.0.iter().enumerate() {
            if pk == C64::new(0.0, 0.0) {
                continue;
            }
            let mut ez = Poly1::constant(C64::new(0.0, 0.0));
            for j in (0..=k).step_by(2) {
                ez = ez.add(&zpows[k - j].scale(moments[j] * binomial(k, j)));
            }
            out = out.add(&ez.scale(pk));
        }
        let pref = self.constant * h.powf(-0.75) * (std::f64::consts::PI * h / big_a).sqrt();
        let q2 = 0.5 * I * a - b * b / (4.0 * big_a);
        let q1 = -I * b * u.beta / (2.0 * big_a);
        let q0 = -u.gamma + u.beta * u.beta / (4.0 * big_a);
        HoloFunction::new(out.scale(pref), C64::new(0.0, 0.0), sh, [q0, q1, q2], h)
    }
}
