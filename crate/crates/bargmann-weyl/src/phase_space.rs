//! The complex phase space ℂ² (n = 1), the quadratic weight Φ₀, and the real
//! symplectic subspace Λ_Φ₀ = {(x, (2/i)∂Φ₀/∂x)}.
//!
//! Points of Λ are parametrised by their base coordinate x ∈ ℂ. The real
//! symplectic form restricted to Λ is σ(X, Y) = 4l·Im(x̄ y), and the
//! symplectic volume is 4l·L(dx) with L the Lebesgue measure on ℂ ≅ ℝ².

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// A point (x, ξ) of ℂ².
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: C64,
    pub xi: C64,
}

impl PhasePoint {
    pub fn new(x: C64, xi: C64) -> Self {
        Self { x, xi }
    }

    pub fn add(self, other: Self) -> Self {
        Self::new(self.x + other.x, self.xi + other.xi)
    }

    pub fn scale(self, t: f64) -> Self {
        Self::new(self.x * t, self.xi * t)
    }
}

/// Φ₀(x) = Re(q x²) + l|x|² with l > 0, a strictly plurisubharmonic
/// quadratic form on ℂ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticWeight {
    pub q: C64,
    pub l: f64,
}

/// Named weights used throughout the examples and experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightPreset {
    /// Φ₀(x) = (Im x)²/2, produced by the phase i(x−y)²/2.
    Fbi,
    /// Φ₀(x) = |x|²/2, produced by the classical Bargmann phase.
    Bargmann,
}

impl QuadraticWeight {
    pub fn new(q: C64, l: f64) -> Result<Self> {
        if !(l > 0.0) || !l.is_finite() {
            return Err(Error::NotPlurisubharmonic(format!("l = {l} must be positive")));
        }
        if !q.re.is_finite() || !q.im.is_finite() {
            return Err(Error::InvalidParameter("q must be finite".into()));
        }
        Ok(Self { q, l })
    }

    pub fn fbi() -> Self {
        Self { q: C64::new(-0.25, 0.0), l: 0.25 }
    }

    pub fn bargmann() -> Self {
        Self { q: C64::new(0.0, 0.0), l: 0.5 }
    }

    pub fn preset(p: WeightPreset) -> Self {
        match p {
            WeightPreset::Fbi => Self::fbi(),
            WeightPreset::Bargmann => Self::bargmann(),
        }
    }

    pub fn phi(&self, x: C64) -> f64 {
        (self.q * x * x).re + self.l * x.norm_sqr()
    }

    /// Holomorphic derivative ∂Φ₀/∂x.
    pub fn dphi_dx(&self, x: C64) -> C64 {
        self.q * x + self.l * x.conj()
    }

    /// ξ-coordinate of the point of Λ above x.
    pub fn xi_of(&self, x: C64) -> C64 {
        (2.0 / I) * self.dphi_dx(x)
    }

    /// Smallest eigenvalue of Φ₀ − Re(r x²) viewed as a real quadratic form
    /// on ℝ². Positive exactly when e^{r x²/h} lies in H_Φ₀ with Gaussian decay.
    pub fn margin_against(&self, r: C64) -> f64 {
        self.l - (self.q - r).norm()
    }
}

/// Lifts x ∈ ℂ to the point of Λ_Φ₀ above it.
pub fn lift(x: C64, w: &QuadraticWeight) -> PhasePoint {
    PhasePoint::new(x, w.xi_of(x))
}

/// Distance of ξ from (2/i)∂Φ₀/∂x, normalised by the size of the point.
pub fn lambda_residual(p: &PhasePoint, w: &QuadraticWeight) -> f64 {
    (p.xi - w.xi_of(p.x)).norm() / (1.0 + p.x.norm() + p.xi.norm())
}

pub fn is_on_lambda(p: &PhasePoint, w: &QuadraticWeight, tol: f64) -> bool {
    lambda_residual(p, w) <= tol
}

/// Holomorphic symplectic form σ(U, V) = ξ_U·x_V − x_U·ξ_V on ℂ².
pub fn sigma(u: &PhasePoint, v: &PhasePoint) -> C64 {
    u.xi * v.x - u.x * v.xi
}

/// σ restricted to Λ, returned as a real number after checking both points lie on Λ.
pub fn sigma_on_lambda(u: &PhasePoint, v: &PhasePoint, w: &QuadraticWeight) -> Result<f64> {
    const TOL: f64 = 1e-9;
    for p in [u, v] {
        let r = lambda_residual(p, w);
        if r > TOL {
            return Err(Error::NotOnLambda { residual: r });
        }
    }
    Ok(sigma(u, v).re)
}

/// σ(lift(x), lift(y)) = 4l·Im(x̄ y), evaluated from base coordinates alone.
pub fn sigma_base(x: C64, y: C64, w: &QuadraticWeight) -> f64 {
    4.0 * w.l * (x.conj() * y).im
}

/// Density of the symplectic volume form on Λ with respect to L(dx).
pub fn symplectic_density(w: &QuadraticWeight) -> f64 {
    4.0 * w.l
}

/// A linear form ℓ(x, ξ) = ℓ_x·x + x*·ξ that is real on Λ_Φ₀.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearFormOnLambda {
    pub xstar: C64,
    pub ell_x: C64,
}

impl LinearFormOnLambda {
    /// The unique form with ξ-coefficient x* that is real on Λ.
    pub fn from_xstar(xstar: C64, w: &QuadraticWeight) -> Self {
        Self { xstar, ell_x: -w.xi_of(xstar) }
    }

    /// ℓ = σ(·, Z) for Z ∈ Λ above z.
    pub fn sigma_with(z: C64, w: &QuadraticWeight) -> Self {
        Self::from_xstar(z, w)
    }

    pub fn eval(&self, p: &PhasePoint) -> C64 {
        self.ell_x * p.x + self.xstar * p.xi
    }

    /// ℓ restricted to Λ as a function of the base coordinate.
    pub fn eval_on_lambda(&self, x: C64, w: &QuadraticWeight) -> f64 {
        self.eval(&lift(x, w)).re
    }

    /// Hamilton vector field H_ℓ = (∂ξℓ, −∂xℓ) = (x*, −ℓ_x), a point of Λ.
    pub fn hamilton_vector(&self) -> PhasePoint {
        PhasePoint::new(self.xstar, -self.ell_x)
    }

    /// Checks that ℓ is real on Λ, returning the largest imaginary part seen
    /// at a few probe points.
    pub fn reality_defect(&self, w: &QuadraticWeight) -> f64 {
        [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.7, -1.3)]
            .iter()
            .map(|&x| self.eval(&lift(x, w)).im.abs())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self { xstar: self.xstar * t, ell_x: self.ell_x * t }
    }
}
