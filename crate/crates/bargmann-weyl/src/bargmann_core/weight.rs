//! Perturbed weights Φ = Φ₀ + f with f bounded and Lipschitz.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::QuadraticWeight;

/// Real perturbations f : ℂ → ℝ with recorded bounds b₀ ≥ ‖f‖_∞, b₁ ≥ ‖∇f‖_∞.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Perturbation {
    Zero,
    /// amp·tanh(Re x)·exp(−|x|²/width²)
    TanhGauss { amp: f64, width: f64 },
    /// amp·sin(Re x)
    Sine { amp: f64 },
    /// base(x − shift)
    Shifted { base: Box<Perturbation>, shift: C64 },
}

impl Perturbation {
    pub fn value(&self, x: C64) -> f64 {
        match self {
            Perturbation::Zero => 0.0,
            Perturbation::TanhGauss { amp, width } => amp * x.re.tanh() * (-x.norm_sqr() / (width * width)).exp(),
            Perturbation::Sine { amp } => amp * x.re.sin(),
            Perturbation::Shifted { base, shift } => base.value(x - shift),
        }
    }

    /// Real gradient (∂f/∂x₁, ∂f/∂x₂).
    pub fn grad(&self, x: C64) -> (f64, f64) {
        match self {
            Perturbation::Zero => (0.0, 0.0),
            Perturbation::TanhGauss { amp, width } => {
                let w2 = width * width;
                let g = (-x.norm_sqr() / w2).exp();
                let t = x.re.tanh();
                let sech2 = 1.0 - t * t;
                (amp * g * (sech2 - 2.0 * x.re * t / w2), amp * g * t * (-2.0 * x.im / w2))
            }
            Perturbation::Sine { amp } => (amp * x.re.cos(), 0.0),
            Perturbation::Shifted { base, shift } => base.grad(x - shift),
        }
    }

    /// (b₀, b₁)
    pub fn bounds(&self) -> (f64, f64) {
        match self {
            Perturbation::Zero => (0.0, 0.0),
            Perturbation::TanhGauss { amp, width } => {
                let a = amp.abs();
                (a, a * (1.0 + std::f64::consts::SQRT_2 / (width * std::f64::consts::E.sqrt())))
            }
            Perturbation::Sine { amp } => (amp.abs(), amp.abs()),
            Perturbation::Shifted { base, .. } => base.bounds(),
        }
    }

    pub fn shifted(&self, shift: C64) -> Self {
        match self {
            Perturbation::Zero => Perturbation::Zero,
            Perturbation::Shifted { base, shift: s0 } => Perturbation::Shifted { base: base.clone(), shift: s0 + shift },
            other => Perturbation::Shifted { base: Box::new(other.clone()), shift },
        }
    }

    /// The same shape multiplied by a constant.
    pub fn scaled(&self, c: f64) -> Self {
        match self {
            Perturbation::Zero => Perturbation::Zero,
            Perturbation::TanhGauss { amp, width } => Perturbation::TanhGauss { amp: amp * c, width: *width },
            Perturbation::Sine { amp } => Perturbation::Sine { amp: amp * c },
            Perturbation::Shifted { base, shift } => Perturbation::Shifted { base: Box::new(base.scaled(c)), shift: *shift },
        }
    }
}

/// Φ = Φ₀ + f.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightFunction {
    pub base: QuadraticWeight,
    pub f: Perturbation,
}

impl WeightFunction {
    pub fn quadratic(base: QuadraticWeight) -> Self {
        Self { base, f: Perturbation::Zero }
    }

    pub fn new(base: QuadraticWeight, f: Perturbation) -> Result<Self> {
        let (b0, b1) = f.bounds();
        if !b0.is_finite() || !b1.is_finite() {
            return Err(Error::InvalidParameter("perturbation bounds must be finite".into()));
        }
        Ok(Self { base, f })
    }

    /// Φ₀ + (h^{1−1/s}/C)·g, the scaling that keeps magnetic translations
    /// uniformly bounded as h → 0 when s ≥ 2.
    pub fn gevrey_scaled(base: QuadraticWeight, g: &Perturbation, h: f64, s: f64, c: f64) -> Result<Self> {
        if !(s > 1.0) || !(c > 0.0) || !(h > 0.0) {
            return Err(Error::InvalidParameter(format!("need s > 1, C > 0, h > 0 (s = {s}, C = {c}, h = {h})")));
        }
        Self::new(base, g.scaled(h.powf(1.0 - 1.0 / s) / c))
    }

    pub fn phi(&self, x: C64) -> f64 {
        self.base.phi(x) + self.f.value(x)
    }

    /// Holomorphic derivative ∂Φ/∂x = ∂Φ₀/∂x + (∂₁f − i∂₂f)/2.
    pub fn dphi_dx(&self, x: C64) -> C64 {
        let (g1, g2) = self.f.grad(x);
        self.base.dphi_dx(x) + C64::new(0.5 * g1, -0.5 * g2)
    }

    pub fn b0(&self) -> f64 {
        self.f.bounds().0
    }

    pub fn b1(&self) -> f64 {
        self.f.bounds().1
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self.f, Perturbation::Zero)
    }
}
