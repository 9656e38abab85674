//! Orthonormal polynomial bases of H_Φ built from the ground state v₀, and
//! Galerkin matrices of operators in those bases.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::holo::HoloFunction;
use super::phase::BargmannTransform;
use super::quadrature::QuadRule;
use super::weight::WeightFunction;
use crate::error::{Error, Result};
use crate::poly::Poly1;

/// Largest condition number accepted for a (diagonally scaled) Gram matrix.
pub const MAX_GRAM_CONDITION: f64 = 1e12;

/// Basis e_0, …, e_N of {p·v₀ : deg p ≤ N}, orthonormal in H_Φ for the
/// weight it was built with, together with its samples on a quadrature rule.
#[derive(Clone, Debug)]
pub struct Basis {
    pub h: f64,
    pub n_max: usize,
    pub weight: WeightFunction,
    /// Exponent of v₀; e_k(x) = Σ_m C[k,m]·(x/scale)^m·e^{q(x)/h}.
    pub q_ref: [C64; 3],
    pub scale: f64,
    pub coeffs: DMatrix<C64>,
    pub rule: QuadRule,
    /// Rows: quadrature nodes. Columns: e^{−Φ/h}·e_k at the node.
    pub damped: DMatrix<C64>,
    /// Condition number of the Jacobi-scaled monomial Gram matrix.
    pub gram_condition: f64,
}

/// Gram matrix G_{jk} = (e_k, e_j)_Φ of a basis in some weight Φ.
#[derive(Clone, Debug)]
pub struct GramData {
    pub matrix: DMatrix<C64>,
    pub weight: WeightFunction,
    pub condition: f64,
}

/// Matrix of an operator in an orthonormal basis: A_{jk} = (A e_k, e_j).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorMatrix {
    pub entries: DMatrix<C64>,
    pub h: f64,
    pub n_max: usize,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn identity(n_max: usize, h: f64) -> Self {
        Self { entries: DMatrix::identity(n_max + 1, n_max + 1), h, n_max }
    }

    pub fn adjoint(&self) -> Self {
        Self { entries: self.entries.adjoint(), ..self.clone() }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { entries: &self.entries * &other.entries, ..self.clone() }
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self { entries: self.entries.map(|v| v * c), ..self.clone() }
    }

    /// Leading (n+1)×(n+1) block.
    pub fn truncated(&self, n: usize) -> Self {
        Self { entries: self.entries.view((0, 0), (n + 1, n + 1)).into_owned(), h: self.h, n_max: n }
    }

    /// max_{jk} |A_jk − B_jk| / max_{jk} |B_jk|
    pub fn rel_diff(&self, other: &Self) -> f64 {
        let num = (&self.entries - &other.entries).iter().map(|v| v.norm()).fold(0.0, f64::max);
        let den = other.entries.iter().map(|v| v.norm()).fold(0.0, f64::max);
        num / den.max(1e-300)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

fn eigen_condition(g: &DMatrix<C64>) -> f64 {
    let ev = g.clone().symmetric_eigenvalues();
    let max = ev.iter().cloned().fold(f64::MIN, f64::max);
    let min = ev.iter().cloned().fold(f64::MAX, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

impl Basis {
    /// Builds the basis orthonormal in `weight`, sampling on an m×m trapezoid
    /// grid whose box is sized to the slowest decaying basis element.
    pub fn new(transform: &BargmannTransform, n_max: usize, weight: &WeightFunction, m: usize) -> Result<Self> {
        let v0 = transform.v0()?;
        let lambda = weight.base.margin_against(v0.q[2]);
        if lambda <= 0.0 {
            return Err(Error::NotIntegrable("v₀ does not decay in the chosen weight".into()));
        }
        let r = QuadRule::radius_for(transform.h, n_max, lambda);
        let rule = QuadRule::new(C64::new(0.0, 0.0), r, m)?;
        Self::with_rule(transform, n_max, weight, rule)
    }

    pub fn with_rule(transform: &BargmannTransform, n_max: usize, weight: &WeightFunction, rule: QuadRule) -> Result<Self> {
        let h = transform.h;
        let v0 = transform.v0()?;
        let q_ref = v0.q;
        let scale = h.sqrt();
        let nodes = rule.nodes();
        let npts = nodes.len();
        let mut mono = DMatrix::<C64>::zeros(npts, n_max + 1);
        for (p, &x) in nodes.iter().enumerate() {
            let e = (((q_ref[2] * x + q_ref[1]) * x + q_ref[0]) - weight.phi(x)) / h;
            let base = e.exp();
            let t = x / scale;
            let mut pw = base;
            for m in 0..=n_max {
                mono[(p, m)] = pw;
                pw *= t;
            }
        }
        let w = rule.weight();
        // G_{mn} = (φ_m, φ_n) = Σ φ̃_m conj(φ̃_n) w
        let g = (mono.transpose() * mono.map(|v| v.conj())) * C64::new(w, 0.0);
        let dscale: Vec<f64> = (0..=n_max).map(|k| 1.0 / g[(k, k)].re.sqrt()).collect();
        if dscale.iter().any(|d| !d.is_finite()) {
            return Err(Error::Conditioning("monomial Gram matrix has a vanishing diagonal".into()));
        }
        let gs = DMatrix::from_fn(n_max + 1, n_max + 1, |i, j| g[(i, j)] * dscale[i] * dscale[j]);
        let cond = eigen_condition(&gs);
        if !(cond <= MAX_GRAM_CONDITION) {
            return Err(Error::Conditioning(format!("Gram condition number {cond:.3e} exceeds {MAX_GRAM_CONDITION:.0e}")));
        }
        // Gs = L L^H with L lower triangular; e = L^{-1} D φ is orthonormal.
        let chol = gs
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Conditioning("Gram matrix is not positive definite".into()))?;
        let l = chol.l();
        let linv = l
            .solve_lower_triangular(&DMatrix::identity(n_max + 1, n_max + 1))
            .ok_or_else(|| Error::Conditioning("singular Cholesky factor".into()))?;
        let coeffs = DMatrix::from_fn(n_max + 1, n_max + 1, |k, m| linv[(k, m)] * dscale[m]);
        // e_k ↔ Σ_m coeffs[k,m] φ_m, so damped values = mono · coeffs^T.
        let damped = &mono * coeffs.transpose();
        Ok(Self { h, n_max, weight: weight.clone(), q_ref, scale, coeffs, rule, damped, gram_condition: cond })
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// e_k as a closed-form holomorphic function.
    pub fn function(&self, k: usize) -> HoloFunction {
        let poly = Poly1(self.coeffs.row(k).iter().cloned().collect());
        HoloFunction { poly, center: C64::new(0.0, 0.0), scale: self.scale, q: self.q_ref, h: self.h }
    }

    /// Coefficients (g, e_j) of a function given by its damped samples
    /// e^{−Φ/h}·g on the basis quadrature nodes.
    pub fn project_damped(&self, samples: &DVector<C64>) -> DVector<C64> {
        self.damped.adjoint() * samples * C64::new(self.rule.weight(), 0.0)
    }

    /// Matrix with columns (g_k, e_j) for damped sample columns g_k.
    pub fn project_columns(&self, samples: &DMatrix<C64>) -> DMatrix<C64> {
        self.damped.adjoint() * samples * C64::new(self.rule.weight(), 0.0)
    }

    pub fn damped_samples(&self, u: &HoloFunction) -> DVector<C64> {
        let nodes = self.rule.nodes();
        DVector::from_iterator(nodes.len(), nodes.iter().map(|&x| u.damped(x, self.weight.phi(x))))
    }

    pub fn coefficients_of(&self, u: &HoloFunction) -> DVector<C64> {
        self.project_damped(&self.damped_samples(u))
    }

    /// Gram matrix of this basis in another weight Φ′ = Φ₀ + f′.
    pub fn gram_in(&self, other: &WeightFunction) -> Result<GramData> {
        let nodes = self.rule.nodes();
        let h = self.h;
        let mut e = self.damped.clone();
        for (p, &x) in nodes.iter().enumerate() {
            let factor = ((self.weight.phi(x) - other.phi(x)) / h).exp();
            for k in 0..self.dim() {
                e[(p, k)] *= factor;
            }
        }
        let g = e.adjoint() * &e * C64::new(self.rule.weight(), 0.0);
        let dscale: Vec<f64> = (0..self.dim()).map(|k| 1.0 / g[(k, k)].re.sqrt()).collect();
        let gs = DMatrix::from_fn(self.dim(), self.dim(), |i, j| g[(i, j)] * dscale[i] * dscale[j]);
        let condition = eigen_condition(&gs);
        Ok(GramData { matrix: g, weight: other.clone(), condition })
    }
}
