//! Operator norms on H_Φ from Galerkin matrices and Gram data.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bargmann_core::basis::MAX_GRAM_CONDITION;
use crate::bargmann_core::{GramData, OperatorMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormReport {
    pub norm: f64,
    /// (N′, norm restricted to inputs of degree ≤ N′), non-decreasing in N′.
    pub by_truncation: Vec<(usize, f64)>,
    pub gram_condition: f64,
}

/// sup ‖A c‖_G / ‖c‖_G over c supported on the first n+1 coefficients.
fn restricted_norm(a: &DMatrix<C64>, g: &DMatrix<C64>, n: usize) -> Result<f64> {
    let k = n + 1;
    let a_k = a.columns(0, k).into_owned();
    let g_k = g.view((0, 0), (k, k)).into_owned();
    let chol = g_k.cholesky().ok_or_else(|| Error::Conditioning("Gram block is not positive definite".into()))?;
    let l = chol.l();
    // λ_max of L^{-1} (A^H G A) L^{-H}
    let m = a_k.adjoint() * g * &a_k;
    let x = l
        .solve_lower_triangular(&m)
        .ok_or_else(|| Error::Conditioning("singular Gram factor".into()))?;
    let y = l
        .solve_lower_triangular(&x.adjoint())
        .ok_or_else(|| Error::Conditioning("singular Gram factor".into()))?;
    let herm = (&y + y.adjoint()) * C64::new(0.5, 0.0);
    let ev = herm.symmetric_eigenvalues();
    Ok(ev.iter().cloned().fold(0.0, f64::max).max(0.0).sqrt())
}

/// ‖A‖ on H_Φ for the coefficient map A of an operator in a basis whose
/// Gram matrix in Φ is `gram`.
pub fn operator_norm(a: &OperatorMatrix, gram: &GramData) -> Result<NormReport> {
    if gram.matrix.nrows() != a.dim() {
        return Err(Error::Incompatible("Gram data and operator use different truncations".into()));
    }
    if !(gram.condition <= MAX_GRAM_CONDITION) {
        return Err(Error::Conditioning(format!("Gram condition number {:.3e} exceeds {MAX_GRAM_CONDITION:.0e}", gram.condition)));
    }
    let n = a.n_max;
    let mut by_truncation = Vec::new();
    let mut checkpoints: Vec<usize> = vec![n / 4, n / 2, 3 * n / 4, n];
    checkpoints.dedup();
    for &k in &checkpoints {
        by_truncation.push((k, restricted_norm(&a.entries, &gram.matrix, k)?));
    }
    let norm = by_truncation.last().map(|p| p.1).unwrap_or(0.0);
    Ok(NormReport { norm, by_truncation, gram_condition: gram.condition })
}
