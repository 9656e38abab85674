//! Symbols on Λ_Φ₀ and their Weyl quantizations on H_Φ₀.

pub mod compose;
pub mod fourier;
pub mod gaussian;
pub mod norm;
pub mod quantize;
pub mod rank_one;
pub mod schur;
pub mod symbol;

pub use compose::{compose_direct, direct_sampling_check, compose_fourier, compose_fourier_on, compose_plane_wave, twisted_convolution, ComposeOptions, Side};
pub use fourier::{dual_grid, fourier_at, fourier_sampled, fourier_symplectic, FourierOptions};
pub use gaussian::GaussianPoly;
pub use norm::{operator_norm, NormReport};
pub use quantize::{quantize_direct, quantize_direct_at, quantize_superposition, QuantizeOptions};
pub use rank_one::{projection_window, rank_one_constant, rank_one_decomposition, window_mass, RankOneOptions, RankOneResult};
pub use schur::{schur_kernel_report, schur_sweep, SchurReport, SchurSweep};
pub use symbol::{GridSampled, Symbol, SymbolKind};

use crate::bargmann_core::{Basis, OperatorMatrix};
use crate::error::Result;

/// |v₀⟩⟨v₀| in the basis: P_{jk} = (e_k, v₀)(v₀, e_j).
pub fn rank_one_projection(v0: &crate::bargmann_core::HoloFunction, basis: &Basis) -> Result<OperatorMatrix> {
    let c = basis.coefficients_of(v0);
    Ok(OperatorMatrix { entries: &c * c.adjoint(), h: basis.h, n_max: basis.n_max })
}
