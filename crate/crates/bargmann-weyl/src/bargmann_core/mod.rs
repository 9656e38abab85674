//! Weighted spaces of holomorphic functions H_Φ, generating phases, the
//! metaplectic transform into H_Φ₀ and orthonormal bases.

pub mod basis;
pub mod holo;
pub mod phase;
pub mod quadrature;
pub mod weight;

pub use basis::{Basis, GramData, OperatorMatrix};
pub use holo::{inner_product, norm, HoloFunction};
pub use phase::{BargmannPhase, BargmannTransform, RealGaussian};
pub use quadrature::{Grid2, QuadRule, TanhSinh};
pub use weight::{Perturbation, WeightFunction};
