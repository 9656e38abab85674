//! Weyl quantization on weighted spaces of holomorphic functions.
//!
//! The crate works on ℂ (complex dimension one) with a strictly
//! plurisubharmonic quadratic weight Φ₀ and bounded Lipschitz perturbations
//! Φ = Φ₀ + f. It provides
//!
//! * [`phase_space`]: the real symplectic plane Λ_Φ₀ ⊂ ℂ² and linear forms on it;
//! * [`bargmann_core`]: holomorphic test functions, quadrature, the
//!   metaplectic transform from L²(ℝ) and orthonormal bases of H_Φ;
//! * [`magnetic`]: exponentials of linear forms acting as magnetic translations;
//! * [`weyl_calculus`]: symbols on Λ, the symplectic Fourier transform, the
//!   twisted product, three independent quantization routes, rank-one
//!   decompositions and weighted operator norms;
//! * [`gevrey`]: Gevrey bumps, lattice partitions of unity and decay fits
//!   of windowed transforms;
//! * [`lab`]: configuration, experiment runners and reports used by the
//!   `bwlab` binary.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```text
//! cargo run --release --example magnetic_translations
//! cargo run --release --example metaplectic_transform
//! cargo run --release --example twisted_product
//! cargo run --release --example quantization_routes
//! cargo run --release --example oscillator_spectrum
//! cargo run --release --example rank_one_decomposition
//! cargo run --release --example gevrey_decay
//! cargo run --release --example weighted_norm_sweep
//! cargo run --release --example schur_threshold
//! ```

pub mod bargmann_core;
pub mod error;
pub mod gevrey;
pub mod lab;
pub mod magnetic;
pub mod phase_space;
pub mod poly;
pub mod weyl_calculus;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
