//! The twisted product a # b by two routes.
//!
//! The direct route integrates e^{2iσ(Y,Z)/h}-type kernels over Λ × Λ; the
//! Fourier route multiplies symplectic Fourier transforms. For Gaussians the
//! two agree to rounding when the grid resolves the phase. The example also
//! shows the sampling warning for an undersized grid and the exact rule for
//! composition with a plane wave.

use bargmann_weyl::bargmann_core::Grid2;
use bargmann_weyl::phase_space::{LinearFormOnLambda, QuadraticWeight};
use bargmann_weyl::weyl_calculus::{compose_direct, compose_fourier, compose_plane_wave, direct_sampling_check, ComposeOptions, GaussianPoly, Side, Symbol};
use bargmann_weyl::C64;

fn main() -> bargmann_weyl::Result<()> {
    let (h, w) = (0.1, QuadraticWeight::bargmann());
    let a = Symbol::gaussian(GaussianPoly::isotropic(C64::new(0.1, 0.0), 0.4, C64::new(1.0, 0.0))?, h, w);
    let b = Symbol::gaussian(GaussianPoly::isotropic(C64::new(0.0, -0.1), 0.35, C64::new(0.5, 0.5))?, h, w);
    for points in [64, 128] {
        let opts = ComposeOptions { points };
        if let Some(msg) = direct_sampling_check(&a, &b, points) {
            println!("M = {points}: {msg}");
        }
        for x in [C64::new(0.0, 0.0), C64::new(0.2, 0.1)] {
            let d = compose_direct(&a, &b, x, &opts)?;
            let f = compose_fourier(&a, &b, &Grid2::point(x), &opts)?.eval(x);
            println!("M = {points:>3}, x = {x:.2}: direct {d:.10}, fourier {f:.10}, |Δ| = {:.2e}", (d - f).norm());
        }
    }

    let form = LinearFormOnLambda::from_xstar(C64::new(0.2, -0.1), &w);
    let left = compose_plane_wave(&form, &a, Side::Left)?;
    let pw = Symbol::plane_wave(form, h, w);
    let x = C64::new(0.05, 0.1);
    let numeric = compose_fourier(&pw, &a, &Grid2::point(x), &ComposeOptions::default())?.eval(x);
    println!("\ne^(iℓ/h) # a at {x:.2}: closed form {:.10}, fourier {numeric:.10}", left.eval(x));
    Ok(())
}
