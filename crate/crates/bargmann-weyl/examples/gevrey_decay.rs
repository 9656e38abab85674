//! Windowed transforms of Gevrey bumps decay like exp(−|Y/h|^{1/s}/C).
//!
//! For each symbol the example samples sup_T |F_h(χ_T a)| along rays,
//! fits A·r^{−p}·exp(−r^ρ/C) in the band where the envelope lies between 1e-12 and
//! 1e-2 of its peak, and prints ρ next to 1/s. A Gaussian symbol decays
//! faster than any such law and is flagged.

use bargmann_weyl::gevrey::{fit_symbol, gevrey_bump, ProfileOptions, Window};
use bargmann_weyl::phase_space::QuadraticWeight;
use bargmann_weyl::weyl_calculus::{GaussianPoly, Symbol};
use bargmann_weyl::C64;

fn main() -> bargmann_weyl::Result<()> {
    let h = 0.05;
    let w = QuadraticWeight::bargmann();
    let opts = ProfileOptions::default();
    println!("{:<10} {:>8} {:>8} {:>10} {:>6} {:>10}  {:<18} flag", "symbol", "1/s", "rho", "C", "p", "residual", "radius range");
    for s in [2.0, 3.0] {
        let a = Symbol::bump(gevrey_bump(s, 1.0)?, h, w);
        for window in [Window::Gaussian, Window::Bump { s: 1.5, radius: 2.0 }] {
            let (_, fit) = fit_symbol(&a, window, &opts)?;
            println!(
                "{:<10} {:>8.3} {:>8.3} {:>10.3} {:>6.2} {:>10.3}  [{:.1}, {:.1}]  {} ({})",
                format!("bump s={s}"),
                1.0 / s,
                fit.rho,
                fit.c,
                fit.power,
                fit.residual,
                fit.radius_range.0,
                fit.radius_range.1,
                fit.flag_label(),
                window.name()
            );
        }
    }
    let g = Symbol::gaussian(GaussianPoly::isotropic(C64::new(0.0, 0.0), 0.5, C64::new(1.0, 0.0))?, h, w);
    let (_, fit) = fit_symbol(&g, Window::Gaussian, &opts)?;
    println!(
        "{:<10} {:>8} {:>8.3} {:>10.3} {:>6.2} {:>10.3}  [{:.1}, {:.1}]  {}",
        "gaussian", "-", fit.rho, fit.c, fit.power, fit.residual, fit.radius_range.0, fit.radius_range.1, fit.flag_label()
    );
    Ok(())
}
