//! The harmonic oscillator symbol quantizes to an operator with eigenvalues
//! h(2k + 1).
//!
//! The symbol is regularized by a wide Gaussian factor (eps controls its
//! width) so that it has a Fourier transform; the cutoff lowers the
//! eigenvalues by a relative amount that grows slowly with k.

use bargmann_weyl::bargmann_core::{BargmannPhase, BargmannTransform, Basis, WeightFunction};
use bargmann_weyl::weyl_calculus::{quantize_superposition, QuantizeOptions, Symbol};
use bargmann_weyl::C64;

fn main() -> bargmann_weyl::Result<()> {
    let (h, n) = (0.1, 40);
    let phase = BargmannPhase::bargmann();
    let t = BargmannTransform::new(phase, h)?;
    let basis = Basis::new(&t, n, &WeightFunction::quadratic(t.weight), 96)?;
    let a = Symbol::oscillator(&phase, 1e-3, h)?;
    let m = quantize_superposition(&a, &basis, &QuantizeOptions { points: 128, drop_below: 1e-15 })?;
    let block = m.truncated(20).entries;
    let herm = (&block + block.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().cloned().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    println!("{:>3} {:>14} {:>14} {:>12}", "k", "computed", "h(2k+1)", "rel. error");
    for (k, e) in ev.iter().take(6).enumerate() {
        let exact = h * (2 * k + 1) as f64;
        println!("{k:>3} {e:>14.8} {exact:>14.8} {:>12.2e}", (e - exact).abs() / exact);
    }
    Ok(())
}
