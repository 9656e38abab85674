//! The projection onto the ground state v₀ and the window mass M(h).
//!
//! |v₀⟩⟨v₀| is the quantization of a Gaussian window of width √h, so its
//! matrix agrees with the superposition route applied to that window. The
//! window mass M(h) that controls the rank-one decomposition scales like h.

use bargmann_weyl::bargmann_core::{BargmannPhase, BargmannTransform, Basis, WeightFunction};
use bargmann_weyl::weyl_calculus::{projection_window, quantize_superposition, rank_one_projection, window_mass, QuantizeOptions};
use bargmann_weyl::C64;

fn main() -> bargmann_weyl::Result<()> {
    let (h, n) = (0.1, 16);
    let t = BargmannTransform::new(BargmannPhase::bargmann(), h)?;
    let basis = Basis::new(&t, n, &WeightFunction::quadratic(t.weight), 96)?;
    let p = rank_one_projection(&t.v0()?, &basis)?;
    let trace: C64 = (0..p.dim()).map(|k| p.entries[(k, k)]).sum();
    println!("‖P² − P‖ rel = {:.2e}, ‖P* − P‖ rel = {:.2e}, tr P = {trace:.12}", p.compose(&p).rel_diff(&p), p.adjoint().rel_diff(&p));
    let q = quantize_superposition(&projection_window(&t, h)?, &basis, &QuantizeOptions::default())?;
    let diff = (&q.entries - &p.entries).iter().map(|v| v.norm()).fold(0.0, f64::max);
    println!("largest entry of Op(window) − P: {diff:.2e}");

    println!("\n{:>6} {:>12} {:>10}", "h", "M(h)", "M(h)/h");
    for hh in [0.4, 0.2, 0.1, 0.05, 0.025] {
        let m = window_mass(&BargmannTransform::new(BargmannPhase::bargmann(), hh)?)?;
        println!("{hh:>6} {m:>12.6} {:>10.4}", m / hh);
    }
    Ok(())
}
