//! Three independent routes to the matrix of Op(a) in an orthonormal basis.
//!
//! Superposition of magnetic translations weighted by F_h a, the direct
//! contour integral and the rank-one decomposition over a lattice of
//! translated ground states must produce the same matrix.

use bargmann_weyl::bargmann_core::{BargmannPhase, BargmannTransform, Basis, WeightFunction};
use bargmann_weyl::weyl_calculus::{
    quantize_direct, quantize_superposition, rank_one_decomposition, GaussianPoly, QuantizeOptions, RankOneOptions, Symbol,
};
use bargmann_weyl::C64;

fn main() -> bargmann_weyl::Result<()> {
    let n = 12;
    println!("{:>5} {:>18} {:>18} {:>18} {:>8}", "h", "direct/superpos", "rank-one/superpos", "rank-one/direct", "terms");
    for h in [0.2, 0.1] {
        let t = BargmannTransform::new(BargmannPhase::bargmann(), h)?;
        let basis = Basis::new(&t, n, &WeightFunction::quadratic(t.weight), 96)?;
        let a = Symbol::gaussian(GaussianPoly::isotropic(C64::new(0.1, -0.1), 0.6, C64::new(1.0, 0.0))?, h, t.weight);
        let s = quantize_superposition(&a, &basis, &QuantizeOptions::default())?;
        let d = quantize_direct(&a, &basis, &QuantizeOptions { points: 128, drop_below: 1e-15 })?;
        let r = rank_one_decomposition(&a, &t, &basis, &RankOneOptions::default())?;
        println!(
            "{h:>5} {:>18.2e} {:>18.2e} {:>18.2e} {:>8}",
            d.rel_diff(&s),
            r.matrix.rel_diff(&s),
            r.matrix.rel_diff(&d),
            r.terms
        );
    }
    Ok(())
}
