//! The metaplectic transform T: L²(ℝ) → H_Φ₀ is unitary.
//!
//! Hermite functions are sent to closed-form holomorphic functions; the
//! example compares L² norms with weighted norms and checks that the
//! images of distinct Hermite functions are orthogonal.

use bargmann_weyl::bargmann_core::{inner_product, norm, BargmannPhase, BargmannTransform, QuadRule, RealGaussian, WeightFunction};
use bargmann_weyl::C64;

fn main() -> bargmann_weyl::Result<()> {
    let h = 0.2;
    for (name, phase) in [("fbi", BargmannPhase::fbi()), ("bargmann", BargmannPhase::bargmann())] {
        let tr = BargmannTransform::new(phase, h)?;
        let w = WeightFunction::quadratic(tr.weight);
        let rule = QuadRule::new(C64::new(0.0, 0.0), QuadRule::radius_for(h, 6, w.base.margin_against(tr.v0()?.q[2])) + 1.0, 160)?;
        println!("{name}: Φ₀(x) = Re({:.3}·x²) + {:.3}|x|²", tr.weight.q, tr.weight.l);
        let images: Vec<_> = (0..5).map(|k| tr.transform(&RealGaussian::hermite(k, h))).collect::<Result<_, _>>()?;
        for (k, v) in images.iter().enumerate() {
            let l2 = RealGaussian::hermite(k, h).l2_norm();
            println!("  k = {k}: ‖h_k‖_L² = {l2:.12}, ‖T h_k‖_Φ₀ = {:.12}", norm(v, &w, &rule)?);
        }
        let mut off: f64 = 0.0;
        for j in 0..images.len() {
            for k in 0..j {
                off = off.max(inner_product(&images[j], &images[k], &w, &rule)?.norm());
            }
        }
        println!("  largest |(T h_j, T h_k)| for j ≠ k: {off:.2e}");
    }
    Ok(())
}
