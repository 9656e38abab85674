//! Exponentials of linear forms act on H_Φ as magnetic translations.
//!
//! Each translation is an isometry of H_Φ₀, maps H_Φ₁ isometrically onto
//! H_Φ₂ for the transported weight Φ₂(x) = Φ₁(x − x*), and composes up to
//! the phase e^{2iσ(Y,Z)/h}.

use bargmann_weyl::bargmann_core::{norm, BargmannPhase, BargmannTransform, HoloFunction, Perturbation, QuadRule, RealGaussian, WeightFunction};
use bargmann_weyl::magnetic::{compose_cocycle, norm_bound_on_weighted, transport_weight, MagneticTranslation, Sign};
use bargmann_weyl::phase_space::{lift, sigma, LinearFormOnLambda};
use bargmann_weyl::C64;

fn weighted_norm(u: &HoloFunction, w: &WeightFunction, centre: C64) -> bargmann_weyl::Result<f64> {
    let r = QuadRule::radius_for(u.h, 4, w.base.margin_against(u.q[2])) + 0.5;
    norm(u, w, &QuadRule::new(centre, r, 160)?)
}

fn main() -> bargmann_weyl::Result<()> {
    let h = 0.1;
    let tr = BargmannTransform::new(BargmannPhase::bargmann(), h)?;
    let coeffs = [C64::new(1.0, 0.0), C64::new(0.0, 0.5), C64::new(-0.3, 0.2)];
    let u = tr.transform(&RealGaussian::hermite_combination(&coeffs, h))?;
    let w0 = WeightFunction::quadratic(tr.weight);
    let w1 = WeightFunction::gevrey_scaled(tr.weight, &Perturbation::TanhGauss { amp: 1.0, width: 5.0 }, h, 2.0, 1.0)?;

    println!("{:>16} {:>14} {:>14} {:>14}", "x*", "|‖Tu‖/‖u‖−1| Φ₀", "Φ₁ → Φ₂", "bound on Φ₁");
    for xstar in [C64::new(0.5, 0.0), C64::new(-0.3, 0.8), C64::new(1.2, -0.7)] {
        let t = MagneticTranslation::new(LinearFormOnLambda::from_xstar(xstar, &tr.weight), h, Sign::Plus)?;
        let v = t.apply(&u)?;
        let s = t.shift();
        let e0 = weighted_norm(&v, &w0, s)? / weighted_norm(&u, &w0, C64::new(0.0, 0.0))? - 1.0;
        let w2 = transport_weight(&w1, &t);
        let e1 = weighted_norm(&v, &w2, s)? / weighted_norm(&u, &w1, C64::new(0.0, 0.0))? - 1.0;
        let bound = norm_bound_on_weighted(&t, &w1);
        println!("{:>16} {:>14.2e} {:>14.2e} {:>14.4}", format!("{:.1}{:+.1}i", xstar.re, xstar.im), e0.abs(), e1.abs(), bound.sampled);
    }

    let (y, z) = (C64::new(0.4, -0.2), C64::new(-0.1, 0.6));
    let ty = MagneticTranslation::exp_sigma(y, 2.0, &tr.weight, h)?;
    let tz = MagneticTranslation::exp_sigma(z, 2.0, &tr.weight, h)?;
    let (_, phase) = compose_cocycle(&ty, &tz)?;
    let expected = (C64::new(0.0, 2.0) * sigma(&lift(y, &tr.weight), &lift(z, &tr.weight)) / h).exp();
    println!("\ncocycle phase {phase:.6}, expected {expected:.6}, |difference| = {:.2e}", (phase - expected).norm());
    Ok(())
}
