//! Operator norms of a quantized Gevrey bump on perturbed weights.
//!
//! With Φ₁ = Φ₀ + (h^{1−1/s}/C)·g the norm of Op(a) on H_Φ₁ stays bounded
//! as h shrinks when C is large. For C = 1 the a-priori factor
//! exp(2h^{−1/s}/C) grows quickly and the computed norms lose uniformity.
//! A lower basis degree than the lab default keeps the run short.

use bargmann_weyl::bargmann_core::Perturbation;
use bargmann_weyl::lab::sweep::{norms_at, SweepSetup, SweepSummary};
use bargmann_weyl::lab::{Route, SymbolSpec};
use bargmann_weyl::phase_space::WeightPreset;

fn main() -> bargmann_weyl::Result<()> {
    let setup = SweepSetup {
        preset: WeightPreset::Bargmann,
        symbol: SymbolSpec::Bump { s: 2.0, radius: 1.0, center: [0.0, 0.0], amplitude: 1.0 },
        n: 24,
        m: 96,
        r: None,
        route: Route::Superposition,
        points: 64,
        direct_points: 128,
        rank_one_spacing: 0.18,
        s: 2.0,
        perturbation: Perturbation::TanhGauss { amp: 1.0, width: 5.0 },
    };
    let cs = [50.0, 1.0, f64::INFINITY];
    let rows = [0.2, 0.1, 0.05].iter().map(|&h| norms_at(&setup, h, &cs)).collect::<Result<Vec<_>, _>>()?;
    println!("{:>6} {:>8} {:>12} {:>12} {:>12}", "h", "C", "norm", "bound", "Gram cond");
    for row in &rows {
        for p in row {
            println!("{:>6} {:>8} {:>12.6} {:>12.4e} {:>12.2e}", p.h, p.c, p.report.norm, p.bound, p.report.gram_condition);
        }
    }
    for k in 0..cs.len() {
        let col: Vec<_> = rows.iter().map(|r| &r[k]).collect();
        let s = SweepSummary::new(&col);
        println!("C = {:>4}: norm max/min {:.4}, bound max/min {:.4e}, {}", cs[k], s.norm_ratio, s.bound_ratio, s.flag);
    }
    Ok(())
}
