//! The Schur-test kernel integral for Gevrey-s symbols on a perturbed weight.
//!
//! For s ≥ 2 the integral stays bounded as h → 0; below s = 2 the growing
//! factor exp(h^{−1/s}·2/C) wins over the decay of the windowed transform
//! and the integral diverges.

use bargmann_weyl::weyl_calculus::schur_sweep;

fn main() -> bargmann_weyl::Result<()> {
    let hs = [0.2, 0.1, 0.05, 0.025];
    let c = 1.4;
    println!("{:>5} {:>14} {:>10} {:>8} {:>10}", "s", "max/min", "stable", "diverges", "I at h_min");
    for s in [1.25, 1.5, 2.0, 3.0, 4.0] {
        let sw = schur_sweep(s, c, &hs)?;
        let last = sw.records.last().expect("non-empty h-grid");
        println!("{s:>5} {:>14.4e} {:>10} {:>8} {:>10.3e}", sw.ratio, sw.stable, sw.divergent, last.total);
    }
    Ok(())
}
