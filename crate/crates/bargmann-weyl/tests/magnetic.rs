use bargmann_weyl::bargmann_core::*;
use bargmann_weyl::magnetic::*;
use bargmann_weyl::phase_space::{lift, sigma, LinearFormOnLambda, QuadraticWeight};
use bargmann_weyl::weyl_calculus::operator_norm;
use bargmann_weyl::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rc(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    c(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn random_state(rng: &mut ChaCha8Rng, t: &BargmannTransform) -> HoloFunction {
    let coeffs: Vec<C64> = (0..5).map(|_| rc(rng, 1.0)).collect();
    t.transform(&RealGaussian::hermite_combination(&coeffs, t.h)).unwrap()
}

/// Norm with a trapezoid box around `centre` large enough for degree 4.
fn norm_near(u: &HoloFunction, w: &WeightFunction, centre: C64) -> f64 {
    let lambda = w.base.margin_against(u.q[2]);
    let r = QuadRule::radius_for(u.h, 4, lambda) + 0.5;
    let rule = QuadRule::new(centre, r, 160).unwrap();
    norm(u, w, &rule).unwrap()
}

fn translation(rng: &mut ChaCha8Rng, w: &QuadraticWeight, h: f64) -> MagneticTranslation {
    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    MagneticTranslation::new(LinearFormOnLambda::from_xstar(rc(rng, 1.5), w), h, sign).unwrap()
}

#[test]
fn zero_form_is_the_identity() {
    let t = BargmannTransform::new(BargmannPhase::fbi(), 0.1).unwrap();
    let u = t.transform(&RealGaussian::hermite(2, 0.1)).unwrap();
    let m = MagneticTranslation::new(LinearFormOnLambda::from_xstar(c(0.0, 0.0), &t.weight), 0.1, Sign::Minus).unwrap();
    let v = m.apply(&u).unwrap();
    for x in [c(0.1, 0.2), c(-1.0, 0.5)] {
        assert!((v.eval(x) - u.eval(x)).norm() < 1e-14 * (1.0 + u.eval(x).norm()));
    }
}

#[test]
fn modulus_transport_and_midpoint_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for phase in [BargmannPhase::fbi(), BargmannPhase::bargmann()] {
        let h = 0.1;
        let tr = BargmannTransform::new(phase, h).unwrap();
        let w = tr.weight;
        for _ in 0..10 {
            let u = random_state(&mut rng, &tr);
            let form = LinearFormOnLambda::from_xstar(rc(&mut rng, 1.0), &w);
            let t = MagneticTranslation::new(form, h, Sign::Minus).unwrap();
            let v = t.apply(&u).unwrap();
            let s = form.xstar;
            for _ in 0..100 {
                let x = rc(&mut rng, 2.0);
                let lhs = v.damped(x, w.phi(x)).norm();
                let rhs = u.damped(x - s, w.phi(x - s)).norm();
                assert!((lhs - rhs).abs() < 1e-10 * (1.0 + rhs), "{lhs} vs {rhs}");
                let mid = v.eval(x + 0.5 * s);
                let expect = (c(0.0, -1.0) * form.ell_x * x / h).exp() * u.eval(x - 0.5 * s);
                assert!((mid - expect).norm() < 1e-10 * (1.0 + expect.norm()));
            }
        }
    }
}

#[test]
fn prefactor_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for w in [QuadraticWeight::fbi(), QuadraticWeight::bargmann(), QuadraticWeight::new(c(0.1, -0.2), 0.7).unwrap()] {
        let form = LinearFormOnLambda::from_xstar(rc(&mut rng, 2.0), &w);
        for _ in 0..1000 {
            let x = rc(&mut rng, 3.0);
            let s = form.xstar;
            let r = w.phi(x + 0.5 * s) - w.phi(x - 0.5 * s) + (c(0.0, 1.0) * form.ell_x * x).re;
            assert!(r.abs() < 1e-12 * (1.0 + x.norm_sqr()));
        }
    }
}

#[test]
fn modulus_form_has_a_unimodular_constant() {
    // e^{iℓ/h}u(x) = C e^{−2i Im(q x*·x)/h} e^{iσ(X,X*)/2h} e^{(Φ₀(x) − Φ₀(x+x*))/h} u(x + x*), |C| = 1.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = 0.1;
    for phase in [BargmannPhase::fbi(), BargmannPhase::bargmann()] {
        let tr = BargmannTransform::new(phase, h).unwrap();
        let w = tr.weight;
        let u = random_state(&mut rng, &tr);
        let form = LinearFormOnLambda::from_xstar(rc(&mut rng, 1.0), &w);
        let t = MagneticTranslation::new(form, h, Sign::Plus).unwrap();
        let v = t.apply(&u).unwrap();
        let s = form.xstar;
        let hs = form.hamilton_vector();
        let mut constant = None;
        for _ in 0..200 {
            let x = rc(&mut rng, 1.5);
            let rhs = (c(0.0, -2.0) * (w.q * s * x).im / h).exp()
                * (c(0.0, 1.0) * sigma(&lift(x, &w), &hs) / (2.0 * h)).exp()
                * ((w.phi(x) - w.phi(x + s)) / h).exp()
                * u.eval(x + s);
            let ratio = v.eval(x) / rhs;
            assert!((ratio.norm() - 1.0).abs() < 1e-10);
            match constant {
                None => constant = Some(ratio),
                Some(k) => assert!((ratio - k).norm() < 1e-9, "constant drifts: {ratio} vs {k}"),
            }
        }
    }
}

#[test]
fn inverse_composes_to_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let h = 0.1;
    let tr = BargmannTransform::new(BargmannPhase::bargmann(), h).unwrap();
    let u = random_state(&mut rng, &tr);
    for _ in 0..10 {
        let t = translation(&mut rng, &tr.weight, h);
        let back = t.inverse().apply(&t.apply(&u).unwrap()).unwrap();
        for _ in 0..20 {
            let x = rc(&mut rng, 1.5);
            assert!((back.eval(x) - u.eval(x)).norm() < 1e-12 * (1.0 + u.eval(x).norm()));
        }
    }
}

#[test]
fn cocycle_matches_double_application() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = 0.1;
    let tr = BargmannTransform::new(BargmannPhase::fbi(), h).unwrap();
    let w = tr.weight;
    let u = random_state(&mut rng, &tr);
    for _ in 0..20 {
        let (y, z) = (rc(&mut rng, 1.0), rc(&mut rng, 1.0));
        let ty = MagneticTranslation::exp_sigma(y, 2.0, &w, h).unwrap();
        let tz = MagneticTranslation::exp_sigma(z, 2.0, &w, h).unwrap();
        let (tyz, phase) = compose_cocycle(&ty, &tz).unwrap();
        let expected = (c(0.0, 2.0) * sigma(&lift(y, &w), &lift(z, &w)) / h).exp();
        assert!((phase - expected).norm() < 1e-10);
        let twice = ty.apply(&tz.apply(&u).unwrap()).unwrap();
        let once = tyz.apply(&u).unwrap();
        for _ in 0..20 {
            let x = rc(&mut rng, 1.5);
            let a = twice.eval(x);
            let b = once.eval(x) * phase;
            assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()), "{a} vs {b}");
        }
    }
    // Z = −Y and collinear pairs carry no phase.
    let y = c(0.4, -0.3);
    let ty = MagneticTranslation::exp_sigma(y, 2.0, &w, h).unwrap();
    for z in [-y, y * 2.5] {
        let tz = MagneticTranslation::exp_sigma(z, 2.0, &w, h).unwrap();
        let (_, phase) = compose_cocycle(&ty, &tz).unwrap();
        assert!((phase - c(1.0, 0.0)).norm() < 1e-12);
    }
    let other = MagneticTranslation::exp_sigma(y, 2.0, &w, 0.2).unwrap();
    assert!(compose_cocycle(&ty, &other).is_err());
}

#[test]
fn unitarity_on_quadratic_and_perturbed_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for h in [0.2, 0.1, 0.05] {
        for phase in [BargmannPhase::fbi(), BargmannPhase::bargmann()] {
            let tr = BargmannTransform::new(phase, h).unwrap();
            let w0 = WeightFunction::quadratic(tr.weight);
            let w1 = WeightFunction::new(tr.weight, Perturbation::TanhGauss { amp: 0.3 * h, width: 2.0 }).unwrap();
            for _ in 0..8 {
                let u = random_state(&mut rng, &tr);
                let t = translation(&mut rng, &tr.weight, h);
                let v = t.apply(&u).unwrap();
                let s = t.shift();
                let (n0, m0) = (norm_near(&u, &w0, c(0.0, 0.0)), norm_near(&v, &w0, s));
                assert!((m0 / n0 - 1.0).abs() < 1e-8, "Φ₀: {m0} vs {n0}");
                let w2 = transport_weight(&w1, &t);
                let (n1, m1) = (norm_near(&u, &w1, c(0.0, 0.0)), norm_near(&v, &w2, s));
                assert!((m1 / n1 - 1.0).abs() < 1e-8, "Φ₁→Φ₂: {m1} vs {n1}");
            }
        }
    }
}

#[test]
fn transported_weight_examples_and_isometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = 0.1;
    let tr = BargmannTransform::new(BargmannPhase::bargmann(), h).unwrap();
    let w0 = WeightFunction::quadratic(tr.weight);
    let t = translation(&mut rng, &tr.weight, h);
    assert_eq!(transport_weight(&w0, &t).f, Perturbation::Zero);
    let w1 = WeightFunction::new(tr.weight, Perturbation::TanhGauss { amp: 0.2, width: 1.5 }).unwrap();
    let id = MagneticTranslation::new(LinearFormOnLambda::from_xstar(c(0.0, 0.0), &tr.weight), h, Sign::Minus).unwrap();
    let same = transport_weight(&w1, &id);
    for _ in 0..20 {
        let x = rc(&mut rng, 3.0);
        assert!((same.phi(x) - w1.phi(x)).abs() < 1e-15);
    }
    let w2 = transport_weight(&w1, &t);
    assert_eq!((w2.b0(), w2.b1()), (w1.b0(), w1.b1()));
    let u = random_state(&mut rng, &tr);
    let v = t.apply(&u).unwrap();
    let s = t.shift();
    for _ in 0..200 {
        let x = rc(&mut rng, 2.0);
        let lhs = v.damped(x, w2.phi(x)).norm();
        let rhs = u.damped(x - s, w1.phi(x - s)).norm();
        assert!((lhs - rhs).abs() < 1e-10 * (1.0 + rhs));
    }
}

#[test]
fn hamilton_jacobi_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let h = 0.1;
    let w = QuadraticWeight::bargmann();
    let phi1 = WeightFunction::new(w, Perturbation::Sine { amp: 0.3 }).unwrap();
    let form = LinearFormOnLambda::from_xstar(c(0.8, -0.6), &w);
    let t = MagneticTranslation::new(form, h, Sign::Minus).unwrap();
    let at1 = hj_solution(&phi1, &t, 1.0);
    let tw = transport_weight(&phi1, &t);
    let at0 = hj_solution(&phi1, &t, 0.0);
    let w0 = WeightFunction::quadratic(w);
    for _ in 0..100 {
        let x = rc(&mut rng, 3.0);
        assert!((at1.phi(x) - tw.phi(x)).abs() < 1e-14);
        assert!((at0.phi(x) - phi1.phi(x)).abs() < 1e-14);
        assert!((hj_solution(&w0, &t, 0.7).phi(x) - w.phi(x)).abs() < 1e-15);
        // ∂_tΨ − Im ℓ(x, (2/i)∂_xΨ) by central differences in t and x.
        let time = rng.gen_range(0.0..1.0);
        let e = 1e-5;
        let dt = (hj_solution(&phi1, &t, time + e).phi(x) - hj_solution(&phi1, &t, time - e).phi(x)) / (2.0 * e);
        let psi = hj_solution(&phi1, &t, time);
        let d1 = (psi.phi(x + c(e, 0.0)) - psi.phi(x - c(e, 0.0))) / (2.0 * e);
        let d2 = (psi.phi(x + c(0.0, e)) - psi.phi(x - c(0.0, e))) / (2.0 * e);
        let xi = c(0.5 * d1, -0.5 * d2) * c(0.0, -2.0);
        let l = form.ell_x * x + form.xstar * xi;
        let residual = (dt - l.im).abs();
        assert!(residual < 1e-6 * (1.0 + phi1.b1() * form.xstar.norm()), "{residual}");
    }
}

#[test]
fn quantization_multiplication_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let h = 0.1;
    let tr = BargmannTransform::new(BargmannPhase::bargmann(), h).unwrap();
    let w0 = WeightFunction::quadratic(tr.weight);
    let v0 = tr.v0().unwrap();
    let rule = QuadRule::new(c(0.0, 0.0), QuadRule::radius_for(h, 2, 0.5) + 0.5, 160).unwrap();
    let zero = LinearFormOnLambda::from_xstar(c(0.0, 0.0), &tr.weight);
    let (a, b) = quantization_multiplication(&zero, &v0, &w0, &rule).unwrap();
    assert!(a.norm() < 1e-15 && b.norm() < 1e-15);
    for _ in 0..10 {
        let form = LinearFormOnLambda::from_xstar(rc(&mut rng, 1.5), &tr.weight);
        let (a, b) = quantization_multiplication(&form, &v0, &w0, &rule).unwrap();
        assert!((a - b).norm() < 1e-8 * (1.0 + b.norm()), "{a} vs {b}");
        let psi = WeightFunction::new(tr.weight, Perturbation::TanhGauss { amp: 0.05, width: 1.0 }).unwrap();
        let u = random_state(&mut rng, &tr);
        let rule4 = QuadRule::new(c(0.0, 0.0), QuadRule::radius_for(h, 4, 0.5) + 0.5, 200).unwrap();
        let (a, b) = quantization_multiplication(&form, &u, &psi, &rule4).unwrap();
        assert!((a - b).norm() < 1e-8 * (1.0 + b.norm()), "{a} vs {b}");
    }
}

#[test]
fn norm_is_conserved_along_the_flow() {
    let h = 0.1;
    let tr = BargmannTransform::new(BargmannPhase::fbi(), h).unwrap();
    let phi1 = WeightFunction::new(tr.weight, Perturbation::TanhGauss { amp: 0.1, width: 1.0 }).unwrap();
    let u = tr.transform(&RealGaussian::hermite_combination(&[c(1.0, 0.0), c(0.3, -0.2)], h)).unwrap();
    let form = LinearFormOnLambda::from_xstar(c(0.6, 0.4), &tr.weight);
    let flow = |time: f64| {
        let t = MagneticTranslation::new(form.scaled(time), h, Sign::Minus).unwrap();
        let psi = hj_solution(&phi1, &MagneticTranslation::new(form, h, Sign::Minus).unwrap(), time);
        norm_near(&t.apply(&u).unwrap(), &psi, form.xstar * time).powi(2)
    };
    for time in [0.2, 0.5, 0.9] {
        let e = 1e-4;
        let d = (flow(time + e) - flow(time - e)) / (2.0 * e);
        assert!(d.abs() < 1e-6, "d/dt = {d}");
    }
}

#[test]
fn translation_bounds() {
    let h = 0.1;
    let w = QuadraticWeight::bargmann();
    let t = MagneticTranslation::new(LinearFormOnLambda::from_xstar(c(0.5, 0.5), &w), h, Sign::Minus).unwrap();
    let b = norm_bound_on_weighted(&t, &WeightFunction::quadratic(w));
    assert_eq!((b.sampled, b.envelope), (1.0, 1.0));
    let phi1 = WeightFunction::new(w, Perturbation::TanhGauss { amp: 0.1, width: 2.0 }).unwrap();
    let id = MagneticTranslation::new(LinearFormOnLambda::from_xstar(c(0.0, 0.0), &w), h, Sign::Minus).unwrap();
    assert_eq!(norm_bound_on_weighted(&id, &phi1).envelope, 1.0);
}

#[test]
fn matrix_norm_stays_below_the_bound() {
    let g = Perturbation::TanhGauss { amp: 1.0, width: 5.0 };
    for h in [0.2, 0.1, 0.05] {
        let tr = BargmannTransform::new(BargmannPhase::bargmann(), h).unwrap();
        let phi1 = WeightFunction::new(tr.weight, g.scaled(h.sqrt() / 2.0)).unwrap();
        let basis = Basis::new(&tr, 16, &phi1, 128).unwrap();
        let t = MagneticTranslation::exp_sigma(c(0.3, -0.2), 2.0, &tr.weight, h).unwrap();
        let m = t.matrix_in(&basis).unwrap();
        let gram = basis.gram_in(&phi1).unwrap();
        let n = operator_norm(&m, &gram).unwrap().norm;
        let bound = norm_bound_on_weighted(&t, &phi1);
        assert!(n <= bound.sampled * (1.0 + 1e-9), "h = {h}: {n} > {}", bound.sampled);
        assert!(bound.sampled <= bound.envelope * (1.0 + 1e-12));
    }
}
