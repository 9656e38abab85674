use bargmann_weyl::bargmann_core::*;
use bargmann_weyl::magnetic::{MagneticTranslation, Sign};
use bargmann_weyl::phase_space::{sigma_base, LinearFormOnLambda, QuadraticWeight};
use bargmann_weyl::weyl_calculus::*;
use bargmann_weyl::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rc(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    c(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn iso(center: C64, width: f64, amp: C64, h: f64, w: QuadraticWeight) -> Symbol {
    Symbol::gaussian(GaussianPoly::isotropic(center, width, amp).unwrap(), h, w)
}

/// Brute-force F_h a(X) on a fine box, independent of the closed form.
fn fourier_oracle(a: &Symbol, x: C64, centre: C64, half: f64, m: usize) -> C64 {
    let (l, h) = (a.weight.l, a.h);
    let d = 2.0 * half / (m - 1) as f64;
    let mut acc = c(0.0, 0.0);
    for i in 0..m {
        for j in 0..m {
            let y = centre + c(-half + i as f64 * d, -half + j as f64 * d);
            let s = sigma_base(x, y, &a.weight);
            acc += C64::new(0.0, 2.0 * s / h).exp() * a.eval(y);
        }
    }
    acc * 4.0 * l * d * d / (std::f64::consts::PI * h)
}

#[test]
fn gaussian_fixed_point_of_the_transform() {
    for w in [QuadraticWeight::fbi(), QuadraticWeight::bargmann()] {
        for h in [0.2, 0.1] {
            // e^{-α|x|²} maps to (4l/(hα))·e^{-(4l/h)²|x|²/α}: fixed exactly when α = 4l/h.
            let alpha = 4.0 * w.l / h;
            let a = iso(c(0.0, 0.0), 1.0 / alpha.sqrt(), c(1.0, 0.0), h, w);
            let fa = fourier_symplectic(&a, &FourierOptions::default()).unwrap();
            for x in [c(0.0, 0.0), c(0.3, -0.1), c(-0.2, 0.4)] {
                assert!((fa.eval(x) - a.eval(x)).norm() < 1e-12);
                let o = fourier_oracle(&a, x, c(0.0, 0.0), 6.5 / alpha.sqrt(), 201);
                assert!((o - a.eval(x)).norm() < 1e-9, "{o} vs {}", a.eval(x));
            }
        }
    }
}

#[test]
fn closed_form_transform_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = QuadraticWeight::fbi();
    let h = 0.2;
    for _ in 0..4 {
        let g = GaussianPoly::isotropic(rc(&mut rng, 0.5), rng.gen_range(0.4..0.8), rc(&mut rng, 1.0)).unwrap();
        let a = Symbol::gaussian(g, h, w).mul(&iso(c(0.0, 0.0), 1.3, c(1.0, 0.0), h, w)).unwrap();
        let (ctr, r) = a.support().unwrap();
        let fa = fourier_symplectic(&a, &FourierOptions::default()).unwrap();
        for _ in 0..3 {
            let x = rc(&mut rng, 0.5);
            let o = fourier_oracle(&a, x, ctr, r, 301);
            assert!((fa.eval(x) - o).norm() < 1e-8, "{} vs {o}", fa.eval(x));
        }
    }
}

#[test]
fn transform_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for w in [QuadraticWeight::fbi(), QuadraticWeight::bargmann()] {
        let h = 0.1;
        for _ in 0..5 {
            let a = iso(rc(&mut rng, 1.0), rng.gen_range(0.3..1.0), rc(&mut rng, 1.0), h, w);
            let ffa = fourier_symplectic(&fourier_symplectic(&a, &FourierOptions::default()).unwrap(), &FourierOptions::default()).unwrap();
            for _ in 0..10 {
                let x = rc(&mut rng, 1.5);
                assert!((ffa.eval(x) - a.eval(x)).norm() < 1e-10);
            }
        }
        // Sampled route: a compactly supported bump sampled on a grid.
        let b = Symbol::bump(bargmann_weyl::gevrey::gevrey_bump(2.0, 1.0).unwrap(), 0.5, w);
        let opts = FourierOptions { points: 128 };
        let fb = fourier_symplectic(&b, &opts).unwrap();
        let ffb = fourier_symplectic(&fb, &opts).unwrap();
        let mut err: f64 = 0.0;
        for x in [c(0.0, 0.0), c(0.3, 0.2), c(-0.5, 0.1), c(0.7, -0.4)] {
            err = err.max((ffb.eval(x) - b.eval(x)).norm());
        }
        assert!(err < 1e-7, "sampled involution error {err:e}");
    }
}

#[test]
fn transform_is_linear_and_rejects_plane_waves() {
    let w = QuadraticWeight::bargmann();
    let h = 0.1;
    let a = iso(c(0.2, 0.0), 0.5, c(1.0, 0.5), h, w);
    let b = iso(c(-0.1, 0.3), 0.7, c(0.3, -1.0), h, w);
    let grid = Grid2::centered(c(0.0, 0.0), 4.0, 96).unwrap();
    let s = GridSampled::new(grid, grid.nodes().iter().map(|&x| a.eval(x) * c(2.0, 1.0) + b.eval(x)).collect()).unwrap();
    let sum = Symbol::grid(s, h, w);
    let opts = FourierOptions { points: 96 };
    let pts = [c(0.1, 0.1), c(-0.4, 0.2)];
    let lhs = fourier_at(&sum, &pts, &opts).unwrap();
    let fa = fourier_at(&a, &pts, &opts).unwrap();
    let fb = fourier_at(&b, &pts, &opts).unwrap();
    for k in 0..2 {
        assert!((lhs[k] - (fa[k] * c(2.0, 1.0) + fb[k])).norm() < 1e-8);
    }
    assert!(fourier_symplectic(&Symbol::one(h, w), &opts).is_err());
}

#[test]
fn narrow_gaussian_is_an_approximate_identity() {
    let w = QuadraticWeight::fbi();
    let h = 0.5;
    let u = iso(c(0.3, -0.2), 0.8, c(1.0, 0.2), h, w);
    let width = 0.02;
    // Unit mass for dY = 4l dy: amp = 1/(4l π width²).
    let v = iso(c(0.0, 0.0), width, c(1.0 / (4.0 * w.l * std::f64::consts::PI * width * width), 0.0), h, w);
    let out = Grid2::point(c(0.0, 0.0));
    let yg = Grid2::centered(c(0.0, 0.0), 8.0 * width, 81).unwrap();
    let r = twisted_convolution(&u, &v, &out, &yg).unwrap();
    let expect = u.eval(c(0.0, 0.0));
    assert!((r.values[0] - expect).norm() < 1e-2 * expect.norm());
}

#[test]
fn twisted_convolution_commutes_with_the_transform() {
    let w = QuadraticWeight::bargmann();
    let h = 0.5;
    let u = iso(c(0.1, 0.0), 0.5, c(1.0, 0.0), h, w);
    let v = iso(c(0.0, -0.1), 0.6, c(0.5, 0.5), h, w);
    let yg = Grid2::centered(c(0.0, -0.1), 4.0, 161).unwrap();
    // u *_σ v sampled on a fine box, then transformed by direct summation.
    let box_ = Grid2::centered(c(0.0, 0.0), 5.0, 121).unwrap();
    let conv = Symbol::grid(twisted_convolution(&u, &v, &box_, &yg).unwrap(), h, w);
    let pts = [c(0.0, 0.0), c(0.2, 0.1), c(-0.3, 0.25)];
    let lhs = fourier_at(&conv, &pts, &FourierOptions { points: 121 }).unwrap();
    let fu = fourier_symplectic(&u, &FourierOptions::default()).unwrap();
    for (k, &x) in pts.iter().enumerate() {
        let out = Grid2::point(x);
        let rhs = twisted_convolution(&fu, &v, &out, &yg).unwrap().values[0];
        assert!((lhs[k] - rhs).norm() < 1e-6, "{} vs {rhs}", lhs[k]);
    }
}

#[test]
fn twisted_convolution_is_not_commutative() {
    let w = QuadraticWeight::bargmann();
    let h = 0.5;
    let u = iso(c(0.5, 0.0), 0.5, c(1.0, 0.0), h, w);
    let v = iso(c(0.0, 0.5), 0.5, c(1.0, 0.0), h, w);
    let out = Grid2::point(c(0.1, 0.2));
    let yg = Grid2::centered(c(0.0, 0.0), 4.0, 121).unwrap();
    let uv = twisted_convolution(&u, &v, &out, &yg).unwrap().values[0];
    let vu = twisted_convolution(&v, &u, &out, &yg).unwrap().values[0];
    assert!((uv - vu).norm() > 1e-3 * uv.norm());
    let r1 = iso(c(0.0, 0.0), 0.5, c(1.0, 0.0), h, w);
    let r2 = iso(c(0.0, 0.0), 0.7, c(1.0, 0.0), h, w);
    let a = twisted_convolution(&r1, &r2, &out, &yg).unwrap().values[0];
    let b = twisted_convolution(&r2, &r1, &out, &yg).unwrap().values[0];
    assert!((a - b).norm() < 1e-10 * a.norm());
}

#[test]
fn composition_with_one_is_trivial() {
    let w = QuadraticWeight::fbi();
    let h = 0.2;
    let b = iso(c(0.2, -0.1), 0.5, c(1.0, 0.3), h, w);
    let out = Grid2::centered(c(0.0, 0.0), 0.6, 5).unwrap();
    let r = compose_fourier(&Symbol::one(h, w), &b, &out, &ComposeOptions::default()).unwrap();
    for x in out.nodes() {
        assert!((r.eval(x) - b.eval(x)).norm() < 1e-10);
    }
}

#[test]
fn broad_gaussian_left_factor_tends_to_identity() {
    let w = QuadraticWeight::bargmann();
    let h = 0.2;
    let b = iso(c(0.1, 0.0), 0.5, c(1.0, 0.0), h, w);
    let x = c(0.05, 0.1);
    let out = Grid2::point(x);
    let mut errs = Vec::new();
    for width in [5.0, 10.0, 20.0] {
        let a = iso(c(0.0, 0.0), width, c(1.0, 0.0), h, w);
        let r = compose_fourier(&a, &b, &out, &ComposeOptions::default()).unwrap();
        errs.push((r.eval(x) - b.eval(x)).norm());
    }
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    assert!(errs[2] < 1e-3, "{errs:?}");
}

#[test]
fn direct_and_fourier_compositions_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let w = QuadraticWeight::bargmann();
    let opts = ComposeOptions { points: 128 };
    let a = iso(c(0.0, 0.0), 1.0, c(1.0, 0.0), 0.5, w);
    let out = Grid2::point(c(0.0, 0.0));
    let d = compose_direct(&a, &a, c(0.0, 0.0), &opts).unwrap();
    let f = compose_fourier(&a, &a, &out, &opts).unwrap().eval(c(0.0, 0.0));
    assert!((d - f).norm() < 1e-5 * d.norm(), "{d} vs {f}");
    // At h = 0.1 the 128-node boxes stay alias-free for widths below about 0.45.
    let h = 0.1;
    for _ in 0..3 {
        let a = iso(rc(&mut rng, 0.3), rng.gen_range(0.3..0.45), rc(&mut rng, 1.0), h, w);
        let b = iso(rc(&mut rng, 0.3), rng.gen_range(0.3..0.45), rc(&mut rng, 1.0), h, w);
        let x = rc(&mut rng, 0.3);
        let out = Grid2::point(x);
        let d = compose_direct(&a, &b, x, &opts).unwrap();
        let f = compose_fourier(&a, &b, &out, &opts).unwrap().eval(x);
        assert!((d - f).norm() < 1e-5 * d.norm().max(1e-3), "{d} vs {f}");
    }
}

#[test]
fn composition_is_associative() {
    let w = QuadraticWeight::bargmann();
    let h = 0.5;
    let opts = ComposeOptions { points: 96 };
    let a = iso(c(0.1, 0.0), 0.6, c(1.0, 0.0), h, w);
    let b = iso(c(0.0, 0.1), 0.5, c(1.0, 0.2), h, w);
    let d = iso(c(-0.1, 0.0), 0.7, c(0.8, 0.0), h, w);
    let fine = Grid2::centered(c(0.0, 0.0), 4.5, 97).unwrap();
    let ab = compose_fourier(&a, &b, &fine, &opts).unwrap();
    let bd = compose_fourier(&b, &d, &fine, &opts).unwrap();
    for x in [c(0.0, 0.0), c(0.2, -0.1)] {
        let left = compose_direct(&ab, &d, x, &opts).unwrap();
        let right = compose_direct(&a, &bd, x, &opts).unwrap();
        assert!((left - right).norm() < 1e-4 * left.norm(), "{left} vs {right}");
    }
}

#[test]
fn plane_wave_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let h = 0.2;
    for w in [QuadraticWeight::fbi(), QuadraticWeight::bargmann()] {
        let form = LinearFormOnLambda::from_xstar(rc(&mut rng, 0.4), &w);
        let a = iso(rc(&mut rng, 0.2), 0.6, c(1.0, 0.0), h, w);
        let pw = Symbol::plane_wave(form, h, w);
        let pwc = pw.conj();
        let left = compose_plane_wave(&form, &a, Side::Left).unwrap();
        let right = compose_plane_wave(&form, &a, Side::Right).unwrap();
        let sandwich = compose_plane_wave(&form, &left, Side::Right).unwrap();
        let conj = compose_plane_wave(&form.scaled(-1.0), &left, Side::Right).unwrap();
        // Independent route: twisted convolution against the closed-form transform.
        let opts = ComposeOptions::default();
        let xs = [c(0.0, 0.0), c(0.15, -0.1), c(-0.2, 0.05)];
        for &x in &xs {
            let out = Grid2::point(x);
            let lf = compose_fourier(&pw, &a, &out, &opts).unwrap().eval(x);
            assert!((left.eval(x) - lf).norm() < 1e-6, "left {} vs {lf}", left.eval(x));
            // a # e^{iℓ/h} = conj(e^{-iℓ/h} # conj a)
            let rf = compose_fourier(&pwc, &a.conj(), &out, &opts).unwrap().eval(x).conj();
            assert!((right.eval(x) - rf).norm() < 1e-6, "right {} vs {rf}", right.eval(x));
            let ell = form.eval_on_lambda(x, &w);
            let expect = C64::new(0.0, 2.0 * ell / h).exp() * a.eval(x);
            assert!((sandwich.eval(x) - expect).norm() < 1e-6);
            let shifted = a.eval(x + form.xstar);
            assert!((conj.eval(x) - shifted).norm() < 1e-6);
        }
    }
}

fn setup(phase: BargmannPhase, h: f64, n: usize) -> (BargmannTransform, Basis) {
    let t = BargmannTransform::new(phase, h).unwrap();
    let basis = Basis::new(&t, n, &WeightFunction::quadratic(t.weight), 96).unwrap();
    (t, basis)
}

#[test]
fn broad_gaussian_quantizes_to_nearly_the_identity() {
    let h = 0.1;
    let (t, basis) = setup(BargmannPhase::bargmann(), h, 12);
    let mut errs = Vec::new();
    for width in [3.0, 6.0, 12.0] {
        let a = iso(c(0.0, 0.0), width, c(1.0, 0.0), h, t.weight);
        let m = quantize_superposition(&a, &basis, &QuantizeOptions::default()).unwrap();
        let id = OperatorMatrix::identity(12, h);
        let mut off: f64 = 0.0;
        for j in 0..13 {
            for k in 0..13 {
                if j != k {
                    off = off.max(m.entries[(j, k)].norm());
                }
            }
        }
        assert!(off < 1e-4, "off-diagonal {off:e}");
        errs.push((&m.entries - &id.entries).iter().map(|v| v.norm()).fold(0.0, f64::max));
    }
    assert!(errs[0] > errs[1] && errs[1] > errs[2] && errs[2] < 0.05, "{errs:?}");
}

#[test]
fn plane_wave_quantizes_to_its_translation() {
    let h = 0.1;
    let (t, basis) = setup(BargmannPhase::fbi(), h, 16);
    let form = LinearFormOnLambda::from_xstar(c(0.3, -0.2), &t.weight);
    let m = quantize_superposition(&Symbol::plane_wave(form, h, t.weight), &basis, &QuantizeOptions::default()).unwrap();
    let tr = MagneticTranslation::new(form, h, Sign::Plus).unwrap();
    let u = basis.function(2);
    let v = tr.apply(&u).unwrap();
    let coef = basis.coefficients_of(&v);
    for j in 0..6 {
        assert!((m.entries[(j, 2)] - coef[j]).norm() < 1e-10);
    }
    // Contour route, pointwise.
    let rule = QuadRule::new(c(0.0, 0.0), 3.0, 241).unwrap();
    for x in [c(0.0, 0.0), c(0.4, -0.3), c(-0.2, 0.5)] {
        let d = quantize_direct_at(&Symbol::plane_wave(form, h, t.weight), &u, x, &rule).unwrap();
        let e = v.eval(x);
        assert!((d - e).norm() < 1e-5 * e.norm().max(u.eval(x).norm()), "{d} vs {e}");
    }
}

#[test]
fn contour_route_reproduces_functions_for_the_unit_symbol() {
    let h = 0.1;
    for phase in [BargmannPhase::fbi(), BargmannPhase::bargmann()] {
        let t = BargmannTransform::new(phase, h).unwrap();
        let u = t.transform(&RealGaussian::hermite_combination(&[c(1.0, 0.0), c(0.0, 0.5), c(0.3, 0.0)], h)).unwrap();
        let rule = QuadRule::new(c(0.0, 0.0), 3.0, 241).unwrap();
        for x in [c(0.0, 0.0), c(0.3, 0.2), c(-0.5, -0.1)] {
            let d = quantize_direct_at(&Symbol::one(h, t.weight), &u, x, &rule).unwrap();
            assert!((d - u.eval(x)).norm() < 1e-6 * u.eval(x).norm(), "{d} vs {}", u.eval(x));
        }
    }
}

#[test]
fn product_of_plane_waves_follows_the_cocycle() {
    let h = 0.1;
    let (t, basis) = setup(BargmannPhase::bargmann(), h, 40);
    let w = t.weight;
    let f1 = LinearFormOnLambda::from_xstar(c(0.2, 0.1), &w);
    let f2 = LinearFormOnLambda::from_xstar(c(-0.1, 0.25), &w);
    let opts = QuantizeOptions::default();
    let q1 = quantize_superposition(&Symbol::plane_wave(f1, h, w), &basis, &opts).unwrap();
    let q2 = quantize_superposition(&Symbol::plane_wave(f2, h, w), &basis, &opts).unwrap();
    let sharp = compose_plane_wave(&f1, &Symbol::plane_wave(f2, h, w), Side::Left).unwrap();
    let q12 = quantize_superposition(&sharp, &basis, &opts).unwrap();
    let prod = q1.compose(&q2);
    let diff = (&prod.entries - &q12.entries).view((0, 0), (10, 10)).iter().map(|v| v.norm()).fold(0.0, f64::max);
    assert!(diff < 1e-6, "{diff:e}");
}

#[test]
fn direct_and_superposition_agree_on_gaussians() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for phase in [BargmannPhase::fbi(), BargmannPhase::bargmann()] {
        let h = 0.1;
        let (t, basis) = setup(phase, h, 12);
        for _ in 0..2 {
            let a = iso(rc(&mut rng, 0.3), rng.gen_range(0.4..0.8), rc(&mut rng, 1.0), h, t.weight);
            let s = quantize_superposition(&a, &basis, &QuantizeOptions::default()).unwrap();
            let d = quantize_direct(&a, &basis, &QuantizeOptions { points: 128, drop_below: 1e-15 }).unwrap();
            let e = d.rel_diff(&s);
            assert!(e < 1e-4, "{e:e}");
        }
    }
}

fn hermitian_eigenvalues(m: &OperatorMatrix, k: usize) -> Vec<f64> {
    let a = m.truncated(k).entries;
    let herm = (&a + a.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().cloned().collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

#[test]
fn oscillator_eigenvalues() {
    let h = 0.1;
    for phase in [BargmannPhase::bargmann(), BargmannPhase::fbi()] {
        let (_, basis) = setup(phase, h, 40);
        let a = Symbol::oscillator(&phase, 1e-3, h).unwrap();
        let m = quantize_superposition(&a, &basis, &QuantizeOptions { points: 128, drop_below: 1e-15 }).unwrap();
        let anti = (&m.entries - m.entries.adjoint()).view((0, 0), (20, 20)).iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(anti < 1e-6, "{anti:e}");
        let ev = hermitian_eigenvalues(&m, 20);
        for k in 0..5 {
            let e = h * (2 * k + 1) as f64;
            assert!((ev[k] - e).abs() < 0.01 * e, "k={k}: {} vs {e}", ev[k]);
        }
    }
}

#[test]
fn projection_onto_the_ground_state() {
    for phase in [BargmannPhase::bargmann(), BargmannPhase::fbi()] {
        let h = 0.1;
        let (t, basis) = setup(phase, h, 16);
        let v0 = t.v0().unwrap();
        let p = rank_one_projection(&v0, &basis).unwrap();
        assert!(p.compose(&p).rel_diff(&p) < 1e-6);
        assert!(p.adjoint().rel_diff(&p) < 1e-6);
        let tr: C64 = (0..p.dim()).map(|k| p.entries[(k, k)]).sum();
        assert!((tr - 1.0).norm() < 1e-6);
        let gram = basis.gram_in(&basis.weight).unwrap();
        assert!((operator_norm(&p, &gram).unwrap().norm - 1.0).abs() < 1e-6);
        // Its Weyl symbol is χ₀(X/√h).
        let chi = projection_window(&t, h).unwrap();
        let q = quantize_superposition(&chi, &basis, &QuantizeOptions::default()).unwrap();
        let diff = (&q.entries - &p.entries).iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-4, "{diff:e}");
    }
}

#[test]
fn operator_norm_examples() {
    let h = 0.1;
    let (t, basis) = setup(BargmannPhase::fbi(), h, 40);
    let gram = basis.gram_in(&basis.weight).unwrap();
    let id = OperatorMatrix::identity(40, h);
    assert!((operator_norm(&id, &gram).unwrap().norm - 1.0).abs() < 1e-10);
    let form = LinearFormOnLambda::from_xstar(c(0.3, 0.2), &t.weight);
    let tr = MagneticTranslation::new(form, h, Sign::Minus).unwrap().matrix_in(&basis).unwrap();
    let rep = operator_norm(&tr, &gram).unwrap();
    assert!((rep.norm - 1.0).abs() < 1e-6, "{}", rep.norm);
    for w in rep.by_truncation.windows(2) {
        assert!(w[1].1 >= w[0].1 - 1e-12);
    }
    let twice = operator_norm(&id.scaled(c(0.0, 2.0)), &gram).unwrap().norm;
    assert!((twice - 2.0).abs() < 1e-10);
}

#[test]
fn rank_one_route_matches_superposition() {
    let h = 0.1;
    let (t, basis) = setup(BargmannPhase::bargmann(), h, 12);
    let a = iso(c(0.1, -0.1), 0.6, c(1.0, 0.0), h, t.weight);
    let s = quantize_superposition(&a, &basis, &QuantizeOptions::default()).unwrap();
    let r = rank_one_decomposition(&a, &t, &basis, &RankOneOptions::default()).unwrap();
    let e = (&r.matrix.entries - &s.entries).iter().map(|v| v.norm()).fold(0.0, f64::max);
    assert!(e < 1e-3, "{e:e}");
}

#[test]
fn window_mass_scales_like_h() {
    let mut ratios = Vec::new();
    for h in [0.2, 0.1, 0.05] {
        let t = BargmannTransform::new(BargmannPhase::fbi(), h).unwrap();
        ratios.push(window_mass(&t).unwrap() / h);
    }
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    assert!(max / min < 4.0, "{ratios:?}");
}

#[test]
fn rank_one_atom_factorizes() {
    // b(X) = e^{2iσ(X,Y)/h} χ₀((X−T)/√h) quantizes to
    // e^{iσ(T,Y)/h} |e^{iσ(·,Y−T)/h} v₀⟩⟨e^{-iσ(·,Y+T)/h} v₀|.
    let h = 0.1;
    let (t, basis) = setup(BargmannPhase::bargmann(), h, 30);
    let w = t.weight;
    let (y, tt) = (c(0.15, -0.1), c(-0.1, 0.2));
    let chi = projection_window(&t, h).unwrap().translate(-tt);
    let pw = Symbol::plane_wave(LinearFormOnLambda::sigma_with(y, &w).scaled(2.0), h, w);
    let b = chi.mul(&pw).unwrap();
    let q = quantize_superposition(&b, &basis, &QuantizeOptions::default()).unwrap();
    let v0 = t.v0().unwrap();
    let left = MagneticTranslation::exp_sigma(y - tt, 1.0, &w, h).unwrap().apply(&v0).unwrap();
    let right = MagneticTranslation::exp_sigma(-(y + tt), 1.0, &w, h).unwrap().apply(&v0).unwrap();
    let (cl, cr) = (basis.coefficients_of(&left), basis.coefficients_of(&right));
    let phase = C64::new(0.0, sigma_base(tt, y, &w) / h).exp();
    let expect = &cl * cr.adjoint() * phase;
    let diff = (&q.entries - &expect).view((0, 0), (12, 12)).iter().map(|v| v.norm()).fold(0.0, f64::max);
    assert!(diff < 1e-6, "{diff:e}");
}

#[test]
fn schur_thresholds() {
    let hs = [0.2, 0.1, 0.05, 0.025];
    for s in [2.0, 4.0] {
        let sw = schur_sweep(s, 1.4, &hs).unwrap();
        assert!(sw.stable && sw.ratio < 3.0, "s={s}: {}", sw.ratio);
    }
    let sw = schur_sweep(1.5, 1.4, &hs).unwrap();
    assert!(sw.divergent);
    assert!(schur_kernel_report(1.0, 1.0, 0.1).is_err());
}
