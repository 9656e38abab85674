//! Polynomial-times-complex-Gaussian functions on ℝ², the class on which the
//! symplectic Fourier transform, translations and products are closed.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly2;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

pub type Mat2 = [[C64; 2]; 2];

/// P(x)·exp(−xᵀAx + b·x + c) with A complex symmetric and Re A ≻ 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianPoly {
    pub poly: Poly2,
    pub a: Mat2,
    pub b: [C64; 2],
    pub c: C64,
}

fn det(a: &Mat2) -> C64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

fn inv(a: &Mat2) -> Mat2 {
    let d = det(a);
    [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]
}

fn matvec(a: &Mat2, v: &[C64; 2]) -> [C64; 2] {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

fn matmul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn transpose(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

fn dot(u: &[C64; 2], v: &[C64; 2]) -> C64 {
    u[0] * v[0] + u[1] * v[1]
}

/// Eigenvalues of the real symmetric matrix Re A, ascending.
fn re_eigs(a: &Mat2) -> (f64, f64) {
    let (p, q, r) = (a[0][0].re, 0.5 * (a[0][1].re + a[1][0].re), a[1][1].re);
    let m = 0.5 * (p + r);
    let d = (0.25 * (p - r) * (p - r) + q * q).sqrt();
    (m - d, m + d)
}

/// √det A continued from positive definite matrices (Re A ≻ 0).
fn sqrt_det(a: &Mat2) -> C64 {
    let tr = a[0][0] + a[1][1];
    let disc = (0.25 * (a[0][0] - a[1][1]) * (a[0][0] - a[1][1]) + a[0][1] * a[1][0]).sqrt();
    let l1 = 0.5 * tr + disc;
    let l2 = 0.5 * tr - disc;
    l1.sqrt() * l2.sqrt()
}

impl GaussianPoly {
    pub fn new(poly: Poly2, a: Mat2, b: [C64; 2], c: C64) -> Result<Self> {
        let a = [[a[0][0], 0.5 * (a[0][1] + a[1][0])], [0.5 * (a[0][1] + a[1][0]), a[1][1]]];
        let g = Self { poly, a, b, c };
        if !(g.min_decay() > 0.0) {
            return Err(Error::InvalidParameter("Gaussian symbol needs Re A positive definite".into()));
        }
        Ok(g)
    }

    /// amp·exp(−|x − center|²/width²)
    pub fn isotropic(center: C64, width: f64, amp: C64) -> Result<Self> {
        let al = 1.0 / (width * width);
        let a = [[C64::new(al, 0.0), ZERO], [ZERO, C64::new(al, 0.0)]];
        let b = [C64::new(2.0 * al * center.re, 0.0), C64::new(2.0 * al * center.im, 0.0)];
        let c = amp.ln() - al * center.norm_sqr();
        Self::new(Poly2::constant(ONE), a, b, c)
    }

    /// exp(−xᵀAx) with a real symmetric A given row-wise.
    pub fn from_real_form(m: [[f64; 2]; 2], amp: f64) -> Result<Self> {
        let a = [[C64::new(m[0][0], 0.0), C64::new(m[0][1], 0.0)], [C64::new(m[1][0], 0.0), C64::new(m[1][1], 0.0)]];
        Self::new(Poly2::constant(ONE), a, [ZERO; 2], C64::new(amp.ln(), 0.0))
    }

    pub fn exponent(&self, x1: f64, x2: f64) -> C64 {
        let a = &self.a;
        -(a[0][0] * x1 * x1 + a[0][1] * 2.0 * x1 * x2 + a[1][1] * x2 * x2) + self.b[0] * x1 + self.b[1] * x2 + self.c
    }

    pub fn eval(&self, x1: f64, x2: f64) -> C64 {
        self.poly.eval(x1, x2) * self.exponent(x1, x2).exp()
    }

    /// Smallest eigenvalue of Re A.
    pub fn min_decay(&self) -> f64 {
        re_eigs(&self.a).0
    }

    /// Largest eigenvalue of Re A.
    pub fn max_decay(&self) -> f64 {
        re_eigs(&self.a).1
    }

    /// Point of maximal Gaussian modulus and a radius outside which the
    /// modulus is below 1e-16 of that maximum (up to polynomial growth).
    pub fn support(&self) -> (C64, f64) {
        let ra = [[self.a[0][0].re, self.a[0][1].re], [self.a[1][0].re, self.a[1][1].re]];
        let d = ra[0][0] * ra[1][1] - ra[0][1] * ra[1][0];
        let (b1, b2) = (0.5 * self.b[0].re, 0.5 * self.b[1].re);
        let mu = C64::new((ra[1][1] * b1 - ra[0][1] * b2) / d, (-ra[1][0] * b1 + ra[0][0] * b2) / d);
        let lam = self.min_decay();
        let deg = self.poly.degree() as f64;
        let r = ((38.0 + 3.0 * deg) / lam).sqrt() + (deg / lam).sqrt();
        (mu, r)
    }

    /// x ↦ g(x + H)
    pub fn translate(&self, hshift: C64) -> Self {
        let hv = [C64::new(hshift.re, 0.0), C64::new(hshift.im, 0.0)];
        let ah = matvec(&self.a, &hv);
        Self {
            poly: self.poly.compose_affine([[ONE, ZERO], [ZERO, ONE]], hv),
            a: self.a,
            b: [self.b[0] - 2.0 * ah[0], self.b[1] - 2.0 * ah[1]],
            c: self.c - dot(&hv, &ah) + dot(&self.b, &hv),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut a = self.a;
        for i in 0..2 {
            for j in 0..2 {
                a[i][j] += o.a[i][j];
            }
        }
        Self { poly: self.poly.mul(&o.poly), a, b: [self.b[0] + o.b[0], self.b[1] + o.b[1]], c: self.c + o.c }
    }

    /// exp(k·x + c₀)·g
    pub fn mul_exp_linear(&self, k: [C64; 2], c0: C64) -> Self {
        Self { b: [self.b[0] + k[0], self.b[1] + k[1]], c: self.c + c0, ..self.clone() }
    }

    pub fn mul_poly(&self, p: &Poly2) -> Self {
        Self { poly: self.poly.mul(p), ..self.clone() }
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self { poly: self.poly.scale(s), ..self.clone() }
    }

    pub fn conj(&self) -> Self {
        let mut poly = Poly2::zero(self.poly.degree());
        for (i, j, v) in self.poly.terms() {
            poly.set(i, j, v.conj());
        }
        Self {
            poly,
            a: [[self.a[0][0].conj(), self.a[0][1].conj()], [self.a[1][0].conj(), self.a[1][1].conj()]],
            b: [self.b[0].conj(), self.b[1].conj()],
            c: self.c.conj(),
        }
    }

    /// Polynomials Q_α with ∂_β^α e^{βᵀBβ} = Q_α(β)·e^{βᵀBβ}, combined with
    /// the coefficients of P: returns Σ p_α Q_α(β).
    fn moment_poly(&self, bmat: &Mat2) -> Poly2 {
        let deg = self.poly.degree();
        // grad of βᵀBβ is 2Bβ: two linear polynomials.
        let g1 = Poly2::linear(ZERO, 2.0 * bmat[0][0], 2.0 * bmat[0][1]);
        let g2 = Poly2::linear(ZERO, 2.0 * bmat[1][0], 2.0 * bmat[1][1]);
        let mut rows: Vec<Vec<Poly2>> = Vec::with_capacity(deg + 1);
        // rows[i][j] = Q_{(i,j)}
        for i in 0..=deg {
            let mut row: Vec<Poly2> = Vec::with_capacity(deg + 1 - i);
            for j in 0..=(deg - i) {
                let q = if i == 0 && j == 0 {
                    Poly2::constant(ONE)
                } else if j > 0 {
                    let prev = &row[j - 1];
                    prev.d2().add(&prev.mul(&g2))
                } else {
                    let prev: &Poly2 = &rows[i - 1][0];
                    prev.d1().add(&prev.mul(&g1))
                };
                row.push(q);
            }
            rows.push(row);
        }
        let mut out = Poly2::zero(deg);
        for (i, j, p) in self.poly.terms() {
            if p != ZERO {
                out = out.add(&rows[i][j].scale(p));
            }
        }
        out
    }

    /// ∫_{ℝ²} g(x) dx
    pub fn integral(&self) -> C64 {
        let bmat = inv(&self.a).map(|r| r.map(|v| 0.25 * v));
        let q = self.moment_poly(&bmat);
        let bb = dot(&self.b, &matvec(&bmat, &self.b));
        q.eval_c(self.b[0], self.b[1]) * std::f64::consts::PI / sqrt_det(&self.a) * (self.c + bb).exp()
    }

    /// pref·∫ e^{i(Kx)·y} g(y) dy as a function of x, for a real 2×2 matrix K.
    pub fn fourier_linear(&self, k: [[f64; 2]; 2], pref: f64) -> Result<Self> {
        let bmat = inv(&self.a).map(|r| r.map(|v| 0.25 * v));
        let q = self.moment_poly(&bmat);
        let ik: Mat2 = [[I * k[0][0], I * k[0][1]], [I * k[1][0], I * k[1][1]]];
        let poly = q.compose_affine(ik, self.b);
        let kc: Mat2 = [[C64::new(k[0][0], 0.0), C64::new(k[0][1], 0.0)], [C64::new(k[1][0], 0.0), C64::new(k[1][1], 0.0)]];
        // βᵀBβ with β = b + iKx
        let a_new = matmul(&transpose(&kc), &matmul(&bmat, &kc));
        let kb = matvec(&transpose(&kc), &matvec(&bmat, &self.b));
        let b_new = [2.0 * I * kb[0], 2.0 * I * kb[1]];
        let c_new = self.c + dot(&self.b, &matvec(&bmat, &self.b)) + (C64::new(pref * std::f64::consts::PI, 0.0) / sqrt_det(&self.a)).ln();
        Self::new(poly, a_new, b_new, c_new)
    }
}
