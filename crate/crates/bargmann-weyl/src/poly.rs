//! Dense complex polynomials in one and two variables.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Univariate polynomial, coefficient k multiplies t^k.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct Poly1(pub Vec<C64>);

impl Poly1 {
    pub fn constant(c: C64) -> Self {
        Self(vec![c])
    }

    pub fn monomial(k: usize) -> Self {
        let mut v = vec![ZERO; k + 1];
        v[k] = ONE;
        Self(v)
    }

    /// a + b·t
    pub fn linear(a: C64, b: C64) -> Self {
        Self(vec![a, b])
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, t: C64) -> C64 {
        self.0.iter().rev().fold(ZERO, |acc, &c| acc * t + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self((0..n)
            .map(|k| self.0.get(k).copied().unwrap_or(ZERO) + other.0.get(k).copied().unwrap_or(ZERO))
            .collect())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self(self.0.iter().map(|&a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self::default();
        }
        let mut out = vec![ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self(out)
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Self(vec![ZERO]);
        }
        Self(self.0.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    /// p(a + b·t) as a polynomial in t.
    pub fn compose_linear(&self, a: C64, b: C64) -> Self {
        let lin = Self::linear(a, b);
        let mut out = Self(vec![ZERO]);
        for &c in self.0.iter().rev() {
            out = out.mul(&lin);
            out.0[0] += c;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Bivariate polynomial in real coordinates (x1, x2) with complex
/// coefficients, stored densely up to a total degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Poly2 {
    deg: usize,
    c: Vec<C64>,
}

impl Poly2 {
    fn idx(i: usize, j: usize) -> usize {
        let d = i + j;
        d * (d + 1) / 2 + j
    }

    pub fn zero(deg: usize) -> Self {
        Self { deg, c: vec![ZERO; (deg + 1) * (deg + 2) / 2] }
    }

    pub fn constant(v: C64) -> Self {
        let mut p = Self::zero(0);
        p.c[0] = v;
        p
    }

    /// c0 + c1·x1 + c2·x2
    pub fn linear(c0: C64, c1: C64, c2: C64) -> Self {
        let mut p = Self::zero(1);
        p.c[0] = c0;
        p.set(1, 0, c1);
        p.set(0, 1, c2);
        p
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        if i + j > self.deg {
            ZERO
        } else {
            self.c[Self::idx(i, j)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        assert!(i + j <= self.deg);
        self.c[Self::idx(i, j)] = v;
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..=self.deg).flat_map(move |d| (0..=d).map(move |j| (d - j, j, self.c[Self::idx(d - j, j)])))
    }

    pub fn is_constant_one(&self) -> bool {
        self.terms().all(|(i, j, c)| if i + j == 0 { c == ONE } else { c == ZERO })
    }

    pub fn eval(&self, x1: f64, x2: f64) -> C64 {
        self.eval_c(C64::new(x1, 0.0), C64::new(x2, 0.0))
    }

    pub fn eval_c(&self, x1: C64, x2: C64) -> C64 {
        // Horner in x2 for each power of x1.
        let mut acc = ZERO;
        for i in (0..=self.deg).rev() {
            let mut inner = ZERO;
            for j in (0..=self.deg - i).rev() {
                inner = inner * x2 + self.get(i, j);
            }
            acc = acc * x1 + inner;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.deg.max(o.deg));
        for (i, j, v) in self.terms().chain(o.terms()) {
            let k = Self::idx(i, j);
            out.c[k] += v;
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { deg: self.deg, c: self.c.iter().map(|&v| v * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.deg + o.deg);
        for (i, j, a) in self.terms() {
            if a == ZERO {
                continue;
            }
            for (k, l, b) in o.terms() {
                out.c[Self::idx(i + k, j + l)] += a * b;
            }
        }
        out
    }

    pub fn d1(&self) -> Self {
        let mut out = Self::zero(self.deg.saturating_sub(1));
        for (i, j, v) in self.terms() {
            if i > 0 {
                out.c[Self::idx(i - 1, j)] += v * i as f64;
            }
        }
        out
    }

    pub fn d2(&self) -> Self {
        let mut out = Self::zero(self.deg.saturating_sub(1));
        for (i, j, v) in self.terms() {
            if j > 0 {
                out.c[Self::idx(i, j - 1)] += v * j as f64;
            }
        }
        out
    }

    /// P(M·x + v) where M is a complex 2×2 matrix.
    pub fn compose_affine(&self, m: [[C64; 2]; 2], v: [C64; 2]) -> Self {
        let l1 = Self::linear(v[0], m[0][0], m[0][1]);
        let l2 = Self::linear(v[1], m[1][0], m[1][1]);
        let mut pow1 = vec![Self::constant(ONE)];
        let mut pow2 = vec![Self::constant(ONE)];
        for k in 1..=self.deg {
            pow1.push(pow1[k - 1].mul(&l1));
            pow2.push(pow2[k - 1].mul(&l2));
        }
        let mut out = Self::zero(self.deg);
        for (i, j, c) in self.terms() {
            if c == ZERO {
                continue;
            }
            out = out.add(&pow1[i].mul(&pow2[j]).scale(c));
        }
        out.truncate_to(self.deg)
    }

    fn truncate_to(mut self, deg: usize) -> Self {
        if deg < self.deg {
            let mut out = Self::zero(deg);
            for (i, j, v) in self.terms() {
                if i + j <= deg {
                    out.c[Self::idx(i, j)] = v;
                }
            }
            self = out;
        }
        self
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}
