//! Tensor trapezoid rules on boxes of ℂ ≅ ℝ² and a fixed tanh-sinh rule on
//! intervals.
//!
//! Integrands on H_Φ spaces carry Gaussian decay, for which the uniform
//! trapezoid rule converges geometrically once the box contains the
//! numerically relevant mass.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rectangular lattice of nodes x0 + i·d, y0 + j·d, i < m1, j < m2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid2 {
    pub x0: f64,
    pub y0: f64,
    pub d: f64,
    pub m1: usize,
    pub m2: usize,
}

impl Grid2 {
    /// m×m nodes spanning [c − r, c + r]² with the corners included.
    pub fn centered(center: C64, half_width: f64, m: usize) -> Result<Self> {
        if m < 2 || !(half_width > 0.0) {
            return Err(Error::InvalidParameter(format!("grid needs m ≥ 2 and r > 0 (m = {m}, r = {half_width})")));
        }
        let d = 2.0 * half_width / (m - 1) as f64;
        Ok(Self { x0: center.re - half_width, y0: center.im - half_width, d, m1: m, m2: m })
    }

    /// A single node at `x`, for evaluating grid-valued maps at one point.
    pub fn point(x: C64) -> Self {
        Self { x0: x.re, y0: x.im, d: 1.0, m1: 1, m2: 1 }
    }

    /// Nodes of the lattice dℤ² covering [c − r, c + r]².
    pub fn aligned(center: C64, half_width: f64, d: f64) -> Result<Self> {
        if !(d > 0.0) || !(half_width >= 0.0) {
            return Err(Error::InvalidParameter("aligned grid needs d > 0".into()));
        }
        let i0 = ((center.re - half_width) / d).floor() as i64;
        let i1 = ((center.re + half_width) / d).ceil() as i64;
        let j0 = ((center.im - half_width) / d).floor() as i64;
        let j1 = ((center.im + half_width) / d).ceil() as i64;
        Ok(Self {
            x0: i0 as f64 * d,
            y0: j0 as f64 * d,
            d,
            m1: (i1 - i0 + 1) as usize,
            m2: (j1 - j0 + 1) as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.m1 * self.m2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.m1).map(|i| self.x0 + i as f64 * self.d).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        (0..self.m2).map(|j| self.y0 + j as f64 * self.d).collect()
    }

    /// Node with flat index k = i·m2 + j.
    pub fn node(&self, k: usize) -> C64 {
        let (i, j) = (k / self.m2, k % self.m2);
        C64::new(self.x0 + i as f64 * self.d, self.y0 + j as f64 * self.d)
    }

    pub fn nodes(&self) -> Vec<C64> {
        (0..self.len()).map(|k| self.node(k)).collect()
    }

    pub fn cell_area(&self) -> f64 {
        self.d * self.d
    }

    pub fn center(&self) -> C64 {
        C64::new(
            self.x0 + 0.5 * (self.m1 - 1) as f64 * self.d,
            self.y0 + 0.5 * (self.m2 - 1) as f64 * self.d,
        )
    }

    /// Largest |x| over the box.
    pub fn max_radius(&self) -> f64 {
        let x1 = self.x0 + (self.m1 - 1) as f64 * self.d;
        let y1 = self.y0 + (self.m2 - 1) as f64 * self.d;
        let xm = self.x0.abs().max(x1.abs());
        let ym = self.y0.abs().max(y1.abs());
        (xm * xm + ym * ym).sqrt()
    }

    /// Fractional lattice coordinates of a point.
    pub fn frac_index(&self, z: C64) -> (f64, f64) {
        ((z.re - self.x0) / self.d, (z.im - self.y0) / self.d)
    }
}

/// Tensor trapezoid rule over a box in ℂ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadRule {
    pub grid: Grid2,
}

impl QuadRule {
    pub fn new(center: C64, half_width: f64, m: usize) -> Result<Self> {
        Ok(Self { grid: Grid2::centered(center, half_width, m)? })
    }

    /// Box half-width holding the mass of |t^N e^{-λ|x|²/h}|² down to 1e-16.
    ///
    /// `lambda` is the smallest eigenvalue of Φ − Re(q_ref) as a real form.
    pub fn radius_for(h: f64, degree: usize, lambda: f64) -> f64 {
        let peak = (degree as f64 * h / (2.0 * lambda)).sqrt();
        let tail = (h * 36.9 / (2.0 * lambda)).sqrt();
        peak + 1.25 * tail
    }

    pub fn weight(&self) -> f64 {
        self.grid.cell_area()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn nodes(&self) -> Vec<C64> {
        self.grid.nodes()
    }

    pub fn integrate<F: Fn(C64) -> C64>(&self, f: F) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..self.grid.len() {
            acc += f(self.grid.node(k));
        }
        acc * self.weight()
    }

    pub fn integrate_real<F: Fn(C64) -> f64>(&self, f: F) -> f64 {
        let mut acc = 0.0;
        for k in 0..self.grid.len() {
            acc += f(self.grid.node(k));
        }
        acc * self.weight()
    }

    /// The same box with twice as many nodes per axis.
    pub fn refined(&self) -> Self {
        let g = self.grid;
        let r = 0.5 * (g.m1 - 1) as f64 * g.d;
        Self { grid: Grid2::centered(g.center(), r, 2 * g.m1 - 1).expect("refinement of a valid grid") }
    }
}

/// Fixed tanh-sinh (double exponential) rule on [−1, 1].
#[derive(Clone, Debug)]
pub struct TanhSinh {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl TanhSinh {
    pub fn new(step: f64) -> Self {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let kmax = (3.2 / step).ceil() as i64;
        for k in -kmax..=kmax {
            let t = k as f64 * step;
            let u = half_pi * t.sinh();
            let x = u.tanh();
            let w = step * half_pi * t.cosh() / u.cosh().powi(2);
            if w < 1e-300 || x.abs() >= 1.0 {
                continue;
            }
            nodes.push(x);
            weights.push(w);
        }
        Self { nodes, weights }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(c + r * x))
            .sum::<f64>()
            * r
    }
}
