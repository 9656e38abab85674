//! Symbols on Λ_Φ₀, parametrised by the base coordinate x ∈ ℂ ≅ ℝ².

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianPoly;
use crate::bargmann_core::{BargmannPhase, Grid2};
use crate::error::{Error, Result};
use crate::gevrey::GevreyBump;
use crate::phase_space::{LinearFormOnLambda, QuadraticWeight};
use crate::poly::Poly2;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Samples of a symbol on a lattice, interpolated between nodes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSampled {
    pub grid: Grid2,
    /// Row-major values, index i·m2 + j.
    pub values: Vec<C64>,
}

impl GridSampled {
    pub fn new(grid: Grid2, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter("sample count does not match the grid".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.values[i * self.grid.m2 + j]
    }

    /// Node value on the lattice, sixth order Lagrange interpolation off it,
    /// zero outside the sampled box.
    pub fn eval(&self, z: C64) -> C64 {
        let g = &self.grid;
        let (fi, fj) = g.frac_index(z);
        if fi < -0.5 || fj < -0.5 || fi > g.m1 as f64 - 0.5 || fj > g.m2 as f64 - 0.5 {
            return C64::new(0.0, 0.0);
        }
        let (ri, rj) = (fi.round(), fj.round());
        if (fi - ri).abs() < 1e-9 && (fj - rj).abs() < 1e-9 {
            let (i, j) = (ri.max(0.0) as usize, rj.max(0.0) as usize);
            return self.at(i.min(g.m1 - 1), j.min(g.m2 - 1));
        }
        let stencil = |f: f64, m: usize| -> (usize, [f64; 6]) {
            let start = ((f.floor() as i64) - 2).clamp(0, m as i64 - 6) as usize;
            let mut w = [1.0; 6];
            for a in 0..6 {
                for b in 0..6 {
                    if a != b {
                        w[a] *= (f - (start + b) as f64) / (a as f64 - b as f64);
                    }
                }
            }
            (start, w)
        };
        if g.m1 < 6 || g.m2 < 6 {
            let (i, j) = (ri.clamp(0.0, (g.m1 - 1) as f64) as usize, rj.clamp(0.0, (g.m2 - 1) as f64) as usize);
            return self.at(i, j);
        }
        let (si, wi) = stencil(fi, g.m1);
        let (sj, wj) = stencil(fj, g.m2);
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..6 {
            let mut row = C64::new(0.0, 0.0);
            for b in 0..6 {
                row += self.at(si + a, sj + b) * wj[b];
            }
            acc += row * wi[a];
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    GaussianPoly(GaussianPoly),
    /// amplitude·e^{iℓ/h}
    PlaneWave { form: LinearFormOnLambda, amplitude: C64 },
    GevreyBump(GevreyBump),
    /// Pointwise product of two symbols.
    Windowed(Box<Symbol>, Box<Symbol>),
    GridSampled(GridSampled),
}

/// A function on Λ_Φ₀ together with the semiclassical parameter and weight
/// that fix its plane waves and Fourier transform.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub h: f64,
    pub weight: QuadraticWeight,
}

impl Symbol {
    pub fn new(kind: SymbolKind, h: f64, weight: QuadraticWeight) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter("h must be positive".into()));
        }
        Ok(Self { kind, h, weight })
    }

    pub fn gaussian(g: GaussianPoly, h: f64, weight: QuadraticWeight) -> Self {
        Self { kind: SymbolKind::GaussianPoly(g), h, weight }
    }

    pub fn plane_wave(form: LinearFormOnLambda, h: f64, weight: QuadraticWeight) -> Self {
        Self { kind: SymbolKind::PlaneWave { form, amplitude: C64::new(1.0, 0.0) }, h, weight }
    }

    /// The constant symbol 1, as a plane wave with vanishing form.
    pub fn one(h: f64, weight: QuadraticWeight) -> Self {
        Self::plane_wave(LinearFormOnLambda { xstar: C64::new(0.0, 0.0), ell_x: C64::new(0.0, 0.0) }, h, weight)
    }

    pub fn bump(b: GevreyBump, h: f64, weight: QuadraticWeight) -> Self {
        Self { kind: SymbolKind::GevreyBump(b), h, weight }
    }

    pub fn grid(g: GridSampled, h: f64, weight: QuadraticWeight) -> Self {
        Self { kind: SymbolKind::GridSampled(g), h, weight }
    }

    /// (y² + η²)∘κ⁻¹ · e^{−ε|x|²}: the harmonic oscillator pulled back to Λ
    /// with a broad Gaussian cutoff.
    pub fn oscillator(phase: &BargmannPhase, eps: f64, h: f64) -> Result<Self> {
        let k = phase.kappa_inv_matrix();
        // y² + η² = xᵀ Kᵀ K x
        let m = [
            [k[0][0] * k[0][0] + k[1][0] * k[1][0], k[0][0] * k[0][1] + k[1][0] * k[1][1]],
            [k[0][1] * k[0][0] + k[1][1] * k[1][0], k[0][1] * k[0][1] + k[1][1] * k[1][1]],
        ];
        let mut p = Poly2::zero(2);
        p.set(2, 0, C64::new(m[0][0], 0.0));
        p.set(1, 1, C64::new(2.0 * m[0][1], 0.0));
        p.set(0, 2, C64::new(m[1][1], 0.0));
        let g = GaussianPoly::isotropic(C64::new(0.0, 0.0), 1.0 / eps.sqrt(), C64::new(1.0, 0.0))?.mul_poly(&p);
        Ok(Self::gaussian(g, h, phase.derive_weight()))
    }

    /// amp·exp(−(y² + η²)∘κ⁻¹(x)/scale), e.g. the Weyl symbol 2e^{−(y²+η²)/h}
    /// of the projection onto the ground state when amp = 2, scale = h.
    pub fn real_gaussian(phase: &BargmannPhase, amp: f64, scale: f64, h: f64) -> Result<Self> {
        let k = phase.kappa_inv_matrix();
        let m = [
            [(k[0][0] * k[0][0] + k[1][0] * k[1][0]) / scale, (k[0][0] * k[0][1] + k[1][0] * k[1][1]) / scale],
            [(k[0][1] * k[0][0] + k[1][1] * k[1][0]) / scale, (k[0][1] * k[0][1] + k[1][1] * k[1][1]) / scale],
        ];
        Ok(Self::gaussian(GaussianPoly::from_real_form(m, amp)?, h, phase.derive_weight()))
    }

    /// Linear exponent k with e^{iℓ/h} = e^{k·x} on Λ (x = (Re, Im)).
    fn plane_exponent(&self, form: &LinearFormOnLambda) -> [C64; 2] {
        // ℓ(x) = 4l Im(x̄ x*) = 4l (x₁ s₂ − x₂ s₁)
        let s = form.xstar;
        let f = 4.0 * self.weight.l / self.h;
        [I * f * s.im, -I * f * s.re]
    }

    pub fn eval(&self, x: C64) -> C64 {
        match &self.kind {
            SymbolKind::GaussianPoly(g) => g.eval(x.re, x.im),
            SymbolKind::PlaneWave { form, amplitude } => {
                let k = self.plane_exponent(form);
                amplitude * (k[0] * x.re + k[1] * x.im).exp()
            }
            SymbolKind::GevreyBump(b) => C64::new(b.eval(x), 0.0),
            SymbolKind::Windowed(a, b) => {
                let va = a.eval(x);
                if va == C64::new(0.0, 0.0) {
                    va
                } else {
                    va * b.eval(x)
                }
            }
            SymbolKind::GridSampled(g) => g.eval(x),
        }
    }

    /// Disc outside which the symbol vanishes or is negligible; None for
    /// plane waves.
    pub fn support(&self) -> Option<(C64, f64)> {
        match &self.kind {
            SymbolKind::GaussianPoly(g) => Some(g.support()),
            SymbolKind::PlaneWave { .. } => None,
            SymbolKind::GevreyBump(b) => Some((b.center, b.radius)),
            SymbolKind::Windowed(a, b) => match (a.support(), b.support()) {
                (Some(sa), Some(sb)) => Some(if sa.1 <= sb.1 { sa } else { sb }),
                (Some(s), None) | (None, Some(s)) => Some(s),
                (None, None) => None,
            },
            SymbolKind::GridSampled(g) => {
                let c = g.grid.center();
                let hw = 0.5 * (g.grid.m1.max(g.grid.m2) - 1) as f64 * g.grid.d;
                Some((c, hw * std::f64::consts::SQRT_2))
            }
        }
    }

    /// Disc containing the exact support, for compactly supported symbols.
    pub fn compact_support(&self) -> Option<(C64, f64)> {
        match &self.kind {
            SymbolKind::GevreyBump(b) => Some((b.center, b.radius)),
            SymbolKind::Windowed(a, b) => match (a.compact_support(), b.compact_support()) {
                (Some(sa), Some(sb)) => Some(if sa.1 <= sb.1 { sa } else { sb }),
                (Some(s), None) | (None, Some(s)) => Some(s),
                (None, None) => None,
            },
            _ => None,
        }
    }

    pub fn as_gaussian(&self) -> Option<&GaussianPoly> {
        match &self.kind {
            SymbolKind::GaussianPoly(g) => Some(g),
            _ => None,
        }
    }

    fn same_frame(&self, o: &Self) -> Result<()> {
        if (self.h - o.h).abs() > 1e-14 || self.weight != o.weight {
            return Err(Error::Incompatible("symbols use different h or weights".into()));
        }
        Ok(())
    }

    /// Pointwise product, kept in closed form whenever possible.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_frame(o)?;
        let kind = match (&self.kind, &o.kind) {
            (SymbolKind::GaussianPoly(a), SymbolKind::GaussianPoly(b)) => SymbolKind::GaussianPoly(a.mul(b)),
            (SymbolKind::PlaneWave { form, amplitude }, SymbolKind::GaussianPoly(g))
            | (SymbolKind::GaussianPoly(g), SymbolKind::PlaneWave { form, amplitude }) => {
                SymbolKind::GaussianPoly(g.mul_exp_linear(self.plane_exponent(form), amplitude.ln()))
            }
            (SymbolKind::PlaneWave { form: f1, amplitude: a1 }, SymbolKind::PlaneWave { form: f2, amplitude: a2 }) => {
                SymbolKind::PlaneWave {
                    form: LinearFormOnLambda { xstar: f1.xstar + f2.xstar, ell_x: f1.ell_x + f2.ell_x },
                    amplitude: a1 * a2,
                }
            }
            _ => SymbolKind::Windowed(Box::new(self.clone()), Box::new(o.clone())),
        };
        Ok(Self { kind, h: self.h, weight: self.weight })
    }

    /// x ↦ a(x + H)
    pub fn translate(&self, hshift: C64) -> Self {
        let kind = match &self.kind {
            SymbolKind::GaussianPoly(g) => SymbolKind::GaussianPoly(g.translate(hshift)),
            SymbolKind::PlaneWave { form, amplitude } => {
                let k = self.plane_exponent(form);
                SymbolKind::PlaneWave { form: *form, amplitude: amplitude * (k[0] * hshift.re + k[1] * hshift.im).exp() }
            }
            SymbolKind::GevreyBump(b) => SymbolKind::GevreyBump(GevreyBump { center: b.center - hshift, ..*b }),
            SymbolKind::Windowed(a, b) => SymbolKind::Windowed(Box::new(a.translate(hshift)), Box::new(b.translate(hshift))),
            SymbolKind::GridSampled(g) => {
                let mut grid = g.grid;
                grid.x0 -= hshift.re;
                grid.y0 -= hshift.im;
                SymbolKind::GridSampled(GridSampled { grid, values: g.values.clone() })
            }
        };
        Self { kind, h: self.h, weight: self.weight }
    }

    pub fn conj(&self) -> Self {
        let kind = match &self.kind {
            SymbolKind::GaussianPoly(g) => SymbolKind::GaussianPoly(g.conj()),
            SymbolKind::PlaneWave { form, amplitude } => SymbolKind::PlaneWave { form: form.scaled(-1.0), amplitude: amplitude.conj() },
            SymbolKind::GevreyBump(b) => SymbolKind::GevreyBump(*b),
            SymbolKind::Windowed(a, b) => SymbolKind::Windowed(Box::new(a.conj()), Box::new(b.conj())),
            SymbolKind::GridSampled(g) => {
                SymbolKind::GridSampled(GridSampled { grid: g.grid, values: g.values.iter().map(|v| v.conj()).collect() })
            }
        };
        Self { kind, h: self.h, weight: self.weight }
    }

    pub fn scaled(&self, c: C64) -> Self {
        let kind = match &self.kind {
            SymbolKind::GaussianPoly(g) => SymbolKind::GaussianPoly(g.scaled(c)),
            SymbolKind::PlaneWave { form, amplitude } => SymbolKind::PlaneWave { form: *form, amplitude: amplitude * c },
            SymbolKind::GridSampled(g) => {
                SymbolKind::GridSampled(GridSampled { grid: g.grid, values: g.values.iter().map(|v| v * c).collect() })
            }
            _ => {
                let k = SymbolKind::PlaneWave {
                    form: LinearFormOnLambda { xstar: C64::new(0.0, 0.0), ell_x: C64::new(0.0, 0.0) },
                    amplitude: c,
                };
                SymbolKind::Windowed(Box::new(self.clone()), Box::new(Self { kind: k, h: self.h, weight: self.weight }))
            }
        };
        Self { kind, h: self.h, weight: self.weight }
    }

    /// Samples on a grid.
    pub fn sample(&self, grid: &Grid2) -> GridSampled {
        GridSampled { grid: *grid, values: (0..grid.len()).map(|k| self.eval(grid.node(k))).collect() }
    }
}
