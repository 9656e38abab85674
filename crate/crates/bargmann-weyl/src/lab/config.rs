//! Experiment configuration read from TOML.
//!
//! Top-level keys hold the experiment knobs; tables hold the perturbation
//! shape, the symbol and per-command settings. Unknown keys anywhere are
//! rejected.
//!
//! ```toml
//! name = "sweep"
//! seed = 7
//! h = [0.2, 0.1, 0.05, 0.025]
//! s = 2.0
//! C = 50.0
//! preset = "bargmann"
//! N = 40
//! M = 96
//! route = "superposition"
//! points = 64
//!
//! [perturbation]
//! kind = "tanh_gauss"
//! amp = 1.0
//! width = 5.0
//!
//! [symbol]
//! kind = "bump"
//! s = 2.0
//! radius = 1.0
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bargmann_core::{BargmannPhase, BargmannTransform, Perturbation};
use crate::error::{Error, Result};
use crate::gevrey::{GevreyBump, Window};
use crate::phase_space::{LinearFormOnLambda, WeightPreset};
use crate::weyl_calculus::{projection_window, GaussianPoly, Symbol};
use crate::C64;

/// Operator assembly route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Superposition,
    Direct,
    RankOne,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::Superposition => "superposition",
            Route::Direct => "direct",
            Route::RankOne => "rank_one",
        }
    }
}

fn origin() -> [f64; 2] {
    [0.0, 0.0]
}

fn unit() -> [f64; 2] {
    [1.0, 0.0]
}

fn one() -> f64 {
    1.0
}

fn default_eps() -> f64 {
    1e-3
}

/// A symbol on Λ; complex numbers are written `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SymbolSpec {
    /// Gevrey bump of index s supported in the disc of given radius.
    Bump {
        s: f64,
        radius: f64,
        #[serde(default = "origin")]
        center: [f64; 2],
        #[serde(default = "one")]
        amplitude: f64,
    },
    /// amp·exp(−|x − center|²/width²)
    Gaussian {
        width: f64,
        #[serde(default = "origin")]
        center: [f64; 2],
        #[serde(default = "unit")]
        amp: [f64; 2],
    },
    /// Harmonic oscillator y² + η² with a broad Gaussian cutoff e^{−ε|X|²}.
    Oscillator {
        #[serde(default = "default_eps")]
        eps: f64,
    },
    /// Weyl symbol of the projection onto the ground state, χ₀(X/√h).
    Projection,
    /// amplitude·e^{iℓ/h} for the form translating by xstar.
    PlaneWave {
        xstar: [f64; 2],
        #[serde(default = "unit")]
        amplitude: [f64; 2],
    },
}

impl Default for SymbolSpec {
    fn default() -> Self {
        SymbolSpec::Bump { s: 2.0, radius: 1.0, center: origin(), amplitude: 1.0 }
    }
}

fn cx(v: [f64; 2]) -> C64 {
    C64::new(v[0], v[1])
}

impl SymbolSpec {
    /// Short label used in CSV rows.
    pub fn label(&self) -> String {
        match self {
            SymbolSpec::Bump { s, radius, .. } => format!("bump(s={s};r={radius})"),
            SymbolSpec::Gaussian { width, .. } => format!("gaussian(w={width})"),
            SymbolSpec::Oscillator { eps } => format!("oscillator(eps={eps})"),
            SymbolSpec::Projection => "projection".into(),
            SymbolSpec::PlaneWave { xstar, .. } => format!("plane_wave({};{})", xstar[0], xstar[1]),
        }
    }

    /// Gevrey index of the symbol, when it has one.
    pub fn gevrey_index(&self) -> Option<f64> {
        match self {
            SymbolSpec::Bump { s, .. } => Some(*s),
            _ => None,
        }
    }

    pub fn build(&self, transform: &BargmannTransform) -> Result<Symbol> {
        let (h, w) = (transform.h, transform.weight);
        Ok(match self {
            SymbolSpec::Bump { s, radius, center, amplitude } => Symbol::bump(GevreyBump::new(*s, *radius, cx(*center), *amplitude)?, h, w),
            SymbolSpec::Gaussian { width, center, amp } => Symbol::gaussian(GaussianPoly::isotropic(cx(*center), *width, cx(*amp))?, h, w),
            SymbolSpec::Oscillator { eps } => Symbol::oscillator(&transform.phase, *eps, h)?,
            SymbolSpec::Projection => projection_window(transform, h)?,
            SymbolSpec::PlaneWave { xstar, amplitude } => {
                Symbol::plane_wave(LinearFormOnLambda::from_xstar(cx(*xstar), &w), h, w).scaled(cx(*amplitude))
            }
        })
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        match self {
            SymbolSpec::Bump { s, radius, .. } if !(*s > 1.0) || !(*radius > 0.0) => bad(format!("bump needs s > 1 and radius > 0 (s = {s}, radius = {radius})")),
            SymbolSpec::Gaussian { width, .. } if !(*width > 0.0) => bad(format!("gaussian width must be positive (got {width})")),
            SymbolSpec::Oscillator { eps } if !(*eps > 0.0) => bad(format!("oscillator eps must be positive (got {eps})")),
            _ => Ok(()),
        }
    }
}

fn default_gevrey_symbols() -> Vec<SymbolSpec> {
    vec![
        SymbolSpec::Bump { s: 2.0, radius: 1.0, center: origin(), amplitude: 1.0 },
        SymbolSpec::Bump { s: 3.0, radius: 1.0, center: origin(), amplitude: 1.0 },
        SymbolSpec::Gaussian { width: 0.7, center: origin(), amp: unit() },
    ]
}

/// Settings of `gevrey-fit`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GevreySection {
    #[serde(default = "default_gevrey_symbols")]
    pub symbols: Vec<SymbolSpec>,
    #[serde(default)]
    pub window: Window,
}

impl Default for GevreySection {
    fn default() -> Self {
        Self { symbols: default_gevrey_symbols(), window: Window::Gaussian }
    }
}

fn default_compose_m() -> usize {
    128
}

fn default_pairs() -> usize {
    10
}

fn default_width_range() -> [f64; 2] {
    [0.3, 0.45]
}

fn default_compose_tol() -> f64 {
    1e-5
}

/// Settings of `compose`: either an explicit pair `a`, `b` evaluated at
/// `x`, or `pairs` random Gaussian pairs drawn from the seed.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeSection {
    pub a: Option<SymbolSpec>,
    pub b: Option<SymbolSpec>,
    #[serde(default)]
    pub x: Vec<[f64; 2]>,
    #[serde(default = "default_pairs")]
    pub pairs: usize,
    #[serde(default = "default_width_range")]
    pub width_range: [f64; 2],
    /// Nodes per axis of the integration boxes.
    #[serde(default = "default_compose_m")]
    pub M: usize,
    #[serde(default = "default_compose_tol")]
    pub tol: f64,
}

impl Default for ComposeSection {
    fn default() -> Self {
        Self { a: None, b: None, x: Vec::new(), pairs: 10, width_range: default_width_range(), M: 128, tol: 1e-5 }
    }
}

fn default_decomp_tol() -> f64 {
    1e-3
}

fn default_spacing() -> f64 {
    0.18
}

/// Settings of `decomp-check`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompSection {
    #[serde(default = "default_decomp_tol")]
    pub tol: f64,
    /// Rank-one lattice spacing in units of √h.
    #[serde(default = "default_spacing")]
    pub spacing: f64,
    /// Nodes per axis of the midpoint grid of the direct route.
    #[serde(default = "default_compose_m")]
    pub direct_points: usize,
}

impl Default for DecompSection {
    fn default() -> Self {
        Self { tol: 1e-3, spacing: 0.18, direct_points: 128 }
    }
}

fn all_criteria() -> Vec<u8> {
    (1..=10).collect()
}

fn default_schur_c() -> f64 {
    1.4
}

/// Settings of `verify`.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    /// Which numbered checks to run.
    #[serde(default = "all_criteria")]
    pub criteria: Vec<u8>,
    /// Constant of the Schur kernel report.
    #[serde(default = "default_schur_c")]
    pub schur_C: f64,
}

impl Default for VerifySection {
    fn default() -> Self {
        Self { criteria: all_criteria(), schur_C: 1.4 }
    }
}

/// File names, relative to the output directory.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub csv: Option<String>,
    pub json: Option<String>,
}

fn default_name() -> String {
    "experiment".into()
}

fn default_h() -> Vec<f64> {
    vec![0.2, 0.1, 0.05]
}

fn default_s() -> f64 {
    2.0
}

fn default_c() -> f64 {
    50.0
}

fn default_preset() -> WeightPreset {
    WeightPreset::Bargmann
}

fn default_n() -> usize {
    40
}

fn default_m() -> usize {
    96
}

fn default_route() -> Route {
    Route::Superposition
}

fn default_points() -> usize {
    64
}

fn default_perturbation() -> Perturbation {
    Perturbation::TanhGauss { amp: 1.0, width: 5.0 }
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_name")]
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    /// The h-grid.
    #[serde(default = "default_h")]
    pub h: Vec<f64>,
    /// Gevrey index of the perturbation scaling h^{1−1/s}/C.
    #[serde(default = "default_s")]
    pub s: f64,
    #[serde(default = "default_c")]
    pub C: f64,
    #[serde(default = "default_preset")]
    pub preset: WeightPreset,
    /// Basis degree.
    #[serde(default = "default_n")]
    pub N: usize,
    /// Quadrature nodes per axis of the basis box.
    #[serde(default = "default_m")]
    pub M: usize,
    /// Half-width of the basis box; sized automatically when absent.
    pub R: Option<f64>,
    #[serde(default = "default_route")]
    pub route: Route,
    /// Nodes per axis of the symbol grid.
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "default_perturbation")]
    pub perturbation: Perturbation,
    #[serde(default)]
    pub symbol: SymbolSpec,
    #[serde(default)]
    pub gevrey: GevreySection,
    #[serde(default)]
    pub compose: ComposeSection,
    #[serde(default)]
    pub decomp: DecompSection,
    #[serde(default)]
    pub verify: VerifySection,
    #[serde(default)]
    pub output: OutputSection,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        toml::from_str("").expect("all fields have defaults")
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    pub fn phase(&self) -> BargmannPhase {
        BargmannPhase::preset(self.preset)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.h.is_empty() {
            return bad("h-grid is empty".into());
        }
        if let Some(h) = self.h.iter().find(|h| !(**h > 0.0 && **h <= 1.0)) {
            return bad(format!("h = {h} is outside (0, 1]"));
        }
        if !(self.s > 1.0) {
            return bad(format!("s = {} must exceed 1", self.s));
        }
        if !(self.C > 0.0) {
            return bad(format!("C = {} must be positive", self.C));
        }
        if self.M < 2 || self.points < 2 || self.compose.M < 2 || self.decomp.direct_points < 2 {
            return bad("quadrature node counts (M, points, compose.M, decomp.direct_points) must be at least 2".into());
        }
        if let Some(r) = self.R {
            if !(r > 0.0) {
                return bad(format!("R = {r} must be positive"));
            }
        }
        let (lo, hi) = (self.compose.width_range[0], self.compose.width_range[1]);
        if !(lo > 0.0 && hi >= lo) {
            return bad(format!("compose.width_range [{lo}, {hi}] is not a positive interval"));
        }
        if self.compose.a.is_some() != self.compose.b.is_some() {
            return bad("compose needs both a and b, or neither".into());
        }
        if !(self.compose.tol > 0.0 && self.decomp.tol > 0.0 && self.decomp.spacing > 0.0) {
            return bad("tolerances and spacings must be positive".into());
        }
        if let Some(k) = self.verify.criteria.iter().find(|k| !(1..=10).contains(*k)) {
            return bad(format!("verify.criteria entry {k} is not in 1..=10"));
        }
        if !(self.verify.schur_C > 0.0) {
            return bad("verify.schur_C must be positive".into());
        }
        let (b0, b1) = self.perturbation.bounds();
        if !b0.is_finite() || !b1.is_finite() {
            return bad("perturbation must be bounded with bounded gradient".into());
        }
        self.symbol.validate()?;
        for s in &self.gevrey.symbols {
            s.validate()?;
        }
        if let Window::Bump { s, radius } = self.gevrey.window {
            if !(s > 1.0 && radius > 0.0) {
                return bad("gevrey window bump needs s > 1 and radius > 0".into());
            }
        }
        for s in self.compose.a.iter().chain(self.compose.b.iter()) {
            s.validate()?;
        }
        Ok(())
    }
}
