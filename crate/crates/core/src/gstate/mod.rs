//! States of the form `P(x, y) · exp(-a x² - b y²)` with `P` a sparse complex
//! polynomial in dimensionless transverse coordinates.
//!
//! Landau eigenstates all share the envelope `exp(-x² - y²)` (`a = b = 1`);
//! anisotropic envelopes only appear after a dilation. Inner products reduce
//! to Gaussian moments and differential operators with polynomial
//! coefficients act exactly, so every identity checked here is free of
//! discretisation error.

mod operator;

pub use operator::PolyDiffOperator;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::binomial;

/// Coefficients with magnitude below this are dropped from term maps.
pub const PRUNE_THRESHOLD: f64 = 1e-300;

/// Gaussian factor `exp(-ax x² - ay y²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub ax: f64,
    pub ay: f64,
}

impl Envelope {
    /// The Landau-level envelope `exp(-x² - y²)`.
    pub const UNIT: Envelope = Envelope { ax: 1.0, ay: 1.0 };

    pub fn new(ax: f64, ay: f64) -> Result<Self> {
        if !(ax > 0.0 && ay > 0.0 && ax.is_finite() && ay.is_finite()) {
            return Err(Error::domain(format!(
                "envelope widths must be positive, got ({ax}, {ay})"
            )));
        }
        Ok(Envelope { ax, ay })
    }

    pub fn is_isotropic(&self) -> bool {
        self.ax == self.ay
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        (-self.ax * x * x - self.ay * y * y).exp()
    }
}

impl Default for Envelope {
    fn default() -> Self {
        Envelope::UNIT
    }
}

/// Sparse polynomial times a fixed Gaussian envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianPolyState {
    terms: BTreeMap<(u32, u32), Complex64>,
    envelope: Envelope,
}

impl GaussianPolyState {
    pub fn zero() -> Self {
        Self::with_envelope(BTreeMap::new(), Envelope::UNIT)
    }

    /// The bare envelope, `{(0,0): 1}`.
    pub fn ground() -> Self {
        Self::from_terms([((0, 0), Complex64::new(1.0, 0.0))])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Complex64)>,
    {
        Self::with_envelope(terms, Envelope::UNIT)
    }

    /// Sums duplicate monomials and prunes negligible coefficients.
    pub fn with_envelope<I>(terms: I, envelope: Envelope) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Complex64)>,
    {
        let mut map: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (k, c) in terms {
            *map.entry(k).or_default() += c;
        }
        map.retain(|_, c| c.norm() >= PRUNE_THRESHOLD);
        GaussianPolyState { terms: map, envelope }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Complex64> {
        &self.terms
    }

    pub fn envelope(&self) -> Envelope {
        self.envelope
    }

    pub fn coeff(&self, p: u32, q: u32) -> Complex64 {
        self.terms.get(&(p, q)).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree `p + q` present.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(p, q)| p + q).max().unwrap_or(0)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::with_envelope(self.terms.iter().map(|(&k, &v)| (k, v * c)), self.envelope)
    }

    pub fn norm_sqr(&self) -> f64 {
        inner_product(self, self).re
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().max(0.0).sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::usage("cannot normalize a zero-norm state"));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// `self + c·other`; both states must share an envelope.
    pub fn add_scaled(&self, c: Complex64, other: &Self) -> Result<Self> {
        if self.envelope != other.envelope && !self.is_empty() && !other.is_empty() {
            return Err(Error::usage("cannot combine states with different Gaussian envelopes"));
        }
        let envelope = if self.is_empty() { other.envelope } else { self.envelope };
        let terms = self
            .terms
            .iter()
            .map(|(&k, &v)| (k, v))
            .chain(other.terms.iter().map(|(&k, &v)| (k, v * c)));
        Ok(Self::with_envelope(terms, envelope))
    }

    /// Largest coefficient difference over the union of both term maps.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, v) in &self.terms {
            worst = worst.max((v - other.coeff(k.0, k.1)).norm());
        }
        for (k, v) in &other.terms {
            if !self.terms.contains_key(k) {
                worst = worst.max(v.norm());
            }
        }
        worst
    }

    /// This state times the unit phase that best aligns it with `reference`
    /// (the phase of `⟨self, reference⟩`).
    pub fn phase_aligned_to(&self, reference: &Self) -> Self {
        let ov = inner_product(self, reference);
        if ov.norm() == 0.0 {
            return self.clone();
        }
        self.scale(ov / ov.norm())
    }

    /// `ψ(x cosφ + y sinφ, -x sinφ + y cosφ)`: the coordinates rotated
    /// clockwise by `phi`. Only defined for isotropic envelopes.
    pub fn rotated(&self, phi: f64) -> Result<Self> {
        if !self.envelope.is_isotropic() {
            return Err(Error::usage("rotation requires an isotropic envelope"));
        }
        let (s, c) = phi.sin_cos();
        let max_deg = self.degree() as usize;
        let cp = powers(c, max_deg);
        let sp = powers(s, max_deg);
        let msp = powers(-s, max_deg);
        let mut out: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (&(p, q), &coef) in &self.terms {
            let (pu, qu) = (p as usize, q as usize);
            // (c x + s y)^p (-s x + c y)^q
            for i in 0..=pu {
                let a = binomial(pu, i) * cp[pu - i] * sp[i];
                for k in 0..=qu {
                    let b = binomial(qu, k) * msp[qu - k] * cp[k];
                    let key = ((pu - i + qu - k) as u32, (i + k) as u32);
                    *out.entry(key).or_default() += coef * (a * b);
                }
            }
        }
        Ok(Self::with_envelope(out, self.envelope))
    }

    /// Unitary dilation `√(lx·ly)·ψ(lx·x, ly·y)`.
    pub fn dilated(&self, lx: f64, ly: f64) -> Result<Self> {
        if !(lx > 0.0 && ly > 0.0 && lx.is_finite() && ly.is_finite()) {
            return Err(Error::domain(format!(
                "dilation scales must be positive, got ({lx}, {ly})"
            )));
        }
        let root = (lx * ly).sqrt();
        let env = Envelope::new(self.envelope.ax * lx * lx, self.envelope.ay * ly * ly)?;
        Ok(Self::with_envelope(
            self.terms
                .iter()
                .map(|(&(p, q), &c)| ((p, q), c * (root * lx.powi(p as i32) * ly.powi(q as i32)))),
            env,
        ))
    }

    /// Pointwise value `P(x, y)·envelope(x, y)`.
    pub fn evaluate(&self, x: f64, y: f64) -> Complex64 {
        let max_p = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max_q = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let xp = powers(x, max_p);
        let yp = powers(y, max_q);
        let poly: Complex64 = self
            .terms
            .iter()
            .map(|(&(p, q), &c)| c * (xp[p as usize] * yp[q as usize]))
            .sum();
        poly * self.envelope.value(x, y)
    }

    /// Polynomial in `x` obtained by fixing `y`: entry `p` multiplies `x^p`.
    fn collapse_y(&self, y: f64) -> Vec<Complex64> {
        let max_p = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max_q = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let yp = powers(y, max_q);
        let mut out = vec![Complex64::default(); max_p + 1];
        for (&(p, q), &c) in &self.terms {
            out[p as usize] += c * yp[q as usize];
        }
        out
    }

    /// `|ψ|²` sampled at cell centres of `spec`, row-major with `ny` rows.
    pub fn density_grid(&self, spec: &GridSpec) -> Result<DensityGrid> {
        spec.validate()?;
        let mut values = vec![0.0; spec.nx * spec.ny];
        values.par_chunks_mut(spec.nx).enumerate().for_each(|(row, out)| {
            let y = spec.y_center(row);
            let cx = self.collapse_y(y);
            let env_y = (-self.envelope.ay * y * y).exp();
            for (col, v) in out.iter_mut().enumerate() {
                let x = spec.x_center(col);
                let poly = cx.iter().rev().fold(Complex64::default(), |acc, &c| acc * x + c);
                let amp = poly * (env_y * (-self.envelope.ax * x * x).exp());
                *v = amp.norm_sqr();
            }
        });
        Ok(DensityGrid { spec: *spec, values })
    }
}

fn powers(x: f64, max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = 1.0;
    for _ in 0..=max {
        out.push(acc);
        acc *= x;
    }
    out
}

impl Add for &GaussianPolyState {
    type Output = GaussianPolyState;

    fn add(self, rhs: Self) -> GaussianPolyState {
        self.add_scaled(Complex64::new(1.0, 0.0), rhs)
            .expect("envelope mismatch in state addition")
    }
}

impl Sub for &GaussianPolyState {
    type Output = GaussianPolyState;

    fn sub(self, rhs: Self) -> GaussianPolyState {
        self.add_scaled(Complex64::new(-1.0, 0.0), rhs)
            .expect("envelope mismatch in state subtraction")
    }
}

impl Neg for &GaussianPolyState {
    type Output = GaussianPolyState;

    fn neg(self) -> GaussianPolyState {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<&GaussianPolyState> for Complex64 {
    type Output = GaussianPolyState;

    fn mul(self, rhs: &GaussianPolyState) -> GaussianPolyState {
        rhs.scale(self)
    }
}

/// Termwise `Σ coeffs[i]·states[i]`.
pub fn linear_combine(coeffs: &[Complex64], states: &[GaussianPolyState]) -> Result<GaussianPolyState> {
    if coeffs.len() != states.len() {
        return Err(Error::usage(format!(
            "linear_combine: {} coefficients for {} states",
            coeffs.len(),
            states.len()
        )));
    }
    let mut acc = GaussianPolyState::zero();
    for (c, s) in coeffs.iter().zip(states) {
        acc = acc.add_scaled(*c, s)?;
    }
    Ok(acc)
}

/// `∫ x^p exp(-c x²) dx` over the real line.
pub fn moment_1d(p: u32, c: f64) -> f64 {
    if p % 2 == 1 {
        return 0.0;
    }
    let mut m = (std::f64::consts::PI / c).sqrt();
    for k in 0..p / 2 {
        m *= (2 * k + 1) as f64 / (2.0 * c);
    }
    m
}

fn moment_table(max: u32, c: f64) -> Vec<f64> {
    let mut out = vec![0.0; max as usize + 1];
    let mut even = (std::f64::consts::PI / c).sqrt();
    for p in (0..=max).step_by(2) {
        out[p as usize] = even;
        even *= (p + 1) as f64 / (2.0 * c);
    }
    out
}

/// `∫∫ x^p y^q exp(-2x² - 2y²) dx dy`, the moment of the squared unit envelope.
pub fn gaussian_moment(p: u32, q: u32) -> f64 {
    moment_1d(p, 2.0) * moment_1d(q, 2.0)
}

/// `⟨a, b⟩`, conjugate-linear in `a`.
pub fn inner_product(a: &GaussianPolyState, b: &GaussianPolyState) -> Complex64 {
    if a.is_empty() || b.is_empty() {
        return Complex64::default();
    }
    let cx = a.envelope.ax + b.envelope.ax;
    let cy = a.envelope.ay + b.envelope.ay;
    let max_p = a.terms.keys().map(|k| k.0).max().unwrap_or(0) + b.terms.keys().map(|k| k.0).max().unwrap_or(0);
    let max_q = a.terms.keys().map(|k| k.1).max().unwrap_or(0) + b.terms.keys().map(|k| k.1).max().unwrap_or(0);
    let mx = moment_table(max_p, cx);
    let my = moment_table(max_q, cy);
    let mut sum = Complex64::default();
    for (&(p, q), &ca) in &a.terms {
        let ca = ca.conj();
        for (&(r, s), &cb) in &b.terms {
            let (px, py) = ((p + r) as usize, (q + s) as usize);
            if px % 2 == 1 || py % 2 == 1 {
                continue;
            }
            sum += ca * cb * (mx[px] * my[py]);
        }
    }
    sum
}

/// Rectangular sampling grid; values are taken at cell centres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// Square grid `[-half_width, half_width]²` with `n × n` cells.
    pub fn square(half_width: f64, n: usize) -> Self {
        GridSpec {
            x_min: -half_width,
            x_max: half_width,
            y_min: -half_width,
            y_max: half_width,
            nx: n,
            ny: n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.x_max <= self.x_min || self.y_max <= self.y_min {
            return Err(Error::usage(format!(
                "degenerate grid range x:[{}, {}] y:[{}, {}]",
                self.x_min, self.x_max, self.y_min, self.y_max
            )));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::usage(format!(
                "grid needs at least 2 cells per axis, got {}×{}",
                self.nx, self.ny
            )));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / self.ny as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    pub fn x_center(&self, col: usize) -> f64 {
        self.x_min + (col as f64 + 0.5) * self.dx()
    }

    pub fn y_center(&self, row: usize) -> f64 {
        self.y_min + (row as f64 + 0.5) * self.dy()
    }
}

/// Sampled probability density, row-major: `values[row * nx + col]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl DensityGrid {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.spec.nx + col]
    }

    /// Riemann sum of the density over the grid.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.spec.cell_area()
    }

    /// `(row, col)` of the largest sample.
    pub fn argmax(&self) -> (usize, usize) {
        let idx = self
            .values
            .iter()
            .enumerate()
            .fold(0, |best, (i, &v)| if v > self.values[best] { i } else { best });
        (idx / self.spec.nx, idx % self.spec.nx)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}
