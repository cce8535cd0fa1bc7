use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{GaussianPolyState, PRUNE_THRESHOLD};
use crate::specfun::binomial;

/// Key `(p, q, dx, dy)` for the term `x^p y^q ∂_x^dx ∂_y^dy`.
pub type OpKey = (u32, u32, u32, u32);

/// Linear differential operator with polynomial coefficients, kept in normal
/// order (all derivatives to the right).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyDiffOperator {
    terms: BTreeMap<OpKey, Complex64>,
}

impl PolyDiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::term(Complex64::new(1.0, 0.0), 0, 0, 0, 0)
    }

    /// Single term `c · x^p y^q ∂_x^dx ∂_y^dy`.
    pub fn term(c: Complex64, p: u32, q: u32, dx: u32, dy: u32) -> Self {
        Self::from_terms([((p, q, dx, dy), c)])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (OpKey, Complex64)>,
    {
        let mut map: BTreeMap<OpKey, Complex64> = BTreeMap::new();
        for (k, c) in terms {
            *map.entry(k).or_default() += c;
        }
        map.retain(|_, c| c.norm() >= PRUNE_THRESHOLD);
        PolyDiffOperator { terms: map }
    }

    /// Multiplication by `x`.
    pub fn x() -> Self {
        Self::term(Complex64::new(1.0, 0.0), 1, 0, 0, 0)
    }

    /// Multiplication by `y`.
    pub fn y() -> Self {
        Self::term(Complex64::new(1.0, 0.0), 0, 1, 0, 0)
    }

    pub fn d_x() -> Self {
        Self::term(Complex64::new(1.0, 0.0), 0, 0, 1, 0)
    }

    pub fn d_y() -> Self {
        Self::term(Complex64::new(1.0, 0.0), 0, 0, 0, 1)
    }

    pub fn terms(&self) -> &BTreeMap<OpKey, Complex64> {
        &self.terms
    }

    pub fn coeff(&self, key: OpKey) -> Complex64 {
        self.terms.get(&key).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient magnitude; 0 for the zero operator.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, &v)| (k, v * c)))
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Operator product `self ∘ rhs`, normal-ordered by the Leibniz rule.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out: BTreeMap<OpKey, Complex64> = BTreeMap::new();
        for (&(p1, q1, a1, b1), &c1) in &self.terms {
            for (&(p2, q2, a2, b2), &c2) in &rhs.terms {
                // ∂^a x^p = Σ_i C(a,i) p!/(p-i)! x^(p-i) ∂^(a-i)
                for i in 0..=a1.min(p2) {
                    let fx = binomial(a1 as usize, i as usize) * falling(p2, i);
                    for k in 0..=b1.min(q2) {
                        let fy = binomial(b1 as usize, k as usize) * falling(q2, k);
                        let key = (p1 + p2 - i, q1 + q2 - k, a1 - i + a2, b1 - k + b2);
                        *out.entry(key).or_default() += c1 * c2 * (fx * fy);
                    }
                }
            }
        }
        Self::from_terms(out)
    }

    /// `[self, rhs] = self∘rhs - rhs∘self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.compose(rhs) - &rhs.compose(self)
    }

    /// Exact action on a Gaussian-polynomial state.
    pub fn apply(&self, s: &GaussianPolyState) -> GaussianPolyState {
        let mut derivs: HashMap<(u32, u32), GaussianPolyState> = HashMap::new();
        let mut out: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (&(p, q, dx, dy), &c) in &self.terms {
            let d = derivs.entry((dx, dy)).or_insert_with(|| differentiate(s, dx, dy));
            for (&(i, j), &v) in d.terms() {
                *out.entry((i + p, j + q)).or_default() += c * v;
            }
        }
        GaussianPolyState::with_envelope(out, s.envelope())
    }
}

fn falling(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64)
}

/// `∂_x^dx ∂_y^dy` of `P·exp(-ax x² - ay y²)`; the envelope is preserved and
/// each derivative maps `x^i` to `i x^(i-1) - 2 ax x^(i+1)`.
fn differentiate(s: &GaussianPolyState, dx: u32, dy: u32) -> GaussianPolyState {
    let env = s.envelope();
    let mut terms: BTreeMap<(u32, u32), Complex64> = s.terms().clone();
    for _ in 0..dx {
        let mut next: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (&(i, j), &c) in &terms {
            if i > 0 {
                *next.entry((i - 1, j)).or_default() += c * i as f64;
            }
            *next.entry((i + 1, j)).or_default() -= c * (2.0 * env.ax);
        }
        terms = next;
    }
    for _ in 0..dy {
        let mut next: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (&(i, j), &c) in &terms {
            if j > 0 {
                *next.entry((i, j - 1)).or_default() += c * j as f64;
            }
            *next.entry((i, j + 1)).or_default() -= c * (2.0 * env.ay);
        }
        terms = next;
    }
    GaussianPolyState::with_envelope(terms, env)
}

impl Add for &PolyDiffOperator {
    type Output = PolyDiffOperator;

    fn add(self, rhs: Self) -> PolyDiffOperator {
        PolyDiffOperator::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(&k, &v)| (k, v)))
    }
}

impl Sub for &PolyDiffOperator {
    type Output = PolyDiffOperator;

    fn sub(self, rhs: Self) -> PolyDiffOperator {
        PolyDiffOperator::from_terms(
            self.terms
                .iter()
                .map(|(&k, &v)| (k, v))
                .chain(rhs.terms.iter().map(|(&k, &v)| (k, -v))),
        )
    }
}

impl Neg for &PolyDiffOperator {
    type Output = PolyDiffOperator;

    fn neg(self) -> PolyDiffOperator {
        self.scale_re(-1.0)
    }
}

impl Mul for &PolyDiffOperator {
    type Output = PolyDiffOperator;

    fn mul(self, rhs: Self) -> PolyDiffOperator {
        self.compose(rhs)
    }
}
