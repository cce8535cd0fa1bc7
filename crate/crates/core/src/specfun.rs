//! Classical orthogonal polynomials and rotation matrices.
//!
//! Hermite polynomials use the physicists' convention, `H_n(x)` with leading
//! coefficient `2^n`. Jacobi polynomials accept negative integer parameters
//! down to `-k`, which is the regime the Hermite-Laguerre-Gauss sum needs.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense univariate polynomial, `coeffs[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs {
    coeffs: Vec<f64>,
}

impl PolyCoeffs {
    /// Builds a polynomial, dropping trailing zero coefficients.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Coefficients of `p(s·x)`.
    pub fn scaled_argument(&self, s: f64) -> PolyCoeffs {
        let mut pow = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let v = c * pow;
                pow *= s;
                v
            })
            .collect();
        PolyCoeffs::new(coeffs)
    }
}

/// Physicists' Hermite polynomial `H_n`, built from
/// `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite(n: usize) -> PolyCoeffs {
    let mut prev = vec![1.0];
    if n == 0 {
        return PolyCoeffs::new(prev);
    }
    let mut cur = vec![0.0, 2.0];
    for j in 1..n {
        let mut next = vec![0.0; j + 2];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= 2.0 * j as f64 * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    PolyCoeffs::new(cur)
}

/// Generalized Laguerre polynomial `L_n^k` from the three-term recurrence
/// `(j+1) L_{j+1} = (2j+1+k-x) L_j - (j+k) L_{j-1}`.
pub fn laguerre(n: usize, k: usize) -> PolyCoeffs {
    let kf = k as f64;
    let mut prev = vec![1.0];
    if n == 0 {
        return PolyCoeffs::new(prev);
    }
    let mut cur = vec![1.0 + kf, -1.0];
    for j in 1..n {
        let jf = j as f64;
        let mut next = vec![0.0; j + 2];
        for (i, &c) in cur.iter().enumerate() {
            next[i] += (2.0 * jf + 1.0 + kf) * c;
            next[i + 1] -= c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= (jf + kf) * c;
        }
        for c in &mut next {
            *c /= jf + 1.0;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    PolyCoeffs::new(cur)
}

/// Binomial coefficient as a float, zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn factorial(n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Jacobi polynomial `P_k^{(a,b)}(x)` for any integer parameters.
///
/// Uses the finite sum
/// `sum_s C(k+a, k-s) C(k+b, s) ((x-1)/2)^s ((x+1)/2)^(k-s)`
/// with generalised binomials, which is the polynomial continuation in
/// `a` and `b` and so covers the negative values met in the HLG sum.
pub fn jacobi_eval(k: usize, a: i64, b: i64, x: f64) -> f64 {
    let ki = k as i64;
    let lo = (x - 1.0) / 2.0;
    let hi = (x + 1.0) / 2.0;
    let mut sum = 0.0;
    for s in 0..=k {
        let c = general_binomial(ki + a, k - s) * general_binomial(ki + b, s);
        if c != 0.0 {
            sum += c * lo.powi(s as i32) * hi.powi((k - s) as i32);
        }
    }
    sum
}

/// `C(r, j) = r(r-1)...(r-j+1)/j!` for any integer `r`.
fn general_binomial(r: i64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (r - i as i64) as f64 / (i + 1) as f64)
}

/// A half-integer stored as twice its value, for angular-momentum labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(v: i32) -> Self {
        HalfInt(2 * v)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl serde::Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value())
    }
}

impl<'de> serde::Deserialize<'de> for HalfInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <f64 as serde::Deserialize>::deserialize(d)?;
        let twice = 2.0 * v;
        if twice.fract() != 0.0 {
            return Err(serde::de::Error::custom(format!("{v} is not a half-integer")));
        }
        Ok(HalfInt::from_twice(twice as i32))
    }
}

fn check_wigner_indices(j: HalfInt, mp: HalfInt, m: HalfInt) -> Result<()> {
    let (j2, mp2, m2) = (j.twice(), mp.twice(), m.twice());
    if j2 < 0 || mp2.abs() > j2 || m2.abs() > j2 || (j2 - mp2) % 2 != 0 || (j2 - m2) % 2 != 0 {
        return Err(Error::domain(format!("invalid Wigner indices j={j}, m'={mp}, m={m}")));
    }
    Ok(())
}

/// Wigner small-d element `d^j_{m',m}(beta)` (Wigner's sum formula).
pub fn wigner_small_d(j: HalfInt, mp: HalfInt, m: HalfInt, beta: f64) -> Result<f64> {
    check_wigner_indices(j, mp, m)?;
    // Integer combinations of the half-integer labels.
    let jpm = ((j.twice() + m.twice()) / 2) as i64;
    let jmm = ((j.twice() - m.twice()) / 2) as i64;
    let jpmp = ((j.twice() + mp.twice()) / 2) as i64;
    let jmmp = ((j.twice() - mp.twice()) / 2) as i64;
    let dm = ((mp.twice() - m.twice()) / 2) as i64;

    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let prefactor =
        (factorial(jpmp as usize) * factorial(jmmp as usize) * factorial(jpm as usize) * factorial(jmm as usize))
            .sqrt();

    let s_min = 0.max(-dm);
    let s_max = jpm.min(jmmp);
    let mut sum = 0.0;
    for k in s_min..=s_max {
        let denom = factorial((jpm - k) as usize)
            * factorial(k as usize)
            * factorial((dm + k) as usize)
            * factorial((jmmp - k) as usize);
        let sign = if (dm + k) % 2 == 0 { 1.0 } else { -1.0 };
        let cos_pow = (jpm + jmmp - 2 * k) as i32;
        let sin_pow = (dm + 2 * k) as i32;
        sum += sign * c.powi(cos_pow) * s.powi(sin_pow) / denom;
    }
    Ok(prefactor * sum)
}

/// Wigner D-function `D^j_{m',m}(A,B,C) = e^{-i m' A} d^j_{m',m}(B) e^{-i m C}`.
pub fn wigner_d(j: HalfInt, mp: HalfInt, m: HalfInt, a: f64, b: f64, c: f64) -> Result<Complex64> {
    let d = wigner_small_d(j, mp, m, b)?;
    let phase = -(mp.value() * a + m.value() * c);
    Ok(Complex64::from_polar(d, phase))
}
