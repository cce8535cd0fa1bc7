//! Hermite-Laguerre-Gauss (asymmetric Landau) states and the quantum-number
//! and symmetry-parameter maps around them.
//!
//! `hlg_state(n, m, α)` is the normalised finite sum
//!
//! ```text
//! G_{n,m}(x,y|α) = e^{-x²-y²} Σ_k i^k cos^{n-k}α sin^{m-k}α P_k^{(n-k,m-k)}(-cos 2α)
//!                              · H_{n+m-k}(√2 x) H_k(√2 y)
//! ```
//!
//! with `‖G_{n,m}‖² = π 2^{n+m-1} n! m!`. It interpolates between the
//! Hermite-Gauss product state at `α = 0` and the Laguerre-Gauss state of
//! definite OAM `l = n - m` at `α = π/4`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gstate::{linear_combine, GaussianPolyState};
use crate::specfun::{binomial, factorial, hermite, laguerre, wigner_d, HalfInt};

/// Default bound on `n + m`; double precision degrades beyond it.
pub const DEFAULT_ORDER_CAP: u32 = 20;

/// Slack allowed on the closed `[0, π/2]` range of α.
const ALPHA_SLACK: f64 = 1e-12;

/// Cartesian quantum numbers of a Hermite-Laguerre-Gauss state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub n: u32,
    pub m: u32,
}

impl ModeIndex {
    pub const fn new(n: u32, m: u32) -> Self {
        ModeIndex { n, m }
    }

    /// OAM projection `l = n - m`.
    pub fn l(&self) -> i32 {
        self.n as i32 - self.m as i32
    }

    /// Radial quantum number `(n + m - |l|)/2 = min(n, m)`.
    pub fn n_r(&self) -> u32 {
        self.n.min(self.m)
    }

    pub fn order(&self) -> u32 {
        self.n + self.m
    }

    /// Pseudo total angular momentum `j = (n + m)/2`.
    pub fn j(&self) -> HalfInt {
        HalfInt::from_twice((self.n + self.m) as i32)
    }

    /// Pseudo-spin projection on the spin axis, `m_l = l/2`.
    pub fn m_l(&self) -> HalfInt {
        HalfInt::from_twice(self.l())
    }

    pub fn twisted(&self) -> (u32, i32) {
        (self.n_r(), self.l())
    }

    /// Inverse of [`ModeIndex::j`] / [`ModeIndex::m_l`]: the state
    /// `ψ_{j+m_l, j-m_l}`.
    pub fn from_spin(j: HalfInt, m_l: HalfInt) -> Result<Self> {
        let (j2, m2) = (j.twice(), m_l.twice());
        if j2 < 0 || m2.abs() > j2 || (j2 - m2) % 2 != 0 {
            return Err(Error::domain(format!("invalid pseudo-spin labels j={j}, m_l={m_l}")));
        }
        Ok(ModeIndex::new(((j2 + m2) / 2) as u32, ((j2 - m2) / 2) as u32))
    }
}

/// `(n_r, l) → (n, m)` with `n - m = l` and `(n + m - |l|)/2 = n_r`.
pub fn mode_from_twisted(n_r: u32, l: i32) -> ModeIndex {
    let total = 2 * n_r as i64 + i64::from(l.abs());
    let n = (total + i64::from(l)) / 2;
    let m = (total - i64::from(l)) / 2;
    ModeIndex::new(n as u32, m as u32)
}

/// Sign of the particle charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Charge {
    /// `sign(e) = -1`.
    Electron,
    /// `sign(e) = +1`.
    Positron,
}

impl Charge {
    pub fn sign(self) -> f64 {
        match self {
            Charge::Electron => -1.0,
            Charge::Positron => 1.0,
        }
    }

    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            -1 => Ok(Charge::Electron),
            1 => Ok(Charge::Positron),
            other => Err(Error::domain(format!("charge sign must be ±1, got {other}"))),
        }
    }
}

/// `β = sin²α̃` with `α̃ = π/4 + sign(e)(π/4 - α)`.
pub fn alpha_to_beta(alpha: f64, charge: Charge) -> f64 {
    let tilde = FRAC_PI_4 + charge.sign() * (FRAC_PI_4 - alpha);
    tilde.sin().powi(2)
}

/// Inverse of [`alpha_to_beta`] on the branch `α ∈ [0, π/2]`.
pub fn beta_to_alpha(beta: f64, charge: Charge) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::domain(format!("beta must lie in [0, 1], got {beta}")));
    }
    Ok(match charge {
        Charge::Electron => beta.sqrt().asin(),
        Charge::Positron => beta.sqrt().acos(),
    })
}

/// Charge and symmetry parameters of the transverse problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryConfig {
    pub charge: Charge,
    pub alpha: f64,
    pub phi: f64,
}

impl SymmetryConfig {
    pub fn new(charge: Charge, alpha: f64, phi: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(SymmetryConfig { charge, alpha, phi })
    }

    pub fn from_beta(beta: f64, charge: Charge, phi: f64) -> Result<Self> {
        Ok(SymmetryConfig {
            charge,
            alpha: beta_to_alpha(beta, charge)?,
            phi,
        })
    }

    pub fn beta(&self) -> f64 {
        alpha_to_beta(self.alpha, self.charge)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(-ALPHA_SLACK..=FRAC_PI_2 + ALPHA_SLACK).contains(&alpha) {
        return Err(Error::domain(format!("alpha must lie in [0, π/2], got {alpha}")));
    }
    Ok(())
}

pub(crate) fn check_order(mode: ModeIndex, cap: u32) -> Result<()> {
    if mode.order() > cap {
        return Err(Error::usage(format!(
            "mode (n={}, m={}) has n+m = {} above the order cap {cap}",
            mode.n,
            mode.m,
            mode.order()
        )));
    }
    Ok(())
}

/// `‖G_{n,m}‖ = sqrt(π 2^{n+m-1} n! m!)`.
pub fn hlg_norm(n: u32, m: u32) -> f64 {
    (PI * 2f64.powi(n as i32 + m as i32 - 1) * factorial(n as usize) * factorial(m as usize)).sqrt()
}

/// Weight of `H_{n+m-k}(√2x) H_k(√2y)` in the unnormalised sum.
///
/// `cos^{n-k} sin^{m-k} P_k^{(n-k,m-k)}(-cos 2α)` is expanded through the
/// finite Jacobi series, which turns the negative trigonometric powers into
/// `Σ_s (-1)^s C(n,k-s) C(m,s) cos^{n-k+2s} sin^{m+k-2s}` with all exponents
/// nonnegative.
pub fn hlg_weight(n: u32, m: u32, k: u32, alpha: f64) -> Complex64 {
    weight_sum(n, m, k, alpha, false)
}

/// `d/dα` of [`hlg_weight`].
pub fn hlg_weight_derivative(n: u32, m: u32, k: u32, alpha: f64) -> Complex64 {
    weight_sum(n, m, k, alpha, true)
}

fn weight_sum(n: u32, m: u32, k: u32, alpha: f64, derivative: bool) -> Complex64 {
    let (s_a, c_a) = alpha.sin_cos();
    let (n, m, k) = (n as usize, m as usize, k as usize);
    let mut sum = 0.0;
    for s in 0..=k.min(m) {
        if k - s > n {
            continue;
        }
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        let p = (n + 2 * s - k) as i32;
        let q = (m + k - 2 * s) as i32;
        // d(cos^p sin^q) = -p cos^{p-1} sin^{q+1} + q cos^{p+1} sin^{q-1}
        let trig = if derivative {
            let mut d = 0.0;
            if p > 0 {
                d -= f64::from(p) * c_a.powi(p - 1) * s_a.powi(q + 1);
            }
            if q > 0 {
                d += f64::from(q) * c_a.powi(p + 1) * s_a.powi(q - 1);
            }
            d
        } else {
            c_a.powi(p) * s_a.powi(q)
        };
        sum += sign * binomial(n, k - s) * binomial(m, s) * trig;
    }
    Complex64::i().powu(k as u32) * sum
}

/// Maps `(mode, α)` with any real α onto `α ∈ [0, π/2]`. The defining sum is
/// π-periodic in α up to a global phase, and `ψ_{n,m}(α + π/2)` equals
/// `ψ_{m,n}(α)` up to a global phase.
pub fn normalize_alpha(mode: ModeIndex, alpha: f64) -> Result<(ModeIndex, f64)> {
    if !alpha.is_finite() {
        return Err(Error::domain(format!("alpha must be finite, got {alpha}")));
    }
    if check_alpha(alpha).is_ok() {
        return Ok((mode, alpha.clamp(0.0, FRAC_PI_2)));
    }
    let reduced = alpha.rem_euclid(PI);
    if reduced <= FRAC_PI_2 {
        Ok((mode, reduced))
    } else {
        Ok((ModeIndex::new(mode.m, mode.n), reduced - FRAC_PI_2))
    }
}

/// Normalised Hermite-Laguerre-Gauss state `ψ_{n,m}(x, y, α)`.
pub fn hlg_state(n: u32, m: u32, alpha: f64) -> Result<GaussianPolyState> {
    hlg_state_with_cap(n, m, alpha, DEFAULT_ORDER_CAP)
}

pub fn hlg_state_with_cap(n: u32, m: u32, alpha: f64, cap: u32) -> Result<GaussianPolyState> {
    check_alpha(alpha)?;
    check_order(ModeIndex::new(n, m), cap)?;
    Ok(hlg_state_any_alpha(n, m, alpha))
}

/// The same finite sum for any real α. Values outside `[0, π/2]` describe the
/// southern half of the orbital Poincaré sphere.
pub(crate) fn hlg_state_any_alpha(n: u32, m: u32, alpha: f64) -> GaussianPolyState {
    hermite_sum(n, m, |k| hlg_weight(n, m, k, alpha))
}

/// Exact `∂ψ_{n,m}/∂α`.
pub fn hlg_state_alpha_derivative(n: u32, m: u32, alpha: f64) -> Result<GaussianPolyState> {
    check_order(ModeIndex::new(n, m), DEFAULT_ORDER_CAP)?;
    Ok(hermite_sum(n, m, |k| hlg_weight_derivative(n, m, k, alpha)))
}

fn hermite_sum(n: u32, m: u32, weight: impl Fn(u32) -> Complex64) -> GaussianPolyState {
    let total = n + m;
    let inv_norm = 1.0 / hlg_norm(n, m);
    let hx: Vec<Vec<f64>> = (0..=total)
        .map(|d| hermite(d as usize).scaled_argument(SQRT_2).coeffs().to_vec())
        .collect();
    let mut terms: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
    for k in 0..=total {
        let w = weight(k) * inv_norm;
        if w.norm() == 0.0 {
            continue;
        }
        let px = &hx[(total - k) as usize];
        let py = &hx[k as usize];
        for (i, &a) in px.iter().enumerate().filter(|(_, a)| **a != 0.0) {
            for (j, &b) in py.iter().enumerate().filter(|(_, b)| **b != 0.0) {
                *terms.entry((i as u32, j as u32)).or_default() += w * (a * b);
            }
        }
    }
    GaussianPolyState::from_terms(terms)
}

/// Generalised state `ψ_{n,m}(x cosφ + y sinφ, -x sinφ + y cosφ, α)`: the
/// eigenstate of the Schwinger Hamiltonian with spin axis `n(φ, α)`.
pub fn schwinger_state(n: u32, m: u32, alpha: f64, phi: f64) -> Result<GaussianPolyState> {
    hlg_state(n, m, alpha)?.rotated(phi)
}

pub(crate) fn schwinger_state_any_alpha(n: u32, m: u32, alpha: f64, phi: f64) -> Result<GaussianPolyState> {
    hlg_state_any_alpha(n, m, alpha).rotated(phi)
}

/// Euler angles `(A, B, C)` of a pseudo-spin rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl EulerAngles {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        EulerAngles { a, b, c }
    }

    /// Angles `(C, π - B, π - A)` that carry the Hermite-Gauss basis
    /// `ψ_{j+m', j-m'}(x, y, 0)` into the generalised state.
    ///
    /// The defining relations measure the polar angle from the opposite pole
    /// of the Hermite-Gauss axis and swap the roles of the two azimuthal
    /// angles, so the expansion coefficients are `D^j_{m',m}` evaluated here
    /// rather than at `(A, B, C)` directly.
    pub fn hg_basis_rotation(&self) -> EulerAngles {
        EulerAngles::new(self.c, PI - self.b, PI - self.a)
    }

    /// Left-hand sides of the two defining relations.
    pub fn defining_lhs(&self) -> (Complex64, Complex64) {
        let first = Complex64::from_polar((self.b / 2.0).cos(), -(self.a + self.c) / 2.0);
        let second = Complex64::from_polar((self.b / 2.0).sin(), (self.a - self.c) / 2.0);
        (first, second)
    }
}

/// Right-hand sides `(-sinφ cosα + i cosφ sinα, sinφ sinα + i cosφ cosα)`.
pub fn euler_targets(phi: f64, alpha: f64) -> (Complex64, Complex64) {
    let (sp, cp) = phi.sin_cos();
    let (sa, ca) = alpha.sin_cos();
    (Complex64::new(-sp * ca, cp * sa), Complex64::new(sp * sa, cp * ca))
}

/// Euler angles defined by the Hamiltonian with spin axis `n(φ, α)`.
///
/// Solves `e^{-i(A+C)/2} cos(B/2) = -sinφ cosα + i cosφ sinα` and
/// `e^{i(A-C)/2} sin(B/2) = sinφ sinα + i cosφ cosα` with `B ∈ [0, π]`.
/// At the poles `B ∈ {0, π}` only one combination of `A` and `C` is fixed;
/// `C = 0` there.
pub fn euler_angles(phi: f64, alpha: f64) -> EulerAngles {
    let (z1, z2) = euler_targets(phi, alpha);
    let b = 2.0 * z2.norm().atan2(z1.norm());
    const POLE: f64 = 1e-15;
    if z2.norm() < POLE {
        return EulerAngles::new(-2.0 * z1.arg(), b, 0.0);
    }
    if z1.norm() < POLE {
        return EulerAngles::new(2.0 * z2.arg(), b, 0.0);
    }
    let sum = -2.0 * z1.arg();
    let diff = 2.0 * z2.arg();
    EulerAngles::new((sum + diff) / 2.0, b, (sum - diff) / 2.0)
}

/// Coefficients `D^j_{m',m_l}(A, B, C)` for `m' = -j, …, j`.
pub fn wigner_decompose(j: HalfInt, m_l: HalfInt, angles: EulerAngles) -> Result<BTreeMap<HalfInt, Complex64>> {
    let j2 = j.twice();
    if j2 < 0 || m_l.twice().abs() > j2 || (j2 - m_l.twice()) % 2 != 0 {
        return Err(Error::domain(format!("invalid Wigner labels j={j}, m_l={m_l}")));
    }
    (-j2..=j2)
        .step_by(2)
        .map(|mp2| {
            let mp = HalfInt::from_twice(mp2);
            Ok((mp, wigner_d(j, mp, m_l, angles.a, angles.b, angles.c)?))
        })
        .collect()
}

/// `Σ_{m'} D^j_{m',m_l}(A,B,C) ψ_{j+m', j-m'}(x, y, 0)`.
pub fn wigner_expand(j: HalfInt, m_l: HalfInt, angles: EulerAngles) -> Result<GaussianPolyState> {
    let coeffs = wigner_decompose(j, m_l, angles)?;
    let mut weights = Vec::with_capacity(coeffs.len());
    let mut basis = Vec::with_capacity(coeffs.len());
    for (mp, w) in coeffs {
        let mode = ModeIndex::from_spin(j, mp)?;
        weights.push(w);
        basis.push(hlg_state(mode.n, mode.m, 0.0)?);
    }
    linear_combine(&weights, &basis)
}

/// The generalised state `ψ^{sch}_{n,m}` rebuilt from Hermite-Gauss states
/// with Wigner D-functions.
pub fn schwinger_state_via_wigner(n: u32, m: u32, alpha: f64, phi: f64) -> Result<GaussianPolyState> {
    check_alpha(alpha)?;
    let mode = ModeIndex::new(n, m);
    check_order(mode, DEFAULT_ORDER_CAP)?;
    let angles = euler_angles(phi, alpha).hg_basis_rotation();
    wigner_expand(mode.j(), mode.m_l(), angles)
}

/// Closed-form Laguerre-Gauss amplitude at `α = π/4`:
/// `(-1)^{n_r} 2^{max} n_r! / ‖G‖ · r^{|l|} L_{n_r}^{|l|}(2r²) e^{-r²} e^{i l θ}`.
pub fn lg_closed_form(n: u32, m: u32, x: f64, y: f64) -> Complex64 {
    let mode = ModeIndex::new(n, m);
    let (n_r, l) = mode.twisted();
    let abs_l = l.unsigned_abs();
    let sign = if n_r % 2 == 0 { 1.0 } else { -1.0 };
    let pref = sign * 2f64.powi(n.max(m) as i32) * factorial(n_r as usize) / hlg_norm(n, m);
    let r2 = x * x + y * y;
    let radial = r2.sqrt().powi(abs_l as i32) * laguerre(n_r as usize, abs_l as usize).eval(2.0 * r2) * (-r2).exp();
    Complex64::from_polar(pref * radial, f64::from(l) * y.atan2(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_numbers() {
        assert_eq!(mode_from_twisted(0, 3), ModeIndex::new(3, 0));
        assert_eq!(mode_from_twisted(2, 0), ModeIndex::new(2, 2));
        assert_eq!(mode_from_twisted(1, -2), ModeIndex::new(1, 3));
        for n in 0..=10 {
            for m in 0..=10 {
                let mode = ModeIndex::new(n, m);
                let (n_r, l) = mode.twisted();
                assert_eq!(mode_from_twisted(n_r, l), mode);
                assert_eq!(mode.m_l().twice(), l);
                assert_eq!(mode.j().twice(), 2 * n_r as i32 + l.abs());
            }
        }
    }

    #[test]
    fn beta_alpha_branches() {
        assert!((beta_to_alpha(0.5, Charge::Electron).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(beta_to_alpha(0.0, Charge::Electron).unwrap(), 0.0);
        let a = beta_to_alpha(0.25, Charge::Positron).unwrap();
        assert!((a - PI / 3.0).abs() < 1e-15);
        assert!((alpha_to_beta(a, Charge::Positron) - 0.25).abs() < 1e-15);
        assert!(beta_to_alpha(1.5, Charge::Electron).is_err());
        assert!(beta_to_alpha(-0.1, Charge::Positron).is_err());
    }

    #[test]
    fn symmetry_config_roundtrip() {
        for &beta in &[0.0, 0.1, 0.5, 0.8, 1.0] {
            for charge in [Charge::Electron, Charge::Positron] {
                let cfg = SymmetryConfig::from_beta(beta, charge, 0.0).unwrap();
                assert!((cfg.beta() - beta).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn ground_state_is_alpha_independent() {
        for &a in &[0.0, 0.3, FRAC_PI_4, 1.2] {
            let g = hlg_state(0, 0, a).unwrap();
            assert_eq!(g.len(), 1);
            assert!((g.coeff(0, 0).re - 1.0 / hlg_norm(0, 0)).abs() < 1e-15);
        }
    }

    #[test]
    fn order_cap_and_alpha_range() {
        assert!(matches!(hlg_state(15, 6, 0.1), Err(Error::Usage(_))));
        assert!(hlg_state_with_cap(15, 6, 0.1, 21).is_ok());
        assert!(matches!(hlg_state(1, 0, -0.2), Err(Error::Domain(_))));
        assert!(hlg_state(1, 0, 1.7).is_err());
    }

    #[test]
    fn euler_angles_at_zero_rotation() {
        for &alpha in &[0.1, 0.4, FRAC_PI_4, 1.3] {
            let e = euler_angles(0.0, alpha);
            assert!((e.b - (PI - 2.0 * alpha)).abs() < 1e-14);
            assert!(e.a.abs() < 1e-14);
            assert!((e.c + PI).abs() < 1e-14);
        }
    }

    #[test]
    fn euler_angles_at_poles() {
        // z2 = 0: B = 0.
        let e = euler_angles(FRAC_PI_2, 0.0);
        assert!(e.b.abs() < 1e-15 && e.c == 0.0);
        // z1 = 0: B = π.
        let e = euler_angles(0.0, 0.0);
        assert!((e.b - PI).abs() < 1e-15 && e.c == 0.0);
        for &(phi, alpha) in &[(FRAC_PI_2, 0.0), (0.0, 0.0), (0.0, FRAC_PI_2)] {
            let e = euler_angles(phi, alpha);
            let (l1, l2) = e.defining_lhs();
            let (r1, r2) = euler_targets(phi, alpha);
            assert!((l1 - r1).norm() < 1e-14 && (l2 - r2).norm() < 1e-14);
        }
    }

    #[test]
    fn wigner_decompose_identity() {
        let j = HalfInt::from_twice(3);
        let m = HalfInt::from_twice(1);
        let coeffs = wigner_decompose(j, m, EulerAngles::new(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(coeffs.len(), 4);
        for (mp, c) in coeffs {
            let expect = if mp == m { 1.0 } else { 0.0 };
            assert!((c - Complex64::new(expect, 0.0)).norm() < 1e-15);
        }
        assert!(wigner_decompose(j, HalfInt::from_int(1), EulerAngles::new(0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn alpha_normalization_matches_up_to_phase() {
        for (n, m) in [(1, 0), (3, 1), (2, 2), (0, 4)] {
            for alpha in [-2.0, -0.3, 1.9, 2.5, 4.0, 7.3] {
                let (mode, a) = normalize_alpha(ModeIndex::new(n, m), alpha).unwrap();
                assert!((0.0..=FRAC_PI_2).contains(&a));
                let raw = hlg_state_any_alpha(n, m, alpha);
                let norm = hlg_state(mode.n, mode.m, a).unwrap();
                let overlap = crate::gstate::inner_product(&raw, &norm).norm();
                assert!((overlap - 1.0).abs() < 1e-12, "({n},{m}) α={alpha}: {overlap}");
            }
        }
        let (mode, a) = normalize_alpha(ModeIndex::new(2, 1), 0.4).unwrap();
        assert_eq!((mode, a), (ModeIndex::new(2, 1), 0.4));
        assert!(normalize_alpha(ModeIndex::new(2, 1), f64::NAN).is_err());
    }
}
