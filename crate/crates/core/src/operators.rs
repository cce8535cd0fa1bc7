//! The operator family of the transverse problem in units of the Larmor
//! frequency `ω` and Landau radius `ρ_H` (so `m_e = 2`):
//!
//! ```text
//! H_s = -¼∇² + (x² + y²)
//! H_1 = -¼(∂²_x - ∂²_y) + (x² - y²)
//! H_2 = -½ ∂_x∂_y + 2xy
//! H_3 = -i(x∂_y - y∂_x) = L_z
//! ```
//!
//! `𝕷_i = H_i/2` obey `[𝕷_i, 𝕷_j] = i ε_ijk 𝕷_k` and commute with `H_s`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gstate::{inner_product, GaussianPolyState, PolyDiffOperator};
use crate::modes::Charge;

/// Operators with their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OperatorKind {
    Hs,
    H1,
    H2,
    H3,
    /// `-sign(e)[cos2α H_1 + sin2α H_3]`.
    Has {
        alpha: f64,
        charge: Charge,
    },
    /// `H_s + H_as(α)`.
    Hperp {
        alpha: f64,
        charge: Charge,
    },
    /// `(H_1² + H_2² + H_3²)/4`.
    Casimir,
    /// Transverse Hamiltonian in the gauge-fixed potential, physical coordinates.
    Hphys {
        beta: f64,
        charge: Charge,
    },
    Lz,
    /// `n(φ, α)·𝕷`.
    SpinProjection {
        phi: f64,
        alpha: f64,
    },
    /// `H_s - sign(e) 2 n(φ, α)·𝕷`.
    Schwinger {
        phi: f64,
        alpha: f64,
        charge: Charge,
    },
    /// Multiplication by `x² + y²`.
    RadiusSquared,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn ci(im: f64) -> Complex64 {
    Complex64::new(0.0, im)
}

pub fn h_s() -> PolyDiffOperator {
    PolyDiffOperator::from_terms([
        ((0, 0, 2, 0), c(-0.25)),
        ((0, 0, 0, 2), c(-0.25)),
        ((2, 0, 0, 0), c(1.0)),
        ((0, 2, 0, 0), c(1.0)),
    ])
}

pub fn h_1() -> PolyDiffOperator {
    PolyDiffOperator::from_terms([
        ((0, 0, 2, 0), c(-0.25)),
        ((0, 0, 0, 2), c(0.25)),
        ((2, 0, 0, 0), c(1.0)),
        ((0, 2, 0, 0), c(-1.0)),
    ])
}

pub fn h_2() -> PolyDiffOperator {
    PolyDiffOperator::from_terms([((0, 0, 1, 1), c(-0.5)), ((1, 1, 0, 0), c(2.0))])
}

pub fn h_3() -> PolyDiffOperator {
    PolyDiffOperator::from_terms([((1, 0, 0, 1), ci(-1.0)), ((0, 1, 1, 0), ci(1.0))])
}

/// `H_i` for `i ∈ {1, 2, 3}`.
pub fn h_component(i: usize) -> PolyDiffOperator {
    match i {
        1 => h_1(),
        2 => h_2(),
        3 => h_3(),
        _ => panic!("pseudo angular momentum index {i} outside 1..=3"),
    }
}

/// `𝕷_i = H_i / 2`.
pub fn pseudo_angular_momentum(i: usize) -> PolyDiffOperator {
    h_component(i).scale_re(0.5)
}

/// Levi-Civita symbol on `{1, 2, 3}`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

/// Unit vector `n = (cos2φ cos2α, sin2φ cos2α, sin2α)`.
pub fn spin_axis(phi: f64, alpha: f64) -> [f64; 3] {
    let (s2p, c2p) = (2.0 * phi).sin_cos();
    let (s2a, c2a) = (2.0 * alpha).sin_cos();
    [c2p * c2a, s2p * c2a, s2a]
}

fn spin_projection(phi: f64, alpha: f64) -> PolyDiffOperator {
    let n = spin_axis(phi, alpha);
    let sum = &(&h_1().scale_re(n[0]) + &h_2().scale_re(n[1])) + &h_3().scale_re(n[2]);
    sum.scale_re(0.5)
}

fn asymmetric_part(alpha: f64, charge: Charge) -> PolyDiffOperator {
    let (s2a, c2a) = (2.0 * alpha).sin_cos();
    (&h_1().scale_re(c2a) + &h_3().scale_re(s2a)).scale_re(-charge.sign())
}

fn physical_hamiltonian(beta: f64, charge: Charge) -> Result<PolyDiffOperator> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::domain(format!(
            "Hphys needs beta strictly inside (0, 1), got {beta}"
        )));
    }
    let s = charge.sign();
    let gx = 1.0 - beta;
    // -¼∇² + 2i·sign(e)[-β y∂_x + (1-β) x∂_y] + 4[β² y² + (1-β)² x²]
    Ok(PolyDiffOperator::from_terms([
        ((0, 0, 2, 0), c(-0.25)),
        ((0, 0, 0, 2), c(-0.25)),
        ((0, 1, 1, 0), ci(-2.0 * s * beta)),
        ((1, 0, 0, 1), ci(2.0 * s * gx)),
        ((0, 2, 0, 0), c(4.0 * beta * beta)),
        ((2, 0, 0, 0), c(4.0 * gx * gx)),
    ]))
}

/// Dimensionless operator for `kind`, in units of `ω`.
pub fn build(kind: OperatorKind) -> Result<PolyDiffOperator> {
    Ok(match kind {
        OperatorKind::Hs => h_s(),
        OperatorKind::H1 => h_1(),
        OperatorKind::H2 => h_2(),
        OperatorKind::H3 | OperatorKind::Lz => h_3(),
        OperatorKind::Has { alpha, charge } => asymmetric_part(alpha, charge),
        OperatorKind::Hperp { alpha, charge } => &h_s() + &asymmetric_part(alpha, charge),
        OperatorKind::Casimir => {
            let sum = (1..=3)
                .map(|i| {
                    let h = h_component(i);
                    h.compose(&h)
                })
                .fold(PolyDiffOperator::zero(), |acc, t| &acc + &t);
            sum.scale_re(0.25)
        }
        OperatorKind::Hphys { beta, charge } => physical_hamiltonian(beta, charge)?,
        OperatorKind::SpinProjection { phi, alpha } => spin_projection(phi, alpha),
        OperatorKind::Schwinger { phi, alpha, charge } => {
            &h_s() - &spin_projection(phi, alpha).scale_re(2.0 * charge.sign())
        }
        OperatorKind::RadiusSquared => PolyDiffOperator::from_terms([((2, 0, 0, 0), c(1.0)), ((0, 2, 0, 0), c(1.0))]),
    })
}

/// `[D_i, D_j]`, normal-ordered.
pub fn commutator(kind_i: OperatorKind, kind_j: OperatorKind) -> Result<PolyDiffOperator> {
    Ok(build(kind_i)?.commutator(&build(kind_j)?))
}

/// Clockwise rotation of the transverse coordinates by `phi`.
pub fn rotate(s: &GaussianPolyState, phi: f64) -> Result<GaussianPolyState> {
    s.rotated(phi)
}

/// Unitary dilation `ψ(x, y) → √(lx·ly)·ψ(lx·x, ly·y)`.
pub fn dilate(s: &GaussianPolyState, lx: f64, ly: f64) -> Result<GaussianPolyState> {
    s.dilated(lx, ly)
}

/// Scales `(√(2(1-β)), √(2β))` of the canonical transformation that maps the
/// physical Hamiltonian onto `H_s + H_as(α)`.
pub fn canonical_scales(beta: f64) -> Result<(f64, f64)> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::domain(format!(
            "canonical dilation degenerates at beta = {beta}"
        )));
    }
    Ok(((2.0 * (1.0 - beta)).sqrt(), (2.0 * beta).sqrt()))
}

fn nonzero_norm(s: &GaussianPolyState) -> Result<f64> {
    let n2 = s.norm_sqr();
    if !(n2 > 0.0) {
        return Err(Error::usage("operation needs a state with nonzero norm"));
    }
    Ok(n2)
}

/// `⟨s, D s⟩ / ⟨s, s⟩` for an explicit operator.
pub fn expectation_of(s: &GaussianPolyState, op: &PolyDiffOperator) -> Result<Complex64> {
    let n2 = nonzero_norm(s)?;
    Ok(inner_product(s, &op.apply(s)) / n2)
}

pub fn expectation(s: &GaussianPolyState, kind: OperatorKind) -> Result<Complex64> {
    expectation_of(s, &build(kind)?)
}

/// `‖D s - λ s‖ / ‖s‖`, with the difference formed coefficient-wise before
/// taking the norm.
pub fn eigen_residual_of(s: &GaussianPolyState, op: &PolyDiffOperator, lam: Complex64) -> Result<f64> {
    let n2 = nonzero_norm(s)?;
    let diff = op.apply(s).add_scaled(-lam, s)?;
    Ok((diff.norm_sqr().max(0.0) / n2).sqrt())
}

pub fn eigen_residual(s: &GaussianPolyState, kind: OperatorKind, lam: Complex64) -> Result<f64> {
    eigen_residual_of(s, &build(kind)?, lam)
}

/// `(H_s - sign(e)·2·n(φ,α)·𝕷) s`.
pub fn schwinger_apply(s: &GaussianPolyState, phi: f64, alpha: f64, charge: Charge) -> GaussianPolyState {
    let op = build(OperatorKind::Schwinger { phi, alpha, charge }).expect("Schwinger operator is total");
    op.apply(s)
}
