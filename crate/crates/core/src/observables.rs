//! Closed-form observables of asymmetric Landau states, each paired with an
//! exact inner-product evaluation on the constructed state.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modes::{hlg_state, Charge, ModeIndex};
use crate::operators::{eigen_residual, expectation, OperatorKind};
use crate::specfun::HalfInt;

/// Tolerance used by [`report`] when comparing closed forms to expectations.
pub const DEFAULT_REPORT_TOLERANCE: f64 = 1e-9;

/// Transverse energy `ω[2n_r + |l| - sign(e) l + 1]`, in units of `ω`.
pub fn energy(n_r: u32, l: i32, charge: Charge) -> f64 {
    let l = f64::from(l);
    2.0 * f64::from(n_r) + l.abs() - charge.sign() * l + 1.0
}

/// `⟨r²⟩ = (ρ_H²/2)(2n_r + |l| + 1)`, in units of `ρ_H²`.
pub fn mean_r2(n_r: u32, l: i32) -> f64 {
    0.5 * (2.0 * f64::from(n_r) + f64::from(l.abs()) + 1.0)
}

/// `⟨L_z⟩ = l sin 2α`.
pub fn mean_lz(l: i32, alpha: f64) -> f64 {
    f64::from(l) * (2.0 * alpha).sin()
}

/// Observables of `ψ_{n,m}(α)`. Energy is in units of `ω`, `r2` in units of
/// `ρ_H²` and `lz` in units of `ħ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableReport {
    pub mode: ModeIndex,
    pub alpha: f64,
    pub charge: Charge,
    pub energy: f64,
    pub r2: f64,
    pub lz: f64,
    pub casimir_j: HalfInt,
    pub m_l: HalfInt,
    /// Largest |closed form - exact expectation| over all fields.
    pub max_deviation: f64,
}

/// Builds the report from closed forms and verifies every field against
/// exact expectation values on the constructed state.
pub fn report(n: u32, m: u32, alpha: f64, charge: Charge) -> Result<ObservableReport> {
    report_with_tolerance(n, m, alpha, charge, DEFAULT_REPORT_TOLERANCE)
}

pub fn report_with_tolerance(n: u32, m: u32, alpha: f64, charge: Charge, tolerance: f64) -> Result<ObservableReport> {
    let mode = ModeIndex::new(n, m);
    let (n_r, l) = mode.twisted();
    let state = hlg_state(n, m, alpha)?;

    let e_closed = energy(n_r, l, charge);
    let r2_closed = mean_r2(n_r, l);
    let lz_closed = mean_lz(l, alpha);
    let j = mode.j();
    let casimir_closed = j.value() * (j.value() + 1.0);
    let m_l = mode.m_l();

    let hperp = OperatorKind::Hperp { alpha, charge };
    let checks: [(&'static str, f64, f64); 5] = [
        ("energy", e_closed, expectation(&state, hperp)?.re),
        ("r2", r2_closed, expectation(&state, OperatorKind::RadiusSquared)?.re),
        ("lz", lz_closed, expectation(&state, OperatorKind::Lz)?.re),
        (
            "casimir",
            casimir_closed,
            expectation(&state, OperatorKind::Casimir)?.re,
        ),
        (
            "m_l",
            m_l.value(),
            expectation(&state, OperatorKind::SpinProjection { phi: 0.0, alpha })?.re,
        ),
    ];
    let mut max_deviation: f64 = 0.0;
    for (quantity, closed, computed) in checks {
        let dev = (closed - computed).abs();
        if !(dev <= tolerance) {
            return Err(Error::Integrity {
                quantity,
                closed,
                computed,
                tolerance,
            });
        }
        max_deviation = max_deviation.max(dev);
    }
    let residual = eigen_residual(&state, hperp, e_closed.into())?;
    if !(residual <= tolerance) {
        return Err(Error::Integrity {
            quantity: "energy eigen-residual",
            closed: 0.0,
            computed: residual,
            tolerance,
        });
    }

    Ok(ObservableReport {
        mode,
        alpha,
        charge,
        energy: e_closed,
        r2: r2_closed,
        lz: lz_closed,
        casimir_j: j,
        m_l,
        max_deviation: max_deviation.max(residual),
    })
}

/// One α row of an observable sweep: closed forms, exact expectations on the
/// constructed state, and their differences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub energy_closed: f64,
    pub energy_inner: f64,
    pub r2_closed: f64,
    pub r2_inner: f64,
    pub lz_closed: f64,
    pub lz_inner: f64,
}

impl SweepRow {
    pub fn energy_delta(&self) -> f64 {
        self.energy_inner - self.energy_closed
    }

    pub fn r2_delta(&self) -> f64 {
        self.r2_inner - self.r2_closed
    }

    pub fn lz_delta(&self) -> f64 {
        self.lz_inner - self.lz_closed
    }
}

/// Evaluates energy, `⟨r²⟩` and `⟨L_z⟩` of `ψ_{n,m}(α)` for every α.
pub fn sweep(n: u32, m: u32, alphas: &[f64], charge: Charge) -> Result<Vec<SweepRow>> {
    let mode = ModeIndex::new(n, m);
    let (n_r, l) = mode.twisted();
    alphas
        .iter()
        .map(|&alpha| {
            let state = hlg_state(n, m, alpha)?;
            Ok(SweepRow {
                alpha,
                energy_closed: energy(n_r, l, charge),
                energy_inner: expectation(&state, OperatorKind::Hperp { alpha, charge })?.re,
                r2_closed: mean_r2(n_r, l),
                r2_inner: expectation(&state, OperatorKind::RadiusSquared)?.re,
                lz_closed: mean_lz(l, alpha),
                lz_inner: expectation(&state, OperatorKind::Lz)?.re,
            })
        })
        .collect()
}
