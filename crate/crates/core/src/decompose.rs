//! Decomposition of a Laguerre-Gauss input into the asymmetric basis
//! `ψ_{n,m}(α)` and its free evolution under the asymmetric Hamiltonian.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gstate::{inner_product, linear_combine, GaussianPolyState};
use crate::modes::{check_order, hlg_state, mode_from_twisted, Charge, ModeIndex, DEFAULT_ORDER_CAP};
use crate::observables::energy;

/// Completeness shortfall above which a truncation warning is recorded.
pub const TRUNCATION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub n: u32,
    pub m: u32,
    pub re: f64,
    pub im: f64,
    pub abs2: f64,
    /// `ε_{n,m}` in units of `ω`.
    pub energy: f64,
}

impl Coefficient {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub input: ModeIndex,
    pub alpha: f64,
    pub charge: Charge,
    pub max_order: u32,
    /// `c_{n,m} = ⟨ψ_{n,m}(α)|LG⟩` for every `n + m <= max_order`.
    pub coefficients: Vec<Coefficient>,
    pub sum_abs2: f64,
    pub truncation_warning: Option<String>,
}

/// Projects `LG(n_r, l)` onto `{ψ_{n,m}(α) : n + m <= max_order}`.
pub fn decompose(n_r: u32, l: i32, alpha: f64, charge: Charge, max_order: u32) -> Result<Decomposition> {
    check_order(ModeIndex::new(max_order, 0), DEFAULT_ORDER_CAP)?;
    let input = mode_from_twisted(n_r, l);
    check_order(input, DEFAULT_ORDER_CAP)?;
    let lg = hlg_state(input.n, input.m, std::f64::consts::FRAC_PI_4)?;
    let mut coefficients = Vec::new();
    for t in 0..=max_order {
        for m in 0..=t {
            let n = t - m;
            // blocks of different n + m are orthogonal
            let c = if t == input.order() {
                inner_product(&hlg_state(n, m, alpha)?, &lg)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let (nr, ll) = ModeIndex::new(n, m).twisted();
            coefficients.push(Coefficient {
                n,
                m,
                re: c.re,
                im: c.im,
                abs2: c.norm_sqr(),
                energy: energy(nr, ll, charge),
            });
        }
    }
    let sum_abs2: f64 = coefficients.iter().map(|c| c.abs2).sum();
    let truncation_warning = (sum_abs2 < 1.0 - TRUNCATION_TOL).then(|| {
        format!("sum |c|^2 = {sum_abs2:.12} < 1 - {TRUNCATION_TOL:.0e}: basis truncated at n + m = {max_order}")
    });
    Ok(Decomposition {
        input,
        alpha,
        charge,
        max_order,
        coefficients,
        sum_abs2,
        truncation_warning,
    })
}

impl Decomposition {
    /// `Σ c_{n,m} e^{-i ε_{n,m} t} ψ_{n,m}(α)`, with `t` in units of `1/ω`.
    pub fn evolved_state(&self, t: f64) -> Result<GaussianPolyState> {
        let kept: Vec<&Coefficient> = self.coefficients.iter().filter(|c| c.abs2 > 0.0).collect();
        if kept.is_empty() {
            return Err(Error::usage("decomposition has no nonzero coefficients"));
        }
        let weights: Vec<Complex64> = kept
            .iter()
            .map(|c| c.value() * Complex64::from_polar(1.0, -c.energy * t))
            .collect();
        let states: Vec<GaussianPolyState> = kept
            .iter()
            .map(|c| hlg_state(c.n, c.m, self.alpha))
            .collect::<Result<_>>()?;
        linear_combine(&weights, &states)
    }
}
