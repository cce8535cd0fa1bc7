//! Boundary field of an elliptical solenoid, the quadratic gauge family of
//! vector potentials that produce it, and the gauge transformation that
//! reduces the family to the Coulomb-gauge potential
//! `A' = B0 θ(z) (-β y, (1-β) x, 0)`.
//!
//! The step `θ(z)` and its derivative `δ(z)` are replaced by the smooth pair
//! `θ_ε(z) = (1 + tanh(z/ε))/2`, `δ_ε = dθ_ε/dz`, so every relation can be
//! checked pointwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

/// Default step for the central-difference diagnostics.
pub const FD_STEP: f64 = 1e-5;

/// Tolerance on the gauge constraint `d - b = β`.
const CONSTRAINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldModel {
    pub b0: f64,
    pub beta: f64,
    pub eps: f64,
}

impl FieldModel {
    pub fn new(b0: f64, beta: f64, eps: f64) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::domain(format!(
                "regularisation width must be positive, got {eps}"
            )));
        }
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::domain(format!("beta must lie in [0, 1], got {beta}")));
        }
        Ok(FieldModel { b0, beta, eps })
    }

    /// Smoothed step `θ_ε(z)`.
    pub fn theta(&self, z: f64) -> f64 {
        0.5 * (1.0 + (z / self.eps).tanh())
    }

    /// `δ_ε(z) = dθ_ε/dz`.
    pub fn delta(&self, z: f64) -> f64 {
        let t = (z / self.eps).tanh();
        0.5 * (1.0 - t * t) / self.eps
    }
}

/// Constants of the general quadratic vector potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GaugeParams {
    /// Parameters with `d` fixed by the constraint `d - b = β`.
    pub fn with_constraint(a: f64, b: f64, c: f64, beta: f64) -> Self {
        GaugeParams { a, b, c, d: b + beta }
    }

    /// The already-fixed gauge, `a = c = d = 0`, `b = -β`.
    pub fn coulomb(beta: f64) -> Self {
        GaugeParams {
            a: 0.0,
            b: -beta,
            c: 0.0,
            d: 0.0,
        }
    }

    pub fn check(&self, model: &FieldModel) -> Result<()> {
        if ((self.d - self.b) - model.beta).abs() > CONSTRAINT_TOL {
            return Err(Error::domain(format!(
                "gauge constants violate d - b = beta: d - b = {}, beta = {}",
                self.d - self.b,
                model.beta
            )));
        }
        Ok(())
    }
}

/// `B = B0 (-(1-β) x δ_ε(z), -β y δ_ε(z), θ_ε(z))`.
pub fn b_field(model: &FieldModel, x: f64, y: f64, z: f64) -> Vec3 {
    let d = model.delta(z);
    [
        -model.b0 * (1.0 - model.beta) * x * d,
        -model.b0 * model.beta * y * d,
        model.b0 * model.theta(z),
    ]
}

/// Quadratic-gauge vector potential
/// `B0 (θ(ax + by), θ((1+b)x + cy), δ(a x²/2 + d xy + c y²/2))`.
pub fn vector_potential(params: &GaugeParams, model: &FieldModel, x: f64, y: f64, z: f64) -> Result<Vec3> {
    params.check(model)?;
    Ok(potential_unchecked(params, model, x, y, z))
}

fn potential_unchecked(p: &GaugeParams, model: &FieldModel, x: f64, y: f64, z: f64) -> Vec3 {
    let th = model.theta(z);
    let de = model.delta(z);
    [
        model.b0 * th * (p.a * x + p.b * y),
        model.b0 * th * ((1.0 + p.b) * x + p.c * y),
        model.b0 * de * quadratic_form(p, x, y),
    ]
}

fn quadratic_form(p: &GaugeParams, x: f64, y: f64) -> f64 {
    0.5 * p.a * x * x + p.d * x * y + 0.5 * p.c * y * y
}

/// Result of fixing the gauge: `A' = A + ∇χ` with
/// `χ = -B0 θ_ε(z)(a x²/2 + d xy + c y²/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeFixed {
    pub params: GaugeParams,
    pub model: FieldModel,
}

impl GaugeFixed {
    pub fn chi(&self, x: f64, y: f64, z: f64) -> f64 {
        -self.model.b0 * self.model.theta(z) * quadratic_form(&self.params, x, y)
    }

    /// Analytic `∇χ`.
    pub fn grad_chi(&self, x: f64, y: f64, z: f64) -> Vec3 {
        let p = &self.params;
        let b0 = self.model.b0;
        let th = self.model.theta(z);
        [
            -b0 * th * (p.a * x + p.d * y),
            -b0 * th * (p.d * x + p.c * y),
            -b0 * self.model.delta(z) * quadratic_form(p, x, y),
        ]
    }

    /// `A + ∇χ`.
    pub fn potential(&self, x: f64, y: f64, z: f64) -> Vec3 {
        let a = potential_unchecked(&self.params, &self.model, x, y, z);
        let g = self.grad_chi(x, y, z);
        [a[0] + g[0], a[1] + g[1], a[2] + g[2]]
    }

    /// The target form `B0 θ_ε(z) (-β y, (1-β) x, 0)`.
    pub fn coulomb_form(&self, x: f64, y: f64, z: f64) -> Vec3 {
        let th = self.model.theta(z);
        let beta = self.model.beta;
        [
            -self.model.b0 * beta * th * y,
            self.model.b0 * (1.0 - beta) * th * x,
            0.0,
        ]
    }
}

pub fn gauge_fix(params: &GaugeParams, model: &FieldModel) -> Result<GaugeFixed> {
    params.check(model)?;
    Ok(GaugeFixed {
        params: *params,
        model: *model,
    })
}

/// Central-difference divergence of a vector field.
pub fn divergence_fd<F: Fn(f64, f64, f64) -> Vec3>(f: F, x: f64, y: f64, z: f64, h: f64) -> f64 {
    let dx = (f(x + h, y, z)[0] - f(x - h, y, z)[0]) / (2.0 * h);
    let dy = (f(x, y + h, z)[1] - f(x, y - h, z)[1]) / (2.0 * h);
    let dz = (f(x, y, z + h)[2] - f(x, y, z - h)[2]) / (2.0 * h);
    dx + dy + dz
}

/// Central-difference curl of a vector field.
pub fn curl_fd<F: Fn(f64, f64, f64) -> Vec3>(f: F, x: f64, y: f64, z: f64, h: f64) -> Vec3 {
    let d = |axis: usize, comp: usize| {
        let mut p = [x, y, z];
        let mut m = [x, y, z];
        p[axis] += h;
        m[axis] -= h;
        (f(p[0], p[1], p[2])[comp] - f(m[0], m[1], m[2])[comp]) / (2.0 * h)
    };
    [d(1, 2) - d(2, 1), d(2, 0) - d(0, 2), d(0, 1) - d(1, 0)]
}
