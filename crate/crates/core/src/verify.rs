//! Verification suites: every operator identity, spectrum, observable, field
//! relation, rotation and Berry-phase property checked numerically, with one
//! residual per identity.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::berry::{berry_phase, cap_solid_angle, pancharatnam_phase, solid_angle, wrap_angle, SpherePath};
use crate::error::{Error, Result};
use crate::fields::{b_field, curl_fd, divergence_fd, gauge_fix, vector_potential, FieldModel, GaugeParams, FD_STEP};
use crate::gstate::{inner_product, GaussianPolyState, PolyDiffOperator};
use crate::modes::{
    beta_to_alpha, hlg_state, hlg_state_alpha_derivative, schwinger_state, schwinger_state_via_wigner, Charge,
    ModeIndex, DEFAULT_ORDER_CAP,
};
use crate::observables::{energy, mean_lz, mean_r2};
use crate::operators::{
    build, canonical_scales, dilate, eigen_residual_of, expectation_of, h_component, h_s, levi_civita,
    pseudo_angular_momentum, OperatorKind,
};
use crate::specfun::{wigner_d, HalfInt};

const SEED: u64 = 0x5eed_1a9d;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Spectra,
    Observables,
    Fields,
    Wigner,
    Berry,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Algebra,
        Suite::Spectra,
        Suite::Observables,
        Suite::Fields,
        Suite::Wigner,
        Suite::Berry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Spectra => "spectra",
            Suite::Observables => "observables",
            Suite::Fields => "fields",
            Suite::Wigner => "wigner",
            Suite::Berry => "berry",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s.trim())
            .ok_or_else(|| {
                Error::usage(format!(
                    "unknown suite {s:?}; expected one of algebra, spectra, observables, fields, wigner, berry"
                ))
            })
    }
}

/// Parses a comma-separated suite list; `all` selects every suite.
pub fn parse_suites(list: &str) -> Result<Vec<Suite>> {
    if list.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out: Vec<Suite> = Vec::new();
    for part in list.split(',').filter(|p| !p.trim().is_empty()) {
        let s: Suite = part.parse()?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    if out.is_empty() {
        return Err(Error::usage("no suites selected"));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub suite: Suite,
    pub identity: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub suites: Vec<Suite>,
    pub max_order: u32,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub entries: Vec<IdentityCheck>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.summary.all_pass
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    /// Largest `n + m` exercised by the state-based suites.
    pub max_order: u32,
    /// Per-suite tolerance replacing every built-in tolerance of that suite.
    pub overrides: BTreeMap<Suite, f64>,
}

impl VerifyConfig {
    pub fn new(max_order: u32) -> Result<Self> {
        if max_order > DEFAULT_ORDER_CAP {
            return Err(Error::usage(format!(
                "max order {max_order} exceeds the order cap {DEFAULT_ORDER_CAP}"
            )));
        }
        Ok(VerifyConfig {
            max_order,
            overrides: BTreeMap::new(),
        })
    }

    /// Applies one tolerance to all suites.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        for s in Suite::ALL {
            self.overrides.insert(s, tol);
        }
        self
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_order: 10,
            overrides: BTreeMap::new(),
        }
    }
}

struct Recorder<'a> {
    suite: Suite,
    config: &'a VerifyConfig,
    entries: Vec<IdentityCheck>,
}

impl Recorder<'_> {
    fn check(&mut self, identity: impl Into<String>, residual: f64, tolerance: f64) {
        let tolerance = self.config.overrides.get(&self.suite).copied().unwrap_or(tolerance);
        self.entries.push(IdentityCheck {
            suite: self.suite,
            identity: identity.into(),
            residual,
            tolerance,
            pass: tolerance > 0.0 && residual <= tolerance,
        });
    }
}

/// Runs the selected suites. Entries keep suite order regardless of
/// scheduling.
pub fn run(suites: &[Suite], config: &VerifyConfig) -> Result<VerifyReport> {
    let per_suite: Vec<Vec<IdentityCheck>> = suites
        .par_iter()
        .map(|&suite| run_suite(suite, config))
        .collect::<Result<_>>()?;
    let entries: Vec<IdentityCheck> = per_suite.into_iter().flatten().collect();
    let passed = entries.iter().filter(|e| e.pass).count();
    let summary = Summary {
        suites: suites.to_vec(),
        max_order: config.max_order,
        total: entries.len(),
        passed,
        failed: entries.len() - passed,
        all_pass: passed == entries.len(),
    };
    Ok(VerifyReport { entries, summary })
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    let mut rec = Recorder {
        suite,
        config,
        entries: Vec::new(),
    };
    match suite {
        Suite::Algebra => algebra(&mut rec)?,
        Suite::Spectra => spectra(&mut rec)?,
        Suite::Observables => observables(&mut rec)?,
        Suite::Fields => fields(&mut rec)?,
        Suite::Wigner => wigner(&mut rec)?,
        Suite::Berry => berry(&mut rec)?,
    }
    Ok(rec.entries)
}

fn modes_up_to(order: u32) -> Vec<ModeIndex> {
    (0..=order)
        .flat_map(|t| (0..=t).map(move |m| ModeIndex::new(t - m, m)))
        .collect()
}

/// `α_k = kπ/16`, `k = 0..=8`.
pub fn alpha_grid() -> Vec<f64> {
    (0..=8).map(|k| PI * k as f64 / 16.0).collect()
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that a broken residual cannot pass
    values.into_iter().fold(0.0, |acc: f64, v| {
        if v.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(v)
        }
    })
}

fn algebra(rec: &mut Recorder) -> Result<()> {
    const TOL: f64 = 1e-12;
    for i in 1..=3 {
        for j in 1..=3 {
            let lhs = pseudo_angular_momentum(i).commutator(&pseudo_angular_momentum(j));
            let rhs = (1..=3).fold(PolyDiffOperator::zero(), |acc, k| {
                &acc + &pseudo_angular_momentum(k).scale(Complex64::new(0.0, levi_civita(i, j, k)))
            });
            rec.check(
                format!("[L{i},L{j}] = i eps_{i}{j}k L_k"),
                (&lhs - &rhs).max_abs_coeff(),
                TOL,
            );
        }
    }
    for i in 1..=3 {
        rec.check(
            format!("[Hs,H{i}] = 0"),
            h_s().commutator(&h_component(i)).max_abs_coeff(),
            TOL,
        );
    }
    let casimir = build(OperatorKind::Casimir)?;
    let hs = h_s();
    let target = &hs.compose(&hs).scale_re(0.25) - &PolyDiffOperator::identity().scale_re(0.25);
    rec.check("K = Hs^2/4 - 1/4", (&casimir - &target).max_abs_coeff(), TOL);
    rec.check("[K,Hs] = 0", casimir.commutator(&hs).max_abs_coeff(), TOL);
    for charge in [Charge::Electron, Charge::Positron] {
        let mut worst: f64 = 0.0;
        for alpha in alpha_grid() {
            let c =
                build(OperatorKind::Hperp { alpha, charge })?.commutator(&build(OperatorKind::Has { alpha, charge })?);
            worst = worst.max(c.max_abs_coeff());
        }
        rec.check(format!("[Hperp,Has] = 0 ({})", charge_name(charge)), worst, TOL);
    }

    // H2 generates α: H2 ψ = -i ∂ψ/∂α
    let h2 = build(OperatorKind::H2)?;
    let mut worst: f64 = 0.0;
    for mode in modes_up_to(rec.config.max_order) {
        for alpha in alpha_grid() {
            let psi = hlg_state(mode.n, mode.m, alpha)?;
            let d = hlg_state_alpha_derivative(mode.n, mode.m, alpha)?;
            let diff = h2.apply(&psi).add_scaled(Complex64::new(0.0, 1.0), &d)?;
            worst = worst.max(diff.norm());
        }
    }
    rec.check("H2 psi = -i d(psi)/d(alpha)", worst, 1e-10);
    Ok(())
}

fn charge_name(c: Charge) -> &'static str {
    match c {
        Charge::Electron => "electron",
        Charge::Positron => "positron",
    }
}

fn spectra(rec: &mut Recorder) -> Result<()> {
    const TOL: f64 = 1e-10;
    let modes = modes_up_to(rec.config.max_order);
    let grid = alpha_grid();
    for charge in [Charge::Electron, Charge::Positron] {
        let per_alpha: Vec<(f64, f64)> = grid
            .par_iter()
            .map(|&alpha| -> Result<(f64, f64)> {
                let hperp = build(OperatorKind::Hperp { alpha, charge })?;
                let has = build(OperatorKind::Has { alpha, charge })?;
                let mut worst_e: f64 = 0.0;
                let mut worst_l: f64 = 0.0;
                for mode in &modes {
                    let psi = hlg_state(mode.n, mode.m, alpha)?;
                    let (n_r, l) = mode.twisted();
                    let eps = energy(n_r, l, charge);
                    worst_e = worst_e.max(eigen_residual_of(&psi, &hperp, eps.into())?);
                    let lam = -charge.sign() * f64::from(l);
                    worst_l = worst_l.max(eigen_residual_of(&psi, &has, lam.into())?);
                }
                Ok((worst_e, worst_l))
            })
            .collect::<Result<_>>()?;
        let name = charge_name(charge);
        rec.check(
            format!("Hperp psi = eps psi ({name})"),
            max_of(per_alpha.iter().map(|p| p.0)),
            TOL,
        );
        rec.check(
            format!("Has psi = -sign(e) l psi ({name})"),
            max_of(per_alpha.iter().map(|p| p.1)),
            TOL,
        );
    }

    let casimir = build(OperatorKind::Casimir)?;
    let mut worst: f64 = 0.0;
    for mode in &modes {
        let psi = hlg_state(mode.n, mode.m, 0.0)?;
        let t = f64::from(mode.order()) + 1.0;
        worst = worst.max(eigen_residual_of(&psi, &casimir, (0.25 * (t * t - 1.0)).into())?);
    }
    rec.check("K HG(n,m) = ((n+m+1)^2 - 1)/4 HG(n,m)", worst, TOL);

    let low = rec.config.max_order.min(6);
    for charge in [Charge::Electron, Charge::Positron] {
        let mut worst: f64 = 0.0;
        for beta in [0.2, 0.35, 0.5] {
            let alpha = beta_to_alpha(beta, charge)?;
            let (lx, ly) = canonical_scales(beta)?;
            let hphys = build(OperatorKind::Hphys { beta, charge })?;
            for mode in modes_up_to(low) {
                let psi = dilate(&hlg_state(mode.n, mode.m, alpha)?, lx, ly)?;
                let (n_r, l) = mode.twisted();
                let eps = energy(n_r, l, charge);
                worst = worst.max(eigen_residual_of(&psi, &hphys, eps.into())?);
            }
        }
        rec.check(
            format!("Hphys(beta) dilated psi = eps psi ({})", charge_name(charge)),
            worst,
            1e-9,
        );
    }
    Ok(())
}

/// The four angles of the orthonormality sweep.
pub const ORTHONORMALITY_ALPHAS: [f64; 4] = [0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8];

fn observables(rec: &mut Recorder) -> Result<()> {
    const TOL: f64 = 1e-10;
    let modes = modes_up_to(rec.config.max_order);
    let lz = build(OperatorKind::Lz)?;
    let r2 = build(OperatorKind::RadiusSquared)?;
    let (mut worst_lz, mut worst_r2, mut worst_e): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for alpha in alpha_grid() {
        let hperp = build(OperatorKind::Hperp {
            alpha,
            charge: Charge::Electron,
        })?;
        for mode in &modes {
            let psi = hlg_state(mode.n, mode.m, alpha)?;
            let (n_r, l) = mode.twisted();
            worst_lz = worst_lz.max((expectation_of(&psi, &lz)? - mean_lz(l, alpha)).norm());
            worst_r2 = worst_r2.max((expectation_of(&psi, &r2)? - mean_r2(n_r, l)).norm());
            worst_e = worst_e.max((expectation_of(&psi, &hperp)? - energy(n_r, l, Charge::Electron)).norm());
        }
    }
    rec.check("<Lz> = l sin(2 alpha)", worst_lz, TOL);
    rec.check("<r^2> = (2 n_r + |l| + 1)/2", worst_r2, TOL);
    rec.check("<Hperp> = eps", worst_e, TOL);

    for alpha in ORTHONORMALITY_ALPHAS {
        let states: Vec<GaussianPolyState> = modes
            .iter()
            .map(|md| hlg_state(md.n, md.m, alpha))
            .collect::<Result<_>>()?;
        let worst = (0..states.len())
            .into_par_iter()
            .map(|i| {
                (i..states.len())
                    .map(|j| {
                        let target = if i == j { 1.0 } else { 0.0 };
                        (inner_product(&states[i], &states[j]) - target).norm()
                    })
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max);
        rec.check(format!("<psi_a|psi_b> = delta_ab at alpha = {alpha:.6}"), worst, TOL);
    }
    Ok(())
}

/// Number of random sample points per field identity.
pub const FIELD_SAMPLES: usize = 1000;

fn fields(rec: &mut Recorder) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let b0 = 1.7;
    let eps = 0.1;
    let h = FD_STEP;
    let scale = b0 / eps;

    for beta in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let model = FieldModel::new(b0, beta, eps)?;
        let mut worst: f64 = 0.0;
        for _ in 0..FIELD_SAMPLES {
            let (x, y, z) = near_boundary(&mut rng, eps);
            let div = divergence_fd(|x, y, z| b_field(&model, x, y, z), x, y, z, h);
            worst = worst.max(div.abs() / scale);
        }
        rec.check(format!("div B = 0 (beta = {beta})"), worst, 1e-6);
    }

    let model = FieldModel::new(b0, 0.3, eps)?;
    let mut worst_curl: f64 = 0.0;
    let mut worst_gauge: f64 = 0.0;
    let mut worst_fixed: f64 = 0.0;
    let mut worst_div: f64 = 0.0;
    for _ in 0..FIELD_SAMPLES {
        let p = random_params(&mut rng, model.beta);
        let q = random_params(&mut rng, model.beta);
        let (x, y, z) = near_boundary(&mut rng, eps);
        let pot = |p: GaugeParams| move |x, y, z| vector_potential(&p, &model, x, y, z).expect("constraint holds");
        let curl_p = curl_fd(pot(p), x, y, z, h);
        let curl_q = curl_fd(pot(q), x, y, z, h);
        let b = b_field(&model, x, y, z);
        for k in 0..3 {
            worst_curl = worst_curl.max((curl_p[k] - b[k]).abs() / scale);
            worst_gauge = worst_gauge.max((curl_p[k] - curl_q[k]).abs() / scale);
        }

        let fixed = gauge_fix(&p, &model)?;
        let zin = eps * rng.gen_range(3.0..10.0);
        let a = fixed.potential(x, y, zin);
        let target = fixed.coulomb_form(x, y, zin);
        for k in 0..3 {
            worst_fixed = worst_fixed.max((a[k] - target[k]).abs());
        }
        worst_div = worst_div.max(divergence_fd(|x, y, z| fixed.potential(x, y, z), x, y, zin, h).abs());
    }
    rec.check("curl A = B (quadratic gauge family)", worst_curl, 1e-6);
    rec.check("curl A(p) = curl A(q) for equal d - b", worst_gauge, 1e-6);
    rec.check("A + grad chi = B0 theta (-beta y, (1-beta) x, 0)", worst_fixed, 1e-9);
    rec.check("div (A + grad chi) = 0 inside", worst_div, 1e-9);
    Ok(())
}

fn near_boundary(rng: &mut ChaCha8Rng, eps: f64) -> (f64, f64, f64) {
    (
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-3.0 * eps..3.0 * eps),
    )
}

fn random_params(rng: &mut ChaCha8Rng, beta: f64) -> GaugeParams {
    GaugeParams::with_constraint(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        beta,
    )
}

fn wigner(rec: &mut Recorder) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x77);
    let top = rec.config.max_order.min(8);
    let mut worst_coeff: f64 = 0.0;
    let mut worst_point: f64 = 0.0;
    for mode in modes_up_to(top) {
        for _ in 0..3 {
            let alpha = rng.gen_range(0.0..FRAC_PI_2);
            let phi = rng.gen_range(-PI..PI);
            let direct = schwinger_state(mode.n, mode.m, alpha, phi)?;
            let expanded = schwinger_state_via_wigner(mode.n, mode.m, alpha, phi)?;
            worst_coeff = worst_coeff.max(direct.max_coeff_diff(&expanded));
            for _ in 0..4 {
                let (x, y) = (rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
                worst_point = worst_point.max((direct.evaluate(x, y) - expanded.evaluate(x, y)).norm());
            }
        }
    }
    rec.check("Wigner-D expansion = direct sum (coefficients)", worst_coeff, 1e-10);
    rec.check("Wigner-D expansion = direct sum (pointwise)", worst_point, 1e-10);

    let mut worst_unitary: f64 = 0.0;
    for twice_j in 0..=8 {
        let j = HalfInt::from_twice(twice_j);
        for _ in 0..5 {
            let (a, b, c) = (rng.gen_range(-PI..PI), rng.gen_range(0.0..PI), rng.gen_range(-PI..PI));
            let labels: Vec<HalfInt> = (0..=twice_j).map(|k| HalfInt::from_twice(-twice_j + 2 * k)).collect();
            let mut d = Vec::with_capacity(labels.len());
            for &mp in &labels {
                let row: Vec<Complex64> = labels
                    .iter()
                    .map(|&m| wigner_d(j, mp, m, a, b, c))
                    .collect::<Result<_>>()?;
                d.push(row);
            }
            for r in 0..labels.len() {
                for s in 0..labels.len() {
                    let dot: Complex64 = (0..labels.len()).map(|k| d[r][k] * d[s][k].conj()).sum();
                    let target = if r == s { 1.0 } else { 0.0 };
                    worst_unitary = worst_unitary.max((dot - target).norm());
                }
            }
        }
    }
    rec.check("Wigner-D rows orthonormal (j <= 4)", worst_unitary, 1e-12);
    Ok(())
}

/// `|Φ_N + (l/2)Ω_cap|` for the constant-α loop with `N` segments.
pub fn latitude_phase_error(n: u32, m: u32, alpha: f64, segments: usize) -> Result<f64> {
    let path = SpherePath::latitude(alpha, segments)?;
    let phase = berry_phase(&path, n, m)?;
    let l = n as f64 - m as f64;
    Ok(wrap_angle(phase + 0.5 * l * cap_solid_angle(alpha)).abs())
}

fn berry(rec: &mut Recorder) -> Result<()> {
    let errs: Vec<f64> = [250, 500, 1000, 2000]
        .par_iter()
        .map(|&n| latitude_phase_error(3, 0, FRAC_PI_8, n))
        .collect::<Result<_>>()?;
    rec.check("phase(l=3, alpha=pi/8, N=2000) = -(3/2) Omega", errs[3], 1e-3);
    let rising = errs.windows(2).filter(|w| w[1] >= w[0]).count();
    rec.check("phase error decreases with N", rising as f64, 0.5);
    let order = max_of(errs.windows(2).map(|w| ((w[0] / w[1]).log2() - 2.0).abs()));
    rec.check("phase error decays as N^-2", order, 0.1);

    let loop_ = SpherePath::latitude(0.3, 400)?;
    let zero_l = [(0, 0), (1, 1), (2, 2)]
        .iter()
        .map(|&(n, m)| berry_phase(&loop_, n, m).map(f64::abs))
        .collect::<Result<Vec<_>>>()?;
    rec.check("phase(l=0) = 0", max_of(zero_l), 1e-8);
    let pinned = berry_phase(&SpherePath::latitude(FRAC_PI_4, 400)?, 3, 0)?;
    rec.check("phase(north-pole loop) = 0", pinned.abs(), 1e-8);

    let fwd = berry_phase(&loop_, 2, 0)?;
    let back = berry_phase(&loop_.reversed(), 2, 0)?;
    let om_f = solid_angle(&loop_)?;
    let om_b = solid_angle(&loop_.reversed())?;
    rec.check(
        "reversal flips phase and solid angle",
        wrap_angle(fwd + back).abs().max((om_f + om_b).abs()),
        1e-10,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xbe);
    let cycle = &loop_.vertices[..loop_.vertices.len() - 1];
    let states: Vec<GaussianPolyState> = cycle
        .iter()
        .map(|&(phi, alpha)| schwinger_state(2, 0, alpha, phi))
        .collect::<Result<_>>()?;
    let base = pancharatnam_phase(&states)?;
    let regauged: Vec<GaussianPolyState> = states
        .iter()
        .map(|s| s.scale(Complex64::from_polar(1.0, rng.gen_range(-PI..PI))))
        .collect();
    rec.check(
        "phase invariant under vertex re-phasing",
        wrap_angle(pancharatnam_phase(&regauged)? - base).abs(),
        1e-10,
    );
    Ok(())
}
