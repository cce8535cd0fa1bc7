use std::f64::consts::FRAC_PI_4;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{parse_angle, BerryArgs, Command, DecomposeArgs, DensityArgs, LoopKind, RunConfig, TableArgs, VerifyArgs};
use crate::berry::{berry_phase, solid_angle, wrap_angle, SpherePath};
use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::export::{fmt_f64, grid_csv, table_csv, write_json, write_text};
use crate::gstate::{DensityGrid, GaussianPolyState, GridSpec};
use crate::modes::{alpha_to_beta, beta_to_alpha, normalize_alpha, schwinger_state, Charge, ModeIndex};
use crate::observables::sweep;
use crate::pattern::{classify, PatternSummary};
use crate::verify::{parse_suites, run, VerifyConfig};

pub(super) fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Density(a) => density(&a, out),
        Command::Table(a) => table(&a, out),
        Command::Verify(a) => verify(&a, out),
        Command::Berry(a) => berry(&a, out),
        Command::Decompose(a) => decompose_cmd(&a, out),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeLabel {
    pub n: u32,
    pub m: u32,
    pub n_r: u32,
    pub l: i32,
}

impl From<ModeIndex> for ModeLabel {
    fn from(mode: ModeIndex) -> Self {
        let (n_r, l) = mode.twisted();
        ModeLabel {
            n: mode.n,
            m: mode.m,
            n_r,
            l,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub omega: f64,
    pub rho_h: f64,
    pub length: String,
    pub density: String,
    pub energy: String,
}

impl Units {
    fn new(omega: f64, rho_h: f64) -> Self {
        Units {
            omega,
            rho_h,
            length: "length unit of rho_h".into(),
            density: "1/length^2".into(),
            energy: "hbar * frequency unit of omega".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySidecar {
    pub mode: ModeLabel,
    pub alpha: f64,
    pub beta: f64,
    pub charge: Charge,
    pub phi: f64,
    pub grid: GridSpec,
    pub norm_check: f64,
    pub density_min: f64,
    pub density_max: f64,
    pub pattern: PatternSummary,
    pub units: Units,
    pub csv: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableSidecar {
    pub mode: ModeLabel,
    pub charge: Charge,
    pub rows: usize,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub observables: Vec<String>,
    pub max_abs_delta: f64,
    pub units: Units,
    pub csv: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub segments: usize,
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BerryReport {
    pub mode: ModeLabel,
    pub path: String,
    pub alpha: f64,
    pub phi: f64,
    pub segments: usize,
    pub phase: f64,
    /// Signed solid angle, absent for loops enclosing no area.
    pub solid_angle: Option<f64>,
    /// `-(l/2) Ω` wrapped into `(-π, π]`.
    pub expected: f64,
    pub deviation: f64,
    pub convergence: Vec<ConvergencePoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecomposeSidecar {
    pub input: ModeLabel,
    pub alpha: f64,
    pub charge: Charge,
    pub t: f64,
    pub max_order: u32,
    pub sum_abs2: f64,
    pub truncation_warning: Option<String>,
    pub nonzero_coefficients: usize,
    pub grid: GridSpec,
    pub norm_check: f64,
    pub units: Units,
    pub coefficients_csv: String,
    pub density_csv: String,
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Density on the physical grid of `config`.
fn physical_density(state: &GaussianPolyState, config: &RunConfig) -> Result<DensityGrid> {
    let mut grid = state.density_grid(&config.dimensionless_grid())?;
    let inv_area = 1.0 / (config.rho_h * config.rho_h);
    grid.values.iter_mut().for_each(|v| *v *= inv_area);
    grid.spec = config.grid;
    Ok(grid)
}

fn density(a: &DensityArgs, out: &mut dyn Write) -> Result<i32> {
    let requested = a.mode.resolve()?;
    let raw_alpha = a
        .symmetry
        .resolve(None)?
        .ok_or_else(|| Error::usage("density needs --alpha or --beta"))?;
    let (mode, alpha) = normalize_alpha(requested, raw_alpha)?;
    if mode != requested || alpha != raw_alpha {
        writeln!(
            out,
            "note: (n={}, m={}, alpha={}) is the same state as (n={}, m={}, alpha={}) up to a global phase",
            requested.n,
            requested.m,
            fmt_f64(raw_alpha),
            mode.n,
            mode.m,
            fmt_f64(alpha)
        )?;
    }
    let phi = parse_angle(&a.phi)?;
    let charge: Charge = a.symmetry.charge.into();
    let config = RunConfig {
        max_order: a.max_order,
        grid: a.grid.resolve()?,
        out_dir: a.out.parent().map(Path::to_path_buf).unwrap_or_default(),
        omega: a.units.omega,
        rho_h: a.units.rho_h,
        ..RunConfig::default()
    };
    config.validate()?;
    config.check_mode(mode)?;

    let state = schwinger_state(mode.n, mode.m, alpha, phi)?;
    let grid = physical_density(&state, &config)?;
    let d = config.dimensionless_grid();
    let r_max = [d.x_min, d.x_max, d.y_min, d.y_max]
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    let pattern = classify(&state, r_max);
    let sidecar = DensitySidecar {
        mode: mode.into(),
        alpha,
        beta: alpha_to_beta(alpha, charge),
        charge,
        phi,
        grid: config.grid,
        norm_check: grid.integral(),
        density_min: grid.min(),
        density_max: grid.max(),
        pattern,
        units: Units::new(config.omega, config.rho_h),
        csv: file_name(&a.out),
    };
    write_text(&a.out, &grid_csv(&grid))?;
    let side = a.out.with_extension("json");
    write_json(&side, &sidecar)?;
    writeln!(
        out,
        "density n={} m={} alpha={} phi={}: norm {} pattern {:?} -> {} + {}",
        mode.n,
        mode.m,
        fmt_f64(alpha),
        fmt_f64(phi),
        fmt_f64(sidecar.norm_check),
        sidecar.pattern.kind,
        a.out.display(),
        side.display()
    )?;
    Ok(0)
}

fn sweep_bound(alpha: &Option<String>, beta: Option<f64>, charge: Charge, default: f64, name: &str) -> Result<f64> {
    match (alpha, beta) {
        (Some(_), Some(_)) => Err(Error::usage(format!("give either --alpha-{name} or --beta-{name}"))),
        (Some(a), None) => parse_angle(a),
        (None, Some(b)) => beta_to_alpha(b, charge),
        (None, None) => Ok(default),
    }
}

fn table(a: &TableArgs, out: &mut dyn Write) -> Result<i32> {
    let mode = a.mode.resolve()?;
    let charge: Charge = a.charge.into();
    let config = RunConfig {
        max_order: a.max_order,
        omega: a.units.omega,
        rho_h: a.units.rho_h,
        ..RunConfig::default()
    };
    config.validate()?;
    config.check_mode(mode)?;
    let lo = sweep_bound(&a.alpha_min, a.beta_min, charge, 0.0, "min")?;
    let hi = sweep_bound(&a.alpha_max, a.beta_max, charge, FRAC_PI_4, "max")?;
    if a.rows == 0 {
        return Err(Error::usage("--rows must be at least 1"));
    }
    let alphas: Vec<f64> = (0..a.rows)
        .map(|k| {
            if a.rows == 1 {
                lo
            } else {
                lo + (hi - lo) * k as f64 / (a.rows - 1) as f64
            }
        })
        .collect();

    let mut selected: Vec<&str> = Vec::new();
    for name in a.observables.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if !["energy", "r2", "lz"].contains(&name) {
            return Err(Error::usage(format!(
                "unknown observable {name:?}; expected energy, r2 or lz"
            )));
        }
        if !selected.contains(&name) {
            selected.push(name);
        }
    }
    if selected.is_empty() {
        return Err(Error::usage("no observables selected"));
    }

    let rows = sweep(mode.n, mode.m, &alphas, charge)?;
    let (w, r2u) = (config.omega, config.rho_h * config.rho_h);
    let mut header: Vec<String> = vec!["alpha[rad]".into()];
    for name in &selected {
        let unit = match *name {
            "energy" => "hbar*omega",
            "r2" => "rho_h^2",
            _ => "hbar",
        };
        for part in ["closed", "inner", "delta"] {
            header.push(format!("{name}_{part}[{unit}]"));
        }
    }
    let mut max_abs_delta: f64 = 0.0;
    let cells: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![r.alpha];
            for name in &selected {
                let (closed, inner, scale) = match *name {
                    "energy" => (r.energy_closed, r.energy_inner, w),
                    "r2" => (r.r2_closed, r.r2_inner, r2u),
                    _ => (r.lz_closed, r.lz_inner, 1.0),
                };
                let delta = (inner - closed) * scale;
                max_abs_delta = max_abs_delta.max(delta.abs());
                row.extend([closed * scale, inner * scale, delta]);
            }
            row
        })
        .collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    write_text(&a.out, &table_csv(&header_refs, &cells)?)?;
    let sidecar = TableSidecar {
        mode: mode.into(),
        charge,
        rows: a.rows,
        alpha_min: lo,
        alpha_max: hi,
        observables: selected.iter().map(|s| s.to_string()).collect(),
        max_abs_delta,
        units: Units::new(config.omega, config.rho_h),
        csv: file_name(&a.out),
    };
    let side = a.out.with_extension("json");
    write_json(&side, &sidecar)?;
    writeln!(
        out,
        "table n={} m={}: {} rows, max |delta| {} -> {}",
        mode.n,
        mode.m,
        a.rows,
        fmt_f64(max_abs_delta),
        a.out.display()
    )?;
    Ok(0)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let suites = parse_suites(&a.suites)?;
    let mut config = RunConfig {
        max_order: a.max_order,
        ..RunConfig::default()
    };
    if let Some(tol) = a.tol {
        for &s in &suites {
            config.tolerances.insert(s, tol);
        }
    }
    config.validate()?;
    let mut vc = VerifyConfig::new(config.max_order)?;
    vc.overrides = config.tolerances.clone();
    let report = run(&suites, &vc)?;
    for e in &report.entries {
        writeln!(
            out,
            "{} [{}] {}: residual {} tolerance {}",
            if e.pass { "PASS" } else { "FAIL" },
            e.suite,
            e.identity,
            fmt_f64(e.residual),
            fmt_f64(e.tolerance)
        )?;
    }
    writeln!(
        out,
        "{} of {} identities passed",
        report.summary.passed, report.summary.total
    )?;
    if let Some(path) = &a.out {
        write_json(path, &report)?;
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn berry(a: &BerryArgs, out: &mut dyn Write) -> Result<i32> {
    let mode = a.mode.resolve()?;
    let phi = parse_angle(&a.phi)?;
    let alpha = a.symmetry.resolve(None)?;
    let make = |segments: usize| -> Result<SpherePath> {
        match a.loop_kind {
            LoopKind::Latitude => {
                let alpha = alpha.ok_or_else(|| Error::usage("a latitude loop needs --alpha or --beta"))?;
                SpherePath::latitude(alpha, segments)
            }
            LoopKind::GreatCircle => SpherePath::great_circle(phi, segments),
        }
    };
    let path = make(a.segments)?;
    let phase = berry_phase(&path, mode.n, mode.m)?;
    let omega = match solid_angle(&path) {
        Ok(v) => Some(v),
        Err(Error::Usage(_)) => None,
        Err(e) => return Err(e),
    };
    let l = f64::from(mode.l());
    let expected = wrap_angle(-0.5 * l * omega.unwrap_or(0.0));
    let mut convergence = Vec::new();
    if a.convergence {
        for div in [8, 4, 2] {
            let segments = a.segments / div;
            if segments >= 3 {
                convergence.push(ConvergencePoint {
                    segments,
                    phase: berry_phase(&make(segments)?, mode.n, mode.m)?,
                });
            }
        }
        convergence.push(ConvergencePoint {
            segments: a.segments,
            phase,
        });
    }
    let report = BerryReport {
        mode: mode.into(),
        path: match a.loop_kind {
            LoopKind::Latitude => "latitude".into(),
            LoopKind::GreatCircle => "great-circle".into(),
        },
        alpha: alpha.unwrap_or(0.0),
        phi,
        segments: a.segments,
        phase,
        solid_angle: omega,
        expected,
        deviation: wrap_angle(phase - expected).abs(),
        convergence,
    };
    writeln!(
        out,
        "berry n={} m={} {} loop, {} segments: phase {} expected {} solid angle {}",
        mode.n,
        mode.m,
        report.path,
        a.segments,
        fmt_f64(phase),
        fmt_f64(expected),
        omega.map(fmt_f64).unwrap_or_else(|| "none".into())
    )?;
    if let Some(p) = &a.out {
        write_json(p, &report)?;
    }
    Ok(0)
}

fn decompose_cmd(a: &DecomposeArgs, out: &mut dyn Write) -> Result<i32> {
    let charge: Charge = a.symmetry.charge.into();
    let alpha = a
        .symmetry
        .resolve(None)?
        .ok_or_else(|| Error::usage("decompose needs --alpha or --beta"))?;
    // the basis at α + π/2 is the basis at α with n and m swapped
    let (_, alpha) = normalize_alpha(ModeIndex::new(0, 0), alpha)?;
    let config = RunConfig {
        max_order: a.max_order,
        grid: a.grid.resolve()?,
        out_dir: a.out_dir.clone(),
        omega: a.units.omega,
        rho_h: a.units.rho_h,
        ..RunConfig::default()
    };
    config.validate()?;
    let d = decompose(a.n_r, a.l, alpha, charge, config.max_order)?;
    config.check_mode(d.input)?;

    let phase_t = a.t;
    let header = [
        "n",
        "m",
        "re",
        "im",
        "abs2",
        "energy[hbar*omega]",
        "evolved_re",
        "evolved_im",
    ];
    let rows: Vec<Vec<f64>> = d
        .coefficients
        .iter()
        .map(|c| {
            let evolved = c.value() * num_complex::Complex64::from_polar(1.0, -c.energy * phase_t);
            vec![
                f64::from(c.n),
                f64::from(c.m),
                c.re,
                c.im,
                c.abs2,
                c.energy * config.omega,
                evolved.re,
                evolved.im,
            ]
        })
        .collect();
    let coeff_path: PathBuf = config.out_dir.join("coefficients.csv");
    let density_path: PathBuf = config.out_dir.join("density.csv");
    write_text(&coeff_path, &table_csv(&header, &rows)?)?;
    let (norm_check, grid_text) = match d.evolved_state(phase_t) {
        Ok(state) => {
            let grid = physical_density(&state, &config)?;
            (grid.integral(), grid_csv(&grid))
        }
        Err(Error::Usage(_)) => {
            let zero = DensityGrid {
                spec: config.grid,
                values: vec![0.0; config.grid.nx * config.grid.ny],
            };
            (0.0, grid_csv(&zero))
        }
        Err(e) => return Err(e),
    };
    write_text(&density_path, &grid_text)?;
    let sidecar = DecomposeSidecar {
        input: d.input.into(),
        alpha,
        charge,
        t: phase_t,
        max_order: d.max_order,
        sum_abs2: d.sum_abs2,
        truncation_warning: d.truncation_warning.clone(),
        nonzero_coefficients: d.coefficients.iter().filter(|c| c.abs2 > 1e-24).count(),
        grid: config.grid,
        norm_check,
        units: Units::new(config.omega, config.rho_h),
        coefficients_csv: file_name(&coeff_path),
        density_csv: file_name(&density_path),
    };
    write_json(&config.out_dir.join("decompose.json"), &sidecar)?;
    writeln!(
        out,
        "decompose n_r={} l={} alpha={}: sum |c|^2 {}, {} nonzero coefficients -> {}",
        a.n_r,
        a.l,
        fmt_f64(alpha),
        fmt_f64(d.sum_abs2),
        sidecar.nonzero_coefficients,
        config.out_dir.display()
    )?;
    if let Some(w) = &d.truncation_warning {
        writeln!(out, "warning: {w}")?;
    }
    Ok(0)
}
