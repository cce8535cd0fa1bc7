//! The `als` command-line tool.
//!
//! ```text
//! als <density|table|verify|berry|decompose> [--flags]
//! ```
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

mod angle;
mod commands;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::gstate::GridSpec;
use crate::modes::{beta_to_alpha, mode_from_twisted, Charge, ModeIndex, DEFAULT_ORDER_CAP};
use crate::verify::Suite;

pub use angle::parse_angle;
pub use commands::{BerryReport, ConvergencePoint, DecomposeSidecar, DensitySidecar, ModeLabel, TableSidecar, Units};

#[derive(Debug, Parser)]
#[command(
    name = "als",
    version,
    about = "Asymmetric Landau states: densities, tables, verification, Berry phases"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density grid of one state, as CSV plus a JSON sidecar.
    Density(DensityArgs),
    /// Energy, <r^2> and <Lz> across an alpha sweep.
    Table(TableArgs),
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Discrete Berry phase around a loop on the orbital Poincare sphere.
    Berry(BerryArgs),
    /// Expand a Laguerre-Gauss mode in the asymmetric basis and evolve it.
    Decompose(DecomposeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChargeArg {
    Electron,
    Positron,
}

impl From<ChargeArg> for Charge {
    fn from(c: ChargeArg) -> Self {
        match c {
            ChargeArg::Electron => Charge::Electron,
            ChargeArg::Positron => Charge::Positron,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModeArgs {
    /// Cartesian index n; --m defaults to 0.
    #[arg(long)]
    pub n: Option<u32>,
    /// Cartesian index m; --n defaults to 0.
    #[arg(long)]
    pub m: Option<u32>,
    /// Radial index n_r; --l defaults to 0.
    #[arg(long = "n-r")]
    pub n_r: Option<u32>,
    /// OAM index l; --n-r defaults to 0.
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<i32>,
}

impl ModeArgs {
    pub fn resolve(&self) -> Result<ModeIndex> {
        let cart = self.n.is_some() || self.m.is_some();
        let twisted = self.n_r.is_some() || self.l.is_some();
        match (cart, twisted) {
            (true, true) => Err(Error::usage("give either --n/--m or --n-r/--l, not both")),
            (false, false) => Err(Error::usage("a mode is required: --n/--m or --n-r/--l")),
            (true, false) => Ok(ModeIndex::new(self.n.unwrap_or(0), self.m.unwrap_or(0))),
            (false, true) => Ok(mode_from_twisted(self.n_r.unwrap_or(0), self.l.unwrap_or(0))),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SymmetryArgs {
    /// State parameter alpha in radians or as a fraction of pi, e.g. pi/8.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Field asymmetry beta in [0, 1], converted to alpha using --charge.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, value_enum, default_value = "electron")]
    pub charge: ChargeArg,
}

impl SymmetryArgs {
    /// α from `--alpha` or `--beta`, or `default` when neither is given.
    pub fn resolve(&self, default: Option<f64>) -> Result<Option<f64>> {
        match (&self.alpha, self.beta) {
            (Some(_), Some(_)) => Err(Error::usage("give either --alpha or --beta, not both")),
            (Some(a), None) => parse_angle(a).map(Some),
            (None, Some(b)) => beta_to_alpha(b, self.charge.into()).map(Some),
            (None, None) => Ok(default),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct UnitArgs {
    /// Larmor frequency; energies are reported in units of hbar times this.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Landau radius; lengths are reported in units of this.
    #[arg(long = "rho-h", default_value_t = 1.0)]
    pub rho_h: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Half width of the square grid, in the length unit of --rho-h.
    #[arg(long, default_value_t = 5.0)]
    pub extent: f64,
    /// Points per side of the square grid.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Explicit grid `x_min,x_max,y_min,y_max,nx,ny`, overriding --extent/--points.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
}

impl GridArgs {
    pub fn resolve(&self) -> Result<GridSpec> {
        let spec = match &self.grid {
            None => GridSpec::square(self.extent, self.points),
            Some(text) => {
                let parts: Vec<&str> = text.split(',').map(str::trim).collect();
                if parts.len() != 6 {
                    return Err(Error::usage("--grid needs x_min,x_max,y_min,y_max,nx,ny"));
                }
                let f = |s: &str| {
                    s.parse::<f64>()
                        .map_err(|_| Error::usage(format!("bad grid bound {s:?}")))
                };
                let u = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::usage(format!("bad grid count {s:?}")))
                };
                GridSpec {
                    x_min: f(parts[0])?,
                    x_max: f(parts[1])?,
                    y_min: f(parts[2])?,
                    y_max: f(parts[3])?,
                    nx: u(parts[4])?,
                    ny: u(parts[5])?,
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[command(flatten)]
    pub symmetry: SymmetryArgs,
    /// Rotation angle phi of the state.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub phi: String,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub units: UnitArgs,
    #[arg(long = "max-order", default_value_t = DEFAULT_ORDER_CAP)]
    pub max_order: u32,
    /// CSV output; the sidecar goes next to it with a .json extension.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[arg(long = "alpha-min", allow_hyphen_values = true)]
    pub alpha_min: Option<String>,
    #[arg(long = "alpha-max", allow_hyphen_values = true)]
    pub alpha_max: Option<String>,
    /// Alternative to --alpha-min, converted with --charge.
    #[arg(long = "beta-min")]
    pub beta_min: Option<f64>,
    /// Alternative to --alpha-max, converted with --charge.
    #[arg(long = "beta-max")]
    pub beta_max: Option<f64>,
    #[arg(long, default_value_t = 16)]
    pub rows: usize,
    #[arg(long, value_enum, default_value = "electron")]
    pub charge: ChargeArg,
    /// Comma-separated subset of energy,r2,lz.
    #[arg(long, default_value = "energy,r2,lz")]
    pub observables: String,
    #[command(flatten)]
    pub units: UnitArgs,
    #[arg(long = "max-order", default_value_t = DEFAULT_ORDER_CAP)]
    pub max_order: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Comma-separated suites, or `all`.
    #[arg(long, default_value = "all")]
    pub suites: String,
    #[arg(long = "max-order", default_value_t = 10)]
    pub max_order: u32,
    /// Tolerance applied to every selected identity; 0 forces failure.
    #[arg(long)]
    pub tol: Option<f64>,
    /// JSON report path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LoopKind {
    /// Constant alpha, phi from 0 to pi.
    Latitude,
    /// Through both poles at fixed phi.
    GreatCircle,
}

#[derive(Debug, Clone, Args)]
pub struct BerryArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[arg(long = "loop", value_enum, default_value = "latitude")]
    pub loop_kind: LoopKind,
    #[command(flatten)]
    pub symmetry: SymmetryArgs,
    /// Meridian of the great-circle loop.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub phi: String,
    #[arg(long, default_value_t = 2000)]
    pub segments: usize,
    /// Also evaluate N/8, N/4 and N/2 segments.
    #[arg(long)]
    pub convergence: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DecomposeArgs {
    #[arg(long = "n-r")]
    pub n_r: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub l: i32,
    #[command(flatten)]
    pub symmetry: SymmetryArgs,
    /// Evolution time in units of 1/omega.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long = "max-order", default_value_t = 10)]
    pub max_order: u32,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub units: UnitArgs,
    /// Output directory for coefficients.csv, density.csv and decompose.json.
    #[arg(long = "out-dir")]
    pub out_dir: PathBuf,
}

/// Shared settings of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tolerances: BTreeMap<Suite, f64>,
    pub max_order: u32,
    pub grid: GridSpec,
    pub out_dir: PathBuf,
    pub omega: f64,
    pub rho_h: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerances: BTreeMap::new(),
            max_order: DEFAULT_ORDER_CAP,
            grid: GridSpec::square(5.0, 201),
            out_dir: PathBuf::from("."),
            omega: 1.0,
            rho_h: 1.0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_order > DEFAULT_ORDER_CAP {
            return Err(Error::usage(format!(
                "--max-order {} exceeds the order cap {DEFAULT_ORDER_CAP}",
                self.max_order
            )));
        }
        for (suite, &tol) in &self.tolerances {
            if !(tol >= 0.0) {
                return Err(Error::usage(format!(
                    "tolerance for {suite} must be nonnegative, got {tol}"
                )));
            }
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::usage(format!("--omega must be positive, got {}", self.omega)));
        }
        if !(self.rho_h > 0.0 && self.rho_h.is_finite()) {
            return Err(Error::usage(format!("--rho-h must be positive, got {}", self.rho_h)));
        }
        self.grid.validate()
    }

    /// The grid in units of the Landau radius.
    pub fn dimensionless_grid(&self) -> GridSpec {
        let r = self.rho_h;
        GridSpec {
            x_min: self.grid.x_min / r,
            x_max: self.grid.x_max / r,
            y_min: self.grid.y_min / r,
            y_max: self.grid.y_max / r,
            ..self.grid
        }
    }

    pub fn check_mode(&self, mode: ModeIndex) -> Result<()> {
        if mode.order() > self.max_order {
            return Err(Error::usage(format!(
                "mode (n={}, m={}) has n+m = {} above the order cap {}",
                mode.n,
                mode.m,
                mode.order(),
                self.max_order
            )));
        }
        Ok(())
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Messages go to `out` and `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "als: {e}");
            e.exit_code()
        }
    }
}

/// Entry point used by the `als` binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
