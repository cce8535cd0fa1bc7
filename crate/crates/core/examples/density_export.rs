//! Density grids of (n_r=0, l=3) across α, written as CSV with their pattern
//! classification. Pass an output directory as the first argument.

use std::f64::consts::PI;
use std::path::PathBuf;

use asymmetric_landau::export::{grid_csv, write_text};
use asymmetric_landau::gstate::GridSpec;
use asymmetric_landau::modes::{hlg_state, mode_from_twisted};
use asymmetric_landau::pattern::classify;

fn main() -> asymmetric_landau::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("als-density"));
    let mode = mode_from_twisted(0, 3);
    let grid = GridSpec::square(4.0, 161);
    for k in 0..=4 {
        let alpha = f64::from(k) * PI / 16.0;
        let state = hlg_state(mode.n, mode.m, alpha)?;
        let density = state.density_grid(&grid)?;
        let pattern = classify(&state, 4.0);
        let path = dir.join(format!("density_alpha{k}.csv"));
        write_text(&path, &grid_csv(&density))?;
        println!(
            "alpha = {k}pi/16: norm {:.9}, {:?} (contrast {:.3}, striped {:.2}, angular nodes {}) -> {}",
            density.integral(),
            pattern.kind,
            pattern.angular_contrast,
            pattern.striped_fraction,
            pattern.angular_nodes,
            path.display()
        );
    }
    Ok(())
}
