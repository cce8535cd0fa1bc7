//! Closed-form energies, mean square radii and OAM projections, each checked
//! against exact inner products on the constructed state.

use std::f64::consts::PI;

use asymmetric_landau::modes::Charge;
use asymmetric_landau::observables::{report, sweep};

fn main() -> asymmetric_landau::Result<()> {
    for (n, m, alpha, charge) in [
        (3, 0, PI / 4.0, Charge::Electron),
        (2, 2, 0.0, Charge::Electron),
        (1, 0, PI / 8.0, Charge::Positron),
    ] {
        let r = report(n, m, alpha, charge)?;
        println!(
            "({n},{m}) alpha={alpha:.4} {charge:?}: E={} r2={} lz={:.10} j={} m_l={} max dev {:.1e}",
            r.energy, r.r2, r.lz, r.casimir_j, r.m_l, r.max_deviation
        );
    }

    let alphas: Vec<f64> = (0..=8).map(|k| f64::from(k) * PI / 32.0).collect();
    println!("{:>8} {:>8} {:>8} {:>14} {:>10}", "alpha", "E", "r2", "lz", "lz dev");
    for row in sweep(3, 0, &alphas, Charge::Electron)? {
        println!(
            "{:>8.5} {:>8.4} {:>8.4} {:>14.10} {:>10.1e}",
            row.alpha,
            row.energy_inner,
            row.r2_inner,
            row.lz_inner,
            row.lz_delta()
        );
    }
    Ok(())
}
