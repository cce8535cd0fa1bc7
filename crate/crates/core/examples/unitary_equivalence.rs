//! The physical transverse Hamiltonian in the fixed gauge, checked on dilated
//! asymmetric states for several field asymmetries.

use num_complex::Complex64;

use asymmetric_landau::modes::{beta_to_alpha, hlg_state, Charge};
use asymmetric_landau::operators::{canonical_scales, dilate, eigen_residual, OperatorKind};

fn main() -> asymmetric_landau::Result<()> {
    for beta in [0.2, 0.35, 0.5, 0.8] {
        let (lx, ly) = canonical_scales(beta)?;
        for charge in [Charge::Electron, Charge::Positron] {
            let alpha = beta_to_alpha(beta, charge)?;
            let mut worst = 0.0f64;
            for order in 0..=6u32 {
                for m in 0..=order {
                    let n = order - m;
                    let level = match charge {
                        Charge::Electron => 2 * n + 1,
                        Charge::Positron => 2 * m + 1,
                    };
                    let s = dilate(&hlg_state(n, m, alpha)?, lx, ly)?;
                    let r = eigen_residual(
                        &s,
                        OperatorKind::Hphys { beta, charge },
                        Complex64::new(f64::from(level), 0.0),
                    )?;
                    worst = worst.max(r);
                }
            }
            println!(
                "beta={beta:.2} {charge:?}: alpha={alpha:.6}, scales ({lx:.4}, {ly:.4}), max residual {worst:.2e}"
            );
        }
    }
    Ok(())
}
