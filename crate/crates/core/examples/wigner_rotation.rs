//! Generalised states on the orbital Poincaré sphere rebuilt from
//! Hermite-Gauss modes with Wigner D-functions.

use asymmetric_landau::modes::{
    euler_angles, schwinger_state, schwinger_state_via_wigner, wigner_decompose, ModeIndex,
};

fn main() -> asymmetric_landau::Result<()> {
    let (n, m) = (2, 1);
    let mode = ModeIndex::new(n, m);
    for (phi, alpha) in [(0.0, 0.3), (0.7, 0.3), (-1.2, 1.1)] {
        let angles = euler_angles(phi, alpha);
        let coeffs = wigner_decompose(mode.j(), mode.m_l(), angles.hg_basis_rotation())?;
        println!(
            "phi={phi:+.2} alpha={alpha:.2}: A={:.6} B={:.6} C={:.6}",
            angles.a, angles.b, angles.c
        );
        for (mp, d) in &coeffs {
            println!("  m'={mp:>4}: {:+.10} {:+.10}i", d.re, d.im);
        }
        let direct = schwinger_state(n, m, alpha, phi)?;
        let rebuilt = schwinger_state_via_wigner(n, m, alpha, phi)?;
        println!("  max coefficient difference {:.2e}", direct.max_coeff_diff(&rebuilt));
    }
    Ok(())
}
