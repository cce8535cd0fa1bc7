//! Coefficient tables of ψ_{n,m}(α) as α moves from the Hermite-Gauss to the
//! Laguerre-Gauss limit.

use std::f64::consts::PI;

use asymmetric_landau::modes::{hlg_state, mode_from_twisted};

fn main() -> asymmetric_landau::Result<()> {
    let mode = mode_from_twisted(0, 2);
    println!("mode n={} m={} (n_r=0, l=2)", mode.n, mode.m);
    for k in 0..=4 {
        let alpha = f64::from(k) * PI / 16.0;
        let state = hlg_state(mode.n, mode.m, alpha)?;
        println!("alpha = {alpha:.6}  norm = {:.15}", state.norm());
        for (&(p, q), c) in state.terms() {
            println!("  x^{p} y^{q}: {:+.12} {:+.12}i", c.re, c.im);
        }
    }
    let s = hlg_state(3, 0, PI / 8.0)?;
    println!("psi_(3,0)(pi/8) at (0.5, -0.2) = {:.12}", s.evaluate(0.5, -0.2));
    Ok(())
}
