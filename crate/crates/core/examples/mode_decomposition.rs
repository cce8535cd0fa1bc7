//! A Laguerre-Gauss mode entering an asymmetric field: its expansion in the
//! asymmetric eigenbasis and the overlap with the input over time.

use std::f64::consts::{FRAC_PI_2, PI};

use asymmetric_landau::decompose::decompose;
use asymmetric_landau::gstate::inner_product;
use asymmetric_landau::modes::Charge;

fn main() -> asymmetric_landau::Result<()> {
    let d = decompose(0, 2, 0.2, Charge::Electron, 6)?;
    println!("sum |c|^2 = {:.15}", d.sum_abs2);
    for c in d.coefficients.iter().filter(|c| c.abs2 > 1e-14) {
        println!("  ({},{}): |c|^2 = {:.12}, energy {}", c.n, c.m, c.abs2, c.energy);
    }
    let start = d.evolved_state(0.0)?;
    for t in [0.0, 0.25, 0.5, 1.0, FRAC_PI_2, PI] {
        let overlap = inner_product(&start, &d.evolved_state(t)?).norm_sqr();
        println!("t = {t:.4}: |<psi(0)|psi(t)>|^2 = {overlap:.12}");
    }
    Ok(())
}
