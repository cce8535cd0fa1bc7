//! Commutators of the pseudo angular momentum operators, the Casimir identity
//! and the conserved pair (H⊥, H_as), all as exact coefficient identities.

use num_complex::Complex64;

use asymmetric_landau::gstate::PolyDiffOperator;
use asymmetric_landau::modes::Charge;
use asymmetric_landau::operators::{build, h_component, levi_civita, pseudo_angular_momentum, OperatorKind};

fn main() -> asymmetric_landau::Result<()> {
    for i in 1..=3 {
        for j in 1..=3 {
            let lhs = pseudo_angular_momentum(i).commutator(&pseudo_angular_momentum(j));
            let mut rhs = PolyDiffOperator::zero();
            for k in 1..=3 {
                rhs = &rhs + &pseudo_angular_momentum(k).scale(Complex64::new(0.0, levi_civita(i, j, k)));
            }
            println!("[L{i}, L{j}] - i eps L: residual {:.1e}", (&lhs - &rhs).max_abs_coeff());
        }
    }
    let hs = build(OperatorKind::Hs)?;
    for i in 1..=3 {
        println!(
            "[Hs, H{i}]: residual {:.1e}",
            hs.commutator(&h_component(i)).max_abs_coeff()
        );
    }
    let k = build(OperatorKind::Casimir)?;
    let target = &hs.compose(&hs).scale_re(0.25) - &PolyDiffOperator::identity().scale_re(0.25);
    println!("K - (Hs^2/4 - 1/4): residual {:.1e}", (&k - &target).max_abs_coeff());

    for alpha in [0.0, 0.3, std::f64::consts::FRAC_PI_4] {
        let charge = Charge::Electron;
        let hp = build(OperatorKind::Hperp { alpha, charge })?;
        let has = build(OperatorKind::Has { alpha, charge })?;
        println!(
            "alpha={alpha:.4}: [Hperp, Has] residual {:.1e}, Hperp has {} terms",
            hp.commutator(&has).max_abs_coeff(),
            hp.terms().len()
        );
    }
    Ok(())
}
