//! Discrete Berry phase of ψ_{3,0} around latitude loops of the orbital
//! Poincaré sphere, compared with -(l/2)Ω.

use std::f64::consts::PI;

use asymmetric_landau::berry::{berry_phase, expected_phase, solid_angle, SpherePath};

fn main() -> asymmetric_landau::Result<()> {
    let (n, m) = (3, 0);
    println!(
        "{:>10} {:>6} {:>14} {:>14} {:>14}",
        "alpha", "N", "Omega", "phase", "-(l/2)Omega"
    );
    for &alpha in &[PI / 16.0, PI / 8.0, 3.0 * PI / 16.0] {
        for &segments in &[250, 500, 1000, 2000] {
            let path = SpherePath::latitude(alpha, segments)?;
            let omega = solid_angle(&path)?;
            let phase = berry_phase(&path, n, m)?;
            let expected = expected_phase(&path, n, m)?;
            println!("{alpha:>10.6} {segments:>6} {omega:>14.9} {phase:>14.9} {expected:>14.9}");
        }
    }

    let circle = SpherePath::great_circle(0.0, 400)?;
    println!(
        "great circle: Omega = {:.9}, phase(l=1) = {:.9}, phase(l=3) = {:.9}",
        solid_angle(&circle)?,
        berry_phase(&circle, 1, 0)?,
        berry_phase(&circle, 3, 0)?
    );
    Ok(())
}
