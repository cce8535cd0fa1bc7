//! Regularised solenoid field, a member of the quadratic gauge family, and
//! its reduction to the fixed gauge inside the solenoid.

use asymmetric_landau::fields::{
    b_field, curl_fd, divergence_fd, gauge_fix, vector_potential, FieldModel, GaugeParams, FD_STEP,
};

fn main() -> asymmetric_landau::Result<()> {
    let model = FieldModel::new(1.0, 0.3, 0.1)?;
    let params = GaugeParams::with_constraint(0.4, -0.2, 0.7, model.beta);
    let fixed = gauge_fix(&params, &model)?;

    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "z", "Bz", "div B", "|curl A-B|", "|A'-target|"
    );
    for z in [-0.5, -0.1, 0.0, 0.05, 0.2, 0.5] {
        let (x, y) = (0.6, -0.4);
        let b = b_field(&model, x, y, z);
        let div = divergence_fd(|x, y, z| b_field(&model, x, y, z), x, y, z, FD_STEP);
        let curl = curl_fd(
            |x, y, z| vector_potential(&params, &model, x, y, z).unwrap(),
            x,
            y,
            z,
            FD_STEP,
        );
        let curl_err = (0..3).map(|k| (curl[k] - b[k]).abs()).fold(0.0, f64::max);
        let a = fixed.potential(x, y, z);
        let t = fixed.coulomb_form(x, y, z);
        let fix_err = (0..3).map(|k| (a[k] - t[k]).abs()).fold(0.0, f64::max);
        println!(
            "{z:>6.2} {:>12.8} {div:>12.2e} {curl_err:>12.2e} {fix_err:>12.2e}",
            b[2]
        );
    }
    println!("chi(0.6, -0.4, 1) = {:.12}", fixed.chi(0.6, -0.4, 1.0));
    Ok(())
}
