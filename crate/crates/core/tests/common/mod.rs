#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use asymmetric_landau::gstate::{Envelope, GaussianPolyState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random state with `terms` monomials of degree at most `max_deg` per axis.
pub fn random_state(rng: &mut ChaCha8Rng, terms: usize, max_deg: u32) -> GaussianPolyState {
    let t: Vec<((u32, u32), Complex64)> = (0..terms)
        .map(|_| {
            (
                (rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    GaussianPolyState::from_terms(t)
}

/// Gauss-Hermite nodes and weights for `∫ f(u) e^{-u²} du`, by Newton
/// iteration on the orthonormal Hermite recurrence.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * n as f64 + 1.0).sqrt() - 1.85575 * (2.0 * n as f64 + 1.0).powf(-0.16667),
            1 => z - 1.14 * (n as f64).powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = z * (2.0 / (j as f64 + 1.0)).sqrt() * p2 - (j as f64 / (j as f64 + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * n as f64).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// `∫∫ conj(a) b dx dy` by tensor Gauss-Hermite quadrature, for states with
/// the unit envelope.
pub fn quadrature_inner(a: &GaussianPolyState, b: &GaussianPolyState, nodes: usize) -> Complex64 {
    assert_eq!(a.envelope(), Envelope::UNIT);
    assert_eq!(b.envelope(), Envelope::UNIT);
    let (u, w) = gauss_hermite(nodes);
    // x = u/√2 turns e^{-2x²} into e^{-u²}
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, &ui) in u.iter().enumerate() {
        for (j, &uj) in u.iter().enumerate() {
            let (x, y) = (ui * s, uj * s);
            let env = (-(x * x + y * y)).exp();
            let fa = a.evaluate(x, y) / env;
            let fb = b.evaluate(x, y) / env;
            sum += w[i] * w[j] * fa.conj() * fb;
        }
    }
    sum * 0.5
}

/// Term-by-term evaluation of a state.
pub fn term_sum(s: &GaussianPolyState, x: f64, y: f64) -> Complex64 {
    let env = s.envelope();
    let mut total = Complex64::new(0.0, 0.0);
    for (&(p, q), &coef) in s.terms() {
        total += coef * x.powi(p as i32) * y.powi(q as i32) * (-env.ax * x * x - env.ay * y * y).exp();
    }
    total
}
