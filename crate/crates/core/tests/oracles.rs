//! Special functions, moments and rotation matrices checked against
//! independent constructions: explicit series, Gauss-Hermite quadrature and
//! the matrix exponential of the angular-momentum generator.

mod common;

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

use nalgebra::DMatrix;
use rand::Rng;

use asymmetric_landau::gstate::{gaussian_moment, inner_product, GaussianPolyState};
use asymmetric_landau::modes::{hlg_state, lg_closed_form};
use asymmetric_landau::operators::{build, OperatorKind};
use asymmetric_landau::specfun::{binomial, factorial, hermite, jacobi_eval, laguerre, wigner_small_d, HalfInt};
use common::{gauss_hermite, quadrature_inner, random_state, rng};

/// A series value together with the sum of its absolute terms, which bounds
/// the rounding error of any evaluation in the monomial basis.
struct Series {
    value: f64,
    scale: f64,
}

impl Series {
    fn from_terms(terms: impl Iterator<Item = f64>) -> Self {
        let (value, scale) = terms.fold((0.0, 0.0), |(v, s), t| (v + t, s + t.abs()));
        Series { value, scale }
    }

    fn agrees(&self, other: f64, tol: f64) -> bool {
        (other - self.value).abs() <= tol * self.scale.max(1.0)
    }
}

fn hermite_series(n: usize, x: f64) -> Series {
    Series::from_terms((0..=n / 2).map(|k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sign * factorial(n) / (factorial(k) * factorial(n - 2 * k)) * (2.0 * x).powi((n - 2 * k) as i32)
    }))
}

fn laguerre_series(n: usize, k: usize, x: f64) -> Series {
    Series::from_terms((0..=n).map(|i| {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        sign * binomial(n + k, n - i) * x.powi(i as i32) / factorial(i)
    }))
}

/// `(a+1)_k / k! · ₂F₁(-k, k+a+b+1; a+1; (1-x)/2)` for `a >= 0`.
fn jacobi_hypergeometric(k: usize, a: i64, b: i64, x: f64) -> Series {
    let poch = |q: f64, n: usize| (0..n).fold(1.0, |acc, i| acc * (q + i as f64));
    let (af, bf) = (a as f64, b as f64);
    let z = (1.0 - x) / 2.0;
    let pref = poch(af + 1.0, k) / factorial(k);
    Series::from_terms((0..=k).map(|s| {
        pref * poch(-(k as f64), s) * poch(k as f64 + af + bf + 1.0, s) / (poch(af + 1.0, s) * factorial(s))
            * z.powi(s as i32)
    }))
}

#[test]
fn hermite_matches_series() {
    assert_eq!(hermite(0).coeffs(), &[1.0]);
    assert_eq!(hermite(1).eval(2.0), 4.0);
    assert!((hermite(3).eval(0.5) - (-5.0)).abs() < 1e-14);
    let mut r = rng(1);
    for n in 0..=20 {
        for _ in 0..20 {
            let x = r.gen_range(-5.0..5.0);
            assert!(hermite_series(n, x).agrees(hermite(n).eval(x), 1e-12), "n={n} x={x}");
        }
    }
}

#[test]
fn laguerre_matches_series() {
    assert_eq!(laguerre(0, 3).coeffs(), &[1.0]);
    assert_eq!(laguerre(1, 0).eval(1.0), 0.0);
    // 3 - 3x + x²/2 at x = 2
    assert_eq!(laguerre_series(2, 1, 2.0).value, -1.0);
    assert!((laguerre(2, 1).eval(2.0) - (-1.0)).abs() < 1e-14);
    let mut r = rng(2);
    for n in 0..=20 {
        for k in [0, 1, 3, 7] {
            for _ in 0..10 {
                let x = r.gen_range(0.0..5.0);
                assert!(
                    laguerre_series(n, k, x).agrees(laguerre(n, k).eval(x), 1e-12),
                    "n={n} k={k} x={x}"
                );
            }
        }
    }
}

#[test]
fn jacobi_matches_hypergeometric_form() {
    assert_eq!(jacobi_eval(0, 5, -3, 0.7), 1.0);
    assert!((jacobi_eval(1, 2, 1, 0.0) - 0.5).abs() < 1e-15);
    let mut r = rng(3);
    for k in 0..=12 {
        for _ in 0..10 {
            let a = r.gen_range(0..6);
            let b = r.gen_range(0..6);
            let x = r.gen_range(-1.0..1.0);
            assert!(jacobi_hypergeometric(k, a, b, x).agrees(jacobi_eval(k, a, b, x), 1e-12));
        }
    }
}

#[test]
fn jacobi_negative_parameters() {
    // C(n, l) P_n^{(-l,b)}(x) = C(n+b, l) ((x-1)/2)^l P_{n-l}^{(l,b)}(x)
    let mut r = rng(4);
    for n in 1..=10usize {
        for l in 1..=n {
            let b = r.gen_range(0..5);
            let x = r.gen_range(-1.0..1.0);
            let lhs = binomial(n, l) * jacobi_eval(n, -(l as i64), b, x);
            let factor = binomial(n + b as usize, l) * ((x - 1.0) / 2.0).powi(l as i32);
            let inner = jacobi_hypergeometric(n - l, l as i64, b, x);
            let rhs = Series {
                value: factor * inner.value,
                scale: factor.abs() * inner.scale * binomial(n, l),
            };
            assert!(rhs.agrees(lhs, 1e-12), "n={n} l={l} b={b}");
        }
    }
}

#[test]
fn jacobi_reflection() {
    let mut r = rng(5);
    for k in 0..=10usize {
        for _ in 0..10 {
            let a = r.gen_range(-(k as i64)..6);
            let b = r.gen_range(-(k as i64)..6);
            let x = r.gen_range(-1.0..1.0);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((jacobi_eval(k, a, b, -x) - sign * jacobi_eval(k, b, a, x)).abs() < 1e-12);
        }
    }
}

#[test]
fn polynomial_orthogonality_by_quadrature() {
    let (u, w) = gauss_hermite(40);
    for i in 0..=12 {
        for j in 0..=12 {
            let s: f64 = u
                .iter()
                .zip(&w)
                .map(|(&x, &wt)| wt * hermite(i).eval(x) * hermite(j).eval(x))
                .sum();
            let norm = PI.sqrt() * 2f64.powi(i as i32) * factorial(i);
            let target = if i == j { 1.0 } else { 0.0 };
            assert!((s / norm - target).abs() < 1e-9, "H {i} {j}");
        }
    }
    // generalised Laguerre: Gauss-Laguerre via substitution t = u², weight over [0, ∞)
    let k = 2usize;
    let (u, w) = gauss_hermite(60);
    for i in 0..=12 {
        for j in 0..=12 {
            // ∫_0^∞ t^k e^{-t} L_i L_j dt = ∫_R |u|^{2k+1} e^{-u²} L_i(u²) L_j(u²) du
            let s: f64 = u
                .iter()
                .zip(&w)
                .map(|(&x, &wt)| {
                    wt * x.abs().powi(2 * k as i32 + 1) * laguerre(i, k).eval(x * x) * laguerre(j, k).eval(x * x)
                })
                .sum();
            let norm = factorial(i + k) / factorial(i);
            let target = if i == j { 1.0 } else { 0.0 };
            // |u| is not polynomial, so the rule is only approximately exact
            assert!((s / norm - target).abs() < 1e-3, "L {i} {j}: {}", s / norm);
        }
    }
}

#[test]
fn moments_match_gamma_values() {
    assert!((gaussian_moment(0, 0) - PI / 2.0).abs() < 1e-15);
    assert!((gaussian_moment(2, 0) - PI / 8.0).abs() < 1e-15);
    assert_eq!(gaussian_moment(1, 2), 0.0);
    assert_eq!(gaussian_moment(4, 3), 0.0);
}

#[test]
fn inner_product_matches_quadrature() {
    let mut r = rng(6);
    for _ in 0..20 {
        let a = random_state(&mut r, 6, 6);
        let b = random_state(&mut r, 6, 6);
        let exact = inner_product(&a, &b);
        let quad = quadrature_inner(&a, &b, 64);
        assert!((exact - quad).norm() < 1e-10 * exact.norm().max(1.0), "{exact} {quad}");
    }
    let g = GaussianPolyState::ground();
    assert!((inner_product(&g, &g).re - PI / 2.0).abs() < 1e-15);
}

#[test]
fn orthonormality_by_quadrature() {
    for &alpha in &[0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8] {
        let states: Vec<_> = (0..=6u32)
            .flat_map(|t| (0..=t).map(move |m| (t - m, m)))
            .map(|(n, m)| hlg_state(n, m, alpha).unwrap())
            .collect();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((quadrature_inner(a, b, 24) - target).norm() < 1e-11);
            }
        }
    }
}

#[test]
fn observables_by_quadrature() {
    let lz = build(OperatorKind::Lz).unwrap();
    let r2 = build(OperatorKind::RadiusSquared).unwrap();
    for &alpha in &[0.0, FRAC_PI_8, FRAC_PI_4] {
        let psi = hlg_state(3, 0, alpha).unwrap();
        let lz_q = quadrature_inner(&psi, &lz.apply(&psi), 24).re;
        assert!((lz_q - 3.0 * (2.0 * alpha).sin()).abs() < 1e-11);
        let r2_q = quadrature_inner(&psi, &r2.apply(&psi), 24).re;
        assert!((r2_q - 2.0).abs() < 1e-11);
    }
    let psi = hlg_state(4, 2, FRAC_PI_8).unwrap();
    assert!((quadrature_inner(&psi, &r2.apply(&psi), 24).re - 3.5).abs() < 1e-11);
}

/// Direct evaluation of the finite HLG sum with the Jacobi polynomial kept
/// in its `cos^{n-k} sin^{m-k} P_k^{(n-k,m-k)}(-cos 2α)` form.
fn hlg_direct(n: u32, m: u32, alpha: f64, x: f64, y: f64) -> num_complex::Complex64 {
    let (s, c) = alpha.sin_cos();
    let norm = (PI * 2f64.powi((n + m) as i32 - 1) * factorial(n as usize) * factorial(m as usize)).sqrt();
    let mut sum = num_complex::Complex64::new(0.0, 0.0);
    for k in 0..=(n + m) {
        let p = jacobi_eval(
            k as usize,
            n as i64 - k as i64,
            m as i64 - k as i64,
            -(2.0 * alpha).cos(),
        );
        let trig = c.powi(n as i32 - k as i32) * s.powi(m as i32 - k as i32);
        let hx = hermite_series((n + m - k) as usize, 2f64.sqrt() * x).value;
        let hy = hermite_series(k as usize, 2f64.sqrt() * y).value;
        sum += num_complex::Complex64::i().powu(k) * trig * p * hx * hy;
    }
    sum * (-(x * x + y * y)).exp() / norm
}

#[test]
fn hlg_state_matches_direct_sum() {
    let mut r = rng(7);
    for &(n, m) in &[(1, 0), (2, 1), (3, 2), (4, 4)] {
        // generic α keeps the negative trigonometric powers finite
        for &alpha in &[0.3, FRAC_PI_4, 1.1] {
            let psi = hlg_state(n, m, alpha).unwrap();
            for _ in 0..20 {
                let (x, y) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
                let d = (psi.evaluate(x, y) - hlg_direct(n, m, alpha, x, y)).norm();
                assert!(d < 1e-12, "({n},{m},{alpha}) at ({x},{y}): {d}");
            }
        }
    }
}

#[test]
fn lg_limit_matches_closed_form() {
    let mut r = rng(8);
    for n in 0..=5u32 {
        for m in 0..=5u32 {
            let psi = hlg_state(n, m, FRAC_PI_4).unwrap();
            // fix the single global phase at a reference point
            let (x0, y0) = (0.7, 0.4);
            let ratio = psi.evaluate(x0, y0) / lg_closed_form(n, m, x0, y0);
            assert!(
                (ratio.norm() - 1.0).abs() < 1e-10,
                "({n},{m}) |ratio| = {}",
                ratio.norm()
            );
            for _ in 0..20 {
                let (x, y) = (r.gen_range(-2.5..2.5), r.gen_range(-2.5..2.5));
                let d = (psi.evaluate(x, y) - ratio * lg_closed_form(n, m, x, y)).norm();
                assert!(d < 1e-10, "({n},{m}): {d}");
            }
        }
    }
}

/// `d^j(β) = exp(-iβ J_y)`; `-i J_y` is real in the `|j, m⟩` basis.
fn small_d_by_exponential(twice_j: i32, beta: f64) -> DMatrix<f64> {
    let dim = (twice_j + 1) as usize;
    let j = twice_j as f64 / 2.0;
    let mut gen = DMatrix::<f64>::zeros(dim, dim);
    // row index r ↔ m = j - r
    for r in 0..dim {
        let m = j - r as f64;
        if r > 0 {
            // ⟨m+1| J_+ |m⟩
            let up = ((j - m) * (j + m + 1.0)).sqrt();
            gen[(r - 1, r)] += -0.5 * up;
        }
        if r + 1 < dim {
            // ⟨m-1| J_- |m⟩
            let down = ((j + m) * (j - m + 1.0)).sqrt();
            gen[(r + 1, r)] += 0.5 * down;
        }
    }
    (gen * beta).exp()
}

#[test]
fn wigner_small_d_matches_matrix_exponential() {
    let mut r = rng(9);
    for twice_j in 0..=8 {
        let beta = r.gen_range(0.0..PI);
        let d = small_d_by_exponential(twice_j, beta);
        let dim = (twice_j + 1) as usize;
        for a in 0..dim {
            for b in 0..dim {
                let mp = HalfInt::from_twice(twice_j - 2 * a as i32);
                let m = HalfInt::from_twice(twice_j - 2 * b as i32);
                let v = wigner_small_d(HalfInt::from_twice(twice_j), mp, m, beta).unwrap();
                assert!(
                    (v - d[(a, b)]).abs() < 1e-12,
                    "j2={twice_j} {mp} {m}: {v} vs {}",
                    d[(a, b)]
                );
            }
        }
    }
}

#[test]
fn wigner_small_d_spin_half_and_symmetry() {
    let half = HalfInt::from_twice(1);
    for &b in &[0.0, 0.4, 1.7, 3.0] {
        assert!((wigner_small_d(half, half, half, b).unwrap() - (b / 2.0).cos()).abs() < 1e-15);
    }
    let mut r = rng(10);
    for twice_j in 0..=8 {
        let j = HalfInt::from_twice(twice_j);
        let beta = r.gen_range(0.0..PI);
        for a in 0..=twice_j {
            for b in 0..=twice_j {
                let mp = HalfInt::from_twice(twice_j - 2 * a);
                let m = HalfInt::from_twice(twice_j - 2 * b);
                let lhs = wigner_small_d(j, mp, m, -beta).unwrap();
                let rhs = wigner_small_d(j, m, mp, beta).unwrap();
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }
}
