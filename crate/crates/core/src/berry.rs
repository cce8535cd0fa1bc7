//! Orbital Poincaré sphere geometry and the discrete (Pancharatnam) Berry
//! phase of Schwinger states carried around closed loops of `(φ, α)`.
//!
//! Sphere coordinates: azimuth `2φ`, polar angle `π/2 - 2α`. Solid angles are
//! positive for loops that run counterclockwise when seen from the north pole.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gstate::{inner_product, GaussianPolyState};
use crate::modes::{check_order, schwinger_state_any_alpha, ModeIndex, DEFAULT_ORDER_CAP};
use crate::operators::spin_axis;

/// Smallest consecutive overlap magnitude accepted by [`berry_phase`].
pub const MIN_OVERLAP: f64 = 1e-6;

const CLOSE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpherePath {
    pub vertices: Vec<(f64, f64)>,
    pub closed: bool,
}

impl SpherePath {
    /// Vertex list; `closed` is set when the last vertex lands on the first.
    pub fn from_vertices(vertices: Vec<(f64, f64)>) -> Self {
        let closed = match (vertices.first(), vertices.last()) {
            (Some(&a), Some(&b)) if vertices.len() > 1 => {
                distance(sphere_point(a.0, a.1), sphere_point(b.0, b.1)) < CLOSE_TOL
            }
            _ => false,
        };
        SpherePath { vertices, closed }
    }

    /// Constant-α loop, `φ = kπ/N` for `k = 0..=N` (the azimuth sweeps 2π).
    pub fn latitude(alpha: f64, segments: usize) -> Result<Self> {
        check_segments(segments)?;
        let vertices = (0..=segments)
            .map(|k| (PI * k as f64 / segments as f64, alpha))
            .collect();
        Ok(SpherePath { vertices, closed: true })
    }

    /// Great circle through both poles in the meridian plane at azimuth `2φ`,
    /// leaving the equator northwards.
    pub fn great_circle(phi: f64, segments: usize) -> Result<Self> {
        check_segments(segments)?;
        let vertices = (0..=segments).map(|k| (phi, PI * k as f64 / segments as f64)).collect();
        Ok(SpherePath { vertices, closed: true })
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        SpherePath {
            vertices,
            closed: self.closed,
        }
    }

    pub fn segments(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn points(&self) -> Vec<[f64; 3]> {
        self.vertices.iter().map(|&(p, a)| sphere_point(p, a)).collect()
    }

    /// Vertices without the closing duplicate.
    fn cycle(&self) -> Result<&[(f64, f64)]> {
        if !self.closed || self.vertices.len() < 2 {
            return Err(Error::usage("path is not closed"));
        }
        Ok(&self.vertices[..self.vertices.len() - 1])
    }

    /// [`Self::cycle`], additionally requiring three distinct sphere points.
    fn polygon(&self) -> Result<&[(f64, f64)]> {
        let cycle = self.cycle()?;
        let pts: Vec<[f64; 3]> = cycle.iter().map(|&(p, a)| sphere_point(p, a)).collect();
        let mut distinct: Vec<[f64; 3]> = Vec::new();
        for p in pts {
            if distinct.iter().all(|q| distance(p, *q) > CLOSE_TOL) {
                distinct.push(p);
                if distinct.len() >= 3 {
                    return Ok(cycle);
                }
            }
        }
        Err(Error::usage("closed path needs at least 3 distinct vertices"))
    }
}

fn check_segments(segments: usize) -> Result<()> {
    if segments < 3 {
        return Err(Error::usage(format!(
            "a loop needs at least 3 segments, got {segments}"
        )));
    }
    Ok(())
}

fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Point of the orbital Poincaré sphere, identical to [`spin_axis`].
pub fn sphere_point(phi: f64, alpha: f64) -> [f64; 3] {
    spin_axis(phi, alpha)
}

/// Inverse of [`sphere_point`] onto `φ ∈ (-π/2, π/2]`, `α ∈ [-π/4, π/4]`.
pub fn sphere_coords(p: [f64; 3]) -> (f64, f64) {
    let alpha = 0.5 * p[2].clamp(-1.0, 1.0).asin();
    let phi = 0.5 * p[1].atan2(p[0]);
    (phi, alpha)
}

/// Signed solid angle of the triangle `(a, b, c)`.
fn triangle_excess(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let num = dot(a, cross(b, c));
    let den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    2.0 * num.atan2(den)
}

/// Signed area of a closed spherical polygon, summed as triangles fanned from
/// the north pole. When the loop runs through a pole, the fan is taken from the
/// coordinate axis farthest from the loop instead.
pub fn solid_angle(path: &SpherePath) -> Result<f64> {
    let cycle = path.polygon()?;
    let pts: Vec<[f64; 3]> = cycle.iter().map(|&(p, a)| sphere_point(p, a)).collect();
    let clearance = |r: [f64; 3]| pts.iter().map(|&p| 1.0 - dot(p, r).abs()).fold(f64::INFINITY, f64::min);
    let north = [0.0, 0.0, 1.0];
    let apex = if clearance(north) > 1e-9 {
        north
    } else {
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
            .into_iter()
            .max_by(|a, b| clearance(*a).total_cmp(&clearance(*b)))
            .unwrap()
    };
    let n = pts.len();
    Ok((0..n).map(|k| triangle_excess(apex, pts[k], pts[(k + 1) % n])).sum())
}

/// `-Arg Π_k ⟨ψ_k|ψ_{k+1}⟩` over a cyclic sequence of states (the last state
/// is paired with the first), in `(-π, π]`.
pub fn pancharatnam_phase(states: &[GaussianPolyState]) -> Result<f64> {
    if states.len() < 2 {
        return Err(Error::usage("need at least two states"));
    }
    let n = states.len();
    let overlaps: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|k| inner_product(&states[k], &states[(k + 1) % n]))
        .collect();
    let mut product = Complex64::new(1.0, 0.0);
    for (k, ov) in overlaps.iter().enumerate() {
        let mag = ov.norm();
        if mag < MIN_OVERLAP {
            return Err(Error::Resolution {
                index: k,
                next: (k + 1) % n,
                overlap: mag,
                threshold: MIN_OVERLAP,
            });
        }
        // renormalising keeps long products away from underflow
        product *= ov / mag;
    }
    Ok(wrap_angle(-product.arg()))
}

/// Discrete Berry phase of `ψ_{n,m}` transported around `path`. Converges to
/// `-(l/2) Ω` modulo 2π, with `l = n - m` and `Ω` from [`solid_angle`].
pub fn berry_phase(path: &SpherePath, n: u32, m: u32) -> Result<f64> {
    check_order(ModeIndex::new(n, m), DEFAULT_ORDER_CAP)?;
    let cycle = path.cycle()?;
    let states: Vec<GaussianPolyState> = cycle
        .par_iter()
        .map(|&(phi, alpha)| schwinger_state_any_alpha(n, m, alpha, phi))
        .collect::<Result<_>>()?;
    pancharatnam_phase(&states)
}

/// `-(l/2) Ω` wrapped into `(-π, π]`.
pub fn expected_phase(path: &SpherePath, n: u32, m: u32) -> Result<f64> {
    let l = n as f64 - m as f64;
    Ok(wrap_angle(-0.5 * l * solid_angle(path)?))
}

/// Reduces an angle into `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Cap area `2π(1 - sin 2α)` above the latitude of α.
pub fn cap_solid_angle(alpha: f64) -> f64 {
    2.0 * PI * (1.0 - (2.0 * alpha).sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn sphere_landmarks() {
        let p = sphere_point(0.37, FRAC_PI_4);
        assert!(p[0].abs() < 1e-15 && p[1].abs() < 1e-15 && (p[2] - 1.0).abs() < 1e-15);
        assert_eq!(sphere_point(0.0, 0.0), [1.0, 0.0, 0.0]);
    }

    #[test]
    fn equator_is_hemisphere() {
        let om = solid_angle(&SpherePath::latitude(0.0, 64).unwrap()).unwrap();
        assert!((om - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn open_path_rejected() {
        let p = SpherePath::from_vertices(vec![(0.0, 0.1), (0.2, 0.1), (0.4, 0.1)]);
        assert!(!p.closed);
        assert!(matches!(solid_angle(&p), Err(Error::Usage(_))));
        let degenerate = SpherePath::from_vertices(vec![(0.0, 0.1), (0.2, 0.1), (0.0, 0.1)]);
        assert!(matches!(solid_angle(&degenerate), Err(Error::Usage(_))));
    }

    #[test]
    fn great_circle_is_hemisphere() {
        let om = solid_angle(&SpherePath::great_circle(0.3, 40).unwrap()).unwrap();
        assert!((om.abs() - 2.0 * PI).abs() < 1e-12, "{om}");
    }

    #[test]
    fn coarse_loop_resolution_error() {
        // antipodal neighbours: HG(1,0) and HG(0,1) are orthogonal
        let path = SpherePath::from_vertices(vec![(0.0, 0.0), (FRAC_PI_2, 0.0), (0.75 * PI, 0.0), (PI, 0.0)]);
        assert!(path.closed);
        let err = berry_phase(&path, 1, 0).unwrap_err();
        assert!(matches!(err, Error::Resolution { .. }), "{err}");
    }

    #[test]
    fn wrap() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-0.5) + 0.5).abs() < 1e-15);
    }
}
