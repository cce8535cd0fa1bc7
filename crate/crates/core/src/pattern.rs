//! Node-count classification of transverse density patterns: Hermite-Gauss
//! stripes versus Laguerre-Gauss rings.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::gstate::GaussianPolyState;

const RADIAL_SAMPLES: usize = 200;
const ANGULAR_SAMPLES: usize = 360;
const NODE_FRACTION: f64 = 0.01;
const RING_CONTRAST: f64 = 0.9;
const STRIPED_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Spot,
    Ring,
    Striped,
    Intermediate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternSummary {
    pub kind: PatternKind,
    /// Radius where the radial probability `r·∮|ψ|²` peaks.
    pub peak_radius: f64,
    /// Probability-weighted mean of `min/max` along circles.
    pub angular_contrast: f64,
    /// Angular dips below 1% of the circle maximum at `peak_radius`.
    pub angular_nodes: usize,
    /// Probability-weighted fraction of circles that dip below 1% of their
    /// own maximum, i.e. that cross a nodal line.
    pub striped_fraction: f64,
    /// Radial dips of the angular mean below 1% of its maximum.
    pub radial_nodes: usize,
}

fn count_dips(values: &[f64], threshold: f64, cyclic: bool) -> usize {
    let below: Vec<bool> = values.iter().map(|&v| v < threshold).collect();
    if below.iter().all(|&b| b) {
        return 0;
    }
    let n = below.len();
    (0..n)
        .filter(|&i| {
            let prev = match i {
                0 if cyclic => below[n - 1],
                0 => false,
                _ => below[i - 1],
            };
            below[i] && !prev
        })
        .count()
}

/// Classifies `|ψ|²` by sampling it on polar circles out to `r_max`.
///
/// A ring has near-constant density along every circle, a spot is a ring
/// pattern peaked at the origin without radial nodes, and a striped pattern
/// has nodal lines crossing most circles.
pub fn classify(state: &GaussianPolyState, r_max: f64) -> PatternSummary {
    let angles: Vec<(f64, f64)> = (0..ANGULAR_SAMPLES)
        .map(|k| (2.0 * PI * k as f64 / ANGULAR_SAMPLES as f64).sin_cos())
        .collect();
    let circle = |r: f64| -> Vec<f64> {
        angles
            .iter()
            .map(|&(s, c)| state.evaluate(r * c, r * s).norm_sqr())
            .collect()
    };
    let radii: Vec<f64> = (1..=RADIAL_SAMPLES)
        .map(|k| r_max * k as f64 / RADIAL_SAMPLES as f64)
        .collect();
    let circles: Vec<Vec<f64>> = radii.iter().map(|&r| circle(r)).collect();
    let mean: Vec<f64> = circles
        .iter()
        .map(|c| c.iter().sum::<f64>() / ANGULAR_SAMPLES as f64)
        .collect();
    let weight: Vec<f64> = radii.iter().zip(&mean).map(|(r, m)| r * m).collect();
    let total: f64 = weight.iter().sum();
    let (peak_idx, _) =
        weight.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
        );
    let peak_radius = radii[peak_idx];

    let mut contrast = 0.0;
    let mut striped = 0.0;
    for (c, w) in circles.iter().zip(&weight) {
        let max = c.iter().copied().fold(0.0, f64::max);
        if max <= 0.0 {
            continue;
        }
        let min = c.iter().copied().fold(f64::INFINITY, f64::min);
        contrast += w * min / max;
        if count_dips(c, NODE_FRACTION * max, true) > 0 {
            striped += w;
        }
    }
    let (angular_contrast, striped_fraction) = if total > 0.0 {
        (contrast / total, striped / total)
    } else {
        (0.0, 0.0)
    };
    let peak_circle = &circles[peak_idx];
    let peak_max = peak_circle.iter().copied().fold(0.0, f64::max);
    let angular_nodes = count_dips(peak_circle, NODE_FRACTION * peak_max, true);

    // interior radial dips, ignoring the zero at the origin and the tail
    let mean_max = mean.iter().copied().fold(0.0, f64::max);
    let significant = |v: &f64| *v >= NODE_FRACTION * mean_max;
    let first = mean.iter().position(significant).unwrap_or(0);
    let last = mean.iter().rposition(significant).unwrap_or(0);
    let radial_nodes = count_dips(&mean[first..=last], NODE_FRACTION * mean_max, false);

    let center = state.evaluate(0.0, 0.0).norm_sqr();
    let kind = if angular_contrast >= RING_CONTRAST {
        if radial_nodes == 0 && center >= mean_max {
            PatternKind::Spot
        } else {
            PatternKind::Ring
        }
    } else if striped_fraction >= STRIPED_FRACTION {
        PatternKind::Striped
    } else {
        PatternKind::Intermediate
    };
    PatternSummary {
        kind,
        peak_radius,
        angular_contrast,
        angular_nodes,
        striped_fraction,
        radial_nodes,
    }
}
