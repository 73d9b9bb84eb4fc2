//! Sector and cap areas of the unit ball by Stieltjes sums along `s(θ)`.
//!
//! `A(B_u^v) = ½∫ s(θ) ∧ ds(θ)` is discretized as the shoelace sum of the
//! inscribed polyline on a uniform θ grid. The polyline error has an
//! expansion in even powers of the step, so the full-grid sum and its
//! even-index subgrid are combined by one Richardson step; the raw
//! difference between the two is reported as the error estimate.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::norm::{natural_param, NormSpec, UnitPoint};
use crate::point::{ccw_gap, wedge, Point};

pub const DEFAULT_SAMPLES: usize = 4096;
pub const MIN_SAMPLES: usize = 16;

/// Area of the sector of `B` between the rays at `alpha` and `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorArea {
    pub alpha: f64,
    pub beta: f64,
    pub value: f64,
    pub samples: usize,
    /// `|raw(samples) − raw(samples/2)|`, plus a rounding floor.
    pub error_estimate: f64,
}

/// Sum in a fixed pairwise order, independent of thread count.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

/// `½ Σ p_i ∧ p_{i+1}` over an open polyline.
pub fn shoelace(points: &[Point]) -> f64 {
    let terms: Vec<f64> = points.windows(2).map(|w| wedge(w[0], w[1])).collect();
    0.5 * pairwise_sum(&terms)
}

fn grid(spec: &NormSpec, alpha: f64, beta: f64, samples: usize) -> Vec<Point> {
    let h = (beta - alpha) / samples as f64;
    (0..=samples)
        .map(|i| {
            let theta = if i == samples {
                beta
            } else {
                alpha + h * i as f64
            };
            natural_param(spec, theta).coords
        })
        .collect()
}

/// Area of `B_{s(α)}^{s(β)}`.
pub fn sector_area(spec: &NormSpec, alpha: f64, beta: f64, samples: usize) -> Result<SectorArea> {
    if !(alpha.is_finite() && beta.is_finite()) || !(alpha < beta) || beta - alpha > TAU + 1e-12 {
        return Err(GeomError::Domain(format!(
            "sector needs alpha < beta <= alpha + 2π, got [{alpha}, {beta}]"
        )));
    }
    if samples < MIN_SAMPLES {
        return Err(GeomError::Domain(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let pts = grid(spec, alpha, beta, samples);
    let fine = shoelace(&pts);
    let (coarse, coarse_n) = if samples.is_multiple_of(2) {
        let sub: Vec<Point> = pts.iter().step_by(2).copied().collect();
        (shoelace(&sub), samples / 2)
    } else {
        let n = samples / 2;
        (shoelace(&grid(spec, alpha, beta, n)), n)
    };
    let (nf, nc) = ((samples * samples) as f64, (coarse_n * coarse_n) as f64);
    let value = (nf * fine - nc * coarse) / (nf - nc);
    Ok(SectorArea {
        alpha,
        beta,
        value,
        samples,
        error_estimate: (fine - coarse).abs() + 1e-13 * value.abs().max(1.0),
    })
}

/// Sector between two sphere points, going counterclockwise from `u`.
pub fn sector_between(
    spec: &NormSpec,
    u: &UnitPoint,
    v: &UnitPoint,
    samples: usize,
) -> Result<SectorArea> {
    let gap = ccw_gap(u.theta, v.theta);
    if gap == 0.0 {
        return Err(GeomError::Domain("sector between coincident points".into()));
    }
    sector_area(spec, u.theta, u.theta + gap, samples)
}

/// `A(T_u^v) = A(B_u^v) − ½ u∧v` for `u ≺ v`.
pub fn cap_area(spec: &NormSpec, u: &UnitPoint, v: &UnitPoint, samples: usize) -> Result<f64> {
    if wedge(u.coords, v.coords) <= 0.0 {
        return Err(GeomError::Domain("cap area needs u ≺ v".into()));
    }
    Ok(sector_between(spec, u, v, samples)?.value - 0.5 * wedge(u.coords, v.coords))
}

/// Area of the whole unit ball.
pub fn total_ball_area(spec: &NormSpec, samples: usize) -> Result<f64> {
    Ok(sector_area(spec, 0.0, TAU, samples)?.value)
}

/// Areas of the consecutive sectors cut by sphere points sorted by angle,
/// wrapping from the last point back to the first.
pub fn partition_areas(spec: &NormSpec, sorted: &[UnitPoint], samples: usize) -> Result<Vec<f64>> {
    let n = sorted.len();
    (0..n)
        .map(|i| sector_between(spec, &sorted[i], &sorted[(i + 1) % n], samples).map(|s| s.value))
        .collect()
}
