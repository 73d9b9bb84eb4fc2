use std::f64::consts::{FRAC_PI_4, TAU};

use serde::{Deserialize, Serialize};

use crate::chord::{check_rho, midpoint_check};
use crate::error::{GeomError, Result};
use crate::norm::{natural_param, NormSpec};

/// Pass threshold for chord-level checks.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Looser threshold for checks that go through the `μ` bisection.
pub const FRAME_TOL: f64 = 1e-6;

/// Aggregate midpoint-support verdict over sampled chords `[u, u*]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub spec_id: String,
    pub rho: f64,
    pub samples: usize,
    pub max_midpoint_deviation: f64,
    pub worst_theta: f64,
    pub tol: f64,
    pub pass: bool,
    pub notes: String,
}

/// A uniform grid of `samples` angles merged with the eight axis and
/// diagonal angles, sorted and without duplicates.
pub fn sample_angles(samples: usize) -> Vec<f64> {
    let mut thetas: Vec<f64> = (0..samples)
        .map(|i| TAU * i as f64 / samples as f64)
        .chain((0..8).map(|j| FRAC_PI_4 * j as f64))
        .collect();
    thetas.sort_by(f64::total_cmp);
    thetas.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    thetas
}

/// Runs the midpoint check at every sampled `u = s(θ)` and reports the
/// largest `|‖(u+u*)/2‖ − ρ|`. Per-sample solver failures are listed in
/// `notes` and make the report fail.
pub fn check_p_rho_s(
    spec: &NormSpec,
    rho: f64,
    samples: usize,
    tol: f64,
) -> Result<PropertyReport> {
    check_rho(rho)?;
    if samples < 8 {
        return Err(GeomError::Domain(format!(
            "need at least 8 samples, got {samples}"
        )));
    }
    if !(tol >= 0.0) {
        return Err(GeomError::Domain(format!(
            "tolerance must be nonnegative, got {tol}"
        )));
    }
    let mut max_dev = 0.0;
    let mut worst_theta = 0.0;
    let mut failures = Vec::new();
    for theta in sample_angles(samples) {
        match midpoint_check(spec, &natural_param(spec, theta), rho) {
            Ok(report) => {
                let dev = report.midpoint_deviation(rho);
                if dev > max_dev {
                    max_dev = dev;
                    worst_theta = theta;
                }
            }
            Err(e) => failures.push(format!("theta={theta}: {e}")),
        }
    }
    Ok(PropertyReport {
        spec_id: spec.to_string(),
        rho,
        samples,
        max_midpoint_deviation: max_dev,
        worst_theta,
        tol,
        pass: failures.is_empty() && max_dev <= tol,
        notes: failures.join("; "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_diagonals() {
        let t = sample_angles(10);
        assert!(t.iter().any(|&x| (x - FRAC_PI_4).abs() < 1e-15));
        assert_eq!(sample_angles(256).len(), 256);
        assert!(t.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn euclid_passes() {
        let r = check_p_rho_s(&NormSpec::Euclidean, 0.5, 256, DEFAULT_TOL).unwrap();
        assert!(r.pass);
        assert!(r.max_midpoint_deviation <= 1e-9);
    }

    #[test]
    fn square_fails_with_corner_chord() {
        let r = check_p_rho_s(&NormSpec::square(), 1.0 / 3.0, 256, DEFAULT_TOL).unwrap();
        assert!(!r.pass);
        assert!(r.max_midpoint_deviation >= 0.16);
    }

    #[test]
    fn ellipse_passes_at_m_value() {
        let q = NormSpec::quadratic(1.0, 0.0, 4.0).unwrap();
        let rho = (std::f64::consts::PI / 5.0).cos();
        assert!(check_p_rho_s(&q, rho, 256, DEFAULT_TOL).unwrap().pass);
    }

    #[test]
    fn rejects_bad_input() {
        let e = NormSpec::Euclidean;
        assert!(check_p_rho_s(&e, 1.0, 256, DEFAULT_TOL).is_err());
        assert!(check_p_rho_s(&e, 0.5, 4, DEFAULT_TOL).is_err());
    }
}
