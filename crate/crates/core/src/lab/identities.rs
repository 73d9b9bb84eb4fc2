use serde::{Deserialize, Serialize};

use crate::chord::mu_of;
use crate::error::{GeomError, Result};
use crate::norm::NormSpec;
use crate::point::{wedge, Point};

/// Absolute residuals of the three `μ s⊥` identities on `[α, β]`:
///
/// 1. `∫ μ s⊥ ∧ ds = 0`
/// 2. `∫ s ∧ ds⊥ = [s ∧ s⊥]_α^β`
/// 3. `∫ s ∧ d(μ s⊥) = [s ∧ μ s⊥]_α^β`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityResiduals {
    pub alpha: f64,
    pub beta: f64,
    pub samples: usize,
    pub mu_perp_ds: f64,
    pub s_dperp: f64,
    pub s_dmu_perp: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        self.mu_perp_ds.max(self.s_dperp).max(self.s_dmu_perp)
    }
}

/// Trapezoid-tagged Stieltjes sum `Σ ½(f_j + f_{j+1}) ∧ (g_{j+1} − g_j)`
/// over every `stride`-th grid node.
fn stieltjes(f: &[Point], g: &[Point], stride: usize) -> f64 {
    let idx: Vec<usize> = (0..f.len()).step_by(stride).collect();
    idx.windows(2)
        .map(|w| wedge(0.5 * (f[w[0]] + f[w[1]]), g[w[1]] - g[w[0]]))
        .sum()
}

/// Full-grid sum combined with the half-grid sum by one Richardson step.
fn extrapolated(f: &[Point], g: &[Point]) -> f64 {
    (4.0 * stieltjes(f, g, 1) - stieltjes(f, g, 2)) / 3.0
}

/// Evaluates the identities by Stieltjes sums over `samples` uniform
/// intervals of the `μ` frame. Needs a smooth, strictly convex norm.
pub fn i0_identities(
    spec: &NormSpec,
    rho: f64,
    alpha: f64,
    beta: f64,
    samples: usize,
) -> Result<IdentityResiduals> {
    if !(alpha < beta) || !beta.is_finite() || !alpha.is_finite() {
        return Err(GeomError::Domain(format!(
            "need alpha < beta, got [{alpha}, {beta}]"
        )));
    }
    if samples < 16 || !samples.is_multiple_of(2) {
        return Err(GeomError::Domain(format!(
            "samples must be even and at least 16, got {samples}"
        )));
    }
    let h = (beta - alpha) / samples as f64;
    let frames = (0..=samples)
        .map(|j| {
            let theta = if j == samples {
                beta
            } else {
                alpha + h * j as f64
            };
            mu_of(spec, theta, rho)
        })
        .collect::<Result<Vec<_>>>()?;
    let s: Vec<Point> = frames.iter().map(|f| f.base.coords).collect();
    let perp: Vec<Point> = frames.iter().map(|f| f.perp.coords).collect();
    let mu_perp: Vec<Point> = frames.iter().map(|f| f.mu_perp()).collect();
    let boundary = |a: &[Point], b: &[Point]| wedge(a[samples], b[samples]) - wedge(a[0], b[0]);
    Ok(IdentityResiduals {
        alpha,
        beta,
        samples,
        mu_perp_ds: extrapolated(&mu_perp, &s).abs(),
        s_dperp: (extrapolated(&s, &perp) - boundary(&s, &perp)).abs(),
        s_dmu_perp: (extrapolated(&s, &mu_perp) - boundary(&s, &mu_perp)).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn euclid_sixth_of_turn() {
        let r = i0_identities(&NormSpec::Euclidean, 0.5, 0.0, PI / 3.0, 4096).unwrap();
        assert!(r.max() <= 1e-6, "{r:?}");
    }

    #[test]
    fn full_turn_boundary_cancels() {
        let r = i0_identities(&NormSpec::Euclidean, 0.5, 0.0, TAU, 4096).unwrap();
        assert!(r.s_dperp <= 1e-6);
    }

    #[test]
    fn ellipse_range() {
        let q = NormSpec::quadratic(1.0, 0.0, 4.0).unwrap();
        let r = i0_identities(&q, (PI / 5.0).cos(), 0.1, 1.7, 4096).unwrap();
        assert!(r.max() <= 1e-6, "{r:?}");
    }

    #[test]
    fn polygon_gauge_unsupported() {
        let r = i0_identities(&NormSpec::square(), 0.5, 0.0, 1.0, 64);
        assert!(matches!(r, Err(GeomError::Unsupported(_))));
    }

    #[test]
    fn odd_samples_rejected() {
        assert!(i0_identities(&NormSpec::Euclidean, 0.5, 0.0, 1.0, 65).is_err());
    }
}
