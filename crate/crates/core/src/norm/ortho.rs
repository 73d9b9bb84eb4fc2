//! Birkhoff orthogonality, the successor map `u ↦ u⊥` and tangent checks.

use serde::{Deserialize, Serialize};

use super::param::{natural_param, UnitPoint};
use super::spec::{NormSpec, Side};
use crate::error::{GeomError, Result};
use crate::minimize::golden_section;
use crate::point::{wedge, Point};

/// Default tolerance for the orthogonality predicate.
pub const ORTHO_TOL: f64 = 1e-9;

/// Fixed bisection depth shared by every angular and scalar bisection.
pub const BISECTION_STEPS: usize = 80;

/// `‖u‖ − min_λ ‖u + λv‖`, never meaningfully negative.
///
/// The minimizer lies in `|λ| ≤ 2‖u‖/‖v‖`: outside that bracket
/// `‖u + λv‖ ≥ |λ|‖v‖ − ‖u‖ > ‖u‖`.
pub fn orthogonality_gap(spec: &NormSpec, u: Point, v: Point) -> Result<f64> {
    if u.is_zero() || v.is_zero() {
        return Err(GeomError::Domain(
            "Birkhoff orthogonality needs nonzero vectors".into(),
        ));
    }
    let nu = spec.norm(u);
    let bound = 2.0 * nu / spec.norm(v);
    let m = golden_section(|lam| spec.norm(u + lam * v), -bound, bound);
    Ok(nu - m.value.min(nu))
}

/// True iff `‖u‖ ≤ ‖u + λv‖ + tol` for every real `λ`.
pub fn is_birkhoff_orthogonal(spec: &NormSpec, u: Point, v: Point, tol: f64) -> Result<bool> {
    Ok(orthogonality_gap(spec, u, v)? <= tol)
}

/// The unique `u⊥ ∈ S` with `u ≺ u⊥` and `u ⊥ u⊥`.
///
/// Bisects on `φ ∈ (θ_u, θ_u + π)` over the sign of the right derivative
/// of `λ ↦ ‖u + λ s(φ)‖` at zero, which is `+1` next to `u` and `−1` next
/// to `−u`.
pub fn birkhoff_successor(spec: &NormSpec, u: &UnitPoint) -> Result<UnitPoint> {
    spec.require_smooth()?;
    let slope = |phi: f64| {
        let dir = natural_param(spec, phi).coords;
        spec.one_sided_derivative(u.coords, dir, Side::Right)
    };
    let mut lo = u.theta;
    let mut hi = u.theta + std::f64::consts::PI;
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(natural_param(spec, 0.5 * (lo + hi)))
}

/// Finite-difference comparison of `s'(θ)` with the direction `s⊥(θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentCheck {
    pub theta: f64,
    pub fd_tangent: Point,
    pub perp_dir: Point,
    /// `|sin|` of the Euclidean angle between `fd_tangent` and `perp_dir`.
    pub collinearity_residual: f64,
    /// Estimate of `p(θ)` in `s'(θ) = p(θ) s⊥(θ)`.
    pub p_estimate: f64,
}

impl TangentCheck {
    pub(crate) fn compare(theta: f64, fd_tangent: Point, perp_dir: Point) -> TangentCheck {
        let perp_len = perp_dir.euclid();
        let off_axis = wedge(fd_tangent, perp_dir).abs() / perp_len;
        TangentCheck {
            theta,
            fd_tangent,
            perp_dir,
            collinearity_residual: off_axis / fd_tangent.euclid(),
            p_estimate: fd_tangent.dot(perp_dir) / (perp_len * perp_len),
        }
    }
}

pub(crate) fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h <= 1e-2 {
        Ok(())
    } else {
        Err(GeomError::Domain(format!(
            "step h must lie in (0, 1e-2], got {h}"
        )))
    }
}

/// Central difference `(s(θ+h) − s(θ−h)) / 2h` against `s⊥(θ)`.
pub fn tangent_check(spec: &NormSpec, theta: f64, h: f64) -> Result<TangentCheck> {
    spec.require_smooth()?;
    check_step(h)?;
    let fwd = natural_param(spec, theta + h).coords;
    let back = natural_param(spec, theta - h).coords;
    let fd = (0.5 / h) * (fwd - back);
    let base = natural_param(spec, theta);
    let perp = birkhoff_successor(spec, &base)?;
    Ok(TangentCheck::compare(base.theta, fd, perp.coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    fn quad14() -> NormSpec {
        NormSpec::quadratic(1.0, 0.0, 4.0).unwrap()
    }

    /// Brute-force check: smallest `‖u + λv‖` on a dense λ grid.
    fn grid_min(spec: &NormSpec, u: Point, v: Point) -> f64 {
        (-20_000..=20_000)
            .map(|i| spec.norm(u + (i as f64 * 1e-4) * v))
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn orthogonality_examples() {
        let e1 = Point::new(1.0, 0.0);
        let e2 = Point::new(0.0, 1.0);
        assert!(is_birkhoff_orthogonal(&NormSpec::Euclidean, e1, e2, ORTHO_TOL).unwrap());
        assert!(is_birkhoff_orthogonal(&NormSpec::square(), e1, e2, ORTHO_TOL).unwrap());
        assert!(
            !is_birkhoff_orthogonal(&NormSpec::Euclidean, e1, Point::new(1.0, 1.0), ORTHO_TOL)
                .unwrap()
        );
        let gap = orthogonality_gap(&NormSpec::Euclidean, e1, Point::new(1.0, 1.0)).unwrap();
        assert!((gap - (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn orthogonality_is_not_symmetric_in_general() {
        // on the square, (1,1) ⊥ (1,0) holds but (1,0) ⊥ (1,1) fails
        let sq = NormSpec::square();
        assert!(
            is_birkhoff_orthogonal(&sq, Point::new(1.0, 1.0), Point::new(1.0, 0.0), ORTHO_TOL)
                .unwrap()
        );
        assert!(!is_birkhoff_orthogonal(
            &sq,
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            ORTHO_TOL
        )
        .unwrap());
    }

    #[test]
    fn orthogonality_rejects_zero() {
        let r = is_birkhoff_orthogonal(
            &NormSpec::Euclidean,
            Point::ZERO,
            Point::new(1.0, 0.0),
            1e-9,
        );
        assert!(matches!(r, Err(GeomError::Domain(_))));
    }

    #[test]
    fn successor_euclid() {
        let u = natural_param(&NormSpec::Euclidean, 0.0);
        let p = birkhoff_successor(&NormSpec::Euclidean, &u).unwrap();
        assert!(p.coords.dist(Point::new(0.0, 1.0)) < 1e-15);
    }

    #[test]
    fn successor_ellipse_matches_grid_oracle() {
        let spec = quad14();
        let u = natural_param(&spec, 0.0);
        let p = birkhoff_successor(&spec, &u).unwrap();
        assert!(p.coords.dist(Point::new(0.0, 0.5)) < 1e-15);
        assert!(grid_min(&spec, u.coords, p.coords) >= 1.0 - 1e-15);
    }

    #[test]
    fn successor_l4_matches_grid_oracle() {
        let spec = NormSpec::lp(4.0).unwrap();
        let u = natural_param(&spec, 0.0);
        let p = birkhoff_successor(&spec, &u).unwrap();
        assert!(p.coords.dist(Point::new(0.0, 1.0)) < 1e-15);
        assert!(grid_min(&spec, u.coords, p.coords) >= 1.0 - 1e-15);
        // a slightly rotated direction is no longer orthogonal
        let tilted = natural_param(&spec, FRAC_PI_4 * 2.0 + 0.05).coords;
        assert!(grid_min(&spec, u.coords, tilted) < 1.0 - 1e-6);
    }

    #[test]
    fn successor_rejects_polygons_and_l1() {
        let sq = NormSpec::square();
        let u = natural_param(&sq, 0.3);
        assert!(matches!(
            birkhoff_successor(&sq, &u),
            Err(GeomError::Unsupported(_))
        ));
        let l1 = NormSpec::lp(1.0).unwrap();
        assert!(matches!(
            birkhoff_successor(&l1, &natural_param(&l1, 0.3)),
            Err(GeomError::Unsupported(_))
        ));
    }

    #[test]
    fn tangent_euclid() {
        let t = tangent_check(&NormSpec::Euclidean, 0.0, 1e-4).unwrap();
        assert!(t.collinearity_residual <= 1e-7);
        assert!((t.p_estimate - 1.0).abs() < 1e-8);
    }

    #[test]
    fn tangent_ellipse_analytic() {
        let spec = quad14();
        let t = tangent_check(&spec, FRAC_PI_4, 1e-4).unwrap();
        assert!(t.collinearity_residual <= 1e-6);
        // x² + 4y² = 1 has tangent (−4y, x) at (x, y)
        let s = natural_param(&spec, FRAC_PI_4).coords;
        let oracle = Point::new(-4.0 * s.y, s.x);
        assert!(wedge(oracle, t.perp_dir).abs() / (oracle.euclid() * t.perp_dir.euclid()) < 1e-14);
    }

    #[test]
    fn tangent_l4_implicit() {
        let spec = NormSpec::lp(4.0).unwrap();
        let t = tangent_check(&spec, FRAC_PI_6, 1e-4).unwrap();
        assert!(t.collinearity_residual <= 1e-6);
        assert!(t.p_estimate > 0.0);
        // implicit differentiation of x⁴ + y⁴ = 1: tangent (−y³, x³)
        let s = natural_param(&spec, FRAC_PI_6).coords;
        let oracle = Point::new(-s.y.powi(3), s.x.powi(3));
        assert!(wedge(oracle, t.perp_dir).abs() / (oracle.euclid() * t.perp_dir.euclid()) < 1e-14);
    }

    #[test]
    fn tangent_step_out_of_range() {
        assert!(tangent_check(&NormSpec::Euclidean, 0.0, 0.0).is_err());
        assert!(tangent_check(&NormSpec::Euclidean, 0.0, 0.02).is_err());
    }

    #[test]
    fn tangent_residual_is_second_order() {
        // the circle's truncation error is parallel to s⊥, so the rate is
        // measured on an ellipse where it is not
        let spec = quad14();
        let r1 = tangent_check(&spec, FRAC_PI_4, 1e-2)
            .unwrap()
            .collinearity_residual;
        let r2 = tangent_check(&spec, FRAC_PI_4, 5e-3)
            .unwrap()
            .collinearity_residual;
        let ratio = r1 / r2;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }
}
