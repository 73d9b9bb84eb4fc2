//! Chord minima, the star map `u ↦ u*` and the frame `ρ(s ± μ s⊥)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::norm::{
    birkhoff_successor, check_step, natural_param, NormSpec, Side, TangentCheck, UnitPoint,
    BISECTION_STEPS,
};
use crate::point::{wedge, Point};

/// The star-map bracket stops this far short of the antipode, where
/// chord minima vanish.
pub const ANTIPODAL_GUARD: f64 = 1e-9;

/// A chord `[u, v]` of the unit sphere and its smallest norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChordReport {
    pub u: UnitPoint,
    pub v: UnitPoint,
    /// `min_{t∈[0,1]} ‖(1−t)u + tv‖`.
    pub min_value: f64,
    pub argmin_lo: f64,
    pub argmin_hi: f64,
    /// `‖(u+v)/2‖`.
    pub midpoint_norm: f64,
    /// Distance of the minimizer from `t = 1/2`. Informational only: the
    /// minimizer is ill-conditioned on nearly flat chords.
    pub center_offset: f64,
}

impl ChordReport {
    /// `|‖(u+v)/2‖ − ρ|`, the midpoint-support deviation of this chord.
    pub fn midpoint_deviation(&self, rho: f64) -> f64 {
        (self.midpoint_norm - rho).abs()
    }
}

pub(crate) fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho < 1.0 {
        Ok(())
    } else {
        Err(GeomError::Domain(format!(
            "rho must lie in (0, 1), got {rho}"
        )))
    }
}

/// Smallest `t` where the right derivative of `t ↦ ‖(1−t)a + tb‖` is
/// nonnegative.
fn first_nonneg_right(spec: &NormSpec, a: Point, b: Point) -> f64 {
    let d = b - a;
    let right = |t: f64| spec.one_sided_derivative(a.lerp(b, t), d, Side::Right);
    if right(0.0) >= 0.0 {
        return 0.0;
    }
    if right(1.0) < 0.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if right(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Largest `t` where the left derivative is nonpositive.
fn last_nonpos_left(spec: &NormSpec, a: Point, b: Point) -> f64 {
    let d = b - a;
    let left = |t: f64| spec.one_sided_derivative(a.lerp(b, t), d, Side::Left);
    if left(1.0) <= 0.0 {
        return 1.0;
    }
    if left(0.0) > 0.0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if left(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Minimum of the chord norm without the minimizer interval.
fn chord_min_value(spec: &NormSpec, a: Point, b: Point) -> f64 {
    let t = first_nonneg_right(spec, a, b);
    spec.norm(a.lerp(b, t))
}

/// Minimum of the convex function `t ↦ ‖(1−t)u + tv‖` on `[0, 1]`.
pub fn chord_min(spec: &NormSpec, u: &UnitPoint, v: &UnitPoint) -> Result<ChordReport> {
    if u.coords.dist(v.coords) == 0.0 {
        return Err(GeomError::Degenerate("chord endpoints coincide".into()));
    }
    let (a, b) = (u.coords, v.coords);
    let mut lo = first_nonneg_right(spec, a, b);
    let mut hi = last_nonpos_left(spec, a, b);
    if lo > hi {
        // both ends converge on one minimizer; rounding may cross them
        let m = 0.5 * (lo + hi);
        lo = m;
        hi = m;
    }
    let min_value = [lo, 0.5 * (lo + hi), hi]
        .iter()
        .map(|&t| spec.norm(a.lerp(b, t)))
        .fold(f64::INFINITY, f64::min);
    Ok(ChordReport {
        u: *u,
        v: *v,
        min_value,
        argmin_lo: lo,
        argmin_hi: hi,
        midpoint_norm: spec.norm(0.5 * (a + b)),
        center_offset: (0.5 * (lo + hi) - 0.5).abs(),
    })
}

/// Last angle `φ ∈ (θ_u, θ_u + π − guard]` at which `pred(φ)` holds, for a
/// predicate true on an initial sub-interval.
fn sweep_boundary<F>(u: &UnitPoint, pred: F) -> Result<f64>
where
    F: Fn(f64) -> bool,
{
    let mut lo = u.theta;
    let mut hi = u.theta + PI - ANTIPODAL_GUARD;
    if pred(hi) {
        return Err(GeomError::Numerical(
            "star-map bracket failure: predicate still holds at the antipodal guard".into(),
        ));
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo == u.theta {
        return Err(GeomError::Numerical(
            "star-map bracket failure: predicate fails next to u".into(),
        ));
    }
    Ok(lo)
}

/// The unique `u* ∈ S`, `u ≺ u*`, such that `[u, u*]` supports `ρS`.
///
/// Bisects on the predicate `chord_min(u, s(φ)) ≥ ρ`, whose truth region
/// is an initial interval of `(θ_u, θ_u + π)`; on a plateau the supremum
/// of that region is returned.
pub fn star_map(spec: &NormSpec, u: &UnitPoint, rho: f64) -> Result<UnitPoint> {
    check_rho(rho)?;
    let phi = sweep_boundary(u, |phi| {
        chord_min_value(spec, u.coords, natural_param(spec, phi).coords) >= rho
    })?;
    Ok(natural_param(spec, phi))
}

/// Angular width of the set of `φ` whose chord from `u` has minimum within
/// `slack` of `ρ`. Zero (to rounding) for strictly convex norms; positive
/// when `ρS` has a corner the chords pivot around.
pub fn star_plateau_width(spec: &NormSpec, u: &UnitPoint, rho: f64, slack: f64) -> Result<f64> {
    check_rho(rho)?;
    let upper = sweep_boundary(u, |phi| {
        chord_min_value(spec, u.coords, natural_param(spec, phi).coords) >= rho - slack
    })?;
    let lower = sweep_boundary(u, |phi| {
        chord_min_value(spec, u.coords, natural_param(spec, phi).coords) > rho + slack
    })?;
    Ok((upper - lower).max(0.0))
}

/// Chord report of `[u, u*]`; its midpoint deviation measures the
/// midpoint-support property at `u`.
pub fn midpoint_check(spec: &NormSpec, u: &UnitPoint, rho: f64) -> Result<ChordReport> {
    let v = star_map(spec, u, rho)?;
    chord_min(spec, u, &v)
}

/// `s(θ)`, `s⊥(θ)` and the unique `μ > 0` with `‖ρ(s + μ s⊥)‖ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChordFrame {
    pub theta: f64,
    pub rho: f64,
    pub base: UnitPoint,
    pub perp: UnitPoint,
    pub mu: f64,
    /// `ρ(s − μ s⊥)`.
    pub left: Point,
    /// `ρ(s + μ s⊥)`.
    pub right: Point,
}

impl ChordFrame {
    /// `μ(θ) s⊥(θ)`.
    pub fn mu_perp(&self) -> Point {
        self.mu * self.perp.coords
    }

    /// `|‖left‖ − 1|`; zero when the norm has the midpoint-support property.
    pub fn left_defect(&self, spec: &NormSpec) -> f64 {
        (spec.norm(self.left) - 1.0).abs()
    }
}

/// Solves `‖ρ(s(θ) + μ s⊥(θ))‖ = 1` by monotone bisection on
/// `μ ∈ (0, (1 + 1/ρ)/‖s⊥‖]`.
pub fn mu_of(spec: &NormSpec, theta: f64, rho: f64) -> Result<ChordFrame> {
    spec.require_smooth()?;
    check_rho(rho)?;
    let base = natural_param(spec, theta);
    let perp = birkhoff_successor(spec, &base)?;
    let (s, p) = (base.coords, perp.coords);
    let excess = |mu: f64| spec.norm(rho * (s + mu * p)) - 1.0;
    let mut lo = 0.0;
    let mut hi = (1.0 + 1.0 / rho) / spec.norm(p);
    if excess(hi) < 0.0 {
        return Err(GeomError::Numerical("mu bracket failure".into()));
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if excess(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mu = 0.5 * (lo + hi);
    Ok(ChordFrame {
        theta: base.theta,
        rho,
        base,
        perp,
        mu,
        left: rho * (s - mu * p),
        right: rho * (s + mu * p),
    })
}

/// The tangent check run on `s*(θ) = s(θ)*`: estimates `q(θ)` in
/// `s*'(θ) = q(θ) s*⊥(θ)`.
pub fn star_tangent_check(spec: &NormSpec, theta: f64, rho: f64, h: f64) -> Result<TangentCheck> {
    spec.require_smooth()?;
    check_step(h)?;
    let star_at = |phi: f64| star_map(spec, &natural_param(spec, phi), rho);
    let fwd = star_at(theta + h)?.coords;
    let back = star_at(theta - h)?.coords;
    let fd = (0.5 / h) * (fwd - back);
    let star = star_at(theta)?;
    let perp = birkhoff_successor(spec, &star)?;
    Ok(TangentCheck::compare(
        natural_param(spec, theta).theta,
        fd,
        perp.coords,
    ))
}

/// `u ≺ u*` for a star-map output, as a sanity predicate for callers.
pub fn is_ccw_step(u: &UnitPoint, v: &UnitPoint) -> bool {
    wedge(u.coords, v.coords) > 0.0
}
