//! Points of the unit sphere, addressed by their polar angle.

use serde::{Deserialize, Serialize};

use super::spec::NormSpec;
use crate::point::{normalize_angle, Point};

/// Default tolerance for membership in the unit sphere.
pub const UNIT_TOL: f64 = 1e-10;

/// A point of the unit sphere `S` together with its polar angle.
///
/// `coords` is always the positive multiple of `(cos θ, sin θ)` with norm 1;
/// build it through [`natural_param`] so the two never drift apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitPoint {
    pub theta: f64,
    pub coords: Point,
}

impl UnitPoint {
    /// The sphere point on the ray through `p` (which must be nonzero).
    pub fn on_ray(spec: &NormSpec, p: Point) -> UnitPoint {
        natural_param(spec, p.angle())
    }

    /// The antipodal point `−u`.
    pub fn antipode(&self, spec: &NormSpec) -> UnitPoint {
        natural_param(spec, self.theta + std::f64::consts::PI)
    }
}

/// `s(θ) = (cos θ, sin θ) / ‖(cos θ, sin θ)‖`.
pub fn natural_param(spec: &NormSpec, theta: f64) -> UnitPoint {
    let theta = normalize_angle(theta);
    let dir = Point::from_angle(theta);
    let r = spec.norm(dir);
    UnitPoint {
        theta,
        coords: (1.0 / r) * dir,
    }
}
