//! Plane vectors, the wedge product and counterclockwise precedence.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// A vector of the real plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ZERO: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector of the Euclidean circle at angle `theta`.
    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Point::new(c, s)
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Euclidean length.
    #[inline]
    pub fn euclid(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self - other).euclid()
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        normalize_angle(self.y.atan2(self.x))
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.x == 0.0 && self.y == 0.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn rot90(self) -> Point {
        Point::new(-self.y, self.x)
    }

    #[inline]
    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(
            (1.0 - t) * self.x + t * other.x,
            (1.0 - t) * self.y + t * other.y,
        )
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    #[inline]
    fn mul(self, p: Point) -> Point {
        Point::new(self * p.x, self * p.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// `u₁v₂ − u₂v₁`: twice the signed area of the triangle `0, u, v`.
#[inline]
pub fn wedge(u: Point, v: Point) -> f64 {
    u.x * v.y - u.y * v.x
}

/// True iff `u` precedes `v` in the counterclockwise orientation.
pub fn precedes(u: Point, v: Point) -> Result<bool> {
    if u.is_zero() || v.is_zero() {
        return Err(GeomError::Domain(
            "orientation is undefined for the zero vector".into(),
        ));
    }
    Ok(wedge(u, v) > 0.0)
}

/// Reduces an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = theta.rem_euclid(tau);
    // rem_euclid can round up to exactly τ for tiny negative inputs
    if r >= tau {
        0.0
    } else {
        r
    }
}

/// Counterclockwise angular gap from `from` to `to`, in `[0, 2π)`.
pub fn ccw_gap(from: f64, to: f64) -> f64 {
    normalize_angle(to - from)
}
