//! Norm families on the plane and their one-sided derivatives.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::point::{wedge, Point};

/// Which one-sided derivative to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Positive definite quadratic form `a·x² + b·xy + c·y²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadForm {
    a: f64,
    b: f64,
    c: f64,
}

impl QuadForm {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::Config(
                "quadratic coefficients must be finite".into(),
            ));
        }
        if a <= 0.0 || 4.0 * a * c - b * b <= 0.0 {
            return Err(GeomError::Config(format!(
                "quadratic form ({a}, {b}, {c}) is not positive definite"
            )));
        }
        Ok(QuadForm { a, b, c })
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    #[inline]
    pub fn eval(&self, v: Point) -> f64 {
        self.a * v.x * v.x + self.b * v.x * v.y + self.c * v.y * v.y
    }

    /// Gradient of the quadratic form (not of its square root).
    #[inline]
    fn gradient(&self, v: Point) -> Point {
        Point::new(
            2.0 * self.a * v.x + self.b * v.y,
            self.b * v.x + 2.0 * self.c * v.y,
        )
    }
}

/// Unit ball given by a centrally symmetric convex polygon.
///
/// Stored counterclockwise with one outward normal per edge, scaled so the
/// edge lies on `n·x = 1`; the gauge is then `max_i n_i·v`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonGauge {
    source: Vec<Point>,
    vertices: Vec<Point>,
    normals: Vec<Point>,
}

impl PolygonGauge {
    /// Builds the gauge from vertices given up to the symmetry `v ↦ −v`.
    pub fn new(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(GeomError::Config("polygon gauge needs vertices".into()));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::Config("polygon vertices must be finite".into()));
        }
        if points.iter().any(|p| p.is_zero()) {
            return Err(GeomError::Config("polygon vertex at the origin".into()));
        }
        let mut all: Vec<Point> = points.iter().flat_map(|&p| [p, -p]).collect();
        all.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
        all.dedup();

        let hull = convex_hull(&all);
        if hull.len() < 4 {
            return Err(GeomError::Config(
                "symmetrized polygon does not enclose the origin".into(),
            ));
        }
        // every supplied vertex must be a corner of the hull
        for p in &all {
            if !hull.iter().any(|h| h == p) {
                return Err(GeomError::Config(format!(
                    "vertex ({}, {}) is not a corner of a convex polygon",
                    p.x, p.y
                )));
            }
        }
        let n = hull.len();
        let mut normals = Vec::with_capacity(n);
        for i in 0..n {
            let a = hull[i];
            let b = hull[(i + 1) % n];
            let w = wedge(a, b);
            if w <= 0.0 {
                return Err(GeomError::Config(
                    "origin is not strictly inside the polygon".into(),
                ));
            }
            normals.push(Point::new((b.y - a.y) / w, (a.x - b.x) / w));
        }
        Ok(PolygonGauge {
            source: points.to_vec(),
            vertices: hull,
            normals,
        })
    }

    /// Counterclockwise vertices of the symmetrized polygon.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    #[inline]
    fn eval(&self, v: Point) -> f64 {
        self.normals
            .iter()
            .map(|n| n.dot(v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn one_sided(&self, v: Point, d: Point, side: Side) -> f64 {
        let values: Vec<f64> = self.normals.iter().map(|n| n.dot(v)).collect();
        let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let slack = 4.0 * f64::EPSILON * top.abs();
        let active = self
            .normals
            .iter()
            .zip(&values)
            .filter(|(_, &val)| val >= top - slack)
            .map(|(n, _)| n.dot(d));
        match side {
            Side::Right => active.fold(f64::NEG_INFINITY, f64::max),
            Side::Left => active.fold(f64::INFINITY, f64::min),
        }
    }
}

/// Strict convex hull (collinear points dropped), counterclockwise.
/// Input must be sorted lexicographically and deduplicated.
fn convex_hull(sorted: &[Point]) -> Vec<Point> {
    if sorted.len() < 3 {
        return sorted.to_vec();
    }
    let turn = |o: Point, a: Point, b: Point| wedge(a - o, b - o);
    let mut lower: Vec<Point> = Vec::new();
    for &p in sorted {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in sorted.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// A symmetric convex gauge on the plane.
///
/// Construct through [`NormSpec::quadratic`], [`NormSpec::lp`],
/// [`NormSpec::polygon`] or by parsing the textual grammar
/// `euclid | lp:<p> | quad:<a>,<b>,<c> | poly:<x1>,<y1>;<x2>,<y2>;...`.
#[derive(Debug, Clone, PartialEq)]
pub enum NormSpec {
    Euclidean,
    Quadratic(QuadForm),
    Lp(f64),
    Polygon(PolygonGauge),
}

impl NormSpec {
    pub fn quadratic(a: f64, b: f64, c: f64) -> Result<Self> {
        QuadForm::new(a, b, c).map(NormSpec::Quadratic)
    }

    /// `ℓp` for finite `p ≥ 1`; use a polygon gauge for `ℓ∞`.
    pub fn lp(p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(GeomError::Config(
                "lp needs finite p; use poly:1,1;-1,1 for the max norm".into(),
            ));
        }
        if p < 1.0 {
            return Err(GeomError::Config(format!("lp needs p >= 1, got {p}")));
        }
        Ok(NormSpec::Lp(p))
    }

    pub fn polygon(vertices: &[Point]) -> Result<Self> {
        PolygonGauge::new(vertices).map(NormSpec::Polygon)
    }

    /// The max norm, as the square with corners `(±1, ±1)`.
    pub fn square() -> Self {
        NormSpec::polygon(&[Point::new(1.0, 1.0), Point::new(-1.0, 1.0)])
            .expect("square gauge is valid")
    }

    /// Smooth and strictly convex, so the Birkhoff successor is a function.
    pub fn is_smooth_strictly_convex(&self) -> bool {
        match self {
            NormSpec::Euclidean | NormSpec::Quadratic(_) => true,
            NormSpec::Lp(p) => *p > 1.0,
            NormSpec::Polygon(_) => false,
        }
    }

    /// The norm comes from an inner product (its sphere is an ellipse).
    pub fn is_inner_product(&self) -> bool {
        match self {
            NormSpec::Euclidean | NormSpec::Quadratic(_) => true,
            NormSpec::Lp(p) => *p == 2.0,
            NormSpec::Polygon(_) => false,
        }
    }

    pub(crate) fn require_smooth(&self) -> Result<()> {
        if self.is_smooth_strictly_convex() {
            Ok(())
        } else {
            Err(GeomError::Unsupported(format!(
                "`{self}` is not smooth and strictly convex"
            )))
        }
    }

    /// Gauge of `v`.
    #[inline]
    pub fn norm(&self, v: Point) -> f64 {
        match self {
            NormSpec::Euclidean => v.euclid(),
            NormSpec::Quadratic(q) => q.eval(v).max(0.0).sqrt(),
            NormSpec::Lp(p) => lp_norm(*p, v),
            NormSpec::Polygon(g) => g.eval(v),
        }
    }

    /// One-sided derivative of `λ ↦ ‖v + λd‖` at `λ = 0`.
    pub fn one_sided_derivative(&self, v: Point, d: Point, side: Side) -> f64 {
        if v.is_zero() {
            let nd = self.norm(d);
            return match side {
                Side::Right => nd,
                Side::Left => -self.norm(-d),
            };
        }
        match self {
            NormSpec::Euclidean => v.dot(d) / v.euclid(),
            NormSpec::Quadratic(q) => q.gradient(v).dot(d) / (2.0 * self.norm(v)),
            NormSpec::Lp(p) if *p > 1.0 => {
                let n = lp_norm(*p, v);
                let g = |c: f64| c.signum() * (c.abs() / n).powf(*p - 1.0);
                let gx = if v.x == 0.0 { 0.0 } else { g(v.x) };
                let gy = if v.y == 0.0 { 0.0 } else { g(v.y) };
                gx * d.x + gy * d.y
            }
            NormSpec::Lp(_) => {
                let term = |c: f64, dc: f64| {
                    if c != 0.0 {
                        c.signum() * dc
                    } else {
                        match side {
                            Side::Right => dc.abs(),
                            Side::Left => -dc.abs(),
                        }
                    }
                };
                term(v.x, d.x) + term(v.y, d.y)
            }
            NormSpec::Polygon(g) => g.one_sided(v, d, side),
        }
    }
}

fn lp_norm(p: f64, v: Point) -> f64 {
    let (ax, ay) = (v.x.abs(), v.y.abs());
    if p == 1.0 {
        return ax + ay;
    }
    if p == 2.0 {
        return v.euclid();
    }
    let m = ax.max(ay);
    if m == 0.0 {
        return 0.0;
    }
    m * ((ax / m).powf(p) + (ay / m).powf(p)).powf(1.0 / p)
}

/// Gauge of `v` under `spec`.
#[inline]
pub fn eval_norm(spec: &NormSpec, v: Point) -> f64 {
    spec.norm(v)
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Euclidean => write!(f, "euclid"),
            NormSpec::Quadratic(q) => write!(f, "quad:{},{},{}", q.a, q.b, q.c),
            NormSpec::Lp(p) => write!(f, "lp:{p}"),
            NormSpec::Polygon(g) => {
                write!(f, "poly:")?;
                for (i, p) in g.source.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{},{}", p.x, p.y)?;
                }
                Ok(())
            }
        }
    }
}

fn parse_num(s: &str) -> Result<f64> {
    let t = s.trim().replace('\u{2212}', "-");
    t.parse::<f64>()
        .map_err(|_| GeomError::Config(format!("not a number: `{}`", s.trim())))
}

impl FromStr for NormSpec {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "euclid" {
            return Ok(NormSpec::Euclidean);
        }
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| GeomError::Config(format!("unknown norm spec `{s}`")))?;
        match head {
            "lp" => NormSpec::lp(parse_num(body)?),
            "quad" => {
                let c: Vec<f64> = body.split(',').map(parse_num).collect::<Result<_>>()?;
                if c.len() != 3 {
                    return Err(GeomError::Config(format!(
                        "quad needs 3 coefficients, got {}",
                        c.len()
                    )));
                }
                NormSpec::quadratic(c[0], c[1], c[2])
            }
            "poly" => {
                let pts = body
                    .split(';')
                    .filter(|v| !v.trim().is_empty())
                    .map(|v| {
                        let xy: Vec<f64> = v.split(',').map(parse_num).collect::<Result<_>>()?;
                        match xy.as_slice() {
                            [x, y] => Ok(Point::new(*x, *y)),
                            _ => Err(GeomError::Config(format!("bad vertex `{v}`"))),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                NormSpec::polygon(&pts)
            }
            _ => Err(GeomError::Config(format!("unknown norm family `{head}`"))),
        }
    }
}

impl Serialize for NormSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
