//! ρ-polygons: orbits of the star map, their closure and winding, and the
//! set `M` of odd-gon closure ratios.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::chord::{check_rho, star_map};
use crate::error::{GeomError, Result};
use crate::norm::{natural_param, NormSpec, UnitPoint};
use crate::point::{ccw_gap, wedge, Point};

pub const DEFAULT_MAX_STEPS: usize = 2000;
pub const DEFAULT_CLOSE_TOL: f64 = 1e-8;

/// Lower bound on the single-linkage radius used to group the orbit tail.
///
/// Orbits can approach their accumulation points slowly (on the max norm
/// at ρ = 1/2 the distance decays like `1/2i`), so consecutive tail points
/// of one cluster sit ~1e-6 apart, far above `10·close_tol`.
pub const MIN_CLUSTER_RADIUS: f64 = 1e-2;

/// `sqrt((1 + cos(2kπ/n)) / 2) = cos(kπ/n)`.
pub fn rho_from_kn(k: u32, n: u32) -> Result<f64> {
    if k == 0 || n < 3 || 2 * k >= n {
        return Err(GeomError::Domain(format!(
            "need k >= 1, n >= 3 and 2k < n, got k={k}, n={n}"
        )));
    }
    Ok((k as f64 * PI / n as f64).cos())
}

/// One element of `M`: the closure ratio of a `(2m+1)`-gon winding `k`
/// times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MEntry {
    pub k: u32,
    pub m: u32,
    pub n: u32,
    pub rho: f64,
}

/// All entries with `1 ≤ k ≤ m ≤ m_max`, sorted by `ρ` descending. Entries
/// with equal `ρ` (e.g. `(1,1)` and `(3,4)`) are kept separately.
pub fn enumerate_m(m_max: u32) -> Vec<MEntry> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        let n = 2 * m + 1;
        for k in 1..=m {
            out.push(MEntry {
                k,
                m,
                n,
                rho: rho_from_kn(k, n).expect("2k < 2m+1"),
            });
        }
    }
    out.sort_by(|a, b| {
        b.rho
            .total_cmp(&a.rho)
            .then(a.m.cmp(&b.m))
            .then(a.k.cmp(&b.k))
    });
    out
}

/// True if `rho` matches an element of `M` with `m ≤ m_max` within `tol`.
pub fn is_in_m(rho: f64, m_max: u32, tol: f64) -> bool {
    enumerate_m(m_max)
        .iter()
        .any(|e| (e.rho - rho).abs() <= tol)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// How the orbit ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolygonStatus {
    /// Returned to the seed after `n` vertices, turning `k` times.
    Closed { n: usize, k: usize, coprime: bool },
    /// No return within `steps` star-map applications. This never
    /// certifies density; it only records what was observed.
    NonClosing {
        steps: usize,
        accumulation_points: Vec<Point>,
    },
}

/// The orbit `u, u*, u**, …` of the star map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoPolygon {
    pub rho: f64,
    /// For a closed polygon, the `n` distinct vertices; otherwise every
    /// visited point including the seed.
    pub vertices: Vec<UnitPoint>,
    pub status: PolygonStatus,
    /// Accumulated counterclockwise angle over all steps taken.
    pub total_turning: f64,
}

impl RhoPolygon {
    pub fn is_closed(&self) -> bool {
        matches!(self.status, PolygonStatus::Closed { .. })
    }

    /// `(n, k)` when closed.
    pub fn closed_counts(&self) -> Option<(usize, usize)> {
        match self.status {
            PolygonStatus::Closed { n, k, .. } => Some((n, k)),
            PolygonStatus::NonClosing { .. } => None,
        }
    }

    fn require_closed(&self, what: &str) -> Result<(usize, usize)> {
        self.closed_counts()
            .ok_or_else(|| GeomError::Classification(format!("{what} needs a closed polygon")))
    }

    pub fn points(&self) -> Vec<Point> {
        self.vertices.iter().map(|v| v.coords).collect()
    }
}

/// Iterates the star map from `u` until it returns within `close_tol` of
/// the seed or `max_steps` applications have been made.
///
/// A candidate return is confirmed by running a second lap, which must
/// track the first within `2·close_tol`; this rejects dense orbits that
/// merely pass near the seed once.
pub fn build_polygon(
    spec: &NormSpec,
    u: &UnitPoint,
    rho: f64,
    max_steps: usize,
    close_tol: f64,
) -> Result<RhoPolygon> {
    check_rho(rho)?;
    if max_steps < 3 {
        return Err(GeomError::Domain(format!(
            "max_steps must be >= 3, got {max_steps}"
        )));
    }
    if !(close_tol > 0.0) {
        return Err(GeomError::Domain("close_tol must be positive".into()));
    }
    let seed = *u;
    let mut vertices = vec![seed];
    let mut turning = 0.0;
    let mut cur = seed;
    for step in 1..=max_steps {
        let next = star_map(spec, &cur, rho)?;
        turning += ccw_gap(cur.theta, next.theta);
        let n = vertices.len();
        if n >= 3
            && next.coords.dist(seed.coords) <= close_tol
            && second_lap_agrees(spec, &next, &vertices, rho, close_tol)?
        {
            let k = (turning / TAU).round().max(1.0) as usize;
            return Ok(RhoPolygon {
                rho,
                vertices,
                status: PolygonStatus::Closed {
                    n,
                    k,
                    coprime: gcd(n, k) == 1,
                },
                total_turning: turning,
            });
        }
        vertices.push(next);
        cur = next;
        if step == max_steps {
            break;
        }
    }
    let radius = (10.0 * close_tol).max(MIN_CLUSTER_RADIUS);
    let tail_start = vertices.len() - vertices.len() / 5;
    let accumulation_points = cluster_tail(&vertices[tail_start..], radius);
    Ok(RhoPolygon {
        rho,
        status: PolygonStatus::NonClosing {
            steps: max_steps,
            accumulation_points,
        },
        vertices,
        total_turning: turning,
    })
}

fn second_lap_agrees(
    spec: &NormSpec,
    start: &UnitPoint,
    lap: &[UnitPoint],
    rho: f64,
    close_tol: f64,
) -> Result<bool> {
    let mut cur = *start;
    for expected in lap.iter().skip(1) {
        cur = star_map(spec, &cur, rho)?;
        if cur.coords.dist(expected.coords) > 2.0 * close_tol {
            return Ok(false);
        }
    }
    let back = star_map(spec, &cur, rho)?;
    Ok(back.coords.dist(lap[0].coords) <= 2.0 * close_tol)
}

/// Single-linkage clusters of `pts` at `radius`; each cluster is
/// represented by its latest member, sorted by polar angle.
fn cluster_tail(pts: &[UnitPoint], radius: f64) -> Vec<Point> {
    let n = pts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if pts[i].coords.dist(pts[j].coords) <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.min(b)] = a.max(b);
                }
            }
        }
    }
    let mut latest: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        latest[r] = Some(i);
    }
    let mut reps: Vec<UnitPoint> = latest.into_iter().flatten().map(|i| pts[i]).collect();
    reps.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    reps.into_iter().map(|u| u.coords).collect()
}

/// Shape of a closed ρ-polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Convex,
    StarShaped(usize),
}

/// Convex when the winding is 1, star-shaped otherwise.
pub fn classify(poly: &RhoPolygon) -> Result<Classification> {
    let (_, k) = poly.require_closed("classification")?;
    Ok(if k == 1 {
        Classification::Convex
    } else {
        Classification::StarShaped(k)
    })
}

/// `u₁∧u₂ + … + u_{n−1}∧u_n + u_n∧u₁`.
pub fn wedge_sum(poly: &RhoPolygon) -> Result<f64> {
    poly.require_closed("wedge sum")
        .map_err(|_| GeomError::Domain("wedge sum needs a closed polygon".into()))?;
    Ok(cyclic_wedges(&poly.points()).iter().sum())
}

/// Consecutive wedges `p_i ∧ p_{i+1}` around a cycle.
pub fn cyclic_wedges(pts: &[Point]) -> Vec<f64> {
    let n = pts.len();
    (0..n).map(|i| wedge(pts[i], pts[(i + 1) % n])).collect()
}

/// Largest distance from a point of `a` to its nearest point of `b`.
pub fn set_distance(a: &[Point], b: &[Point]) -> f64 {
    a.iter()
        .map(|p| b.iter().map(|q| p.dist(*q)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Symmetric version of [`set_distance`]; zero iff the sets agree.
pub fn set_mismatch(a: &[Point], b: &[Point]) -> f64 {
    set_distance(a, b).max(set_distance(b, a))
}

/// Smallest distance between any point of `a` and any point of `b`.
pub fn min_separation(a: &[Point], b: &[Point]) -> f64 {
    a.iter()
        .flat_map(|p| b.iter().map(move |q| p.dist(*q)))
        .fold(f64::INFINITY, f64::min)
}

/// Build the polygon of `s(θ)` with default step and closure settings.
pub fn polygon_from_angle(spec: &NormSpec, theta: f64, rho: f64) -> Result<RhoPolygon> {
    build_polygon(
        spec,
        &natural_param(spec, theta),
        rho,
        DEFAULT_MAX_STEPS,
        DEFAULT_CLOSE_TOL,
    )
}

/// Serialized form of a polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonRecord {
    pub spec: String,
    pub rho: f64,
    pub status: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    /// `(θ, x, y)` per vertex.
    pub vertices: Vec<(f64, f64, f64)>,
    pub turning: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub accumulation_points: Vec<(f64, f64)>,
}

impl PolygonRecord {
    pub fn new(spec: &NormSpec, poly: &RhoPolygon) -> Self {
        let (status, n, k, acc) = match &poly.status {
            PolygonStatus::Closed { n, k, .. } => ("closed", Some(*n), Some(*k), Vec::new()),
            PolygonStatus::NonClosing {
                accumulation_points,
                ..
            } => (
                "non_closing",
                None,
                None,
                accumulation_points.iter().map(|p| (p.x, p.y)).collect(),
            ),
        };
        PolygonRecord {
            spec: spec.to_string(),
            rho: poly.rho,
            status: status.into(),
            n,
            k,
            vertices: poly
                .vertices
                .iter()
                .map(|v| (v.theta, v.coords.x, v.coords.y))
                .collect(),
            turning: poly.total_turning,
            accumulation_points: acc,
        }
    }

    pub fn points(&self) -> Vec<Point> {
        self.vertices
            .iter()
            .map(|&(_, x, y)| Point::new(x, y))
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.status == "closed"
    }
}
