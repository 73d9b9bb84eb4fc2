//! ρ-ellipses: the origin-centered conic through `u`, `(u+u*)/2ρ` and `u*`,
//! and the tangency conditions between it and the unit sphere.

use serde::{Deserialize, Serialize};

use crate::chord::{check_rho, star_map};
use crate::error::{GeomError, Result};
use crate::norm::{natural_param, orthogonality_gap, NormSpec, UnitPoint, ORTHO_TOL};
use crate::point::Point;

/// Origin-centered conic `a·x² + b·xy + c·y² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ConicForm {
    pub fn is_positive_definite(&self) -> bool {
        self.a > 0.0 && 4.0 * self.a * self.c - self.b * self.b > 0.0
    }

    /// Gradient of the quadratic form at `v`.
    pub fn gradient(&self, v: Point) -> Point {
        Point::new(
            2.0 * self.a * v.x + self.b * v.y,
            self.b * v.x + 2.0 * self.c * v.y,
        )
    }

    /// Counterclockwise tangent direction of the level curve through `v`.
    pub fn tangent(&self, v: Point) -> Point {
        self.gradient(v).rot90()
    }

    /// The conic as a norm (only meaningful when positive definite).
    pub fn as_norm(&self) -> Result<NormSpec> {
        NormSpec::quadratic(self.a, self.b, self.c)
    }
}

/// `a·x² + b·xy + c·y²`.
pub fn conic_eval(conic: &ConicForm, v: Point) -> f64 {
    conic.a * v.x * v.x + conic.b * v.x * v.y + conic.c * v.y * v.y
}

/// A fitted conic and the ∞-norm condition number of its 3×3 system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicFit {
    #[serde(flatten)]
    pub conic: ConicForm,
    pub cond: f64,
}

fn solve3(mut m: [[f64; 3]; 3], mut rhs: [f64; 3]) -> Option<[f64; 3]> {
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col].abs() <= 1e-13 * scale {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in (col + 1)..3 {
            let f = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (dst, src) in m[row].iter_mut().zip(pivot_row).skip(col) {
                *dst -= f * src;
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = ((row + 1)..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - tail) / m[row][row];
    }
    Some(x)
}

fn inf_norm(m: &[[f64; 3]; 3]) -> f64 {
    m.iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Fits the conic through three points by partial-pivoting elimination.
pub fn fit_conic(points: [Point; 3]) -> Result<ConicFit> {
    let rows = points.map(|p| [p.x * p.x, p.x * p.y, p.y * p.y]);
    let sol = solve3(rows, [1.0; 3]).ok_or_else(|| {
        GeomError::Degenerate("conic points are parallel (singular system)".into())
    })?;
    let mut inverse = [[0.0; 3]; 3];
    for col in 0..3 {
        let mut e = [0.0; 3];
        e[col] = 1.0;
        let x = solve3(rows, e).expect("nonsingular system");
        for row in 0..3 {
            inverse[row][col] = x[row];
        }
    }
    let conic = ConicForm {
        a: sol[0],
        b: sol[1],
        c: sol[2],
    };
    if !conic.is_positive_definite() {
        return Err(GeomError::Geometry(format!(
            "fitted conic ({}, {}, {}) is not an ellipse",
            conic.a, conic.b, conic.c
        )));
    }
    Ok(ConicFit {
        conic,
        cond: inf_norm(&rows) * inf_norm(&inverse),
    })
}

/// The ρ-ellipse `C_u` through `u`, `w = (u+u*)/2ρ` and `u*`.
pub fn fit_rho_ellipse(u: &UnitPoint, u_star: &UnitPoint, rho: f64) -> Result<ConicFit> {
    check_rho(rho)?;
    let w = (0.5 / rho) * (u.coords + u_star.coords);
    fit_conic([u.coords, w, u_star.coords])
}

/// `C_u` computed from `u` alone.
pub fn rho_ellipse_at(spec: &NormSpec, u: &UnitPoint, rho: f64) -> Result<ConicFit> {
    let star = star_map(spec, u, rho)?;
    fit_rho_ellipse(u, &star, rho)
}

/// True when `ρ² = 1/2` and the `(1 − 2ρ²)` terms vanish.
pub fn is_quarter_turn_rho(rho: f64) -> bool {
    (1.0 - 2.0 * rho * rho).abs() < 1e-15
}

fn star_coefficient(rho: f64) -> f64 {
    if is_quarter_turn_rho(rho) {
        0.0
    } else {
        1.0 - 2.0 * rho * rho
    }
}

/// Orthogonality gaps of the two tangency conditions at `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangencyReport {
    pub theta: f64,
    pub rho: f64,
    /// Gap of `u ⊥ (1−2ρ²)u + u*`.
    pub star_gap: f64,
    /// Gap of `u* ⊥ −u − (1−2ρ²)u*`.
    pub dstar_gap: f64,
    /// `ρ² = 1/2`: the conditions collapse to `u ⊥ u*` and `u* ⊥ −u`.
    pub quarter_turn: bool,
}

impl TangencyReport {
    pub fn star_holds(&self, tol: f64) -> bool {
        self.star_gap <= tol
    }

    pub fn dstar_holds(&self, tol: f64) -> bool {
        self.dstar_gap <= tol
    }
}

/// Evaluates both tangency conditions at `u`.
pub fn tangency_report(spec: &NormSpec, u: &UnitPoint, rho: f64) -> Result<TangencyReport> {
    check_rho(rho)?;
    let star = star_map(spec, u, rho)?;
    let coef = star_coefficient(rho);
    let (p, q) = (u.coords, star.coords);
    Ok(TangencyReport {
        theta: u.theta,
        rho,
        star_gap: orthogonality_gap(spec, p, coef * p + q)?,
        dstar_gap: orthogonality_gap(spec, q, -p - coef * q)?,
        quarter_turn: is_quarter_turn_rho(rho),
    })
}

/// Condition `u ⊥ (1 − 2ρ²)u + u*`: `C_u` and `S` are tangent at `u`.
pub fn tangency_star(spec: &NormSpec, u: &UnitPoint, rho: f64) -> Result<bool> {
    Ok(tangency_report(spec, u, rho)?.star_holds(ORTHO_TOL))
}

/// Condition `u* ⊥ −u − (1 − 2ρ²)u*`: `C_u` and `S` are tangent at `u*`.
pub fn tangency_dstar(spec: &NormSpec, u: &UnitPoint, rho: f64) -> Result<bool> {
    Ok(tangency_report(spec, u, rho)?.dstar_holds(ORTHO_TOL))
}

/// Whether the conic and `S` share a supporting line at `z ∈ S`: `z` must be
/// Birkhoff orthogonal to the conic's tangent direction there.
pub fn conic_tangent_gap(spec: &NormSpec, conic: &ConicForm, z: Point) -> Result<f64> {
    orthogonality_gap(spec, z, conic.tangent(z))
}

/// Result of scanning `S` for a point whose ρ-ellipse is tangent to it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelfTangentSearch {
    pub best_theta: f64,
    pub best_gap: f64,
    /// `best_gap ≤ tol`. `false` means "not found below tolerance", not
    /// that no such point exists.
    pub found: bool,
}

/// Scans a uniform grid of `samples` angles for the smallest gap of
/// condition `(*)`.
pub fn search_self_tangent(
    spec: &NormSpec,
    rho: f64,
    samples: usize,
    tol: f64,
) -> Result<SelfTangentSearch> {
    check_rho(rho)?;
    if samples == 0 {
        return Err(GeomError::Domain("need at least one sample".into()));
    }
    let mut best = (0.0, f64::INFINITY);
    for i in 0..samples {
        let theta = std::f64::consts::TAU * i as f64 / samples as f64;
        let gap = tangency_report(spec, &natural_param(spec, theta), rho)?.star_gap;
        if gap < best.1 {
            best = (theta, gap);
        }
    }
    Ok(SelfTangentSearch {
        best_theta: best.0,
        best_gap: best.1,
        found: best.1 <= tol,
    })
}
