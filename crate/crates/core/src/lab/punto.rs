use serde::{Deserialize, Serialize};

use super::spread;
use crate::area::{partition_areas, sector_between, total_ball_area, DEFAULT_SAMPLES};
use crate::chord::star_map;
use crate::error::{GeomError, Result};
use crate::norm::{natural_param, NormSpec, UnitPoint};
use crate::point::Point;
use crate::polygon::{
    build_polygon, cyclic_wedges, is_in_m, set_mismatch, PolygonStatus, RhoPolygon,
    DEFAULT_CLOSE_TOL, DEFAULT_MAX_STEPS,
};

/// Largest `m` searched when checking that `ρ` is a closure ratio.
const M_SEARCH: u32 = 64;

/// Settings for [`punto_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PuntoConfig {
    pub samples: usize,
    pub wedge_tol: f64,
    pub sector_tol: f64,
    /// Tolerance for identifying `P_w` with `P_v` or `P_{−v}`.
    pub match_tol: f64,
    /// Run even when `ρ` is not a closure ratio `cos(kπ/(2m+1))`.
    pub force: bool,
}

impl Default for PuntoConfig {
    fn default() -> Self {
        PuntoConfig {
            samples: DEFAULT_SAMPLES,
            wedge_tol: 1e-8,
            sector_tol: 1e-5,
            match_tol: 1e-6,
            force: false,
        }
    }
}

/// The `2n` sectors cut by `P_v ∪ P_{−v}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorPartition {
    pub rho: f64,
    /// Sorted by polar angle.
    pub boundary: Vec<UnitPoint>,
    /// `areas[i]` is the sector from `boundary[i]` to the next point.
    pub areas: Vec<f64>,
    pub spread: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuntoVerdicts {
    pub equal_wedges: bool,
    pub equal_sectors: bool,
    pub equal_partition: bool,
    pub w_polygon_identified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuntoReport {
    pub spec_id: String,
    pub rho: f64,
    pub seed_theta: f64,
    pub n: usize,
    pub k: usize,
    /// `v_i ∧ v_{i+1}` around `P_v`.
    pub wedges: Vec<f64>,
    pub wedge_spread: f64,
    /// `A(B_{v_i}^{v_{i+1}})` around `P_v`.
    pub sectors: Vec<f64>,
    pub sector_spread: f64,
    pub partition: SectorPartition,
    pub total_area: f64,
    /// `|Σ partition − total area|`.
    pub partition_sum_residual: f64,
    /// `"minus_v"` for odd `k`, `"v"` for even `k`.
    pub w_target: String,
    pub w_mismatch: f64,
    pub verdicts: PuntoVerdicts,
    pub notes: String,
}

impl PuntoReport {
    pub fn all_pass(&self) -> bool {
        let v = self.verdicts;
        v.equal_wedges && v.equal_sectors && v.equal_partition && v.w_polygon_identified
    }
}

pub(super) fn closed_polygon(spec: &NormSpec, u: &UnitPoint, rho: f64) -> Result<RhoPolygon> {
    let poly = build_polygon(spec, u, rho, DEFAULT_MAX_STEPS, DEFAULT_CLOSE_TOL)?;
    match &poly.status {
        PolygonStatus::Closed { .. } => Ok(poly),
        PolygonStatus::NonClosing {
            steps,
            accumulation_points,
        } => Err(GeomError::Classification(format!(
            "polygon from theta={} did not close within {steps} steps ({} accumulation clusters)",
            u.theta,
            accumulation_points.len()
        ))),
    }
}

/// The sphere point `w = (v + v*)/2ρ`, projected onto `S`.
pub(super) fn midpoint_seed(spec: &NormSpec, v: &UnitPoint, rho: f64) -> Result<UnitPoint> {
    let star = star_map(spec, v, rho)?;
    Ok(UnitPoint::on_ray(
        spec,
        (0.5 / rho) * (v.coords + star.coords),
    ))
}

pub(super) fn sorted_by_angle(mut pts: Vec<UnitPoint>) -> Vec<UnitPoint> {
    pts.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    pts
}

/// Checks, for the polygon `P_v` of `v = s(seed_theta)`, that consecutive
/// wedges and sectors are equal, that `P_v ∪ P_{−v}` splits the ball into
/// `2n` sectors of equal area, and that `P_w` coincides with `P_{−v}` (odd
/// winding) or `P_v` (even winding).
pub fn punto_suite(
    spec: &NormSpec,
    rho: f64,
    seed_theta: f64,
    cfg: &PuntoConfig,
) -> Result<PuntoReport> {
    if !cfg.force && !is_in_m(rho, M_SEARCH, 1e-12) {
        return Err(GeomError::Domain(format!(
            "rho={rho} is not a closure ratio cos(k*pi/(2m+1)); force the run to override"
        )));
    }
    let v = natural_param(spec, seed_theta);
    let pv = closed_polygon(spec, &v, rho)?;
    let (n, k) = pv.closed_counts().expect("closed polygon");
    let pmv = closed_polygon(spec, &v.antipode(spec), rho)?;
    let pw = closed_polygon(spec, &midpoint_seed(spec, &v, rho)?, rho)?;

    let wedges = cyclic_wedges(&pv.points());
    let sectors = (0..n)
        .map(|i| {
            sector_between(
                spec,
                &pv.vertices[i],
                &pv.vertices[(i + 1) % n],
                cfg.samples,
            )
            .map(|s| s.value)
        })
        .collect::<Result<Vec<_>>>()?;

    let boundary = sorted_by_angle(pv.vertices.iter().chain(&pmv.vertices).copied().collect());
    let areas = partition_areas(spec, &boundary, cfg.samples)?;
    let total_area = total_ball_area(spec, cfg.samples)?;
    let partition_sum_residual = (areas.iter().sum::<f64>() - total_area).abs();
    let partition = SectorPartition {
        rho,
        spread: spread(&areas),
        boundary,
        areas,
    };

    let (w_target, target): (&str, Vec<Point>) = if k % 2 == 1 {
        ("minus_v", pmv.points())
    } else {
        ("v", pv.points())
    };
    let w_mismatch = set_mismatch(&pw.points(), &target);

    let wedge_spread = spread(&wedges);
    let sector_spread = spread(&sectors);
    let verdicts = PuntoVerdicts {
        equal_wedges: wedge_spread <= cfg.wedge_tol,
        equal_sectors: sector_spread <= cfg.sector_tol,
        equal_partition: partition.boundary.len() == 2 * n
            && partition.spread <= cfg.sector_tol
            && partition_sum_residual <= cfg.sector_tol,
        w_polygon_identified: pw.vertices.len() == n && w_mismatch <= cfg.match_tol,
    };
    let mut notes = vec![format!(
        "P_w matched against P_{w_target} with chosen tolerance {}",
        cfg.match_tol
    )];
    if cfg.force {
        notes.push("closure-ratio precondition bypassed".into());
    }
    Ok(PuntoReport {
        spec_id: spec.to_string(),
        rho,
        seed_theta,
        n,
        k,
        wedges,
        wedge_spread,
        sectors,
        sector_spread,
        partition,
        total_area,
        partition_sum_residual,
        w_target: w_target.into(),
        w_mismatch,
        verdicts,
        notes: notes.join("; "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::rho_from_kn;
    use std::f64::consts::PI;

    #[test]
    fn euclid_triangle() {
        let r = punto_suite(&NormSpec::Euclidean, 0.5, 0.0, &PuntoConfig::default()).unwrap();
        assert_eq!((r.n, r.k), (3, 1));
        for w in &r.wedges {
            assert!((w - (2.0 * PI / 3.0).sin()).abs() < 1e-9);
        }
        assert_eq!(r.partition.areas.len(), 6);
        for a in &r.partition.areas {
            assert!((a - PI / 6.0).abs() < 1e-6);
        }
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.w_target, "minus_v");
    }

    #[test]
    fn ellipse_heptagon() {
        let q = NormSpec::quadratic(1.0, 0.0, 4.0).unwrap();
        let r = punto_suite(&q, rho_from_kn(2, 7).unwrap(), 0.4, &PuntoConfig::default()).unwrap();
        assert_eq!((r.n, r.k), (7, 2));
        assert!(r.wedge_spread <= 1e-8);
        assert_eq!(r.partition.areas.len(), 14);
        assert!(r.partition.spread <= 1e-5);
        assert!((r.total_area - PI / 2.0).abs() <= 1e-5);
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.w_target, "v");
    }

    #[test]
    fn euclid_three_turns() {
        let r = punto_suite(
            &NormSpec::Euclidean,
            rho_from_kn(3, 7).unwrap(),
            1.1,
            &PuntoConfig::default(),
        )
        .unwrap();
        assert_eq!((r.n, r.k), (7, 3));
    }

    #[test]
    fn requires_closure_ratio() {
        let r = punto_suite(&NormSpec::Euclidean, 0.6, 0.0, &PuntoConfig::default());
        assert!(matches!(r, Err(GeomError::Domain(_))));
    }

    #[test]
    fn forced_dense_orbit_aborts() {
        let cfg = PuntoConfig {
            force: true,
            ..PuntoConfig::default()
        };
        let r = punto_suite(&NormSpec::Euclidean, 0.6, 0.0, &cfg);
        assert!(matches!(r, Err(GeomError::Classification(_))));
    }
}
