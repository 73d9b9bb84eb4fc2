use serde::{Deserialize, Serialize};

use super::punto::{midpoint_seed, sorted_by_angle};
use super::spread;
use crate::area::partition_areas;
use crate::error::{GeomError, Result};
use crate::norm::{natural_param, NormSpec};
use crate::polygon::{
    build_polygon, min_separation, rho_from_kn, set_mismatch, PolygonRecord, DEFAULT_CLOSE_TOL,
    DEFAULT_MAX_STEPS,
};

/// Observations for an even vertex count. Records measurements only: the
/// equal-sector split is not asserted either way.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvenEvidence {
    pub spec_id: String,
    pub k: u32,
    pub n: u32,
    pub rho: f64,
    pub seed_theta: f64,
    pub v_polygon: PolygonRecord,
    pub w_polygon: Option<PolygonRecord>,
    /// Set distance between `P_v` and `P_{−v}`.
    pub minus_v_mismatch: Option<f64>,
    /// Smallest distance between `P_v` and `P_w`.
    pub w_separation: Option<f64>,
    /// Sectors cut by `P_v ∪ P_w`, sorted by angle.
    pub sectors: Vec<f64>,
    pub spread: Option<f64>,
    pub notes: String,
}

/// Builds `P_v` and `P_w` at `ρ = cos(kπ/n)` and measures the sectors cut
/// by their union. Orbits that do not close are recorded, not rejected.
pub fn even_probe(
    spec: &NormSpec,
    k: u32,
    n: u32,
    seed_theta: f64,
    samples: usize,
) -> Result<EvenEvidence> {
    if !n.is_multiple_of(2) || k == 0 || 2 * k >= n {
        return Err(GeomError::Domain(format!(
            "need even n and 0 < 2k < n, got k={k}, n={n}"
        )));
    }
    let rho = rho_from_kn(k, n)?;
    let v = natural_param(spec, seed_theta);
    let build = |u| build_polygon(spec, u, rho, DEFAULT_MAX_STEPS, DEFAULT_CLOSE_TOL);
    let pv = build(&v)?;
    let mut evidence = EvenEvidence {
        spec_id: spec.to_string(),
        k,
        n,
        rho,
        seed_theta,
        v_polygon: PolygonRecord::new(spec, &pv),
        w_polygon: None,
        minus_v_mismatch: None,
        w_separation: None,
        sectors: Vec::new(),
        spread: None,
        notes: String::new(),
    };
    if !pv.is_closed() {
        evidence.notes = "P_v did not close; no partition measured".into();
        return Ok(evidence);
    }
    let minus_v = v.antipode(spec);
    let pmv = build(&minus_v)?;
    if pmv.is_closed() {
        evidence.minus_v_mismatch = Some(set_mismatch(&pv.points(), &pmv.points()));
    }
    let w = midpoint_seed(spec, &v, rho)?;
    let pw = build(&w)?;
    evidence.w_polygon = Some(PolygonRecord::new(spec, &pw));
    if !pw.is_closed() {
        evidence.notes = "P_w did not close; no partition measured".into();
        return Ok(evidence);
    }
    evidence.w_separation = Some(min_separation(&pv.points(), &pw.points()));
    let boundary = sorted_by_angle(pv.vertices.iter().chain(&pw.vertices).copied().collect());
    evidence.sectors = partition_areas(spec, &boundary, samples)?;
    evidence.spread = Some(spread(&evidence.sectors));
    evidence.notes = format!(
        "{} sectors measured; equal-area split is not asserted",
        boundary.len()
    );
    Ok(evidence)
}
