use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check::{check_p_rho_s, PropertyReport};
use crate::error::{GeomError, Result};
use crate::norm::NormSpec;

/// One `(spec, ρ)` cell; exactly one of `report` and `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub spec: String,
    pub rho: f64,
    pub inner_product: bool,
    pub report: Option<PropertyReport>,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub samples: usize,
    pub tol: f64,
    /// Spec-major, rho-minor.
    pub rows: Vec<SweepRow>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    spec: &'a str,
    rho: f64,
    samples: Option<usize>,
    max_dev: Option<f64>,
    worst_theta: Option<f64>,
    pass: bool,
}

impl SweepReport {
    /// True when an inner-product cell failed or errored.
    pub fn ips_failure(&self) -> bool {
        self.rows.iter().any(|r| r.inner_product && !r.passed())
    }

    /// One line per cell: `spec,rho,samples,max_dev,worst_theta,pass`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            let rep = row.report.as_ref();
            w.serialize(CsvRow {
                spec: &row.spec,
                rho: row.rho,
                samples: rep.map(|r| r.samples),
                max_dev: rep.map(|r| r.max_midpoint_deviation),
                worst_theta: rep.map(|r| r.worst_theta),
                pass: row.passed(),
            })
            .map_err(|e| GeomError::Numerical(format!("csv: {e}")))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| GeomError::Numerical(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| GeomError::Numerical(format!("csv: {e}")))
    }
}

/// Runs the midpoint checker on every `(spec, ρ)` pair. Cells run in
/// parallel; the row order does not depend on scheduling.
pub fn sweep(specs: &[NormSpec], rhos: &[f64], samples: usize, tol: f64) -> Result<SweepReport> {
    if specs.is_empty() || rhos.is_empty() {
        return Err(GeomError::Domain(
            "sweep needs at least one spec and one rho".into(),
        ));
    }
    let cells: Vec<(&NormSpec, f64)> = specs
        .iter()
        .flat_map(|s| rhos.iter().map(move |&r| (s, r)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(spec, rho)| {
            let (report, error) = match check_p_rho_s(spec, rho, samples, tol) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            };
            SweepRow {
                spec: spec.to_string(),
                rho,
                inner_product: spec.is_inner_product(),
                report,
                error,
            }
        })
        .collect();
    Ok(SweepReport { samples, tol, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::DEFAULT_TOL;

    #[test]
    fn euclid_rows_pass() {
        let r = sweep(&[NormSpec::Euclidean], &[0.3, 0.5, 0.8], 64, DEFAULT_TOL).unwrap();
        assert_eq!(r.rows.len(), 3);
        assert!(r.rows.iter().all(SweepRow::passed));
        assert!(!r.ips_failure());
    }

    #[test]
    fn l4_fails() {
        let r = sweep(&[NormSpec::lp(4.0).unwrap()], &[0.5], 256, DEFAULT_TOL).unwrap();
        let rep = r.rows[0].report.as_ref().unwrap();
        assert!(!rep.pass);
        assert!(rep.max_midpoint_deviation > 1e-4);
        assert!(!r.ips_failure());
    }

    #[test]
    fn square_fails() {
        let sq: NormSpec = "poly:1,1;-1,1;-1,-1;1,-1".parse().unwrap();
        let r = sweep(&[sq], &[0.5], 256, DEFAULT_TOL).unwrap();
        assert!(!r.rows[0].passed());
    }

    #[test]
    fn bad_cells_are_inline() {
        let r = sweep(&[NormSpec::Euclidean], &[0.5, 1.5], 16, DEFAULT_TOL).unwrap();
        assert!(r.rows[1].error.is_some());
        assert!(r.ips_failure());
        let csv = r.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("spec,rho,samples,max_dev,worst_theta,pass")
        );
        assert!(lines.nth(1).unwrap().ends_with(",,,false"));
    }

    #[test]
    fn spec_major_order_and_quoting() {
        let q = NormSpec::quadratic(1.0, 0.0, 4.0).unwrap();
        let r = sweep(&[NormSpec::Euclidean, q], &[0.3, 0.6], 16, DEFAULT_TOL).unwrap();
        let order: Vec<(String, f64)> = r.rows.iter().map(|x| (x.spec.clone(), x.rho)).collect();
        assert_eq!(order[1], ("euclid".into(), 0.6));
        assert_eq!(order[2].1, 0.3);
        assert!(r.to_csv().unwrap().contains("\"quad:1,0,4\""));
    }

    #[test]
    fn empty_lists_rejected() {
        assert!(sweep(&[], &[0.5], 16, DEFAULT_TOL).is_err());
    }
}
