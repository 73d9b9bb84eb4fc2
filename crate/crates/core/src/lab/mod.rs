//! Verification runs built on the geometry modules: the midpoint-support
//! checker, the equal-wedge and equal-sector suite for odd polygons, the
//! `μ s⊥` integral identities, the even-`n` probe and parameter sweeps.

mod check;
mod identities;
mod probe;
mod punto;
mod sweep;

pub use check::{check_p_rho_s, sample_angles, PropertyReport, DEFAULT_TOL, FRAME_TOL};
pub use identities::{i0_identities, IdentityResiduals};
pub use probe::{even_probe, EvenEvidence};
pub use punto::{punto_suite, PuntoConfig, PuntoReport, PuntoVerdicts, SectorPartition};
pub use sweep::{sweep, SweepReport, SweepRow};

fn spread(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
    if xs.is_empty() {
        0.0
    } else {
        max - min
    }
}
