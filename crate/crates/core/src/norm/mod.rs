//! Norm families, the natural parametrization of the unit sphere and
//! Birkhoff orthogonality.

mod ortho;
mod param;
mod spec;

pub(crate) use ortho::check_step;
pub use ortho::{
    birkhoff_successor, is_birkhoff_orthogonal, orthogonality_gap, tangent_check, TangentCheck,
    BISECTION_STEPS, ORTHO_TOL,
};
pub use param::{natural_param, UnitPoint, UNIT_TOL};
pub use spec::{eval_norm, NormSpec, PolygonGauge, QuadForm, Side};
