//! High-precision quadrature, the period integral and the Picard–Fuchs
//! residual checks, and the Gauss hypergeometric series.

mod hyp;
mod period;
mod quad;

pub use hyp::{homogeneous_residual, hyp2f1, HomogeneousResidual, Hyp2F1};
pub use period::{
    normal_function_factor, onedim_check, onedim_check_at, period, period_fd_lambda1, pf_inhomogeneous_residual, target1, target1_at,
    target2_printed, Component, InhomogeneousResidual, LineEvaluator, OneDimCheck, PeriodIntegrand, PeriodValue,
};
pub use quad::{powf, tanh_sinh, tanh_sinh_plain, QuadResult, QuadSpec, QuadValue};
