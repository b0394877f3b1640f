//! Differential polynomials, the Lenard recursion and the Painleve II
//! hierarchy `(D + 2q) L_n[q' - q^2] + sum tau_l (D + 2q) L_l[q' - q^2] = s q - alpha`.

pub mod diffpoly;
pub mod equation;
pub mod lenard;
pub mod residual;

pub use diffpoly::{DiffMonomial, DiffPoly};
pub use equation::{build_hierarchy_eq, HierarchyEq};
pub use lenard::{integrate_diffpoly, lenard, lenard_all, lenard_with_max, substitute, DEFAULT_MAX_LENARD};
pub use residual::{eval_residual, series_residual};

use crate::exactalg::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HierarchyError {
    #[error("expression is not a total derivative")]
    NotTotalDerivative,
    #[error("Lenard index {j} exceeds the configured maximum {max}")]
    LenardOutOfRange { j: usize, max: usize },
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
