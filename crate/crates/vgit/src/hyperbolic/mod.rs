//! Hyperbolic lattices: reflection groups, Coxeter diagrams and isotropic sublattices.

pub mod boundary;
pub mod diagram;
pub mod vinberg;

use thiserror::Error;

use crate::lattice::LatticeError;

pub use boundary::{
    baily_borel_boundary, isotropic_quotient, isotropic_rank1_classes, isotropic_rank2_classes, BoundaryReport,
    IsotropicClass,
};
pub use diagram::{parabolic_subdiagrams, stop_condition, AffineType, CoxeterDiagram, EdgeKind, ParabolicClass};
pub use vinberg::{default_base_vector, vinberg, NormMenu, VinbergBudget, VinbergRun, VinbergState};

#[derive(Debug, Error)]
pub enum HyperbolicError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("lattice does not have signature (1, n)")]
    NotHyperbolic,
    #[error("base vector has norm {0}, which is not positive")]
    BaseNotPositive(i64),
    #[error("lattice has no summand named U")]
    NoHyperbolicPlane,
    #[error("Vinberg's algorithm did not reach the stop condition within the budget")]
    Budget,
    #[error("internal check failed: {0}")]
    Check(String),
}
