//! Bar-resolution cohomology of finite groups with coefficients in (Z/m)^r,
//! connecting maps, the η map and six-term exactness checks.

mod cochain;
mod connecting;
mod eta;
mod group;
mod module;
mod param;
mod sixterm;
mod transfer;

pub use cochain::{coboundary, cup1, Cochain, CochainEntry, CochainJson};
pub use connecting::{bockstein, ShortExact};
pub use eta::*;
pub use group::{
    cohomology_group, cokernel_invariants, exactness, image_invariants, induced_map, is_coboundary,
    is_cocycle, kernel_invariants, module_map, solve_coboundary, CohomologyGroup, CohomologyMap,
    CohomologySummary, ExactnessCheck,
};
pub use module::ZnModule;
pub use sixterm::*;
pub use transfer::*;

use crate::znz::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error(
        "degree {degree} over a group of order {order} exceeds the configured cost cap: {detail}"
    )]
    DegreeTooLarge {
        degree: usize,
        order: usize,
        detail: String,
    },
    #[error("Bockstein lift failed: {0}")]
    LiftFailure(String),
    #[error("section failure: {0}")]
    SectionFailure(String),
    #[error("value outside the image: {0}")]
    OutsideImage(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("unsupported degree: {0}")]
    UnsupportedDegree(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Degree and cost limits for cohomology computations.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreePolicy {
    /// Largest degree allowed for any group.
    pub max_degree: usize,
    /// Largest degree allowed for groups of order at most `extended_order`.
    pub extended_degree: usize,
    pub extended_order: usize,
    /// Cap on stored constraint entries.
    pub max_memory: f64,
    /// Cap on elimination work (entry operations).
    pub max_work: f64,
}

impl Default for DegreePolicy {
    fn default() -> Self {
        DegreePolicy {
            max_degree: 2,
            extended_degree: 3,
            extended_order: 12,
            max_memory: 3.0e7,
            max_work: 2.0e10,
        }
    }
}

impl DegreePolicy {
    pub fn degree_bound(&self, order: usize) -> usize {
        if order <= self.extended_order {
            self.extended_degree.max(self.max_degree)
        } else {
            self.max_degree
        }
    }

    pub fn check(&self, degree: usize, order: usize) -> Result<(), CohomologyError> {
        let bound = self.degree_bound(order);
        if degree > bound {
            return Err(CohomologyError::DegreeTooLarge {
                degree,
                order,
                detail: format!("degree bound is {bound} for groups of order {order}"),
            });
        }
        Ok(())
    }
}
