//! Constructive instance transformations with machine-checkable equivalence.
//!
//! Every transformation maps a source instance to a target instance such
//! that the source is a yes-instance exactly when the target is, keeps the
//! budget parameter under control, and records its scale and shift constants
//! in a parameter map for auditing. [`verify::verify_reduction`] replays a
//! corpus through a transformation and compares brute-force verdicts on both
//! sides.
//!
//! Each transformation also ships one deliberately broken variant (selected
//! with `mutated = true`, exposed test-only) so the verification harness can
//! demonstrate that it detects wrong constructions with a concrete witness.

mod bkp;
mod embed;
mod verify;

pub use bkp::{
    bkp_enforce_gap, bkp_enforce_ordering, bkp_shift_positive, bkp_to_mepvcb_2paths,
    subsetsum_to_bkp_signed,
};
pub use embed::{
    add_apex_for_delta, embed_complete, embed_complete_bipartition, embed_regular,
    identify_into_tree, link_into_path_or_cycle, LinkShape,
};
pub use verify::{
    apply_reduction, oracle_verdict, verify_reduction, OracleCaps, ReductionKind, ReductionReport,
    VerifyStatus,
};

use crate::instance::InstanceError;
use crate::num::ArithmeticOverflow;
use std::collections::BTreeMap;

/// Scale and shift constants recorded by a transformation, as decimal
/// strings keyed by constant name.
pub type ParamMap = BTreeMap<String, String>;

/// A transformation output plus its recorded constants.
#[derive(Debug, Clone)]
pub struct Reduced<T> {
    pub target: T,
    pub params: ParamMap,
}

impl<T> Reduced<T> {
    fn new(target: T) -> Self {
        Self {
            target,
            params: ParamMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn map<U>(self, f: impl FnOnce(T) -> U) -> Reduced<U> {
        Reduced {
            target: f(self.target),
            params: self.params,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("arithmetic overflow while scaling the instance")]
    Overflow,
    #[error("constructing the target instance failed: {0}")]
    Construct(String),
    #[error("reduction expects a {expected} source, got {actual}")]
    WrongKind {
        expected: &'static str,
        actual: &'static str,
    },
}

impl From<ArithmeticOverflow> for ReductionError {
    fn from(_: ArithmeticOverflow) -> Self {
        ReductionError::Overflow
    }
}

impl From<InstanceError> for ReductionError {
    fn from(err: InstanceError) -> Self {
        match err {
            InstanceError::ProfitOverflow | InstanceError::Graph(crate::graph::GraphError::WeightOverflow) => {
                ReductionError::Overflow
            }
            other => ReductionError::Construct(other.to_string()),
        }
    }
}

impl From<crate::graph::GraphError> for ReductionError {
    fn from(err: crate::graph::GraphError) -> Self {
        match err {
            crate::graph::GraphError::WeightOverflow => ReductionError::Overflow,
            other => ReductionError::Construct(other.to_string()),
        }
    }
}
