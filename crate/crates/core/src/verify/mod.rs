//! Exhaustive, degree-bounded verification of the Com-PreLie and
//! Zinbiel-PreLie axioms, of the conditions on group coefficient families,
//! and of the 1-cocycle equation.
//!
//! Every check enumerates basis tuples in graded-lex order (total degree
//! first, then indices lexicographically) and reports the first failure, so
//! results do not depend on the number of worker threads.

mod checks;
mod cocycle;
mod engine;
mod enumerate;
mod group;
mod operators;
mod report;
mod runner;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::prelie::PreLieError;

pub use checks::{
    check_bialgebra, check_comprelie_bialgebra, check_coproduct_compat, check_identities,
    check_identity, check_leibniz, check_prelie_identity, check_zinbiel_axioms,
    evaluate_identity, Identity, ZeroProduct, ZinbielProduct,
};
pub use cocycle::{check_cocycle, cocycle_sides};
pub use enumerate::{tuple_count, TupleSpace};
pub use group::{check_group_conditions, check_theorem23_conditions};
pub use operators::check_operator_identities;
pub use report::{Report, Value, Verdict, Witness};

/// What to enumerate: basis elements of degree at most `max_degree` whose
/// group part has L1 norm at most `group_radius` (ignored without a group),
/// combined into tuples of total degree at most `max_degree`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckBound {
    pub max_degree: u32,
    pub group_radius: u32,
}

impl CheckBound {
    pub fn new(max_degree: u32, group_radius: u32) -> Self {
        CheckBound {
            max_degree,
            group_radius,
        }
    }

    /// A bound for algebras without a group part.
    pub fn degree(max_degree: u32) -> Self {
        Self::new(max_degree, 0)
    }
}

/// Execution knobs; they never change a result.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VerifyOptions {
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
    /// Tuples handed to the pool at a time.
    pub chunk: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            threads: None,
            chunk: 16384,
        }
    }
}

impl VerifyOptions {
    pub fn with_threads(threads: usize) -> Self {
        VerifyOptions {
            threads: Some(threads),
            ..Self::default()
        }
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Product(#[from] PreLieError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("wrong context: {0}")]
    WrongContext(String),
    #[error("missing table entry for {0}")]
    MissingEntry(String),
    #[error("cannot start worker threads: {0}")]
    ThreadPool(String),
}
