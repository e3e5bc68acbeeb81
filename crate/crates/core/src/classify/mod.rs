//! The constructive classification procedures: read parameters off a product
//! or a coefficient sequence, decide which family it belongs to, rebuild the
//! family member and confirm it reproduces the input exactly.
//!
//! All decisions are made on a finite window (a degree bound or a range of
//! group elements); "inconsistent" always means inconsistent within that
//! window.

mod cocycle;
mod kx;
mod laurent;
mod lie;
mod primitive;
mod svf;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::prelie::PreLieError;
use crate::verify::{VerifyError, Witness};

pub use cocycle::{build_cocycle, cocycle_decompose, CocycleDecomposition};
pub use kx::{
    classify_kx_bialgebra, classify_kx_sequence, extract_kx_lambdas, generate_kx_sequence,
    lemma6_check, read_kx_graded, KxBialgebraTag, KxClassification, FamilyTag, KxSequence,
};
pub use laurent::{classify_laurent_window, laurent_window, LaurentTag};
pub use lie::{prop16_basis, prop9_normalization, prop9_structure_check, LieBasisChange};
pub use primitive::{primitive_pair_space, primitive_pair_space_mod_positive};
pub use svf::{corollary_check, extract_sym_invariants, iso_svf, SvfIsomorphism, SymInvariants};

#[derive(Debug, Error)]
pub enum ClassifyError {
    /// The oracle is not a member of the expected family within the bound.
    #[error("oracle is inconsistent: {0}")]
    OracleInconsistent(Box<Witness>),
    /// Rebuilding from the extracted parameters does not reproduce the input.
    #[error("rebuild mismatch: {0}")]
    RebuildMismatch(Box<Witness>),
    #[error("singular system: {0}")]
    SingularSystem(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Product(#[from] PreLieError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}
