//! PreLie (and Zinbiel) products on the ambient bialgebras.

pub mod bracket;
pub mod forms;
pub mod group_table;
pub mod structure;
pub mod table;
pub mod zinbiel;

use thiserror::Error;

use crate::algebra::element::same_ctx;
use crate::algebra::{AlgebraCtx, AlgebraError, Basis, Element, ScalarError};

pub use bracket::{fdb_bracket, lie_bracket, FdbVector};
pub use forms::{partial_derivation, phi_operator, psi_operator, LinearForm};
pub use group_table::{GroupLambdaTable, GroupMorphism, QuadraticViolation};
pub use structure::{laurent3_coefficient, PreLieStructure, Variant};
pub use table::ProductTable;
pub use zinbiel::zinbiel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreLieError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("wrong context: {0}")]
    WrongContext(String),
    #[error("second argument {element} lies outside the table window of radius {radius}")]
    WindowExceeded { element: String, radius: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("1≺1 is undefined")]
    UndefinedOnUnits,
    #[error("Faà di Bruno indices start at 1, got {0}")]
    IndexError(i64),
    #[error("no table entry for {0}")]
    MissingEntry(String),
}

/// A bilinear product on an ambient algebra, given on basis pairs.
pub trait BilinearProduct: Sync {
    fn ctx(&self) -> &AlgebraCtx;

    fn product_basis(&self, a: &Basis, b: &Basis) -> Result<Element, PreLieError>;

    /// Bilinear extension of [`BilinearProduct::product_basis`].
    fn product(&self, a: &Element, b: &Element) -> Result<Element, PreLieError> {
        same_ctx(self.ctx(), a.ctx())?;
        same_ctx(self.ctx(), b.ctx())?;
        a.try_bilinear(b, |x, y| self.product_basis(x, y))
    }
}

/// `prelie(s, a, b)`: evaluates a product on elements.
pub fn prelie(
    s: &(impl BilinearProduct + ?Sized),
    a: &Element,
    b: &Element,
) -> Result<Element, PreLieError> {
    s.product(a, b)
}
