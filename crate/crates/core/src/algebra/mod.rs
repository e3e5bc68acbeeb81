//! Ambient commutative, cocommutative bialgebras and their elements.

pub mod basis;
pub mod element;
pub mod group;
pub mod linalg;
pub mod monomial;
pub mod scalar;

pub use basis::{AlgebraCtx, Basis};
pub use element::{linear_combine, AlgebraError, Element, Evaluated, TensorElement};
pub use group::{GroupElement, GroupSpec};
pub use monomial::Monomial;
pub use scalar::{Scalar, ScalarError};
