//! Exact-arithmetic toolkit for commutative pre-Lie bialgebras.
//!
//! * [`algebra`] — rationals, monomials, group elements and the ambient
//!   bialgebras `S(V)`, `K[X]`, `K[X,X⁻¹]`, `KG` and `KG⊗S(V)`.
//! * [`prelie`] — the product families and the operators they are built from.
//! * [`verify`] — exhaustive identity checks with first-failure witnesses.
//! * [`classify`] — parameter extraction and family classification.

pub mod algebra;
pub mod classify;
pub mod prelie;
pub mod verify;
