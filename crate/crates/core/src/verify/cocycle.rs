//! The 1-cocycle equation `Δ∘φ(x) = 1⊗φ(x) + (φ⊗id)∘Δ(x)`.

use std::collections::BTreeMap;

use super::report::{Report, Witness};
use super::VerifyError;
use crate::algebra::{AlgebraCtx, Basis, Element, Scalar, TensorElement};

fn lookup<'a>(
    ctx: &AlgebraCtx,
    table: &'a BTreeMap<Basis, Element>,
    b: &Basis,
) -> Result<&'a Element, VerifyError> {
    table
        .get(b)
        .ok_or_else(|| VerifyError::MissingEntry(ctx.basis_string(b)))
}

/// Both sides of the cocycle equation at one basis element.
pub fn cocycle_sides(
    ctx: &AlgebraCtx,
    table: &BTreeMap<Basis, Element>,
    b: &Basis,
) -> Result<(TensorElement, TensorElement), VerifyError> {
    let phi = lookup(ctx, table, b)?;
    let lhs = phi.coproduct();
    let mut rhs = TensorElement::zero(ctx);
    rhs.add_simple(&Element::one(ctx), phi, &Scalar::one());
    for (l, r, w) in ctx.coproduct_basis(b) {
        let pl = lookup(ctx, table, &l)?;
        rhs.add_simple(pl, &Element::basis(ctx, r), &w);
    }
    Ok((lhs, rhs))
}

/// Checks the cocycle equation on every basis monomial of degree at most
/// `max_degree`, in basis order.
pub fn check_cocycle(
    ctx: &AlgebraCtx,
    table: &BTreeMap<Basis, Element>,
    max_degree: u32,
) -> Result<Report, VerifyError> {
    if ctx.has_group() {
        return Err(VerifyError::WrongContext(
            "cocycles are checked on symmetric algebras".into(),
        ));
    }
    let mut count = 0;
    for b in ctx.basis_up_to(max_degree, 0) {
        count += 1;
        let (lhs, rhs) = cocycle_sides(ctx, table, &b)?;
        if lhs != rhs {
            return Ok(Report::fail(
                count,
                Witness {
                    identity: "cocycle".into(),
                    inputs: vec![Element::basis(ctx, b).into()],
                    lhs: lhs.into(),
                    rhs: rhs.into(),
                },
            ));
        }
    }
    Ok(Report::pass(count))
}
