//! Skew-primitive elements `{x | Δ(x) = g⊗x + x⊗h}`, found by solving the
//! defining linear system over a truncated basis.

use std::collections::BTreeMap;

use super::ClassifyError;
use crate::algebra::linalg::nullspace;
use crate::algebra::{AlgebraCtx, Basis, Element, GroupElement, Scalar};

/// Solves `Σ c_b (Δb − g⊗b − b⊗h) = 0` over the basis elements of degree at
/// most `max_degree` with group part in the window of `radius`, keeping only
/// the tensor coordinates selected by `keep`.
fn solve(
    ctx: &AlgebraCtx,
    g: &GroupElement,
    h: &GroupElement,
    max_degree: u32,
    radius: u32,
    keep: impl Fn(&Basis, &Basis) -> bool,
) -> Result<Vec<Element>, ClassifyError> {
    let group = ctx.group();
    for x in [g, h] {
        if !group.conforms(x) {
            return Err(ClassifyError::InvalidInput(format!("{x} is not an element of the group")));
        }
    }
    let basis = ctx.basis_up_to(max_degree, radius);
    let gb = ctx.group_elem(g.clone());
    let hb = ctx.group_elem(h.clone());
    let mut rows: BTreeMap<(Basis, Basis), Vec<Scalar>> = BTreeMap::new();
    let n = basis.len();
    let mut add = |l: Basis, r: Basis, col: usize, c: Scalar| {
        if keep(&l, &r) {
            let row = rows.entry((l, r)).or_insert_with(|| vec![Scalar::zero(); n]);
            row[col] += c;
        }
    };
    for (col, b) in basis.iter().enumerate() {
        for (l, r, w) in ctx.coproduct_basis(b) {
            add(l, r, col, w);
        }
        add(gb.clone(), b.clone(), col, -Scalar::one());
        add(b.clone(), hb.clone(), col, -Scalar::one());
    }
    let matrix: Vec<Vec<Scalar>> = rows.into_values().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
    let g_col = basis.iter().position(|b| *b == gb);
    Ok(nullspace(&matrix, n)
        .into_iter()
        .map(|v| {
            let pivot = g_col
                .map(|i| v[i].clone())
                .filter(|c| !c.is_zero())
                .or_else(|| v.iter().rev().find(|c| !c.is_zero()).cloned())
                .unwrap_or_else(Scalar::one);
            let mut e = Element::zero(ctx);
            for (b, c) in basis.iter().zip(&v) {
                e.add_term(b.clone(), c / &pivot);
            }
            e
        })
        .collect())
}

/// A basis of the `(g, h)`-skew-primitive elements within the truncation.
/// On a group algebra this is `{g − h}` for `g ≠ h` and empty for `g = h`.
pub fn primitive_pair_space(
    ctx: &AlgebraCtx,
    g: &GroupElement,
    h: &GroupElement,
    max_degree: u32,
    radius: u32,
) -> Result<Vec<Element>, ClassifyError> {
    solve(ctx, g, h, max_degree, radius, |_, _| true)
}

/// A basis of `{x | Δ(x) − g⊗x − x⊗g ∈ (KG·S⁺(V))^{⊗2}}` within the
/// truncation, which is `g·S⁺(V)`.
pub fn primitive_pair_space_mod_positive(
    ctx: &AlgebraCtx,
    g: &GroupElement,
    max_degree: u32,
    radius: u32,
) -> Result<Vec<Element>, ClassifyError> {
    solve(ctx, g, g, max_degree, radius, |l, r| l.mono.is_one() || r.mono.is_one())
}
