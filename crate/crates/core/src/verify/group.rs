//! Conditions on the coefficient family `λ(g,h)` of a group product, and the
//! combined conditions for products on `KG ⊗ S(V)`.

use super::checks::{check_comprelie_bialgebra, evaluate_identity, Identity};
use super::report::{Report, Value, Witness};
use super::{CheckBound, VerifyError, VerifyOptions};
use crate::algebra::{AlgebraCtx, Basis, Element, GroupElement, Monomial, Scalar};
use crate::prelie::{BilinearProduct, GroupLambdaTable, PreLieStructure, Variant};

fn group_witness(name: &str, inputs: &[&GroupElement], lhs: Scalar, rhs: Scalar) -> Witness {
    Witness {
        identity: name.to_string(),
        inputs: inputs.iter().map(|g| Value::Text(g.to_string())).collect(),
        lhs: lhs.into(),
        rhs: rhs.into(),
    }
}

/// `λ(g,1) = 0` for every `g` in the window, then the quadratic condition
/// for every `(g,h,k)` in the window with `hk ≠ 1`. Additivity in the first
/// argument holds by representation.
pub fn check_group_conditions(t: &GroupLambdaTable, radius: u32) -> Result<Report, VerifyError> {
    let window = t.group().window(radius);
    let one = t.group().identity();
    let mut count = 0u64;
    for g in &window {
        count += 1;
        let v = t.value(g, &one)?;
        if !v.is_zero() {
            return Ok(Report::fail(
                count,
                group_witness("group-unit", &[g, &one], v, Scalar::zero()),
            ));
        }
    }
    let (n, violation) = t.quadratic_scan(&window)?;
    count += n as u64;
    Ok(match violation {
        None => Report::pass(count),
        Some(v) => Report::fail(
            count,
            group_witness("group-quadratic", &[&v.g, &v.h, &v.k], v.lhs, v.rhs),
        ),
    })
}

/// `λ(g,g) = 0` for every `g` in the window.
fn check_diagonal(t: &GroupLambdaTable, window: &[GroupElement]) -> Result<(u64, Option<Witness>), VerifyError> {
    let mut count = 0;
    for g in window {
        count += 1;
        let v = t.value(g, g)?;
        if !v.is_zero() {
            return Ok((
                count,
                Some(group_witness("group-diagonal", &[g, g], v, Scalar::zero())),
            ));
        }
    }
    Ok((count, None))
}

/// Looks for a failing preLie triple `(g, h·v, h⁻¹·w)` with `v, w` linear,
/// the configuration through which `λ(h,h) = 0` is forced.
fn inverse_pair_witness(
    s: &PreLieStructure,
    window: &[GroupElement],
) -> Result<Option<Witness>, VerifyError> {
    let ctx = s.ctx().clone();
    let AlgebraCtx::Mixed { group, dim } = &ctx else {
        return Ok(None);
    };
    let linear: Vec<Monomial> = (0..*dim as u32).map(Monomial::var).collect();
    for g in window.iter().filter(|g| !g.is_identity()) {
        for h in window.iter().filter(|h| !h.is_identity()) {
            let k = group.inverse(h);
            for v in &linear {
                for w in &linear {
                    let inputs = [
                        Element::basis(&ctx, ctx.group_elem(g.clone())),
                        Element::basis(&ctx, Basis::new(h.clone(), v.clone())),
                        Element::basis(&ctx, Basis::new(k.clone(), w.clone())),
                    ];
                    let (lhs, rhs) = evaluate_identity(s, Identity::PreLie, &inputs)?;
                    if lhs != rhs {
                        return Ok(Some(Witness {
                            identity: Identity::PreLie.name().to_string(),
                            inputs: inputs.into_iter().map(Value::Element).collect(),
                            lhs,
                            rhs,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The four conditions on `λ(g,h)` (unit, additivity, quadratic, diagonal)
/// on the window of `bound.group_radius`, followed by the preLie, Leibniz,
/// coproduct, unit and counit identities of the assembled product.
///
/// A diagonal failure is reported, when possible, as the preLie triple
/// `(g, h·v, h⁻¹·w)` exhibiting it; otherwise as the offending `λ(g,g)`.
pub fn check_theorem23_conditions(
    s: &PreLieStructure,
    bound: &CheckBound,
    opts: &VerifyOptions,
) -> Result<Report, VerifyError> {
    let Variant::MixedT23 { table, .. } = s.variant() else {
        return Err(VerifyError::WrongContext(format!(
            "expected a product on KG⊗S(V), got {s}"
        )));
    };
    let group_report = check_group_conditions(table, bound.group_radius)?;
    if !group_report.passed() {
        return Ok(group_report);
    }
    let window = table.group().window(bound.group_radius);
    let (n, diag) = check_diagonal(table, &window)?;
    let count = group_report.checked_count + n;
    if let Some(direct) = diag {
        let witness = inverse_pair_witness(s, &window)?.unwrap_or(direct);
        return Ok(Report::fail(count, witness));
    }
    let r = check_comprelie_bialgebra(s as &dyn BilinearProduct, bound, opts)?;
    Ok(Report {
        checked_count: count + r.checked_count,
        ..r
    })
}
