//! The operator identities behind `S(V,f,λ)`: `∂` is a derivation and a
//! coderivation, `φ` is a 1-cocycle, and `∂(φ(v))φ(w) − φ(∂(v)φ(w))` is
//! symmetric in `v, w`.

use super::report::{Report, Value, Witness};
use super::VerifyError;
use crate::algebra::{AlgebraCtx, Element, Scalar, TensorElement};
use crate::prelie::{partial_derivation, phi_operator, LinearForm, PreLieError};

fn fail(count: u64, name: &str, inputs: &[&Element], lhs: Value, rhs: Value) -> Report {
    Report::fail(
        count,
        Witness {
            identity: name.to_string(),
            inputs: inputs.iter().map(|e| Value::Element((*e).clone())).collect(),
            lhs,
            rhs,
        },
    )
}

/// Checks, on `S(V)` with `dim V = f.dim()`:
///
/// * `derivation`: `∂(uv) = ∂(u)v + u∂(v)` for `deg u + deg v ≤ max_degree`;
/// * `phi-symmetry`: `∂(φ(v))φ(w) − φ(∂(v)φ(w))` is symmetric, same range;
/// * `coderivation`: `Δ∘∂ = (∂⊗id)∘Δ = (id⊗∂)∘Δ` for `deg u ≤ max_degree`;
/// * `phi-cocycle`: `Δ∘φ = (φ⊗id)∘Δ + 1⊗φ`, same range.
pub fn check_operator_identities(
    f: &LinearForm,
    lambda: &Scalar,
    max_degree: u32,
) -> Result<Report, VerifyError> {
    let ctx = AlgebraCtx::symmetric(f.dim());
    let d = |u: &Element| partial_derivation(f, u);
    let phi = |u: &Element| phi_operator(f, lambda, u);
    let bases: Vec<Element> = ctx
        .basis_up_to(max_degree, 0)
        .into_iter()
        .map(|b| Element::basis(&ctx, b))
        .collect();
    let mut count = 0u64;

    for u in &bases {
        for v in bases.iter().filter(|v| u.degree() + v.degree() <= max_degree) {
            count += 1;
            let lhs = d(&u.mul(v)?)?;
            let rhs = d(u)?.mul(v)?.add(&u.mul(&d(v)?)?)?;
            if lhs != rhs {
                return Ok(fail(count, "derivation", &[u, v], lhs.into(), rhs.into()));
            }
        }
    }

    let sym = |v: &Element, w: &Element| -> Result<Element, VerifyError> {
        let a = d(&phi(v)?)?.mul(&phi(w)?)?;
        let b = phi(&d(v)?.mul(&phi(w)?)?)?;
        Ok(a.sub(&b)?)
    };
    for v in &bases {
        for w in bases.iter().filter(|w| v.degree() + w.degree() <= max_degree) {
            count += 1;
            let lhs = sym(v, w)?;
            let rhs = sym(w, v)?;
            if lhs != rhs {
                return Ok(fail(count, "phi-symmetry", &[v, w], lhs.into(), rhs.into()));
            }
        }
    }

    let id = |e: &Element| -> Result<Element, PreLieError> { Ok(e.clone()) };
    for u in &bases {
        count += 1;
        let lhs = d(u)?.coproduct();
        let left = u.coproduct().map_factors(d, id)?;
        let right = u.coproduct().map_factors(id, d)?;
        if lhs != left || lhs != right {
            let other = if lhs != left { left } else { right };
            return Ok(fail(count, "coderivation", &[u], lhs.into(), other.into()));
        }
    }

    for u in &bases {
        count += 1;
        let lhs = phi(u)?.coproduct();
        let mut rhs: TensorElement = u.coproduct().map_factors(phi, id)?;
        rhs.add_simple(&Element::one(&ctx), &phi(u)?, &Scalar::one());
        if lhs != rhs {
            return Ok(fail(count, "phi-cocycle", &[u], lhs.into(), rhs.into()));
        }
    }
    Ok(Report::pass(count))
}
