//! 1-cocycles `φ: S(V) → S(V)` with `Δ∘φ = (1⊗φ) + (φ⊗id)∘Δ`: every such map
//! is `aψ + λ·id + (F⊗id)∘Δ̃` for a scalar `a` (zero unless `dim V = 1`),
//! a scalar `λ` and a linear form `F` on `S⁺(V)`.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::ClassifyError;
use crate::algebra::{AlgebraCtx, Basis, Element, Monomial, Scalar};
use crate::verify::Witness;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CocycleDecomposition {
    pub a: Scalar,
    pub lambda: Scalar,
    /// `F` on monomials of degree `1..D`; absent monomials map to zero.
    #[serde(serialize_with = "monomial_keys")]
    pub f: BTreeMap<Monomial, Scalar>,
}

fn monomial_keys<S: Serializer>(f: &BTreeMap<Monomial, Scalar>, s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(f.len()))?;
    for (m, v) in f {
        map.serialize_entry(&m.to_string(), v)?;
    }
    map.end()
}

fn is_symmetric(ctx: &AlgebraCtx) -> bool {
    matches!(ctx, AlgebraCtx::Symmetric { .. } | AlgebraCtx::Polynomial)
}

/// `φ(x^α) = aψ(x^α) + λx^α + Σ_{γ} C(α,γ) F(x^γ) x^{α−γ}`, the sum over
/// `0 < γ < α`, with `ψ(X^n) = X^{n+1}/(n+1)` in dimension one.
fn rebuild(ctx: &AlgebraCtx, a: &Scalar, lambda: &Scalar, f: &BTreeMap<Monomial, Scalar>, b: &Basis) -> Element {
    let mut out = Element::zero(ctx);
    let m = &b.mono;
    if !a.is_zero() {
        let n = m.exponent(0);
        out.add_term(
            ctx.mono(Monomial::var_pow(0, n + 1)),
            a / &Scalar::from_int(n as i64 + 1),
        );
    }
    if !m.is_one() {
        out.add_term(b.clone(), lambda.clone());
    }
    for (gamma, mult) in m.divisors() {
        if gamma.is_one() || gamma == *m {
            continue;
        }
        if let Some(v) = f.get(&gamma) {
            out.add_term(ctx.mono(m.div(&gamma).expect("divisor")), mult * v);
        }
    }
    out
}

/// Tabulates the cocycle with parameters `(a, λ, F)` on every basis monomial
/// of degree at most `max_degree`.
pub fn build_cocycle(
    ctx: &AlgebraCtx,
    a: &Scalar,
    lambda: &Scalar,
    f: &BTreeMap<Monomial, Scalar>,
    max_degree: u32,
) -> Result<BTreeMap<Basis, Element>, ClassifyError> {
    if !is_symmetric(ctx) {
        return Err(ClassifyError::InvalidInput("cocycles live on symmetric algebras".into()));
    }
    if !a.is_zero() && ctx.dim() != 1 {
        return Err(ClassifyError::InvalidInput("a must be 0 when dim V ≥ 2".into()));
    }
    Ok(ctx
        .basis_up_to(max_degree, 0)
        .into_iter()
        .map(|b| {
            let v = rebuild(ctx, a, lambda, f, &b);
            (b, v)
        })
        .collect())
}

/// Recovers `(a, λ, F)` from a cocycle table on degrees `0..=max_degree`:
/// `a` is the `X` coefficient of `φ(1)`, `λ` the `x₁` coefficient of
/// `φ(x₁) − aψ(x₁)`, and `F(m) = [x₁](φ(m·x₁) − aψ(m·x₁)) / (m₁ + 1)` for
/// `1 ≤ deg m < max_degree`. Rebuilding must reproduce every entry.
pub fn cocycle_decompose(
    ctx: &AlgebraCtx,
    table: &BTreeMap<Basis, Element>,
    max_degree: u32,
) -> Result<CocycleDecomposition, ClassifyError> {
    if !is_symmetric(ctx) {
        return Err(ClassifyError::InvalidInput("cocycles live on symmetric algebras".into()));
    }
    if max_degree == 0 {
        return Err(ClassifyError::InvalidInput("degree bound must be at least 1".into()));
    }
    let get = |b: &Basis| {
        table
            .get(b)
            .ok_or_else(|| ClassifyError::InvalidInput(format!("missing entry for {}", ctx.basis_string(b))))
    };
    let x1 = Monomial::var(0);
    let a = if ctx.dim() == 1 {
        get(&ctx.unit())?.coefficient(&ctx.mono(x1.clone()))
    } else {
        Scalar::zero()
    };
    // The x₁ coefficient of φ(m·x₁) − aψ(m·x₁); aψ(m·x₁) only reaches x₁
    // when m·x₁ = 1, which never happens.
    let x1_coef = |m: &Monomial| -> Result<Scalar, ClassifyError> {
        Ok(get(&ctx.mono(m.mul(&x1)))?.coefficient(&ctx.mono(x1.clone())))
    };
    let lambda = x1_coef(&Monomial::one())?;
    let mut f = BTreeMap::new();
    for d in 1..max_degree {
        for m in Monomial::all_of_degree(ctx.dim(), d) {
            let v = x1_coef(&m)? / &Scalar::from_int(m.exponent(0) as i64 + 1);
            if !v.is_zero() {
                f.insert(m, v);
            }
        }
    }
    for b in ctx.basis_up_to(max_degree, 0) {
        let expected = rebuild(ctx, &a, &lambda, &f, &b);
        let got = get(&b)?;
        if *got != expected {
            return Err(ClassifyError::RebuildMismatch(Box::new(Witness {
                identity: "cocycle-rebuild".into(),
                inputs: vec![Element::basis(ctx, b).into()],
                lhs: got.clone().into(),
                rhs: expected.into(),
            })));
        }
    }
    Ok(CocycleDecomposition { a, lambda, f })
}
