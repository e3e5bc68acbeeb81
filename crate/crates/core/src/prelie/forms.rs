//! Linear forms on `V` and the operators `∂`, `φ`, `ψ` on `S(V)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::PreLieError;
use crate::algebra::{AlgebraCtx, Element, Monomial, Scalar};

/// A linear form `f ∈ V*`, given by its values on the basis of `V`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LinearForm {
    coeffs: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        LinearForm {
            coeffs: vec![Scalar::zero(); dim],
        }
    }

    /// The coordinate form `e_i^*`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim);
        f.coeffs[i] = Scalar::one();
        f
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `f(e_i)`; indices past the dimension evaluate to zero.
    pub fn at(&self, i: u32) -> Scalar {
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        self.coeffs.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &Scalar) -> LinearForm {
        LinearForm::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `f^γ = ∏ f(eᵢ)^{γᵢ}`.
    pub fn power(&self, gamma: &Monomial) -> Scalar {
        gamma
            .pairs()
            .iter()
            .map(|&(i, e)| pow(&self.at(i), e))
            .product()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `x^n` for a nonnegative exponent, with `0^0 = 1`.
pub(crate) fn pow(x: &Scalar, n: u32) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// `∂(x^α) = Σᵢ αᵢ f(eᵢ) x^{α−eᵢ}`.
pub fn derivation_terms(f: &LinearForm, m: &Monomial) -> Vec<(Monomial, Scalar)> {
    m.pairs()
        .iter()
        .filter_map(|&(i, e)| {
            let c = f.at(i) * Scalar::from_int(e as i64);
            (!c.is_zero()).then(|| (m.div(&Monomial::var(i)).expect("divides"), c))
        })
        .collect()
}

/// `φ(x^α) = Σ_{γ ≤ α, γ ≠ α} C(α,γ) λ^{|γ|} |γ|! f^γ x^{α−γ}`.
///
/// This is the proper-subset sum written for monomials: each multiset `γ`
/// stands for `C(α,γ)` subsets of the factors. In particular `φ(1) = 0`.
pub fn phi_terms(f: &LinearForm, lambda: &Scalar, m: &Monomial) -> Vec<(Monomial, Scalar)> {
    subset_sum(f, m, |size| pow(lambda, size) * Scalar::factorial(size), false)
}

/// `ψ(x^α) = Σ_{γ ≤ α, γ ∉ {1, α}} C(α,γ) |γ|! λ^{|γ|−1} f^γ x^{α−γ}`, the
/// sum over nonempty proper subsets used for the action of group-likes.
pub fn psi_terms(f: &LinearForm, lambda: &Scalar, m: &Monomial) -> Vec<(Monomial, Scalar)> {
    subset_sum(
        f,
        m,
        |size| Scalar::factorial(size) * pow(lambda, size - 1),
        true,
    )
}

fn subset_sum(
    f: &LinearForm,
    m: &Monomial,
    weight: impl Fn(u32) -> Scalar,
    skip_empty: bool,
) -> Vec<(Monomial, Scalar)> {
    let mut out = Vec::new();
    for (gamma, mult) in m.divisors() {
        if gamma == *m || (skip_empty && gamma.is_one()) {
            continue;
        }
        let fg = f.power(&gamma);
        if fg.is_zero() {
            continue;
        }
        let c = mult * fg * weight(gamma.degree());
        if !c.is_zero() {
            out.push((m.div(&gamma).expect("divisor"), c));
        }
    }
    out
}

fn check_symmetric(f: &LinearForm, u: &Element) -> Result<(), PreLieError> {
    match u.ctx() {
        AlgebraCtx::Symmetric { dim } if *dim == f.dim() => Ok(()),
        AlgebraCtx::Polynomial if f.dim() == 1 => Ok(()),
        other => Err(PreLieError::WrongContext(format!(
            "expected a symmetric algebra of dimension {}, got {other:?}",
            f.dim()
        ))),
    }
}

fn apply(u: &Element, op: impl Fn(&Monomial) -> Vec<(Monomial, Scalar)>) -> Element {
    let ctx = u.ctx().clone();
    u.map_linear(&ctx, |b| {
        let mut e = Element::zero(&ctx);
        for (m, c) in op(&b.mono) {
            e.add_term(ctx.mono(m), c);
        }
        e
    })
}

/// The derivation `∂` attached to `f`.
pub fn partial_derivation(f: &LinearForm, u: &Element) -> Result<Element, PreLieError> {
    check_symmetric(f, u)?;
    Ok(apply(u, |m| derivation_terms(f, m)))
}

/// The operator `φ` attached to `(f, λ)`.
pub fn phi_operator(f: &LinearForm, lambda: &Scalar, u: &Element) -> Result<Element, PreLieError> {
    check_symmetric(f, u)?;
    Ok(apply(u, |m| phi_terms(f, lambda, m)))
}

/// The operator `ψ` attached to `(f, λ)` (nonempty proper subsets).
pub fn psi_operator(f: &LinearForm, lambda: &Scalar, u: &Element) -> Result<Element, PreLieError> {
    check_symmetric(f, u)?;
    Ok(apply(u, |m| psi_terms(f, lambda, m)))
}
