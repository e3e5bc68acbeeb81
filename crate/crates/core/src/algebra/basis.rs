//! Basis elements `g·x^α` and the ambient-algebra descriptor [`AlgebraCtx`].

use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{GroupElement, GroupSpec};
use super::monomial::Monomial;
use super::scalar::Scalar;

/// A basis element of `K G ⊗ S(V)`: a group element times a monomial.
///
/// Every ambient algebra embeds in this shape: symmetric and polynomial
/// algebras use the trivial group, group algebras (and Laurent polynomials,
/// as `Kℤ`) use the unit monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Basis {
    pub group: GroupElement,
    pub mono: Monomial,
}

impl Basis {
    pub fn new(group: GroupElement, mono: Monomial) -> Self {
        Basis { group, mono }
    }

    pub fn degree(&self) -> u32 {
        self.mono.degree()
    }
}

/// Which bialgebra is in play.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum AlgebraCtx {
    /// `S(V)` with `dim V = dim`.
    Symmetric { dim: usize },
    /// `K[X]`: `S(V)` with `dim V = 1`, printed with the letter `X`.
    Polynomial,
    /// `K[X, X⁻¹] = Kℤ` with `Δ(X) = X ⊗ X`.
    Laurent,
    /// The group algebra `KG`.
    Group(GroupSpec),
    /// `KG ⊗ S(V)`.
    Mixed { group: GroupSpec, dim: usize },
}

impl AlgebraCtx {
    pub fn symmetric(dim: usize) -> Self {
        AlgebraCtx::Symmetric { dim }
    }

    pub fn group(&self) -> GroupSpec {
        match self {
            AlgebraCtx::Symmetric { .. } | AlgebraCtx::Polynomial => GroupSpec::trivial(),
            AlgebraCtx::Laurent => GroupSpec::integers(),
            AlgebraCtx::Group(g) => g.clone(),
            AlgebraCtx::Mixed { group, .. } => group.clone(),
        }
    }

    /// Number of polynomial variables.
    pub fn dim(&self) -> usize {
        match self {
            AlgebraCtx::Symmetric { dim } | AlgebraCtx::Mixed { dim, .. } => *dim,
            AlgebraCtx::Polynomial => 1,
            AlgebraCtx::Laurent | AlgebraCtx::Group(_) => 0,
        }
    }

    pub fn has_group(&self) -> bool {
        matches!(
            self,
            AlgebraCtx::Laurent | AlgebraCtx::Group(_) | AlgebraCtx::Mixed { .. }
        )
    }

    pub fn unit(&self) -> Basis {
        Basis::new(self.group().identity(), Monomial::one())
    }

    /// A monomial basis element with trivial group part.
    pub fn mono(&self, mono: Monomial) -> Basis {
        Basis::new(self.group().identity(), mono)
    }

    /// A group basis element with unit monomial.
    pub fn group_elem(&self, g: GroupElement) -> Basis {
        Basis::new(g, Monomial::one())
    }

    /// `X^k` in Laurent context, `X^k` (k ≥ 0) in polynomial context.
    pub fn x_pow(&self, k: i64) -> Basis {
        match self {
            AlgebraCtx::Laurent => self.group_elem(GroupElement::integer(k)),
            _ => self.mono(Monomial::var_pow(0, k as u32)),
        }
    }

    pub fn conforms(&self, b: &Basis) -> bool {
        self.group().conforms(&b.group) && b.mono.span() as usize <= self.dim()
    }

    /// The commutative product of two basis elements.
    pub fn mul_basis(&self, a: &Basis, b: &Basis) -> Basis {
        let group = if self.has_group() {
            self.group().op(&a.group, &b.group)
        } else {
            a.group.clone()
        };
        Basis::new(group, a.mono.mul(&b.mono))
    }

    /// `Δ(g·x^α) = Σ_{β≤α} ∏C(αᵢ,βᵢ) (g·x^β) ⊗ (g·x^{α−β})`.
    pub fn coproduct_basis(&self, b: &Basis) -> Vec<(Basis, Basis, Scalar)> {
        b.mono
            .divisors()
            .into_iter()
            .map(|(beta, w)| {
                let rest = b.mono.div(&beta).expect("divisor");
                (
                    Basis::new(b.group.clone(), beta),
                    Basis::new(b.group.clone(), rest),
                    w,
                )
            })
            .collect()
    }

    /// The counit: 1 on group-likes (unit monomial), 0 otherwise.
    pub fn counit_basis(&self, b: &Basis) -> Scalar {
        if b.mono.is_one() {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    /// All basis elements of degree at most `max_degree` whose group part
    /// lies in the window of L1 radius `radius`, sorted by degree and then
    /// by basis order.
    pub fn basis_up_to(&self, max_degree: u32, radius: u32) -> Vec<Basis> {
        let window = if self.has_group() {
            self.group().window(radius)
        } else {
            vec![self.group().identity()]
        };
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let monos = Monomial::all_of_degree(self.dim(), d);
            let mut layer: Vec<Basis> = window
                .iter()
                .flat_map(|g| monos.iter().map(move |m| Basis::new(g.clone(), m.clone())))
                .collect();
            layer.sort();
            out.extend(layer);
        }
        out
    }

    /// Canonical text of a basis element in this context.
    pub fn basis_string(&self, b: &Basis) -> String {
        BasisDisplay { ctx: self, basis: b }.to_string()
    }

    pub fn display<'a>(&'a self, b: &'a Basis) -> BasisDisplay<'a> {
        BasisDisplay { ctx: self, basis: b }
    }
}

/// Formats a basis element with the naming conventions of its context.
pub struct BasisDisplay<'a> {
    ctx: &'a AlgebraCtx,
    basis: &'a Basis,
}

impl fmt::Display for BasisDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.basis;
        match self.ctx {
            AlgebraCtx::Polynomial => b.mono.fmt_with(f, Some("X")),
            AlgebraCtx::Laurent => {
                let k = b.group.free.first().copied().unwrap_or(0);
                match k {
                    0 => write!(f, "1"),
                    1 => write!(f, "X"),
                    _ => write!(f, "X^{k}"),
                }
            }
            AlgebraCtx::Symmetric { .. } => b.mono.fmt_with(f, None),
            AlgebraCtx::Group(_) | AlgebraCtx::Mixed { .. } => {
                let g_one = b.group.is_identity();
                match (g_one, b.mono.is_one()) {
                    (true, _) => b.mono.fmt_with(f, None),
                    (false, true) => write!(f, "{}", b.group),
                    (false, false) => {
                        write!(f, "{}*", b.group)?;
                        b.mono.fmt_with(f, None)
                    }
                }
            }
        }
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.group.free.is_empty() && self.group.torsion.is_empty() {
            write!(f, "{}", self.mono)
        } else {
            write!(f, "{}*{}", self.group, self.mono)
        }
    }
}
