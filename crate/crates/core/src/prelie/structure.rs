//! Validated descriptors for every preLie product family and their evaluation.

use std::fmt;

use super::forms::{derivation_terms, phi_terms, psi_terms, LinearForm};
use super::group_table::{GroupLambdaTable, GroupMorphism};
use super::{BilinearProduct, PreLieError};
use crate::algebra::{AlgebraCtx, Basis, Element, GroupElement, GroupSpec, Monomial, Scalar};

/// The parameters of one product family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Variant {
    /// `S(V,f,λ)`: `u∙v = ∂(u)φ(v)`.
    SymFLambda { f: LinearForm, lambda: Scalar },
    /// `𝔤⁽¹⁾(N,λ,a,b)` on `K[X]`.
    KxG1 {
        n: u32,
        lambda: Scalar,
        a: Scalar,
        b: Scalar,
    },
    /// `𝔤⁽²⁾(N,λ,μ)`.
    KxG2 { n: u32, lambda: Scalar, mu: Scalar },
    /// `𝔤⁽³⁾(N,λ,μ)`.
    KxG3 { n: u32, lambda: Scalar, mu: Scalar },
    /// `𝔤⁽⁴⁾(λ)`.
    KxG4 { lambda: Scalar },
    /// `𝔤′(λ,μ)`: `X^k∙X^l = λ k l! Σ_{i=k}^{k+l−1} μ^{k+l−i−1}/(i−k+1)! X^i`.
    GPrime { lambda: Scalar, mu: Scalar },
    /// `g∙h = λ(g,h)(g − gh)` on a group algebra.
    GroupProduct { table: GroupLambdaTable },
    /// Laurent family with `λ(k,l) = a δ_{l,k₀} k`.
    LaurentCase2 {
        k0: i64,
        a: Scalar,
        table: GroupLambdaTable,
    },
    /// Laurent family with `λ(k,l) = k a_l`, `a_l = αβ/((l/N−1)α − (l/N−2)β)`
    /// for `N | l`, `l ≠ 0`, tabulated on `|l| ≤ radius`.
    LaurentCase3 {
        n: u32,
        alpha: Scalar,
        beta: Scalar,
        radius: u32,
        table: GroupLambdaTable,
    },
    /// Products on `KG ⊗ S(V)` assembled from an `S(V,f,λ)` part, a family
    /// `λ(g,h)` and two morphisms `λ, μ: G → (K,+)`.
    MixedT23 {
        f: LinearForm,
        lambda: Scalar,
        table: GroupLambdaTable,
        morph_lambda: GroupMorphism,
        morph_mu: GroupMorphism,
        window_radius: u32,
    },
}

/// A preLie product on one of the ambient bialgebras, with parameters
/// validated at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreLieStructure {
    ctx: AlgebraCtx,
    variant: Variant,
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), PreLieError> {
    if cond {
        Ok(())
    } else {
        Err(PreLieError::InvalidParameter(msg()))
    }
}

/// `a_l` of the third Laurent family (`a_0 = 0` by convention).
pub fn laurent3_coefficient(
    n: u32,
    alpha: &Scalar,
    beta: &Scalar,
    l: i64,
) -> Result<Scalar, PreLieError> {
    if l == 0 || l % n as i64 != 0 {
        return Ok(Scalar::zero());
    }
    let m = Scalar::from_int(l / n as i64 - 1);
    let denom = &m * alpha - &(&m - &Scalar::one()) * beta;
    if denom.is_zero() {
        return Err(PreLieError::InvalidParameter(format!(
            "nα−(n−1)β vanishes for n={m} (l={l})"
        )));
    }
    Ok((alpha * beta).checked_div(&denom)?)
}

fn is_negative_integer(b: &Scalar) -> bool {
    b.is_integer() && b.is_negative()
}

impl PreLieStructure {
    /// Wraps a variant without validating its parameters. Intended for
    /// negative tests that need deliberately invalid products.
    pub fn unchecked(variant: Variant) -> Self {
        let ctx = match &variant {
            Variant::SymFLambda { f, .. } => AlgebraCtx::symmetric(f.dim()),
            Variant::KxG1 { .. }
            | Variant::KxG2 { .. }
            | Variant::KxG3 { .. }
            | Variant::KxG4 { .. }
            | Variant::GPrime { .. } => AlgebraCtx::Polynomial,
            Variant::GroupProduct { table } => AlgebraCtx::Group(table.group().clone()),
            Variant::LaurentCase2 { .. } | Variant::LaurentCase3 { .. } => AlgebraCtx::Laurent,
            Variant::MixedT23 { f, table, .. } => AlgebraCtx::Mixed {
                group: table.group().clone(),
                dim: f.dim(),
            },
        };
        PreLieStructure { ctx, variant }
    }

    pub fn sym_f_lambda(f: LinearForm, lambda: Scalar) -> Result<Self, PreLieError> {
        require(f.dim() >= 1, || "dim V must be positive".into())?;
        Ok(Self::unchecked(Variant::SymFLambda { f, lambda }))
    }

    pub fn kx_g1(n: u32, lambda: Scalar, a: Scalar, b: Scalar) -> Result<Self, PreLieError> {
        require(n >= 1, || "N must be at least 1".into())?;
        require(!a.is_zero(), || "a must be nonzero".into())?;
        require(!is_negative_integer(&b), || {
            format!("b must not be a negative integer, got {b}")
        })?;
        Ok(Self::unchecked(Variant::KxG1 { n, lambda, a, b }))
    }

    /// `𝔤⁽¹⁾(N,a,b) = 𝔤⁽¹⁾(N,a/b,a,b)`.
    pub fn kx_g1_short(n: u32, a: Scalar, b: Scalar) -> Result<Self, PreLieError> {
        let lambda = a
            .checked_div(&b)
            .map_err(|_| PreLieError::InvalidParameter("b must be nonzero".into()))?;
        Self::kx_g1(n, lambda, a, b)
    }

    pub fn kx_g2(n: u32, lambda: Scalar, mu: Scalar) -> Result<Self, PreLieError> {
        require(n >= 1, || "N must be at least 1".into())?;
        require(!mu.is_zero(), || "μ must be nonzero".into())?;
        Ok(Self::unchecked(Variant::KxG2 { n, lambda, mu }))
    }

    pub fn kx_g3(n: u32, lambda: Scalar, mu: Scalar) -> Result<Self, PreLieError> {
        require(n >= 1, || "N must be at least 1".into())?;
        require(!mu.is_zero(), || "μ must be nonzero".into())?;
        Ok(Self::unchecked(Variant::KxG3 { n, lambda, mu }))
    }

    pub fn kx_g4(lambda: Scalar) -> Self {
        Self::unchecked(Variant::KxG4 { lambda })
    }

    pub fn gprime(lambda: Scalar, mu: Scalar) -> Self {
        Self::unchecked(Variant::GPrime { lambda, mu })
    }

    pub fn group_product(table: GroupLambdaTable) -> Self {
        Self::unchecked(Variant::GroupProduct { table })
    }

    /// The product of a group morphism `λ` and `g₀`: `g∙h = λ(g)δ_{h,g₀}(g − gh)`.
    pub fn prop17(morph: &GroupMorphism, g0: &GroupElement) -> Result<Self, PreLieError> {
        Ok(Self::group_product(GroupLambdaTable::prop17(morph, g0)?))
    }

    pub fn laurent_case2(k0: i64, a: Scalar) -> Result<Self, PreLieError> {
        require(k0 != 0, || "k0 must be nonzero".into())?;
        require(!a.is_zero(), || "a must be nonzero".into())?;
        let table = GroupLambdaTable::new(
            &GroupSpec::integers(),
            None,
            [(0, GroupElement::integer(k0), a.clone())],
        )?;
        Ok(Self::unchecked(Variant::LaurentCase2 { k0, a, table }))
    }

    pub fn laurent_case3(n: u32, alpha: Scalar, beta: Scalar, radius: u32) -> Result<Self, PreLieError> {
        require(n >= 1, || "N must be at least 1".into())?;
        require(!alpha.is_zero(), || "α must be nonzero".into())?;
        require(!beta.is_zero(), || "β must be nonzero".into())?;
        let mut entries = Vec::new();
        for l in -(radius as i64)..=radius as i64 {
            let v = laurent3_coefficient(n, &alpha, &beta, l)?;
            entries.push((0, GroupElement::integer(l), v));
        }
        let table = GroupLambdaTable::new(&GroupSpec::integers(), Some(radius), entries)?;
        Ok(Self::unchecked(Variant::LaurentCase3 {
            n,
            alpha,
            beta,
            radius,
            table,
        }))
    }

    /// Validates `f ≠ 0`, `λ(g,g) = 0` and the quadratic condition on the
    /// window of `window_radius`; the additivity conditions hold by
    /// representation.
    pub fn mixed_t23(
        f: LinearForm,
        lambda: Scalar,
        table: GroupLambdaTable,
        morph_lambda: GroupMorphism,
        morph_mu: GroupMorphism,
        window_radius: u32,
    ) -> Result<Self, PreLieError> {
        require(!f.is_zero(), || "f must be nonzero".into())?;
        let group = table.group().clone();
        require(
            morph_lambda.group() == &group && morph_mu.group() == &group,
            || "morphisms and table must share the group".into(),
        )?;
        let window = group.window(window_radius);
        if let Some(g) = table.diagonal_violation(&window)? {
            return Err(PreLieError::InvalidParameter(format!(
                "λ(g,g) must vanish, fails at g={g}"
            )));
        }
        if let Some(v) = table.quadratic_violation(&window)? {
            return Err(PreLieError::InvalidParameter(format!(
                "quadratic condition fails at (g,h,k)=({},{},{})",
                v.g, v.h, v.k
            )));
        }
        Ok(Self::unchecked(Variant::MixedT23 {
            f,
            lambda,
            table,
            morph_lambda,
            morph_mu,
            window_radius,
        }))
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    /// `λ_j` with `X^i∙X^j = iλ_j X^{i+j}` for the graded `K[X]` families.
    pub fn kx_lambda(&self, j: u32) -> Option<Scalar> {
        let lam = match &self.variant {
            Variant::KxG1 { n, lambda, a, b } => {
                if j == 0 {
                    lambda.clone()
                } else if j % n == 0 {
                    a / &(&Scalar::ratio(j as i64, *n as i64) + b)
                } else {
                    Scalar::zero()
                }
            }
            Variant::KxG2 { n, lambda, mu } => match j {
                0 => lambda.clone(),
                _ if j == *n => mu.clone(),
                _ => Scalar::zero(),
            },
            Variant::KxG3 { n, lambda, mu } => match j {
                0 => lambda.clone(),
                _ if j % n == 0 => mu.clone(),
                _ => Scalar::zero(),
            },
            Variant::KxG4 { lambda } => {
                if j == 0 {
                    lambda.clone()
                } else {
                    Scalar::zero()
                }
            }
            _ => return None,
        };
        Some(lam)
    }

    /// The group family backing group and Laurent variants.
    pub fn group_table(&self) -> Option<&GroupLambdaTable> {
        match &self.variant {
            Variant::GroupProduct { table }
            | Variant::LaurentCase2 { table, .. }
            | Variant::LaurentCase3 { table, .. }
            | Variant::MixedT23 { table, .. } => Some(table),
            _ => None,
        }
    }

    fn mixed_product(
        &self,
        a: &Basis,
        b: &Basis,
        out: &mut Element,
    ) -> Result<(), PreLieError> {
        let Variant::MixedT23 {
            f,
            lambda,
            table,
            morph_lambda,
            morph_mu,
            ..
        } = &self.variant
        else {
            unreachable!()
        };
        let group = table.group();
        let ctx = &self.ctx;
        let (g, x) = (&a.group, &a.mono);
        let (h, y) = (&b.group, &b.mono);
        // (g∙hy)·x
        if !g.is_identity() {
            if !h.is_identity() {
                let l = table.value(g, h)?;
                if !l.is_zero() {
                    let gh = group.op(g, h);
                    if y.is_one() {
                        out.add_term(Basis::new(g.clone(), x.clone()), l.clone());
                        out.add_term(Basis::new(gh, x.clone()), -l);
                    } else {
                        out.add_term(Basis::new(gh, y.mul(x)), -l);
                    }
                }
            } else if !y.is_one() {
                let lg = morph_lambda.eval(g);
                if !lg.is_zero() {
                    out.add_term(Basis::new(g.clone(), y.mul(x)), lg);
                }
                let mg = morph_mu.eval(g);
                if !mg.is_zero() {
                    for (m, c) in psi_terms(f, lambda, y) {
                        out.add_term(Basis::new(g.clone(), m.mul(x)), &c * &mg);
                    }
                }
            }
        }
        // g·(x∙hy); vanishes unless h = 1.
        if h.is_identity() && !x.is_one() {
            let _ = ctx;
            sym_product(f, lambda, x, y, |m, c| {
                out.add_term(Basis::new(g.clone(), m), c)
            });
        }
        Ok(())
    }
}

fn sym_product(
    f: &LinearForm,
    lambda: &Scalar,
    u: &Monomial,
    v: &Monomial,
    mut emit: impl FnMut(Monomial, Scalar),
) {
    let du = derivation_terms(f, u);
    if du.is_empty() {
        return;
    }
    let pv = phi_terms(f, lambda, v);
    for (m1, c1) in &du {
        for (m2, c2) in &pv {
            emit(m1.mul(m2), c1 * c2);
        }
    }
}

impl BilinearProduct for PreLieStructure {
    fn ctx(&self) -> &AlgebraCtx {
        &self.ctx
    }

    fn product_basis(&self, a: &Basis, b: &Basis) -> Result<Element, PreLieError> {
        let ctx = &self.ctx;
        let mut out = Element::zero(ctx);
        match &self.variant {
            Variant::SymFLambda { f, lambda } => {
                sym_product(f, lambda, &a.mono, &b.mono, |m, c| {
                    out.add_term(ctx.mono(m), c)
                });
            }
            Variant::KxG1 { .. } | Variant::KxG2 { .. } | Variant::KxG3 { .. } | Variant::KxG4 { .. } => {
                let i = a.mono.exponent(0);
                let j = b.mono.exponent(0);
                if i > 0 {
                    let lam = self.kx_lambda(j).expect("graded family");
                    let c = lam * Scalar::from_int(i as i64);
                    out.add_term(ctx.x_pow((i + j) as i64), c);
                }
            }
            Variant::GPrime { lambda, mu } => {
                let k = a.mono.exponent(0);
                let l = b.mono.exponent(0);
                if k > 0 && l > 0 && !lambda.is_zero() {
                    let pre = lambda * &Scalar::from_int(k as i64) * Scalar::factorial(l);
                    for i in k..k + l {
                        let c = &pre * &super::forms::pow(mu, k + l - i - 1)
                            / Scalar::factorial(i - k + 1);
                        out.add_term(ctx.x_pow(i as i64), c);
                    }
                }
            }
            Variant::GroupProduct { table }
            | Variant::LaurentCase2 { table, .. }
            | Variant::LaurentCase3 { table, .. } => {
                let l = table.value(&a.group, &b.group)?;
                if !l.is_zero() {
                    let group = table.group();
                    out.add_term(a.clone(), l.clone());
                    out.add_term(ctx.group_elem(group.op(&a.group, &b.group)), -l);
                }
            }
            Variant::MixedT23 { .. } => self.mixed_product(a, b, &mut out)?,
        }
        Ok(out)
    }
}

fn torsion_suffix(g: &GroupSpec) -> String {
    if g.torsion.is_empty() {
        String::new()
    } else {
        let t: Vec<String> = g.torsion.iter().map(u64::to_string).collect();
        format!(",torsion={}", t.join(","))
    }
}

fn join(v: &[Scalar]) -> String {
    v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(",")
}

/// The canonical textual descriptor (`kind:key=value,…`). Group families
/// backed by an explicit table print only their group; the table travels
/// separately.
impl fmt::Display for PreLieStructure {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.variant {
            Variant::SymFLambda { f, lambda } => {
                write!(out, "svf:dim={},f={f},lambda={lambda}", f.dim())
            }
            Variant::KxG1 { n, lambda, a, b } => {
                write!(out, "kx:g1,N={n},lambda={lambda},a={a},b={b}")
            }
            Variant::KxG2 { n, lambda, mu } => write!(out, "kx:g2,N={n},lambda={lambda},mu={mu}"),
            Variant::KxG3 { n, lambda, mu } => write!(out, "kx:g3,N={n},lambda={lambda},mu={mu}"),
            Variant::KxG4 { lambda } => write!(out, "kx:g4,lambda={lambda}"),
            Variant::GPrime { lambda, mu } => write!(out, "gprime:lambda={lambda},mu={mu}"),
            Variant::GroupProduct { table } => {
                let g = table.group();
                write!(out, "group:rank={}{}", g.rank, torsion_suffix(g))
            }
            Variant::LaurentCase2 { k0, a, .. } => write!(out, "laurent2:k0={k0},a={a}"),
            Variant::LaurentCase3 {
                n,
                alpha,
                beta,
                radius,
                ..
            } => write!(
                out,
                "laurent3:N={n},alpha={alpha},beta={beta},radius={radius}"
            ),
            Variant::MixedT23 {
                f,
                lambda,
                table,
                morph_lambda,
                morph_mu,
                ..
            } => {
                let g = table.group();
                write!(
                    out,
                    "mixed:rank={}{},dim={},f={f},lambda={lambda},ml={},mm={}",
                    g.rank,
                    torsion_suffix(g),
                    f.dim(),
                    join(morph_lambda.values()),
                    join(morph_mu.values())
                )
            }
        }
    }
}
