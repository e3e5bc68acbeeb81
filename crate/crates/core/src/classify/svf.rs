//! The products `S(V, f, λ)`: isomorphism decision, parameter extraction from
//! an oracle, and the leading-order bracket shape.

use serde::{Deserialize, Serialize};

use super::ClassifyError;
use crate::algebra::linalg::{nullspace, rank};
use crate::algebra::{AlgebraCtx, Basis, Element, Monomial, Scalar};
use crate::prelie::{lie_bracket, BilinearProduct, LinearForm, PreLieStructure};
use crate::verify::{Report, Witness};

/// A linear bijection `ψ: V → W`, stored by the coordinates of each `ψ(e_j)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SvfIsomorphism {
    pub images: Vec<Vec<Scalar>>,
}

impl SvfIsomorphism {
    pub fn identity(dim: usize) -> Self {
        let images = (0..dim)
            .map(|j| (0..dim).map(|i| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        SvfIsomorphism { images }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    /// `g∘ψ` as a linear form on `V`.
    pub fn pull_back(&self, g: &LinearForm) -> LinearForm {
        LinearForm::new(self.images.iter().map(|v| g.eval(v)).collect())
    }

    pub fn is_invertible(&self) -> bool {
        rank(&self.images) == self.dim()
    }

    /// The algebra morphism `S(V) → S(W)` extending `ψ`.
    pub fn apply(&self, x: &Element, target: &AlgebraCtx) -> Result<Element, ClassifyError> {
        let images: Vec<Element> = self
            .images
            .iter()
            .map(|v| {
                let mut e = Element::zero(target);
                for (i, c) in v.iter().enumerate() {
                    e.add_term(target.mono(Monomial::var(i as u32)), c.clone());
                }
                e
            })
            .collect();
        let mut out = Element::zero(target);
        for (b, c) in x.terms() {
            let mut acc = Element::one(target);
            for &(i, e) in b.mono.pairs() {
                for _ in 0..e {
                    acc = acc.mul(&images[i as usize])?;
                }
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }
}

fn first_nonzero(f: &LinearForm) -> Option<usize> {
    f.coeffs().iter().position(|c| !c.is_zero())
}

/// Decides whether `S(V, f, λ)` and `S(W, g, μ)` are isomorphic and, if so,
/// returns a `ψ` with `g∘ψ = f` (checked exactly) whose extension is an
/// isomorphism.
///
/// With `f = g = 0` both products vanish and only the dimensions matter.
/// Otherwise `ψ` sends `e_i` (the first index with `f(e_i) ≠ 0`) to
/// `f(e_i)·w` with `g(w) = 1`, and maps a basis of `Ker f` onto a basis of
/// `Ker g`.
pub fn iso_svf(
    f: &LinearForm,
    lambda: &Scalar,
    g: &LinearForm,
    mu: &Scalar,
) -> Option<SvfIsomorphism> {
    let n = f.dim();
    if n != g.dim() || n == 0 {
        return None;
    }
    if f.is_zero() && g.is_zero() {
        return Some(SvfIsomorphism::identity(n));
    }
    if f.is_zero() || g.is_zero() || lambda != mu {
        return None;
    }
    let i = first_nonzero(f)?;
    let i_w = first_nonzero(g)?;
    let fi = f.at(i as u32);
    let mut w = vec![Scalar::zero(); n];
    w[i_w] = g.at(i_w as u32).recip().ok()?;
    let psi_i: Vec<Scalar> = w.iter().map(|x| x * &fi).collect();
    let kernel = nullspace(&[g.coeffs().to_vec()], n);
    let mut kernel = kernel.into_iter();
    let mut images = Vec::with_capacity(n);
    for j in 0..n {
        if j == i {
            images.push(psi_i.clone());
            continue;
        }
        let k = kernel.next()?;
        let ratio = f.at(j as u32) / &fi;
        images.push(k.iter().zip(&psi_i).map(|(a, b)| a + &(b * &ratio)).collect());
    }
    let psi = SvfIsomorphism { images };
    (psi.pull_back(g) == *f && psi.is_invertible()).then_some(psi)
}

/// The outcome of reading an oracle as some `S(V, f, λ)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SymInvariants {
    /// All products vanish.
    Zero,
    Structure { f: LinearForm, lambda: Scalar },
}

fn mono_elem(ctx: &AlgebraCtx, m: Monomial) -> Element {
    Element::basis(ctx, ctx.mono(m))
}

/// Reads `f` from `e_i∙e_j = f(e_i)e_j` and `λ` from the `e_i` coefficient
/// of `e_i∙e_i² = f(e_i)(e_i² + 2λf(e_i)e_i)`, then checks that the oracle
/// equals the rebuilt `S(V, f, λ)` on every basis pair of total degree at
/// most `max_degree`. When every product of primitives vanishes, the whole
/// oracle must vanish.
pub fn extract_sym_invariants(
    oracle: &dyn BilinearProduct,
    max_degree: u32,
) -> Result<SymInvariants, ClassifyError> {
    let ctx = oracle.ctx().clone();
    let AlgebraCtx::Symmetric { dim } = ctx else {
        return Err(ClassifyError::InvalidInput(
            "extraction needs a product on a symmetric algebra".into(),
        ));
    };
    if dim < 2 {
        return Err(ClassifyError::InvalidInput(
            "extraction needs dim V ≥ 2; use the K[X] classifier in dimension 1".into(),
        ));
    }
    if max_degree < 3 {
        return Err(ClassifyError::InvalidInput(
            "reading λ needs products of total degree 3".into(),
        ));
    }
    let e = |i: usize| mono_elem(&ctx, Monomial::var(i as u32));
    let e0 = ctx.mono(Monomial::var(0));
    let mut coeffs = Vec::with_capacity(dim);
    for i in 0..dim {
        coeffs.push(oracle.product(&e(i), &e(0))?.coefficient(&e0));
    }
    let f = LinearForm::new(coeffs);
    let rebuilt = match first_nonzero(&f) {
        None => None,
        Some(i) => {
            let ei = ctx.mono(Monomial::var(i as u32));
            let sq = mono_elem(&ctx, Monomial::var_pow(i as u32, 2));
            let fi = f.at(i as u32);
            let c = oracle.product(&e(i), &sq)?.coefficient(&ei);
            let lambda = c / &(Scalar::from_int(2) * &fi * &fi);
            Some(PreLieStructure::sym_f_lambda(f.clone(), lambda)?)
        }
    };
    let basis = ctx.basis_up_to(max_degree, 0);
    for a in &basis {
        for b in &basis {
            if a.degree() + b.degree() > max_degree {
                continue;
            }
            let got = oracle.product_basis(a, b)?;
            let expected = match &rebuilt {
                Some(s) => s.product_basis(a, b)?,
                None => Element::zero(&ctx),
            };
            if got != expected {
                return Err(mismatch(&ctx, a, b, got, expected));
            }
        }
    }
    Ok(match rebuilt.map(|s| s.variant().clone()) {
        None => SymInvariants::Zero,
        Some(crate::prelie::Variant::SymFLambda { f, lambda }) => {
            SymInvariants::Structure { f, lambda }
        }
        Some(_) => unreachable!("rebuilt from sym_f_lambda"),
    })
}

fn mismatch(ctx: &AlgebraCtx, a: &Basis, b: &Basis, got: Element, expected: Element) -> ClassifyError {
    ClassifyError::OracleInconsistent(Box::new(Witness {
        identity: "sym-rebuild".into(),
        inputs: vec![
            Element::basis(ctx, a.clone()).into(),
            Element::basis(ctx, b.clone()).into(),
        ],
        lhs: got.into(),
        rhs: expected.into(),
    }))
}

/// For `f ≠ 0`, transports `S(V, f, λ)` to `S(V, e₁*, λ)` and checks, for all
/// monomials `y, z` in `x₂, …, x_n` and `k, l ≥ 0` with `x₁^k y, x₁^l z ≠ 1`
/// and total degree at most `max_degree`, that `[x₁^k y, x₁^l z] = p(x₁)·yz` with `deg p ≤ k+l−1` and
/// leading coefficient `k − l`. The transport itself is checked to preserve
/// brackets on the same range.
pub fn corollary_check(
    f: &LinearForm,
    lambda: &Scalar,
    max_degree: u32,
) -> Result<Report, ClassifyError> {
    let dim = f.dim();
    if f.is_zero() {
        return Err(ClassifyError::InvalidInput("f must be nonzero".into()));
    }
    let ctx = AlgebraCtx::symmetric(dim);
    let model = PreLieStructure::sym_f_lambda(LinearForm::coordinate(dim, 0), lambda.clone())?;
    let target = PreLieStructure::sym_f_lambda(f.clone(), lambda.clone())?;
    let psi = iso_svf(&LinearForm::coordinate(dim, 0), lambda, f, lambda).ok_or_else(|| {
        ClassifyError::SingularSystem("no isomorphism onto the coordinate model".into())
    })?;
    let basis: Vec<Basis> = ctx
        .basis_up_to(max_degree, 0)
        .into_iter()
        .filter(|b| b.degree() > 0)
        .collect();
    let mut count = 0;
    for a in &basis {
        for b in &basis {
            if a.degree() + b.degree() > max_degree {
                continue;
            }
            count += 1;
            let (ea, eb) = (Element::basis(&ctx, a.clone()), Element::basis(&ctx, b.clone()));
            let br = lie_bracket(&model, &ea, &eb)?;
            let lhs = lie_bracket(&target, &psi.apply(&ea, &ctx)?, &psi.apply(&eb, &ctx)?)?;
            let rhs = psi.apply(&br, &ctx)?;
            if lhs != rhs {
                return Ok(Report::fail(
                    count,
                    Witness {
                        identity: "transport".into(),
                        inputs: vec![ea.into(), eb.into()],
                        lhs: lhs.into(),
                        rhs: rhs.into(),
                    },
                ));
            }
            if let Some(expected) = leading_shape_violation(&ctx, a, b, &br) {
                return Ok(Report::fail(
                    count,
                    Witness {
                        identity: "leading-order".into(),
                        inputs: vec![ea.into(), eb.into()],
                        lhs: br.into(),
                        rhs: expected.into(),
                    },
                ));
            }
        }
    }
    Ok(Report::pass(count))
}

/// `None` when `br = p(x₁)·yz` with the stated degree and leading
/// coefficient; otherwise the expected leading term.
fn leading_shape_violation(ctx: &AlgebraCtx, a: &Basis, b: &Basis, br: &Element) -> Option<Element> {
    let split = |m: &Monomial| {
        let k = m.exponent(0);
        (k, m.div(&Monomial::var_pow(0, k)).expect("divides"))
    };
    let (k, y) = split(&a.mono);
    let (l, z) = split(&b.mono);
    let yz = y.mul(&z);
    let coef = Scalar::from_int(k as i64 - l as i64);
    let expected = if k + l == 0 {
        Element::zero(ctx)
    } else {
        Element::term(ctx, ctx.mono(Monomial::var_pow(0, k + l - 1).mul(&yz)), coef.clone())
    };
    let mut top = Scalar::zero();
    for (basis, c) in br.terms() {
        let (p, rest) = split(&basis.mono);
        if rest != yz || k + l == 0 || p > k + l - 1 {
            return Some(expected);
        }
        if p == k + l - 1 {
            top = c.clone();
        }
    }
    (top != coef && k + l > 0).then_some(expected)
}
