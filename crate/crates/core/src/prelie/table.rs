//! Explicit product tables on basis pairs, used as extraction oracles and for
//! hand-built (possibly invalid) products.

use std::collections::HashMap;

use super::{BilinearProduct, PreLieError};
use crate::algebra::element::same_ctx;
use crate::algebra::{AlgebraCtx, Basis, Element, Scalar};

#[derive(Clone, Debug)]
pub struct ProductTable {
    ctx: AlgebraCtx,
    entries: HashMap<(Basis, Basis), Element>,
}

impl ProductTable {
    pub fn new(ctx: &AlgebraCtx) -> Self {
        ProductTable {
            ctx: ctx.clone(),
            entries: HashMap::new(),
        }
    }

    /// Records every product of pairs from `basis` whose degrees sum to at
    /// most `max_degree`.
    pub fn tabulate(
        p: &(impl BilinearProduct + ?Sized),
        basis: &[Basis],
        max_degree: u32,
    ) -> Result<Self, PreLieError> {
        let mut t = ProductTable::new(p.ctx());
        for a in basis {
            for b in basis {
                if a.degree() + b.degree() <= max_degree {
                    t.entries
                        .insert((a.clone(), b.clone()), p.product_basis(a, b)?);
                }
            }
        }
        Ok(t)
    }

    /// `X^i∙X^j = iλ_j X^{i+j}` for `i + j ≤ D`, where `D + 1` is the number
    /// of supplied `λ_j`.
    pub fn from_kx_sequence(lambdas: &[Scalar]) -> Self {
        let ctx = AlgebraCtx::Polynomial;
        let d = lambdas.len().saturating_sub(1) as i64;
        let mut t = ProductTable::new(&ctx);
        for i in 0..=d {
            for j in 0..=d - i {
                let c = Scalar::from_int(i) * &lambdas[j as usize];
                t.entries.insert(
                    (ctx.x_pow(i), ctx.x_pow(j)),
                    Element::term(&ctx, ctx.x_pow(i + j), c),
                );
            }
        }
        t
    }

    pub fn insert(&mut self, a: Basis, b: Basis, value: Element) -> Result<(), PreLieError> {
        same_ctx(&self.ctx, value.ctx())?;
        for x in [&a, &b] {
            if !self.ctx.conforms(x) {
                return Err(PreLieError::WrongContext(format!("{x:?}")));
            }
        }
        self.entries.insert((a, b), value);
        Ok(())
    }

    pub fn get(&self, a: &Basis, b: &Basis) -> Option<&Element> {
        self.entries.get(&(a.clone(), b.clone()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl BilinearProduct for ProductTable {
    fn ctx(&self) -> &AlgebraCtx {
        &self.ctx
    }

    fn product_basis(&self, a: &Basis, b: &Basis) -> Result<Element, PreLieError> {
        self.get(a, b).cloned().ok_or_else(|| {
            PreLieError::MissingEntry(format!(
                "{} ∙ {}",
                self.ctx.basis_string(a),
                self.ctx.basis_string(b)
            ))
        })
    }
}
