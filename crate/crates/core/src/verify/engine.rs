//! Interned, memoized evaluation of products on basis indices.
//!
//! Identity checks revisit the same basis pairs millions of times; the
//! engine maps basis elements to dense ids and caches preLie products,
//! commutative products and coproducts per id.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{AlgebraCtx, Basis, Element, Scalar, TensorElement};
use crate::prelie::{BilinearProduct, PreLieError};

/// A sparse vector over interned basis ids, sorted by id, no zeros.
pub type Lin = Vec<(u32, Scalar)>;
/// A sparse tensor over pairs of ids, sorted, no zeros.
pub type TLin = Vec<((u32, u32), Scalar)>;

/// Which bilinear operation to apply.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Op {
    PreLie,
    Zinbiel,
}

pub struct Acc<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord> Default for Acc<K> {
    fn default() -> Self {
        Acc(BTreeMap::new())
    }
}

impl<K: Ord + Copy> Acc<K> {
    pub fn add(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_lin(&mut self, v: &[(K, Scalar)], c: &Scalar) {
        for (k, x) in v {
            self.add(*k, x * c);
        }
    }

    pub fn finish(self) -> Vec<(K, Scalar)> {
        self.0.into_iter().collect()
    }
}

pub struct Engine<'a> {
    ctx: AlgebraCtx,
    prelie: &'a dyn BilinearProduct,
    zinbiel: Option<&'a dyn BilinearProduct>,
    bases: Vec<Basis>,
    ids: HashMap<Basis, u32>,
    products: HashMap<(Op, u32, u32), Arc<Lin>>,
    muls: HashMap<(u32, u32), u32>,
    coproducts: HashMap<u32, Arc<Vec<(u32, u32, Scalar)>>>,
}

impl<'a> Engine<'a> {
    /// Seeds the interner with `bases`, so index `i` of `bases` has id `i`.
    pub fn new(
        prelie: &'a dyn BilinearProduct,
        zinbiel: Option<&'a dyn BilinearProduct>,
        bases: &[Basis],
    ) -> Self {
        let mut e = Engine {
            ctx: prelie.ctx().clone(),
            prelie,
            zinbiel,
            bases: Vec::with_capacity(bases.len()),
            ids: HashMap::with_capacity(bases.len()),
            products: HashMap::new(),
            muls: HashMap::new(),
            coproducts: HashMap::new(),
        };
        for b in bases {
            e.intern(b.clone());
        }
        e
    }

    pub fn ctx(&self) -> &AlgebraCtx {
        &self.ctx
    }

    pub fn intern(&mut self, b: Basis) -> u32 {
        if let Some(&id) = self.ids.get(&b) {
            return id;
        }
        let id = self.bases.len() as u32;
        self.bases.push(b.clone());
        self.ids.insert(b, id);
        id
    }

    pub fn basis(&self, id: u32) -> &Basis {
        &self.bases[id as usize]
    }

    pub fn unit(&mut self) -> u32 {
        let u = self.ctx.unit();
        self.intern(u)
    }

    pub fn lin_of(&mut self, e: &Element) -> Lin {
        let mut acc = Acc::default();
        for (b, c) in e.terms() {
            let id = self.intern(b.clone());
            acc.add(id, c.clone());
        }
        acc.finish()
    }

    pub fn single(id: u32) -> Lin {
        vec![(id, Scalar::one())]
    }

    pub fn op(&mut self, op: Op, a: u32, b: u32) -> Result<Arc<Lin>, PreLieError> {
        if let Some(v) = self.products.get(&(op, a, b)) {
            return Ok(v.clone());
        }
        let p = match op {
            Op::PreLie => self.prelie,
            Op::Zinbiel => self.zinbiel.expect("engine built without a Zinbiel product"),
        };
        let e = p.product_basis(&self.bases[a as usize], &self.bases[b as usize])?;
        let v = Arc::new(self.lin_of(&e));
        self.products.insert((op, a, b), v.clone());
        Ok(v)
    }

    /// Bilinear extension of [`Engine::op`].
    pub fn op_lin(&mut self, op: Op, a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> Result<Lin, PreLieError> {
        let mut acc = Acc::default();
        for (x, c) in a {
            for (y, d) in b {
                let p = self.op(op, *x, *y)?;
                acc.add_lin(&p, &(c * d));
            }
        }
        Ok(acc.finish())
    }

    pub fn mul(&mut self, a: u32, b: u32) -> u32 {
        if let Some(&v) = self.muls.get(&(a, b)) {
            return v;
        }
        let m = self.ctx.mul_basis(&self.bases[a as usize], &self.bases[b as usize]);
        let id = self.intern(m);
        self.muls.insert((a, b), id);
        id
    }

    pub fn mul_lin(&mut self, a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> Lin {
        let mut acc = Acc::default();
        for (x, c) in a {
            for (y, d) in b {
                let m = self.mul(*x, *y);
                acc.add(m, c * d);
            }
        }
        acc.finish()
    }

    pub fn coproduct(&mut self, a: u32) -> Arc<Vec<(u32, u32, Scalar)>> {
        if let Some(v) = self.coproducts.get(&a) {
            return v.clone();
        }
        let terms = self.ctx.coproduct_basis(&self.bases[a as usize]);
        let v: Vec<(u32, u32, Scalar)> = terms
            .into_iter()
            .map(|(l, r, w)| (self.intern(l), self.intern(r), w))
            .collect();
        let v = Arc::new(v);
        self.coproducts.insert(a, v.clone());
        v
    }

    pub fn coproduct_lin(&mut self, a: &[(u32, Scalar)]) -> TLin {
        let mut acc = Acc::default();
        for (x, c) in a {
            for (l, r, w) in self.coproduct(*x).iter() {
                acc.add((*l, *r), &w.clone() * c);
            }
        }
        acc.finish()
    }

    /// `Δ̃(a) = Δ(a) − a⊗1 − 1⊗a` for `a` of counit zero.
    pub fn reduced_coproduct_lin(&mut self, a: &[(u32, Scalar)]) -> TLin {
        let one = self.unit();
        let mut acc = Acc::default();
        for (x, c) in a {
            for (l, r, w) in self.coproduct(*x).iter() {
                acc.add((*l, *r), &w.clone() * c);
            }
            acc.add((*x, one), -c);
            acc.add((one, *x), -c);
        }
        acc.finish()
    }

    pub fn counit(&self, a: u32) -> bool {
        self.bases[a as usize].mono.is_one()
    }

    pub fn element(&self, v: &[(u32, Scalar)]) -> Element {
        let mut e = Element::zero(&self.ctx);
        for (id, c) in v {
            e.add_term(self.bases[*id as usize].clone(), c.clone());
        }
        e
    }

    pub fn tensor(&self, v: &[((u32, u32), Scalar)]) -> TensorElement {
        let mut t = TensorElement::zero(&self.ctx);
        for ((l, r), c) in v {
            t.add_term(
                self.bases[*l as usize].clone(),
                self.bases[*r as usize].clone(),
                c.clone(),
            );
        }
        t
    }
}

/// `a − b` for sorted sparse vectors.
pub fn lin_sub<K: Ord + Copy>(a: &[(K, Scalar)], b: &[(K, Scalar)]) -> Vec<(K, Scalar)> {
    let mut acc = Acc::default();
    acc.add_lin(a, &Scalar::one());
    acc.add_lin(b, &-Scalar::one());
    acc.finish()
}
