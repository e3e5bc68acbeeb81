//! The defining identities of Com-PreLie and Zinbiel-PreLie bialgebras,
//! evaluated exhaustively on basis tuples.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::engine::{lin_sub, Acc, Engine, Lin, Op, TLin};
use super::enumerate::TupleSpace;
use super::report::{Report, Value};
use super::runner::{run_tuples, TupleOutcome};
use super::{CheckBound, VerifyError, VerifyOptions};
use crate::algebra::{AlgebraCtx, Basis, Element, Scalar, TensorElement};
use crate::prelie::{zinbiel, BilinearProduct, PreLieError};

/// Every identity the verifier knows, with its stable name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Identity {
    /// `(a∙b)∙c − a∙(b∙c) = (a∙c)∙b − a∙(c∙b)`.
    PreLie,
    /// `(ab)∙c = (a∙c)b + a(b∙c)`.
    Leibniz,
    /// `Δ(a∙b) = a⁽¹⁾⊗a⁽²⁾∙b + a⁽¹⁾∙b⁽¹⁾⊗a⁽²⁾b⁽²⁾`.
    Coproduct,
    /// `(a≺b)≺c = a≺(b≺c + c≺b)` on the augmentation ideal.
    Zinbiel,
    /// `(a≺b)∙c = (a∙c)≺b + a≺(b∙c)` for `a, b` in the augmentation ideal.
    ZinbielLeibniz,
    /// `a≺b + b≺a = ab` on the augmentation ideal.
    ZinbielCommutative,
    /// `Δ̃(a≺b) = a′≺b′⊗a″b″ + a′≺b⊗a″ + a′⊗a″b + a≺b′⊗b″ + a⊗b`.
    ZinbielCoproduct,
    /// `1∙b = 0`.
    UnitAnnihilates,
    /// `ε(a∙b) = 0`.
    CounitVanishes,
    Commutativity,
    Associativity,
    Coassociativity,
    Cocommutativity,
    /// `(ε⊗id)Δ = id = (id⊗ε)Δ`.
    Counit,
    /// `Δ(ab) = Δ(a)Δ(b)`.
    CoproductMorphism,
}

impl Identity {
    pub const ALL: [Identity; 15] = [
        Identity::PreLie,
        Identity::Leibniz,
        Identity::Coproduct,
        Identity::Zinbiel,
        Identity::ZinbielLeibniz,
        Identity::ZinbielCommutative,
        Identity::ZinbielCoproduct,
        Identity::UnitAnnihilates,
        Identity::CounitVanishes,
        Identity::Commutativity,
        Identity::Associativity,
        Identity::Coassociativity,
        Identity::Cocommutativity,
        Identity::Counit,
        Identity::CoproductMorphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::PreLie => "prelie",
            Identity::Leibniz => "leibniz",
            Identity::Coproduct => "coproduct",
            Identity::Zinbiel => "zinbiel",
            Identity::ZinbielLeibniz => "zinbiel-leibniz",
            Identity::ZinbielCommutative => "zinbiel-commutative",
            Identity::ZinbielCoproduct => "zinbiel-coproduct",
            Identity::UnitAnnihilates => "unit-annihilates",
            Identity::CounitVanishes => "counit-vanishes",
            Identity::Commutativity => "commutativity",
            Identity::Associativity => "associativity",
            Identity::Coassociativity => "coassociativity",
            Identity::Cocommutativity => "cocommutativity",
            Identity::Counit => "counit",
            Identity::CoproductMorphism => "coproduct-morphism",
        }
    }

    pub fn from_name(s: &str) -> Option<Identity> {
        Self::ALL.into_iter().find(|i| i.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            Identity::PreLie
            | Identity::Leibniz
            | Identity::Zinbiel
            | Identity::ZinbielLeibniz
            | Identity::Associativity => 3,
            Identity::Coproduct
            | Identity::ZinbielCommutative
            | Identity::ZinbielCoproduct
            | Identity::CounitVanishes
            | Identity::Commutativity
            | Identity::CoproductMorphism => 2,
            Identity::UnitAnnihilates
            | Identity::Coassociativity
            | Identity::Cocommutativity
            | Identity::Counit => 1,
        }
    }

    /// Minimum degree per slot: Zinbiel identities live on the augmentation
    /// ideal of `K[X]`.
    fn mins(self) -> Vec<u32> {
        match self {
            Identity::Zinbiel => vec![1, 1, 1],
            Identity::ZinbielLeibniz => vec![1, 1, 0],
            Identity::ZinbielCommutative | Identity::ZinbielCoproduct => vec![1, 1],
            _ => vec![0; self.arity()],
        }
    }

    fn uses_zinbiel(self) -> bool {
        matches!(
            self,
            Identity::Zinbiel
                | Identity::ZinbielLeibniz
                | Identity::ZinbielCommutative
                | Identity::ZinbielCoproduct
        )
    }
}

/// The half-shuffle product as a [`BilinearProduct`] on `K[X]`.
pub struct ZinbielProduct(AlgebraCtx);

impl ZinbielProduct {
    pub fn new() -> Self {
        ZinbielProduct(AlgebraCtx::Polynomial)
    }
}

impl Default for ZinbielProduct {
    fn default() -> Self {
        Self::new()
    }
}

impl BilinearProduct for ZinbielProduct {
    fn ctx(&self) -> &AlgebraCtx {
        &self.0
    }

    fn product_basis(&self, a: &Basis, b: &Basis) -> Result<Element, PreLieError> {
        zinbiel(
            &Element::basis(&self.0, a.clone()),
            &Element::basis(&self.0, b.clone()),
        )
    }
}

/// The zero product, used when only the ambient bialgebra is checked.
pub struct ZeroProduct(pub AlgebraCtx);

impl BilinearProduct for ZeroProduct {
    fn ctx(&self) -> &AlgebraCtx {
        &self.0
    }

    fn product_basis(&self, _: &Basis, _: &Basis) -> Result<Element, PreLieError> {
        Ok(Element::zero(&self.0))
    }
}

fn differ(eng: &Engine, lhs: Lin, rhs: Lin) -> Option<(Value, Value)> {
    (lhs != rhs).then(|| (eng.element(&lhs).into(), eng.element(&rhs).into()))
}

fn differ_t(eng: &Engine, lhs: TLin, rhs: TLin) -> Option<(Value, Value)> {
    (lhs != rhs).then(|| (eng.tensor(&lhs).into(), eng.tensor(&rhs).into()))
}

fn add_tensor(acc: &mut Acc<(u32, u32)>, l: &[(u32, Scalar)], r: &[(u32, Scalar)], c: &Scalar) {
    for (x, p) in l {
        for (y, q) in r {
            acc.add((*x, *y), &(p * q) * c);
        }
    }
}

type Triple = Vec<((u32, u32, u32), Scalar)>;

fn triple_text(eng: &Engine, t: &Triple) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let ctx = eng.ctx();
    let mut s = String::new();
    for (i, ((a, b, c), x)) in t.iter().enumerate() {
        let body = format!(
            "{}⊗{}⊗{}",
            ctx.basis_string(eng.basis(*a)),
            ctx.basis_string(eng.basis(*b)),
            ctx.basis_string(eng.basis(*c))
        );
        let mag = x.abs();
        let sign = match (i, x.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        if mag.is_one() {
            let _ = write!(s, "{sign}{body}");
        } else {
            let _ = write!(s, "{sign}{mag}*{body}");
        }
    }
    s
}

/// Engine-level evaluation of one identity on one basis tuple.
fn eval_tuple(id: Identity, eng: &mut Engine, t: &[u32]) -> TupleOutcome {
    let one = Scalar::one();
    let s = Engine::single;
    Ok(match id {
        Identity::PreLie => {
            let (a, b, c) = (t[0], t[1], t[2]);
            let side = |eng: &mut Engine, b: u32, c: u32| -> Result<Lin, PreLieError> {
                let ab = eng.op(Op::PreLie, a, b)?;
                let l1 = eng.op_lin(Op::PreLie, &ab, &s(c))?;
                let bc = eng.op(Op::PreLie, b, c)?;
                let l2 = eng.op_lin(Op::PreLie, &s(a), &bc)?;
                Ok(lin_sub(&l1, &l2))
            };
            let lhs = side(eng, b, c)?;
            let rhs = side(eng, c, b)?;
            differ(eng, lhs, rhs)
        }
        Identity::Leibniz => {
            let (a, b, c) = (t[0], t[1], t[2]);
            let ab = eng.mul(a, b);
            let lhs = (*eng.op(Op::PreLie, ab, c)?).clone();
            let ac = eng.op(Op::PreLie, a, c)?;
            let bc = eng.op(Op::PreLie, b, c)?;
            let mut acc = Acc::default();
            acc.add_lin(&eng.mul_lin(&ac, &s(b)), &one);
            acc.add_lin(&eng.mul_lin(&s(a), &bc), &one);
            differ(eng, lhs, acc.finish())
        }
        Identity::Coproduct => {
            let (a, b) = (t[0], t[1]);
            let ab = eng.op(Op::PreLie, a, b)?;
            let lhs = eng.coproduct_lin(&ab);
            let mut acc = Acc::default();
            let da = eng.coproduct(a);
            let db = eng.coproduct(b);
            for (a1, a2, w) in da.iter() {
                let p = eng.op(Op::PreLie, *a2, b)?;
                add_tensor(&mut acc, &s(*a1), &p, w);
                for (b1, b2, v) in db.iter() {
                    let p = eng.op(Op::PreLie, *a1, *b1)?;
                    if p.is_empty() {
                        continue;
                    }
                    let m = eng.mul(*a2, *b2);
                    add_tensor(&mut acc, &p, &s(m), &(w * v));
                }
            }
            differ_t(eng, lhs, acc.finish())
        }
        Identity::Zinbiel => {
            let (a, b, c) = (t[0], t[1], t[2]);
            let ab = eng.op(Op::Zinbiel, a, b)?;
            let lhs = eng.op_lin(Op::Zinbiel, &ab, &s(c))?;
            let mut sym = Acc::default();
            sym.add_lin(&eng.op(Op::Zinbiel, b, c)?, &one);
            sym.add_lin(&eng.op(Op::Zinbiel, c, b)?, &one);
            let rhs = eng.op_lin(Op::Zinbiel, &s(a), &sym.finish())?;
            differ(eng, lhs, rhs)
        }
        Identity::ZinbielLeibniz => {
            let (a, b, c) = (t[0], t[1], t[2]);
            let ab = eng.op(Op::Zinbiel, a, b)?;
            let lhs = eng.op_lin(Op::PreLie, &ab, &s(c))?;
            let ac = eng.op(Op::PreLie, a, c)?;
            let bc = eng.op(Op::PreLie, b, c)?;
            let mut acc = Acc::default();
            acc.add_lin(&eng.op_lin(Op::Zinbiel, &ac, &s(b))?, &one);
            acc.add_lin(&eng.op_lin(Op::Zinbiel, &s(a), &bc)?, &one);
            differ(eng, lhs, acc.finish())
        }
        Identity::ZinbielCommutative => {
            let (a, b) = (t[0], t[1]);
            let mut acc = Acc::default();
            acc.add_lin(&eng.op(Op::Zinbiel, a, b)?, &one);
            acc.add_lin(&eng.op(Op::Zinbiel, b, a)?, &one);
            let m = eng.mul(a, b);
            differ(eng, acc.finish(), s(m))
        }
        Identity::ZinbielCoproduct => {
            let (a, b) = (t[0], t[1]);
            let ab = eng.op(Op::Zinbiel, a, b)?;
            let lhs = eng.reduced_coproduct_lin(&ab);
            let ra = eng.reduced_coproduct_lin(&s(a));
            let rb = eng.reduced_coproduct_lin(&s(b));
            let mut acc = Acc::default();
            for ((a1, a2), x) in &ra {
                for ((b1, b2), y) in &rb {
                    let z = eng.op(Op::Zinbiel, *a1, *b1)?;
                    let m = eng.mul(*a2, *b2);
                    add_tensor(&mut acc, &z, &s(m), &(x * y));
                }
                let z = eng.op(Op::Zinbiel, *a1, b)?;
                add_tensor(&mut acc, &z, &s(*a2), x);
                let m = eng.mul(*a2, b);
                acc.add((*a1, m), x.clone());
            }
            for ((b1, b2), y) in &rb {
                let z = eng.op(Op::Zinbiel, a, *b1)?;
                add_tensor(&mut acc, &z, &s(*b2), y);
            }
            acc.add((a, b), one.clone());
            differ_t(eng, lhs, acc.finish())
        }
        Identity::UnitAnnihilates => {
            let u = eng.unit();
            let v = (*eng.op(Op::PreLie, u, t[0])?).clone();
            differ(eng, v, Vec::new())
        }
        Identity::CounitVanishes => {
            let v = eng.op(Op::PreLie, t[0], t[1])?;
            let eps: Scalar = v
                .iter()
                .filter(|(id, _)| eng.counit(*id))
                .map(|(_, c)| c.clone())
                .sum();
            (!eps.is_zero()).then(|| (eps.into(), Scalar::zero().into()))
        }
        Identity::Commutativity => {
            let l = eng.mul(t[0], t[1]);
            let r = eng.mul(t[1], t[0]);
            differ(eng, s(l), s(r))
        }
        Identity::Associativity => {
            let ab = eng.mul(t[0], t[1]);
            let l = eng.mul(ab, t[2]);
            let bc = eng.mul(t[1], t[2]);
            let r = eng.mul(t[0], bc);
            differ(eng, s(l), s(r))
        }
        Identity::Coassociativity => {
            let d = eng.coproduct(t[0]);
            let mut left: Acc<(u32, u32, u32)> = Acc::default();
            let mut right: Acc<(u32, u32, u32)> = Acc::default();
            for (x, y, w) in d.iter() {
                for (x1, x2, v) in eng.coproduct(*x).iter() {
                    left.add((*x1, *x2, *y), w * v);
                }
                for (y1, y2, v) in eng.coproduct(*y).iter() {
                    right.add((*x, *y1, *y2), w * v);
                }
            }
            let (l, r) = (left.finish(), right.finish());
            (l != r).then(|| {
                (
                    Value::Text(triple_text(eng, &l)),
                    Value::Text(triple_text(eng, &r)),
                )
            })
        }
        Identity::Cocommutativity => {
            let d = eng.coproduct(t[0]);
            let mut l = Acc::default();
            let mut r = Acc::default();
            for (x, y, w) in d.iter() {
                l.add((*x, *y), w.clone());
                r.add((*y, *x), w.clone());
            }
            differ_t(eng, l.finish(), r.finish())
        }
        Identity::Counit => {
            let d = eng.coproduct(t[0]);
            let mut left = Acc::default();
            let mut right = Acc::default();
            for (x, y, w) in d.iter() {
                if eng.counit(*x) {
                    left.add(*y, w.clone());
                }
                if eng.counit(*y) {
                    right.add(*x, w.clone());
                }
            }
            let (l, r) = (left.finish(), right.finish());
            let me = s(t[0]);
            if l != me {
                differ(eng, l, me)
            } else {
                differ(eng, r, me)
            }
        }
        Identity::CoproductMorphism => {
            let (a, b) = (t[0], t[1]);
            let ab = eng.mul(a, b);
            let lhs = eng.coproduct_lin(&s(ab));
            let da = eng.coproduct(a);
            let db = eng.coproduct(b);
            let mut acc = Acc::default();
            for (a1, a2, w) in da.iter() {
                for (b1, b2, v) in db.iter() {
                    let l = eng.mul(*a1, *b1);
                    let r = eng.mul(*a2, *b2);
                    acc.add((l, r), w * v);
                }
            }
            differ_t(eng, lhs, acc.finish())
        }
    })
}

/// Checks one identity on every basis tuple within `bound`.
pub fn check_identity(
    p: &dyn BilinearProduct,
    id: Identity,
    bound: &CheckBound,
    opts: &VerifyOptions,
) -> Result<Report, VerifyError> {
    let ctx = p.ctx();
    let z = ZinbielProduct::new();
    let zinbiel: Option<&dyn BilinearProduct> = if id.uses_zinbiel() {
        if *ctx != AlgebraCtx::Polynomial {
            return Err(VerifyError::WrongContext(format!(
                "{} is defined on K[X] only",
                id.name()
            )));
        }
        Some(&z)
    } else {
        None
    };
    let bases = ctx.basis_up_to(bound.max_degree, bound.group_radius);
    let space = TupleSpace::with_mins(&bases, bound.max_degree, id.mins());
    run_tuples(p, zinbiel, &bases, &space, id.name(), opts, |eng, t| {
        eval_tuple(id, eng, t)
    })
}

/// Runs several identities in order; the first failing one is reported and
/// counts accumulate.
pub fn check_identities(
    p: &dyn BilinearProduct,
    ids: &[Identity],
    bound: &CheckBound,
    opts: &VerifyOptions,
) -> Result<Report, VerifyError> {
    Report::sequence(ids.iter().map(|&id| {
        Box::new(move || check_identity(p, id, bound, opts))
            as Box<dyn FnOnce() -> Result<Report, VerifyError> + '_>
    }))
}

pub fn check_prelie_identity(
    p: &dyn BilinearProduct,
    bound: &CheckBound,
    opts: &VerifyOptions,
) -> Result<Report, VerifyError> {
    check_identity(p, Identity::PreLie, bound, opts)
}

pub fn check_leibniz(
    p: &dyn BilinearProduct,
    bound: &CheckBound,
    opts: &VerifyOptions,
) -> Result<Report, VerifyError> {
    check_identity(p, Identity::Leibniz, bound, opts)
}

pub fn check_coproduct_compat(
    p: &dyn BilinearProduct,
    bound: &CheckBound,
    opts: &VerifyOptions,
) -> Result<Report, VerifyError> {
    check_identity(p, Identity::Coproduct, bound, opts)
}

/// The Zinbiel identity, the Zinbiel-Leibniz identity
/// `(a≺b)∙c = (a∙c)≺b + a≺(b∙c)`, `a≺b + b≺a = ab` and the reduced-coproduct
/// identity, for a product on `K[X]`.
pub fn check_zinbiel_axioms(
    p: &dyn BilinearProduct,
    bound: &CheckBound,
    opts: &VerifyOptions,
) -> Result<Report, VerifyError> {
    check_identities(
        p,
        &[
            Identity::Zinbiel,
            Identity::ZinbielLeibniz,
            Identity::ZinbielCommutative,
            Identity::ZinbielCoproduct,
        ],
        bound,
        opts,
    )
}

/// PreLie, Leibniz, coproduct compatibility, `1∙b = 0` and `ε(a∙b) = 0`.
pub fn check_comprelie_bialgebra(
    p: &dyn BilinearProduct,
    bound: &CheckBound,
    opts: &VerifyOptions,
) -> Result<Report, VerifyError> {
    check_identities(
        p,
        &[
            Identity::PreLie,
            Identity::Leibniz,
            Identity::Coproduct,
            Identity::UnitAnnihilates,
            Identity::CounitVanishes,
        ],
        bound,
        opts,
    )
}

/// The commutative, cocommutative bialgebra axioms of the ambient algebra.
pub fn check_bialgebra(
    ctx: &AlgebraCtx,
    bound: &CheckBound,
    opts: &VerifyOptions,
) -> Result<Report, VerifyError> {
    let zero = ZeroProduct(ctx.clone());
    check_identities(
        &zero,
        &[
            Identity::Commutativity,
            Identity::Associativity,
            Identity::Coassociativity,
            Identity::Cocommutativity,
            Identity::Counit,
            Identity::CoproductMorphism,
        ],
        bound,
        opts,
    )
}

fn triple_elem(t: &BTreeMap<(Basis, Basis, Basis), Scalar>, ctx: &AlgebraCtx) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, ((a, b, c), x)) in t.iter().enumerate() {
        let body = format!(
            "{}⊗{}⊗{}",
            ctx.basis_string(a),
            ctx.basis_string(b),
            ctx.basis_string(c)
        );
        let mag = x.abs();
        let sign = match (i, x.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        if mag.is_one() {
            let _ = write!(s, "{sign}{body}");
        } else {
            let _ = write!(s, "{sign}{mag}*{body}");
        }
    }
    s
}

/// Evaluates both sides of an identity on arbitrary elements with the plain
/// element API, independently of the memoizing engine. Used to re-check
/// witnesses.
pub fn evaluate_identity(
    p: &dyn BilinearProduct,
    id: Identity,
    inputs: &[Element],
) -> Result<(Value, Value), VerifyError> {
    if inputs.len() != id.arity() {
        return Err(VerifyError::WrongContext(format!(
            "{} takes {} inputs",
            id.name(),
            id.arity()
        )));
    }
    let ctx = p.ctx().clone();
    let pl = |a: &Element, b: &Element| p.product(a, b);
    let z = |a: &Element, b: &Element| -> Result<Element, PreLieError> { zinbiel(a, b) };
    let one = Element::one(&ctx);
    let el = |v: Element| -> Value { v.into() };
    let te = |v: TensorElement| -> Value { v.into() };
    let r = match id {
        Identity::PreLie => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            let l = pl(&pl(a, b)?, c)?.sub(&pl(a, &pl(b, c)?)?)?;
            let r = pl(&pl(a, c)?, b)?.sub(&pl(a, &pl(c, b)?)?)?;
            (el(l), el(r))
        }
        Identity::Leibniz => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            let l = pl(&a.mul(b)?, c)?;
            let r = pl(a, c)?.mul(b)?.add(&a.mul(&pl(b, c)?)?)?;
            (el(l), el(r))
        }
        Identity::Coproduct => {
            let (a, b) = (&inputs[0], &inputs[1]);
            let l = pl(a, b)?.coproduct();
            let mut r = TensorElement::zero(&ctx);
            let da = a.coproduct();
            let db = b.coproduct();
            for ((a1, a2), x) in da.terms() {
                let a1e = Element::basis(&ctx, a1.clone());
                let a2e = Element::basis(&ctx, a2.clone());
                r.add_simple(&a1e, &pl(&a2e, b)?, x);
                for ((b1, b2), y) in db.terms() {
                    let b1e = Element::basis(&ctx, b1.clone());
                    let b2e = Element::basis(&ctx, b2.clone());
                    r.add_simple(&pl(&a1e, &b1e)?, &a2e.mul(&b2e)?, &(x * y));
                }
            }
            (te(l), te(r))
        }
        Identity::Zinbiel => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            let l = z(&z(a, b)?, c)?;
            let r = z(a, &z(b, c)?.add(&z(c, b)?)?)?;
            (el(l), el(r))
        }
        Identity::ZinbielLeibniz => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            let l = pl(&z(a, b)?, c)?;
            let r = z(&pl(a, c)?, b)?.add(&z(a, &pl(b, c)?)?)?;
            (el(l), el(r))
        }
        Identity::ZinbielCommutative => {
            let (a, b) = (&inputs[0], &inputs[1]);
            (el(z(a, b)?.add(&z(b, a)?)?), el(a.mul(b)?))
        }
        Identity::ZinbielCoproduct => {
            let (a, b) = (&inputs[0], &inputs[1]);
            let l = z(a, b)?.reduced_coproduct()?;
            let ra = a.reduced_coproduct()?;
            let rb = b.reduced_coproduct()?;
            let mut r = TensorElement::zero(&ctx);
            for ((a1, a2), x) in ra.terms() {
                let a1e = Element::basis(&ctx, a1.clone());
                let a2e = Element::basis(&ctx, a2.clone());
                for ((b1, b2), y) in rb.terms() {
                    let b1e = Element::basis(&ctx, b1.clone());
                    let b2e = Element::basis(&ctx, b2.clone());
                    r.add_simple(&z(&a1e, &b1e)?, &a2e.mul(&b2e)?, &(x * y));
                }
                r.add_simple(&z(&a1e, b)?, &a2e, x);
                r.add_simple(&a1e, &a2e.mul(b)?, x);
            }
            for ((b1, b2), y) in rb.terms() {
                let b1e = Element::basis(&ctx, b1.clone());
                let b2e = Element::basis(&ctx, b2.clone());
                r.add_simple(&z(a, &b1e)?, &b2e, y);
            }
            r.add_simple(a, b, &Scalar::one());
            (te(l), te(r))
        }
        Identity::UnitAnnihilates => (el(pl(&one, &inputs[0])?), el(Element::zero(&ctx))),
        Identity::CounitVanishes => (
            pl(&inputs[0], &inputs[1])?.counit().into(),
            Scalar::zero().into(),
        ),
        Identity::Commutativity => (
            el(inputs[0].mul(&inputs[1])?),
            el(inputs[1].mul(&inputs[0])?),
        ),
        Identity::Associativity => (
            el(inputs[0].mul(&inputs[1])?.mul(&inputs[2])?),
            el(inputs[0].mul(&inputs[1].mul(&inputs[2])?)?),
        ),
        Identity::Coassociativity => {
            let d = inputs[0].coproduct();
            (
                Value::Text(triple_elem(&d.coproduct_left(), &ctx)),
                Value::Text(triple_elem(&d.coproduct_right(), &ctx)),
            )
        }
        Identity::Cocommutativity => {
            let d = inputs[0].coproduct();
            (te(d.clone()), te(d.swap()))
        }
        Identity::Counit => {
            let d = inputs[0].coproduct();
            let l = d.counit_left();
            if l != inputs[0] {
                (el(l), el(inputs[0].clone()))
            } else {
                (el(d.counit_right()), el(inputs[0].clone()))
            }
        }
        Identity::CoproductMorphism => {
            let (a, b) = (&inputs[0], &inputs[1]);
            (
                te(a.mul(b)?.coproduct()),
                te(a.coproduct().mul(&b.coproduct())?),
            )
        }
    };
    Ok(r)
}
