//! Finitely supported linear combinations and their tensor squares.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use super::basis::{AlgebraCtx, Basis};
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("context mismatch: {left:?} vs {right:?}")]
    ContextMismatch {
        left: Box<AlgebraCtx>,
        right: Box<AlgebraCtx>,
    },
    #[error("element has nonzero counit {0}; the reduced coproduct is only defined on the augmentation ideal")]
    NotAugmentation(Scalar),
    #[error("basis element {0} does not belong to the context")]
    NonConforming(String),
}

pub(crate) fn same_ctx(a: &AlgebraCtx, b: &AlgebraCtx) -> Result<(), AlgebraError> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::ContextMismatch {
            left: Box::new(a.clone()),
            right: Box::new(b.clone()),
        })
    }
}

fn add_term<K: Ord>(terms: &mut BTreeMap<K, Scalar>, key: K, coef: Scalar) {
    if coef.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(v) => {
            v.insert(coef);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coef;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A linear combination of basis elements of one ambient algebra, kept in
/// canonical form (no zero coefficients; iteration in printing order).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    ctx: AlgebraCtx,
    terms: BTreeMap<Basis, Scalar>,
}

impl Element {
    pub fn zero(ctx: &AlgebraCtx) -> Self {
        Element {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &AlgebraCtx) -> Self {
        Self::basis(ctx, ctx.unit())
    }

    pub fn basis(ctx: &AlgebraCtx, b: Basis) -> Self {
        Self::term(ctx, b, Scalar::one())
    }

    pub fn term(ctx: &AlgebraCtx, b: Basis, coef: Scalar) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(b, coef);
        e
    }

    pub fn scalar(ctx: &AlgebraCtx, c: Scalar) -> Self {
        Self::term(ctx, ctx.unit(), c)
    }

    /// Builds from terms, validating that each basis element fits `ctx`.
    pub fn from_terms(
        ctx: &AlgebraCtx,
        terms: impl IntoIterator<Item = (Basis, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let mut e = Self::zero(ctx);
        for (b, c) in terms {
            if !ctx.conforms(&b) {
                return Err(AlgebraError::NonConforming(format!("{b:?}")));
            }
            e.add_term(b, c);
        }
        Ok(e)
    }

    pub fn ctx(&self) -> &AlgebraCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &Basis) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    /// The single basis element when the element is exactly `1·b`.
    pub fn as_basis(&self) -> Option<&Basis> {
        match self.terms.iter().next() {
            Some((b, c)) if self.terms.len() == 1 && c.is_one() => Some(b),
            _ => None,
        }
    }

    /// Highest degree of a term (0 for zero).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Basis::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, b: Basis, coef: Scalar) {
        add_term(&mut self.terms, b, coef);
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            add_term(&mut self.terms, b.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        same_ctx(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        same_ctx(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero(&self.ctx);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Scalar::one())
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<F>(&self, target: &AlgebraCtx, mut f: F) -> Element
    where
        F: FnMut(&Basis) -> Element,
    {
        let mut out = Element::zero(target);
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Fallible variant of [`Element::map_linear`].
    pub fn try_map_linear<F, E>(&self, target: &AlgebraCtx, mut f: F) -> Result<Element, E>
    where
        F: FnMut(&Basis) -> Result<Element, E>,
    {
        let mut out = Element::zero(target);
        for (b, c) in &self.terms {
            out.add_scaled(&f(b)?, c);
        }
        Ok(out)
    }

    /// Applies a bilinear map given on pairs of basis elements.
    pub fn try_bilinear<F, E>(&self, other: &Element, mut f: F) -> Result<Element, E>
    where
        F: FnMut(&Basis, &Basis) -> Result<Element, E>,
    {
        let mut out = Element::zero(&self.ctx);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_scaled(&f(a, b)?, &(x * y));
            }
        }
        Ok(out)
    }

    /// The commutative, associative product.
    pub fn mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        same_ctx(&self.ctx, &other.ctx)?;
        let mut out = Element::zero(&self.ctx);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(self.ctx.mul_basis(a, b), x * y);
            }
        }
        Ok(out)
    }

    pub fn coproduct(&self) -> TensorElement {
        let mut t = TensorElement::zero(&self.ctx);
        for (b, c) in &self.terms {
            for (l, r, w) in self.ctx.coproduct_basis(b) {
                t.add_term(l, r, &w * c);
            }
        }
        t
    }

    pub fn counit(&self) -> Scalar {
        self.terms
            .iter()
            .map(|(b, c)| self.ctx.counit_basis(b) * c)
            .sum()
    }

    /// `Δ(a) − a⊗1 − 1⊗a`, defined on the augmentation ideal.
    pub fn reduced_coproduct(&self) -> Result<TensorElement, AlgebraError> {
        let eps = self.counit();
        if !eps.is_zero() {
            return Err(AlgebraError::NotAugmentation(eps));
        }
        let mut t = self.coproduct();
        let one = self.ctx.unit();
        for (b, c) in &self.terms {
            t.add_term(b.clone(), one.clone(), -c);
            t.add_term(one.clone(), b.clone(), -c);
        }
        Ok(t)
    }
}

/// `Σ cᵢ·eᵢ` over one shared context; zero-coefficient pairs are dropped.
pub fn linear_combine(pairs: &[(Scalar, Element)]) -> Result<Element, AlgebraError> {
    let Some((_, first)) = pairs.first() else {
        return Err(AlgebraError::NonConforming(
            "empty combination has no context".into(),
        ));
    };
    let mut out = Element::zero(first.ctx());
    for (c, e) in pairs {
        same_ctx(first.ctx(), e.ctx())?;
        out.add_scaled(e, c);
    }
    Ok(out)
}

fn write_coef_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coef: &Scalar,
    body: &str,
    body_is_unit: bool,
) -> fmt::Result {
    let neg = coef.is_negative();
    let mag = coef.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if body_is_unit {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{mag}*{body}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let unit = b.group.is_identity() && b.mono.is_one();
            let body = self.ctx.basis_string(b);
            write_coef_term(f, k == 0, c, &body, unit)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finitely supported element of `A ⊗ A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    ctx: AlgebraCtx,
    terms: BTreeMap<(Basis, Basis), Scalar>,
}

/// Result of [`TensorElement::eval`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluated {
    Tensor(TensorElement),
    Element(Element),
}

impl TensorElement {
    pub fn zero(ctx: &AlgebraCtx) -> Self {
        TensorElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn simple(left: &Element, right: &Element) -> Result<Self, AlgebraError> {
        same_ctx(left.ctx(), right.ctx())?;
        let mut t = Self::zero(left.ctx());
        for (a, x) in left.terms() {
            for (b, y) in right.terms() {
                t.add_term(a.clone(), b.clone(), x * y);
            }
        }
        Ok(t)
    }

    pub fn ctx(&self) -> &AlgebraCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Basis, Basis), &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, l: &Basis, r: &Basis) -> Scalar {
        self.terms
            .get(&(l.clone(), r.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, l: Basis, r: Basis, coef: Scalar) {
        add_term(&mut self.terms, (l, r), coef);
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        for ((l, r), x) in &other.terms {
            add_term(&mut self.terms, (l.clone(), r.clone()), x * c);
        }
    }

    /// Adds `c · left ⊗ right`.
    pub fn add_simple(&mut self, left: &Element, right: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (a, x) in left.terms() {
            for (b, y) in right.terms() {
                add_term(&mut self.terms, (a.clone(), b.clone()), &(x * y) * c);
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        same_ctx(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        same_ctx(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        Ok(out)
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        same_ctx(&self.ctx, &other.ctx)?;
        let mut out = TensorElement::zero(&self.ctx);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                out.add_term(self.ctx.mul_basis(a, c), self.ctx.mul_basis(b, d), x * y);
            }
        }
        Ok(out)
    }

    /// The flip `a⊗b ↦ b⊗a`.
    pub fn swap(&self) -> TensorElement {
        let mut out = TensorElement::zero(&self.ctx);
        for ((a, b), x) in &self.terms {
            out.add_term(b.clone(), a.clone(), x.clone());
        }
        out
    }

    /// Applies linear maps factorwise.
    pub fn map_factors<L, R, E>(&self, mut left: L, mut right: R) -> Result<TensorElement, E>
    where
        L: FnMut(&Element) -> Result<Element, E>,
        R: FnMut(&Element) -> Result<Element, E>,
    {
        let mut out = TensorElement::zero(&self.ctx);
        for ((a, b), x) in &self.terms {
            let la = left(&Element::basis(&self.ctx, a.clone()))?;
            let rb = right(&Element::basis(&self.ctx, b.clone()))?;
            out.add_simple(&la, &rb, x);
        }
        Ok(out)
    }

    /// Applies linear maps factorwise and multiplies the factors back together.
    pub fn map_then_mul<L, R, E>(&self, mut left: L, mut right: R) -> Result<Element, E>
    where
        L: FnMut(&Element) -> Result<Element, E>,
        R: FnMut(&Element) -> Result<Element, E>,
        E: From<AlgebraError>,
    {
        let mut out = Element::zero(&self.ctx);
        for ((a, b), x) in &self.terms {
            let la = left(&Element::basis(&self.ctx, a.clone()))?;
            let rb = right(&Element::basis(&self.ctx, b.clone()))?;
            out.add_scaled(&la.mul(&rb)?, x);
        }
        Ok(out)
    }

    /// Sweedler-style evaluation: factorwise maps, optionally followed by the
    /// product.
    pub fn eval<L, R>(&self, left: L, right: R, then_mul: bool) -> Result<Evaluated, AlgebraError>
    where
        L: FnMut(&Element) -> Result<Element, AlgebraError>,
        R: FnMut(&Element) -> Result<Element, AlgebraError>,
    {
        if then_mul {
            self.map_then_mul(left, right).map(Evaluated::Element)
        } else {
            self.map_factors(left, right).map(Evaluated::Tensor)
        }
    }

    /// `(ε ⊗ id)(t)`.
    pub fn counit_left(&self) -> Element {
        let mut out = Element::zero(&self.ctx);
        for ((a, b), x) in &self.terms {
            out.add_term(b.clone(), self.ctx.counit_basis(a) * x);
        }
        out
    }

    /// `(id ⊗ ε)(t)`.
    pub fn counit_right(&self) -> Element {
        let mut out = Element::zero(&self.ctx);
        for ((a, b), x) in &self.terms {
            out.add_term(a.clone(), self.ctx.counit_basis(b) * x);
        }
        out
    }

    /// `(Δ ⊗ id)(t)` and `(id ⊗ Δ)(t)` as triple tensors, for coassociativity.
    pub fn coproduct_left(&self) -> BTreeMap<(Basis, Basis, Basis), Scalar> {
        let mut out = BTreeMap::new();
        for ((a, b), x) in &self.terms {
            for (l, r, w) in self.ctx.coproduct_basis(a) {
                add_term(&mut out, (l, r, b.clone()), &w * x);
            }
        }
        out
    }

    pub fn coproduct_right(&self) -> BTreeMap<(Basis, Basis, Basis), Scalar> {
        let mut out = BTreeMap::new();
        for ((a, b), x) in &self.terms {
            for (l, r, w) in self.ctx.coproduct_basis(b) {
                add_term(&mut out, (a.clone(), l, r), &w * x);
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            let body = format!(
                "{}⊗{}",
                self.ctx.basis_string(a),
                self.ctx.basis_string(b)
            );
            write_coef_term(f, k == 0, c, &body, false)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
