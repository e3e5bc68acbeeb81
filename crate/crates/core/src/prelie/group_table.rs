//! Coefficient families `λ(g,h)` and group morphisms `G → (K,+)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::PreLieError;
use crate::algebra::{GroupElement, GroupSpec, Scalar};

/// A group morphism `G → (K,+)`, stored by its values on free generators.
/// Torsion generators necessarily map to zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupMorphism {
    group: GroupSpec,
    values: Vec<Scalar>,
}

impl GroupMorphism {
    /// `values` lists one scalar per free generator, optionally followed by
    /// values for torsion generators, which must all be zero.
    pub fn new(group: &GroupSpec, values: Vec<Scalar>) -> Result<Self, PreLieError> {
        if values.len() != group.rank && values.len() != group.generator_count() {
            return Err(PreLieError::InvalidParameter(format!(
                "morphism needs {} generator values, got {}",
                group.rank,
                values.len()
            )));
        }
        if let Some(i) = values[group.rank..].iter().position(|v| !v.is_zero()) {
            return Err(PreLieError::InvalidParameter(format!(
                "torsion generator {} must map to 0 in characteristic zero",
                group.rank + i
            )));
        }
        let mut values = values;
        values.truncate(group.rank);
        Ok(GroupMorphism {
            group: group.clone(),
            values,
        })
    }

    pub fn zero(group: &GroupSpec) -> Self {
        GroupMorphism {
            group: group.clone(),
            values: vec![Scalar::zero(); group.rank],
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn eval(&self, g: &GroupElement) -> Scalar {
        self.values
            .iter()
            .zip(&g.free)
            .map(|(v, &x)| v * &Scalar::from_int(x))
            .sum()
    }
}

/// The family `λ(g,h)`, stored on (free generator, second argument) pairs and
/// extended additively in the first argument.
///
/// A table is either finitely supported (`radius = None`: every unlisted
/// value is zero) or declared on a window of second arguments of the given L1
/// radius, in which case queries outside the window are errors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupLambdaTable {
    group: GroupSpec,
    radius: Option<u32>,
    values: BTreeMap<(usize, GroupElement), Scalar>,
}

impl GroupLambdaTable {
    /// Builds a table from `(generator index, h, λ(generator, h))` entries.
    /// Generator indices count free generators first, then torsion ones.
    pub fn new(
        group: &GroupSpec,
        radius: Option<u32>,
        entries: impl IntoIterator<Item = (usize, GroupElement, Scalar)>,
    ) -> Result<Self, PreLieError> {
        let mut values = BTreeMap::new();
        for (gen, h, v) in entries {
            if gen >= group.generator_count() {
                return Err(PreLieError::InvalidParameter(format!(
                    "generator index {gen} out of range"
                )));
            }
            if !group.conforms(&h) {
                return Err(PreLieError::InvalidParameter(format!(
                    "{h} is not an element of the group"
                )));
            }
            if v.is_zero() {
                continue;
            }
            if gen >= group.rank {
                return Err(PreLieError::InvalidParameter(format!(
                    "torsion generator {gen} must have all values 0 (λ(g,h) vanishes on elements of finite order)"
                )));
            }
            if h.is_identity() {
                return Err(PreLieError::InvalidParameter(format!(
                    "λ(g,1) must be 0, got {v} for generator {gen}"
                )));
            }
            if let Some(r) = radius {
                if h.l1() > r as u64 {
                    return Err(PreLieError::InvalidParameter(format!(
                        "entry {h} lies outside the declared window of radius {r}"
                    )));
                }
            }
            values.insert((gen, h), v);
        }
        Ok(GroupLambdaTable {
            group: group.clone(),
            radius,
            values,
        })
    }

    /// Tabulates `λ(generator, h)` for every `h` in the window of `radius`.
    pub fn from_fn(
        group: &GroupSpec,
        radius: u32,
        mut f: impl FnMut(usize, &GroupElement) -> Scalar,
    ) -> Result<Self, PreLieError> {
        let window = group.window(radius);
        let mut entries = Vec::new();
        for gen in 0..group.generator_count() {
            for h in &window {
                entries.push((gen, h.clone(), f(gen, h)));
            }
        }
        Self::new(group, Some(radius), entries)
    }

    /// The zero family (finitely supported).
    pub fn zero(group: &GroupSpec) -> Self {
        GroupLambdaTable {
            group: group.clone(),
            radius: None,
            values: BTreeMap::new(),
        }
    }

    /// `λ(g,h) = λ(g)·δ_{h,g₀}` for a morphism `λ`.
    pub fn prop17(morph: &GroupMorphism, g0: &GroupElement) -> Result<Self, PreLieError> {
        let group = morph.group();
        if !group.conforms(g0) {
            return Err(PreLieError::InvalidParameter(format!(
                "{g0} is not an element of the group"
            )));
        }
        if g0.is_identity() {
            return Ok(Self::zero(group));
        }
        let entries = morph
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| (i, g0.clone(), v.clone()));
        Self::new(group, None, entries)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn radius(&self) -> Option<u32> {
        self.radius
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, GroupElement), &Scalar)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether `h` may be used as a second argument.
    pub fn covers(&self, h: &GroupElement) -> bool {
        self.radius.is_none_or(|r| h.l1() <= r as u64)
    }

    /// `λ(g,h) = Σᵢ gᵢ λ(eᵢ,h)`.
    pub fn value(&self, g: &GroupElement, h: &GroupElement) -> Result<Scalar, PreLieError> {
        if let Some(r) = self.radius {
            if h.l1() > r as u64 {
                return Err(PreLieError::WindowExceeded {
                    element: h.to_string(),
                    radius: r,
                });
            }
        }
        let mut acc = Scalar::zero();
        for (i, &x) in g.free.iter().enumerate() {
            if x != 0 {
                if let Some(v) = self.values.get(&(i, h.clone())) {
                    acc += v * &Scalar::from_int(x);
                }
            }
        }
        Ok(acc)
    }

    /// A copy with one generator value replaced; used to build
    /// deliberately broken tables for negative tests.
    pub fn with_entry(&self, gen: usize, h: GroupElement, v: Scalar) -> Result<Self, PreLieError> {
        let mut entries: Vec<_> = self
            .values
            .iter()
            .filter(|((g, k), _)| !(*g == gen && *k == h))
            .map(|((g, k), x)| (*g, k.clone(), x.clone()))
            .collect();
        entries.push((gen, h, v));
        Self::new(&self.group, self.radius, entries)
    }
}

/// A triple violating the quadratic condition on `λ(g,h)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticViolation {
    pub g: GroupElement,
    pub h: GroupElement,
    pub k: GroupElement,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl GroupLambdaTable {
    /// First `g` (in window order) with `λ(g,1) ≠ 0`.
    pub fn unit_violation(&self, window: &[GroupElement]) -> Result<Option<GroupElement>, PreLieError> {
        let one = self.group.identity();
        for g in window {
            if !self.value(g, &one)?.is_zero() {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    /// First `g` (in window order) with `λ(g,g) ≠ 0`.
    pub fn diagonal_violation(&self, window: &[GroupElement]) -> Result<Option<GroupElement>, PreLieError> {
        for g in window {
            if !self.value(g, g)?.is_zero() {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    /// Checks `λ(g,hk)λ(h,k) − λ(g,h)λ(h,k) = λ(g,hk)λ(k,h) − λ(g,k)λ(k,h)` for
    /// all `g, h, k` in the window with `hk ≠ 1`, in lexicographic window
    /// order; returns the first failure and the number of triples examined.
    pub fn quadratic_scan(
        &self,
        window: &[GroupElement],
    ) -> Result<(usize, Option<QuadraticViolation>), PreLieError> {
        let mut count = 0;
        for g in window {
            for h in window {
                for k in window {
                    let hk = self.group.op(h, k);
                    if hk.is_identity() {
                        continue;
                    }
                    count += 1;
                    let l_hk = self.value(h, k)?;
                    let l_kh = self.value(k, h)?;
                    if l_hk.is_zero() && l_kh.is_zero() {
                        continue;
                    }
                    let g_hk = self.value(g, &hk)?;
                    let lhs = &(&g_hk - &self.value(g, h)?) * &l_hk;
                    let rhs = &(&g_hk - &self.value(g, k)?) * &l_kh;
                    if lhs != rhs {
                        return Ok((
                            count,
                            Some(QuadraticViolation {
                                g: g.clone(),
                                h: h.clone(),
                                k: k.clone(),
                                lhs,
                                rhs,
                            }),
                        ));
                    }
                }
            }
        }
        Ok((count, None))
    }

    pub fn quadratic_violation(
        &self,
        window: &[GroupElement],
    ) -> Result<Option<QuadraticViolation>, PreLieError> {
        Ok(self.quadratic_scan(window)?.1)
    }
}
