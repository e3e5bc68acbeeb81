//! Sparse commutative monomials `x₁^{α₁}⋯x_n^{α_n}` over anonymous basis indices.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;

/// A monomial of `S(V)`, stored as `(index, exponent)` pairs sorted by index
/// with every exponent positive. The empty monomial is the unit `1`.
///
/// `Ord` is the canonical printing order: higher total degree first, then
/// lexicographically larger exponent vectors first (`x1^2 < x1*x2 < x2^2`).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The single variable `x_{index}` (0-based).
    pub fn var(index: u32) -> Self {
        Monomial {
            exps: vec![(index, 1)],
        }
    }

    pub fn var_pow(index: u32, exp: u32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Monomial {
                exps: vec![(index, exp)],
            }
        }
    }

    /// Builds from a dense exponent vector.
    pub fn from_dense(exps: &[u32]) -> Self {
        Monomial {
            exps: exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i as u32, e))
                .collect(),
        }
    }

    /// Builds from arbitrary `(index, exponent)` pairs, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut v: Vec<(u32, u32)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_unstable();
        let mut exps: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (i, e) in v {
            match exps.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => exps.push((i, e)),
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, index: u32) -> u32 {
        self.exps
            .binary_search_by_key(&index, |p| p.0)
            .map(|k| self.exps[k].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.exps
    }

    /// Largest index used plus one (0 for the unit).
    pub fn span(&self) -> u32 {
        self.exps.last().map(|p| p.0 + 1).unwrap_or(0)
    }

    pub fn to_dense(&self, dim: usize) -> Vec<u32> {
        let mut d = vec![0; dim];
        for &(i, e) in &self.exps {
            d[i as usize] = e;
        }
        d
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(i, e) in &self.exps {
            let mut e = e;
            if j < other.exps.len() && other.exps[j].0 == i {
                if other.exps[j].1 > e {
                    return None;
                }
                e -= other.exps[j].1;
                j += 1;
            } else if j < other.exps.len() && other.exps[j].0 < i {
                return None;
            }
            if e > 0 {
                out.push((i, e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial { exps: out })
    }

    /// Every divisor `β ≤ α` together with the multinomial weight `∏ C(αᵢ, βᵢ)`.
    ///
    /// Divisors come out in a fixed order (lexicographic on the exponent
    /// vector, smallest first), starting with `1` and ending with `self`.
    pub fn divisors(&self) -> Vec<(Monomial, Scalar)> {
        let mut out = vec![(Vec::new(), Scalar::one())];
        for &(i, e) in &self.exps {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for (prefix, w) in &out {
                for b in 0..=e {
                    let mut p: Vec<(u32, u32)> = prefix.clone();
                    if b > 0 {
                        p.push((i, b));
                    }
                    next.push((p, w * &Scalar::binomial(e, b)));
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|(exps, w)| (Monomial { exps }, w))
            .collect()
    }

    /// All monomials in `dim` variables of total degree exactly `deg`, in
    /// canonical order.
    pub fn all_of_degree(dim: usize, deg: u32) -> Vec<Monomial> {
        fn rec(dim: usize, idx: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if idx + 1 == dim {
                cur.push(left);
                out.push(Monomial::from_dense(cur));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                rec(dim, idx + 1, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            if deg == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(dim, 0, deg, &mut Vec::new(), &mut out);
        out
    }

    /// Prints with variables `x1, x2, …` (or the given single-letter name
    /// when `single` is set, for one-variable contexts).
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, single: Option<&str>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, &(i, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            match single {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "x{}", i + 1)?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.exps.get(i), other.exps.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(a), Some(b)) => {
                        if a.0 != b.0 {
                            // The one using the smaller index has the larger
                            // exponent there, so it comes first.
                            return a.0.cmp(&b.0);
                        }
                        if a.1 != b.1 {
                            return b.1.cmp(&a.1);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, None)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, None)
    }
}
