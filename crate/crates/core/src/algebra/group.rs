//! Finitely generated abelian groups ℤ^r × ℤ/n₁ × … × ℤ/n_s and their elements.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// Presentation `(r; n₁,…,n_s)` of a finitely generated abelian group.
///
/// The torsion list is shared behind an `Arc` so contexts clone cheaply.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub rank: usize,
    pub torsion: Arc<[u64]>,
}

impl GroupSpec {
    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        GroupSpec {
            rank,
            torsion: torsion.into(),
        }
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::new(0, &[])
    }

    /// `ℤ`, used for Laurent polynomials.
    pub fn integers() -> Self {
        Self::new(1, &[])
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.iter().all(|&n| n == 1)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            free: vec![0; self.rank],
            torsion: vec![0; self.torsion.len()],
        }
    }

    /// Number of generators (free generators first, then torsion generators).
    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// The `i`-th generator, counting free generators first.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.identity();
        if i < self.rank {
            g.free[i] = 1;
        } else {
            let j = i - self.rank;
            g.torsion[j] = 1 % self.torsion[j];
        }
        g
    }

    /// Builds an element from raw coordinates, reducing torsion residues.
    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Option<GroupElement> {
        if free.len() != self.rank || torsion.len() != self.torsion.len() {
            return None;
        }
        let torsion = torsion
            .iter()
            .zip(self.torsion.iter())
            .map(|(&t, &n)| t.rem_euclid(n as i64) as u64)
            .collect();
        Some(GroupElement { free, torsion })
    }

    pub fn conforms(&self, g: &GroupElement) -> bool {
        g.free.len() == self.rank
            && g.torsion.len() == self.torsion.len()
            && g.torsion.iter().zip(self.torsion.iter()).all(|(&t, &n)| t < n)
    }

    /// Group law.
    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(self.torsion.iter())
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(self.torsion.iter())
                .map(|(x, n)| (n - x) % n)
                .collect(),
        }
    }

    /// `a^k` in multiplicative notation (`k·a` additively).
    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement {
            free: a.free.iter().map(|x| x * k).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(self.torsion.iter())
                .map(|(&x, &n)| ((x as i128 * k as i128).rem_euclid(n as i128)) as u64)
                .collect(),
        }
    }

    /// All elements whose free part lies in the L1 ball of radius `radius`,
    /// with every torsion residue, in ascending element order.
    pub fn window(&self, radius: u32) -> Vec<GroupElement> {
        let mut frees = vec![Vec::new()];
        for _ in 0..self.rank {
            let mut next = Vec::new();
            for prefix in &frees {
                let used: i64 = prefix.iter().map(|x: &i64| x.abs()).sum();
                let left = radius as i64 - used;
                for x in -left..=left {
                    let mut p = prefix.clone();
                    p.push(x);
                    next.push(p);
                }
            }
            frees = next;
        }
        let mut tors = vec![Vec::new()];
        for &n in self.torsion.iter() {
            let mut next = Vec::new();
            for prefix in &tors {
                for t in 0..n {
                    let mut p: Vec<u64> = prefix.clone();
                    p.push(t);
                    next.push(p);
                }
            }
            tors = next;
        }
        let mut out = Vec::with_capacity(frees.len() * tors.len());
        for f in &frees {
            for t in &tors {
                out.push(GroupElement {
                    free: f.clone(),
                    torsion: t.clone(),
                });
            }
        }
        out.sort();
        out
    }

    /// Size of [`GroupSpec::window`] without materializing it.
    pub fn window_size(&self, radius: u32) -> u128 {
        // Number of integer points in the L1 ball of radius R in ℤ^r is
        // Σ_k 2^k C(r,k) C(R,k).
        let r = self.rank as u128;
        let big_r = radius as u128;
        let mut total = 0u128;
        for k in 0..=r.min(big_r) {
            total += (1u128 << k) * binom(r, k) * binom(big_r, k);
        }
        let tors: u128 = self.torsion.iter().map(|&n| n as u128).product();
        total * tors
    }
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// An element of a [`GroupSpec`]: free coordinates and reduced torsion residues.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct GroupElement {
    pub free: Vec<i64>,
    pub torsion: Vec<u64>,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&t| t == 0)
    }

    /// L1 norm of the free part; used as the window radius of an element.
    pub fn l1(&self) -> u64 {
        self.free.iter().map(|x| x.unsigned_abs()).sum()
    }

    /// Element of `ℤ` from an integer (Laurent exponent).
    pub fn integer(k: i64) -> Self {
        GroupElement {
            free: vec![k],
            torsion: Vec::new(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g[")?;
        for (i, x) in self.free.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        if !self.torsion.is_empty() {
            write!(f, ";")?;
            for (i, t) in self.torsion.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{t}")?;
            }
        }
        write!(f, "]")
    }
}
