//! Graded enumeration of basis tuples.

use std::ops::ControlFlow;
use std::ops::Range;

use crate::algebra::Basis;

/// Tuples `(i₁,…,i_n)` of indices into a degree-sorted basis list with
/// `Σ deg ≤ max_degree`, enumerated by total degree and then
/// lexicographically by index — the graded-lex order in which witnesses are
/// reported.
pub struct TupleSpace {
    arity: usize,
    max_degree: u32,
    /// Minimum degree allowed at each position (1 restricts a slot to the
    /// augmentation ideal of a connected algebra).
    mins: Vec<u32>,
    buckets: Vec<Range<usize>>,
}

impl TupleSpace {
    pub fn new(bases: &[Basis], arity: usize, max_degree: u32) -> Self {
        Self::with_mins(bases, max_degree, vec![0; arity])
    }

    pub fn with_mins(bases: &[Basis], max_degree: u32, mins: Vec<u32>) -> Self {
        debug_assert!(bases.windows(2).all(|p| p[0].degree() <= p[1].degree()));
        let mut buckets = Vec::with_capacity(max_degree as usize + 1);
        let mut start = 0;
        for d in 0..=max_degree {
            let end = start + bases[start..].iter().take_while(|b| b.degree() == d).count();
            buckets.push(start..end);
            start = end;
        }
        TupleSpace {
            arity: mins.len(),
            max_degree,
            mins,
            buckets,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Calls `f` on successive chunks of at most `chunk` tuples, stored flat
    /// with stride `arity`. Stops early when `f` breaks.
    pub fn for_each_chunk<B>(
        &self,
        chunk: usize,
        mut f: impl FnMut(&[u32]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let mut buf = Vec::with_capacity(chunk * self.arity);
        let mut cur = vec![0u32; self.arity];
        for total in 0..=self.max_degree {
            self.rec(0, total, &mut cur, &mut buf, chunk, &mut f)?;
        }
        if !buf.is_empty() {
            f(&buf)?;
        }
        ControlFlow::Continue(())
    }

    fn rec<B>(
        &self,
        pos: usize,
        remaining: u32,
        cur: &mut Vec<u32>,
        buf: &mut Vec<u32>,
        chunk: usize,
        f: &mut impl FnMut(&[u32]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let rest_min: u32 = self.mins[pos + 1..].iter().sum();
        if pos + 1 == self.arity {
            if remaining < self.mins[pos] {
                return ControlFlow::Continue(());
            }
            for i in self.buckets[remaining as usize].clone() {
                cur[pos] = i as u32;
                buf.extend_from_slice(cur);
                if buf.len() == chunk * self.arity {
                    f(buf)?;
                    buf.clear();
                }
            }
            return ControlFlow::Continue(());
        }
        if remaining < self.mins[pos] + rest_min {
            return ControlFlow::Continue(());
        }
        let top = remaining - rest_min;
        for d in self.mins[pos]..=top {
            for i in self.buckets[d as usize].clone() {
                cur[pos] = i as u32;
                self.rec(pos + 1, remaining - d, cur, buf, chunk, f)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Number of tuples in the space.
    pub fn len(&self) -> u64 {
        let mut n = 0u64;
        let _ = self.for_each_chunk::<()>(1 << 14, |c| {
            n += (c.len() / self.arity) as u64;
            ControlFlow::Continue(())
        });
        n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Closed form for the number of `n`-tuples of basis elements of `KG⊗S(V)`
/// (group window of size `w`, `dim V = dim`) with total degree at most `D`:
/// `w^n · C(n·dim + D, D)`, since such tuples are monomials of degree ≤ D in
/// `n·dim` variables decorated by `n` group elements.
pub fn tuple_count(window: u128, dim: usize, arity: usize, max_degree: u32) -> u128 {
    let vars = (arity * dim) as u128;
    let d = max_degree as u128;
    let mut binom = 1u128;
    for i in 0..d {
        binom = binom * (vars + d - i) / (i + 1);
    }
    window.pow(arity as u32) * binom
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraCtx, GroupSpec};

    #[test]
    fn counts_match_closed_form() {
        let cases = [
            (AlgebraCtx::symmetric(2), 4u32, 0u32),
            (AlgebraCtx::Polynomial, 6, 0),
            (AlgebraCtx::Group(GroupSpec::new(2, &[])), 0, 2),
            (
                AlgebraCtx::Mixed {
                    group: GroupSpec::new(1, &[2]),
                    dim: 2,
                },
                2,
                1,
            ),
        ];
        for (ctx, d, r) in cases {
            let bases = ctx.basis_up_to(d, r);
            let w = if ctx.has_group() {
                ctx.group().window_size(r)
            } else {
                1
            };
            for arity in 1..=3 {
                let space = TupleSpace::new(&bases, arity, d);
                assert_eq!(space.len() as u128, tuple_count(w, ctx.dim(), arity, d));
            }
        }
    }

    #[test]
    fn graded_lex_order() {
        let bases = AlgebraCtx::Polynomial.basis_up_to(3, 0);
        let space = TupleSpace::new(&bases, 2, 3);
        let mut all = Vec::new();
        let _ = space.for_each_chunk::<()>(3, |c| {
            all.extend(c.chunks(2).map(|t| (t[0], t[1])));
            ControlFlow::Continue(())
        });
        assert_eq!(&all[..4], &[(0, 0), (0, 1), (1, 0), (0, 2)]);
        assert_eq!(all.len(), 10);
        let restricted = TupleSpace::with_mins(&bases, 3, vec![1, 1]);
        assert_eq!(restricted.len(), 3);
    }
}
