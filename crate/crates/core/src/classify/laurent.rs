//! Products on `K[X, X⁻¹]`: `X^k∙X^l = k a_l (X^k − X^{k+l})`, classified from
//! the coefficients `a_l` on a window `|l| ≤ D`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ClassifyError;
use crate::algebra::{AlgebraCtx, Element, Scalar};
use crate::prelie::{laurent3_coefficient, BilinearProduct, PreLieStructure};
use crate::verify::Witness;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum LaurentTag {
    Zero,
    Case2 {
        k0: i64,
        a: Scalar,
    },
    Case3 {
        n: u32,
        alpha: Scalar,
        beta: Scalar,
    },
    /// `a_{h+k}(a_k h − a_h k) = a_h a_k (h − k)` fails at `(h, k)`; `(0, 0)`
    /// flags a nonzero `a_0`.
    Inconsistent {
        h: i64,
        k: i64,
    },
}

impl LaurentTag {
    /// The structure this tag names, with Case-3 tables tabulated on `radius`.
    pub fn to_structure(&self, radius: u32) -> Option<PreLieStructure> {
        match self {
            LaurentTag::Zero => Some(zero_laurent()),
            LaurentTag::Case2 { k0, a } => PreLieStructure::laurent_case2(*k0, a.clone()).ok(),
            LaurentTag::Case3 { n, alpha, beta } => {
                PreLieStructure::laurent_case3(*n, alpha.clone(), beta.clone(), radius).ok()
            }
            LaurentTag::Inconsistent { .. } => None,
        }
    }

    /// `a_l` for this family, `None` for `Inconsistent` or an undefined
    /// Case-3 coefficient.
    pub fn coefficient(&self, l: i64) -> Option<Scalar> {
        match self {
            LaurentTag::Zero => Some(Scalar::zero()),
            LaurentTag::Case2 { k0, a } => Some(if l == *k0 { a.clone() } else { Scalar::zero() }),
            LaurentTag::Case3 { n, alpha, beta } => laurent3_coefficient(*n, alpha, beta, l).ok(),
            LaurentTag::Inconsistent { .. } => None,
        }
    }
}

/// The zero product, carried by an empty Laurent table.
fn zero_laurent() -> PreLieStructure {
    use crate::algebra::GroupSpec;
    use crate::prelie::{GroupLambdaTable, Variant};
    PreLieStructure::unchecked(Variant::LaurentCase2 {
        k0: 1,
        a: Scalar::zero(),
        table: GroupLambdaTable::zero(&GroupSpec::integers()),
    })
}

impl fmt::Display for LaurentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentTag::Zero => write!(f, "zero"),
            LaurentTag::Case2 { k0, a } => write!(f, "case2 k0={k0} a={a}"),
            LaurentTag::Case3 { n, alpha, beta } => {
                write!(f, "case3 N={n} alpha={alpha} beta={beta}")
            }
            LaurentTag::Inconsistent { h, k } => write!(f, "inconsistent h={h} k={k}"),
        }
    }
}

/// A window of coefficients `a_l`, `|l| ≤ D`; missing entries are zero.
struct Window<'a> {
    a: &'a BTreeMap<i64, Scalar>,
    radius: i64,
}

impl Window<'_> {
    fn get(&self, l: i64) -> Scalar {
        self.a.get(&l).cloned().unwrap_or_default()
    }

    fn contains(&self, l: i64) -> bool {
        l.abs() <= self.radius
    }

    /// Both sides of the quadratic relation at `(h, k)`.
    fn sides(&self, h: i64, k: i64) -> (Scalar, Scalar) {
        let (ah, ak) = (self.get(h), self.get(k));
        let (hs, ks) = (Scalar::from_int(h), Scalar::from_int(k));
        let lhs = self.get(h + k) * (&ak * &hs - &ah * &ks);
        let rhs = &ah * &ak * Scalar::from_int(h - k);
        (lhs, rhs)
    }

    fn fails(&self, h: i64, k: i64) -> bool {
        let all_in = [h, k, h + k].iter().all(|&x| self.contains(x));
        if !all_in || h + k == 0 {
            return false;
        }
        let (l, r) = self.sides(h, k);
        l != r
    }

    fn first_failure(&self) -> Option<(i64, i64)> {
        let r = self.radius;
        (-r..=r)
            .flat_map(|h| (-r..=r).map(move |k| (h, k)))
            .find(|&(h, k)| self.fails(h, k))
    }
}

/// The shape of one half-line `(a_{±n})_{n ≥ 1}`.
#[derive(Clone, Debug)]
enum Side {
    Zero,
    Single { n: i64 },
    Family { n: i64, b1: Scalar, b2: Scalar },
}

fn side(w: &Window<'_>, sign: i64) -> Side {
    let Some(n) = (1..=w.radius).find(|&n| !w.get(sign * n).is_zero()) else {
        return Side::Zero;
    };
    let b2 = if w.contains(2 * n) { w.get(sign * 2 * n) } else { Scalar::zero() };
    if b2.is_zero() {
        Side::Single { n }
    } else {
        Side::Family {
            n,
            b1: w.get(sign * n),
            b2,
        }
    }
}

/// Follows the proof of the classification on `K[X, X⁻¹]`: the quadratic
/// relation is checked on the window, each half-line is read as zero, a
/// single nonzero coefficient, or the rational family through `b₁ = a_N`,
/// `b₂ = a_{2N}`, and the two halves are combined. Impossible combinations
/// are reported with the pair the proof uses to rule them out.
///
/// A half-line whose first nonzero index `N` has `2N` outside the window is
/// read as a single coefficient.
pub fn classify_laurent_window(a: &BTreeMap<i64, Scalar>, radius: u32) -> LaurentTag {
    let w = Window {
        a,
        radius: radius as i64,
    };
    if !w.get(0).is_zero() {
        return LaurentTag::Inconsistent { h: 0, k: 0 };
    }
    let inconsistent = |h: i64, k: i64| LaurentTag::Inconsistent { h, k };
    let designated = |h: i64, k: i64| {
        if w.fails(h, k) {
            Some(inconsistent(h, k))
        } else {
            w.first_failure().map(|(h, k)| inconsistent(h, k))
        }
    };
    let (pos, neg) = (side(&w, 1), side(&w, -1));
    let first = |s: &Side| match s {
        Side::Zero => None,
        Side::Single { n } | Side::Family { n, .. } => Some(*n),
    };
    // Both halves nonzero forces the same N.
    if let (Some(n), Some(m)) = (first(&pos), first(&neg)) {
        if n != m {
            let pair = if m > n { (-m, n) } else { (n, -m) };
            if let Some(t) = designated(pair.0, pair.1) {
                return t;
            }
        }
    }
    let ruled_out = match (&pos, &neg) {
        (Side::Single { n }, Side::Single { .. }) => Some((*n, -2 * n)),
        (Side::Family { n, .. }, Side::Zero | Side::Single { .. }) => Some((3 * n, -2 * n)),
        (Side::Zero | Side::Single { .. }, Side::Family { n, .. }) => Some((-3 * n, 2 * n)),
        _ => None,
    };
    if let Some((h, k)) = ruled_out {
        if let Some(t) = designated(h, k) {
            return t;
        }
    }
    if let Some((h, k)) = w.first_failure() {
        return inconsistent(h, k);
    }
    let tag = match (&pos, &neg) {
        (Side::Zero, Side::Zero) => LaurentTag::Zero,
        (Side::Single { n }, Side::Zero) => LaurentTag::Case2 {
            k0: *n,
            a: w.get(*n),
        },
        (Side::Zero, Side::Single { n }) => LaurentTag::Case2 {
            k0: -n,
            a: w.get(-n),
        },
        (Side::Family { n, b1, b2 }, _) => LaurentTag::Case3 {
            n: *n as u32,
            alpha: b1.clone(),
            beta: b2.clone(),
        },
        (_, Side::Family { n, b1, b2 }) => {
            // Only the negative half is visible as a family: solve for the
            // positive parameters from a_{−N} = −αβ/(2α−3β),
            // a_{−2N} = −αβ/(3α−4β), i.e. 1/a_{−N} = 3/α − 2/β and
            // 1/a_{−2N} = 4/α − 3/β.
            let (p, q) = (b1.recip(), b2.recip());
            let (Ok(p), Ok(q)) = (p, q) else {
                return inconsistent(-n, -n);
            };
            let inv_alpha = Scalar::from_int(3) * &p - Scalar::from_int(2) * &q;
            let inv_beta = Scalar::from_int(4) * &p - Scalar::from_int(3) * &q;
            match (inv_alpha.recip(), inv_beta.recip()) {
                (Ok(alpha), Ok(beta)) => LaurentTag::Case3 {
                    n: *n as u32,
                    alpha,
                    beta,
                },
                _ => return inconsistent(-n, -2 * n),
            }
        }
        // Handled above.
        (Side::Single { n }, Side::Single { .. }) => return inconsistent(*n, -2 * n),
    };
    // Rebuild over the window; a disagreement the quadratic relation did not
    // expose means the window is too small to separate the cases.
    for l in -w.radius..=w.radius {
        match tag.coefficient(l) {
            Some(v) if v == w.get(l) => {}
            _ => {
                let n = first(&pos).or(first(&neg)).unwrap_or(1);
                return inconsistent(l, -n);
            }
        }
    }
    tag
}

/// Reads `a_l` (`|l| ≤ radius`) from `X∙X^l = a_l (X − X^{1+l})` and checks
/// that `X^k∙X^l = k a_l (X^k − X^{k+l})` for all `|k|, |l| ≤ radius`.
/// `a_0` cannot be observed and is taken to be zero.
pub fn laurent_window(
    oracle: &dyn BilinearProduct,
    radius: u32,
) -> Result<BTreeMap<i64, Scalar>, ClassifyError> {
    let ctx = AlgebraCtx::Laurent;
    if *oracle.ctx() != ctx {
        return Err(ClassifyError::InvalidInput(
            "extraction needs a product on K[X, X⁻¹]".into(),
        ));
    }
    let r = radius as i64;
    let x = |k: i64| Element::basis(&ctx, ctx.x_pow(k));
    let mut a = BTreeMap::new();
    for l in -r..=r {
        if l != 0 {
            let v = oracle.product(&x(1), &x(l))?.coefficient(&ctx.x_pow(1));
            a.insert(l, v);
        }
    }
    for k in -r..=r {
        for l in -r..=r {
            let c = Scalar::from_int(k) * a.get(&l).cloned().unwrap_or_default();
            let mut expected = Element::zero(&ctx);
            expected.add_term(ctx.x_pow(k), c.clone());
            expected.add_term(ctx.x_pow(k + l), -c);
            let got = oracle.product(&x(k), &x(l))?;
            if got != expected {
                return Err(ClassifyError::OracleInconsistent(Box::new(Witness {
                    identity: "laurent-shape".into(),
                    inputs: vec![x(k).into(), x(l).into()],
                    lhs: got.into(),
                    rhs: expected.into(),
                })));
            }
        }
    }
    Ok(a)
}
