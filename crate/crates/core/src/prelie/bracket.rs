//! Lie brackets: the antisymmetrized preLie product and the Faà di Bruno bracket.

use std::collections::BTreeMap;
use std::fmt;

use super::{BilinearProduct, PreLieError};
use crate::algebra::{Element, Scalar};

/// `[a,b] = a∙b − b∙a`.
pub fn lie_bracket(
    p: &(impl BilinearProduct + ?Sized),
    a: &Element,
    b: &Element,
) -> Result<Element, PreLieError> {
    Ok(p.product(a, b)?.sub(&p.product(b, a)?)?)
}

/// A finite combination of the abstract basis `(e_n)_{n≥1}`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct FdbVector {
    terms: BTreeMap<u64, Scalar>,
}

impl FdbVector {
    pub fn basis(n: u64) -> Self {
        let mut v = FdbVector::default();
        v.add_term(n, Scalar::one());
        v
    }

    pub fn add_term(&mut self, n: u64, c: Scalar) {
        let e = self.terms.entry(n).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn coefficient(&self, n: u64) -> Scalar {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_scaled(&mut self, other: &FdbVector, c: &Scalar) {
        for (&n, x) in &other.terms {
            self.add_term(n, x * c);
        }
    }

    /// Bilinear extension of [`fdb_bracket`].
    pub fn bracket(&self, other: &FdbVector) -> FdbVector {
        let mut out = FdbVector::default();
        for (&k, x) in &self.terms {
            for (&l, y) in &other.terms {
                let c = Scalar::from_int(k as i64 - l as i64) * x * y;
                out.add_term(k + l, c);
            }
        }
        out
    }
}

impl fmt::Display for FdbVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "e{n}")?;
            } else {
                write!(f, "{mag}*e{n}")?;
            }
        }
        Ok(())
    }
}

/// `[e_k, e_l] = (k − l) e_{k+l}` in the Faà di Bruno Lie algebra.
pub fn fdb_bracket(k: i64, l: i64) -> Result<FdbVector, PreLieError> {
    for i in [k, l] {
        if i < 1 {
            return Err(PreLieError::IndexError(i));
        }
    }
    Ok(FdbVector::basis(k as u64).bracket(&FdbVector::basis(l as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fdb_values() {
        assert_eq!(fdb_bracket(1, 2).unwrap().to_string(), "-e3");
        assert!(fdb_bracket(4, 4).unwrap().is_zero());
        assert_eq!(fdb_bracket(3, 1).unwrap().to_string(), "2*e4");
        assert!(matches!(fdb_bracket(0, 1), Err(PreLieError::IndexError(0))));
    }

    #[test]
    fn fdb_jacobi() {
        let d = 7u64;
        for a in 1..=d {
            for b in 1..=d {
                for c in 1..=d {
                    if a + b + c > d {
                        continue;
                    }
                    let (ea, eb, ec) = (FdbVector::basis(a), FdbVector::basis(b), FdbVector::basis(c));
                    let mut s = ea.bracket(&eb.bracket(&ec));
                    s.add_scaled(&eb.bracket(&ec.bracket(&ea)), &Scalar::one());
                    s.add_scaled(&ec.bracket(&ea.bracket(&eb)), &Scalar::one());
                    assert!(s.is_zero());
                }
            }
        }
    }
}
