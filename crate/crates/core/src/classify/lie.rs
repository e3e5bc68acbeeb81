//! Lie algebras of the graded products on `K[X]`: normalization against the
//! Faà di Bruno algebra `[e_k, e_l] = (k − l)e_{k+l}`.

use serde::Serialize;

use super::ClassifyError;
use crate::algebra::{AlgebraCtx, Element, Scalar};
use crate::prelie::{lie_bracket, PreLieStructure, Variant};
use crate::verify::{Report, Witness};

fn x_pow(k: u32) -> Element {
    let p = AlgebraCtx::Polynomial;
    Element::basis(&p, p.x_pow(k as i64))
}

struct Counter {
    count: u64,
}

impl Counter {
    /// Counts one comparison; `Some(report)` on mismatch.
    fn compare(&mut self, identity: &str, inputs: [Element; 2], lhs: Element, rhs: Element) -> Option<Report> {
        self.count += 1;
        (lhs != rhs).then(|| {
            Report::fail(
                self.count,
                Witness {
                    identity: identity.into(),
                    inputs: inputs.into_iter().map(Into::into).collect(),
                    lhs: lhs.into(),
                    rhs: rhs.into(),
                },
            )
        })
    }
}

/// The normalized `e_k`: `((k+b)/(Na))X^{kN}` for `g1` and `X^{kN}/(Nμ)`
/// for `g3`; `None` for other families.
pub fn prop9_normalization(s: &PreLieStructure, k: u32) -> Option<Element> {
    let (n, c) = match s.variant() {
        Variant::KxG1 { n, a, b, .. } => {
            (*n, (Scalar::from_int(k as i64) + b) / &(Scalar::from_int(*n as i64) * a))
        }
        Variant::KxG3 { n, mu, .. } => (*n, (Scalar::from_int(*n as i64) * mu).recip().ok()?),
        _ => return None,
    };
    Some(x_pow(k * n).scale(&c))
}

/// Checks the Lie structure of the positive-degree part up to degree
/// `max_degree`:
///
/// * `g1`, `g3`: `[e_k, e_l] = (k−l)e_{k+l}` for the normalized `e_k`,
///   `[X^{kN+i}, e_l] = (k + i/N)X^{(k+l)N+i}` for `0 < i < N`, and the
///   non-multiples of `N` commute;
/// * `g2`: `[X^k, X^l] = 0` for `k, l ≠ N` and `[X^k, X^N/μ] = kX^{k+N}`;
/// * `g4`: all positive brackets vanish.
pub fn prop9_structure_check(s: &PreLieStructure, max_degree: u32) -> Result<Report, ClassifyError> {
    let d = max_degree;
    let mut c = Counter { count: 0 };
    let br = |a: &Element, b: &Element| lie_bracket(s, a, b);
    match s.variant() {
        Variant::KxG1 { n, .. } | Variant::KxG3 { n, .. } => {
            let n = *n;
            let e = |k: u32| prop9_normalization(s, k).expect("g1 or g3");
            for k in 1..=d / n {
                for l in 1..=d / n {
                    if (k + l) * n > d {
                        continue;
                    }
                    let lhs = br(&e(k), &e(l))?;
                    let rhs = e(k + l).scale(&Scalar::from_int(k as i64 - l as i64));
                    if let Some(r) = c.compare("fdb-bracket", [e(k), e(l)], lhs, rhs) {
                        return Ok(r);
                    }
                }
            }
            for i in 1..n {
                for k in 0..=d / n {
                    for l in 1..=d / n {
                        let deg = (k + l) * n + i;
                        if deg > d {
                            continue;
                        }
                        let x = x_pow(k * n + i);
                        let lhs = br(&x, &e(l))?;
                        let w = Scalar::from_int(k as i64) + Scalar::ratio(i as i64, n as i64);
                        let rhs = x_pow(deg).scale(&w);
                        if let Some(r) = c.compare("module-weight", [x, e(l)], lhs, rhs) {
                            return Ok(r);
                        }
                    }
                }
            }
            for p in (1..=d).filter(|p| p % n != 0) {
                for q in (1..=d - p).filter(|q| q % n != 0) {
                    let (xp, xq) = (x_pow(p), x_pow(q));
                    let lhs = br(&xp, &xq)?;
                    if let Some(r) = c.compare("abelian", [xp, xq], lhs, Element::zero(&AlgebraCtx::Polynomial)) {
                        return Ok(r);
                    }
                }
            }
        }
        Variant::KxG2 { n, mu, .. } => {
            let n = *n;
            let en = x_pow(n).scale(&mu.recip().map_err(crate::prelie::PreLieError::from)?);
            for p in (1..=d).filter(|&p| p != n) {
                for q in (1..=d - p).filter(|&q| q != n) {
                    let (xp, xq) = (x_pow(p), x_pow(q));
                    let lhs = br(&xp, &xq)?;
                    if let Some(r) = c.compare("abelian", [xp, xq], lhs, Element::zero(&AlgebraCtx::Polynomial)) {
                        return Ok(r);
                    }
                }
                if p + n <= d {
                    let xp = x_pow(p);
                    let lhs = br(&xp, &en)?;
                    let rhs = x_pow(p + n).scale(&Scalar::from_int(p as i64));
                    if let Some(r) = c.compare("module-weight", [xp, en.clone()], lhs, rhs) {
                        return Ok(r);
                    }
                }
            }
        }
        Variant::KxG4 { .. } => {
            for p in 1..=d {
                for q in 1..=d - p {
                    let (xp, xq) = (x_pow(p), x_pow(q));
                    let lhs = br(&xp, &xq)?;
                    if let Some(r) = c.compare("abelian", [xp, xq], lhs, Element::zero(&AlgebraCtx::Polynomial)) {
                        return Ok(r);
                    }
                }
            }
        }
        _ => {
            return Err(ClassifyError::InvalidInput(
                "the structure check applies to the graded K[X] families".into(),
            ))
        }
    }
    Ok(Report::pass(c.count))
}

/// The basis `f_n = Σ_{i≤n} c_{n,i} Y_i` (`Y_i = X^i/λ`) with
/// `[f_n, f_1] = (n−1)f_n` for the bracket of `g′(λ, μ)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LieBasisChange {
    pub lambda: Scalar,
    pub mu: Scalar,
    /// `rows[n−1]` holds `c_{n,1}, …, c_{n,n}`; the last entry is 1.
    pub rows: Vec<Vec<Scalar>>,
}

impl LieBasisChange {
    pub fn max_index(&self) -> usize {
        self.rows.len()
    }

    /// `f_n` as an element of `K[X]`.
    pub fn element(&self, n: usize) -> Element {
        let p = AlgebraCtx::Polynomial;
        let inv = self.lambda.recip().expect("λ ≠ 0");
        let mut out = Element::zero(&p);
        for (i, c) in self.rows[n - 1].iter().enumerate() {
            out.add_term(p.x_pow(i as i64 + 1), c * &inv);
        }
        out
    }

    pub fn is_unitriangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.len() == i + 1 && r[i].is_one())
    }
}

/// Solves `[f_n, f_1] = (n−1)f_n` in `Vect(Y_1, …, Y_n)` for `n ≤ max_index`,
/// where `M(x) = [x, Y_1]` is triangular with diagonal `0, 1, …, n−1`, then
/// checks `[f_k, f_l] = (k−l)f_{k+l−1}` for all `k + l − 1 ≤ max_index`.
pub fn prop16_basis(
    lambda: &Scalar,
    mu: &Scalar,
    max_index: u32,
) -> Result<(LieBasisChange, Report), ClassifyError> {
    if lambda.is_zero() {
        return Err(ClassifyError::InvalidInput("λ must be nonzero".into()));
    }
    let d = max_index as usize;
    let s = PreLieStructure::gprime(lambda.clone(), mu.clone());
    let inv = lambda.recip().expect("nonzero");
    let y = |k: usize| x_pow(k as u32).scale(&inv);
    // m[j][i]: coefficient of Y_{i+1} in [Y_{j+1}, Y_1].
    let mut m = Vec::with_capacity(d);
    for j in 1..=d {
        let b = lie_bracket(&s, &y(j), &y(1))?;
        let mut col = vec![Scalar::zero(); d];
        for (basis, c) in b.terms() {
            let i = basis.mono.exponent(0) as usize;
            if i == 0 || i > j {
                return Err(ClassifyError::SingularSystem(format!(
                    "[Y_{j}, Y_1] leaves Vect(Y_1..Y_{j})"
                )));
            }
            col[i - 1] = c * lambda;
        }
        if col[j - 1] != Scalar::from_int(j as i64 - 1) {
            return Err(ClassifyError::SingularSystem(format!("diagonal entry {j} is not {}", j - 1)));
        }
        m.push(col);
    }
    let mut rows = Vec::with_capacity(d);
    for n in 1..=d {
        let mut c = vec![Scalar::zero(); n];
        c[n - 1] = Scalar::one();
        for i in (1..n).rev() {
            let acc: Scalar = (i + 1..=n).map(|j| &m[j - 1][i - 1] * &c[j - 1]).sum();
            c[i - 1] = acc / &Scalar::from_int((n - i) as i64);
        }
        rows.push(c);
    }
    let change = LieBasisChange {
        lambda: lambda.clone(),
        mu: mu.clone(),
        rows,
    };
    let mut counter = Counter { count: 0 };
    for k in 1..=d {
        for l in 1..=d {
            if k + l - 1 > d {
                continue;
            }
            let (fk, fl) = (change.element(k), change.element(l));
            let lhs = lie_bracket(&s, &fk, &fl)?;
            let rhs = change.element(k + l - 1).scale(&Scalar::from_int(k as i64 - l as i64));
            if let Some(r) = counter.compare("prop16-bracket", [fk, fl], lhs, rhs) {
                return Ok((change, r));
            }
        }
    }
    Ok((change, Report::pass(counter.count)))
}
