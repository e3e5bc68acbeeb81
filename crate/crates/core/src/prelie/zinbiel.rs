//! The half-shuffle (Zinbiel) product on `K[X]`.

use super::PreLieError;
use crate::algebra::element::same_ctx;
use crate::algebra::{AlgebraCtx, Element, Scalar};

/// `X^i ≺ X^j = i/(i+j) X^{i+j}`, with `a≺1 = a` and `1≺a = 0` on the
/// augmentation ideal; `1≺1` is undefined.
pub fn zinbiel(a: &Element, b: &Element) -> Result<Element, PreLieError> {
    same_ctx(a.ctx(), b.ctx())?;
    if *a.ctx() != AlgebraCtx::Polynomial {
        return Err(PreLieError::WrongContext(
            "the half-shuffle product lives on K[X]".into(),
        ));
    }
    let ctx = a.ctx().clone();
    a.try_bilinear(b, |x, y| {
        let i = x.mono.exponent(0);
        let j = y.mono.exponent(0);
        if i == 0 && j == 0 {
            return Err(PreLieError::UndefinedOnUnits);
        }
        Ok(Element::term(
            &ctx,
            ctx.x_pow((i + j) as i64),
            Scalar::ratio(i as i64, (i + j) as i64),
        ))
    })
}
