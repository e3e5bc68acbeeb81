//! Recursive-descent parser for element expressions.
//!
//! ```text
//! element := term (('+'|'-') term)*
//! term    := coeff ('*' factor)* | factor ('*' factor)*
//! coeff   := int | int '/' posint
//! factor  := var ('^' int)?
//! var     := 'x' posint | 'X' | 'g' '[' intlist (';' intlist)? ']'
//! ```
//!
//! A leading sign is accepted on the first term. Expressions (used by `eval`
//! and `bracket`) additionally allow parenthesized sub-expressions and
//! coefficients in any factor position.

use std::fmt;

use comprelie_core::algebra::{AlgebraCtx, Basis, Element, GroupElement, Monomial, Scalar};
use comprelie_core::prelie::BilinearProduct;

/// Maximum parenthesis nesting accepted in expressions.
pub const MAX_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: Vec<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// A parsed expression; products are kept as lists so the root product can
/// be reinterpreted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(Scalar),
    Basis(Basis),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
}

impl Expr {
    /// Evaluates with the commutative product of the ambient algebra.
    pub fn eval(&self, ctx: &AlgebraCtx) -> Result<Element, String> {
        match self {
            Expr::Scalar(c) => Ok(Element::scalar(ctx, c.clone())),
            Expr::Basis(b) => Ok(Element::basis(ctx, b.clone())),
            Expr::Sum(terms) => {
                let mut out = Element::zero(ctx);
                for (neg, t) in terms {
                    let v = t.eval(ctx)?;
                    let c = if *neg { -Scalar::one() } else { Scalar::one() };
                    out.add_scaled(&v, &c);
                }
                Ok(out)
            }
            Expr::Product(fs) => {
                let mut acc = Element::one(ctx);
                for f in fs {
                    acc = acc.mul(&f.eval(ctx)?).map_err(|e| e.to_string())?;
                }
                Ok(acc)
            }
        }
    }

    /// Evaluates with the root product replaced by `p`, folding its factors
    /// from the left: `((f₁∙f₂)∙f₃)∙…`. Inner products stay commutative.
    pub fn eval_root_product(&self, p: &dyn BilinearProduct) -> Result<Element, String> {
        let ctx = p.ctx();
        let Expr::Product(fs) = self else {
            return Err("--prelie needs a product 'a * b' at the top level".into());
        };
        let mut it = fs.iter();
        let mut acc = it.next().expect("nonempty product").eval(ctx)?;
        for f in it {
            acc = p.product(&acc, &f.eval(ctx)?).map_err(|e| e.to_string())?;
        }
        Ok(acc)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ctx: &'a AlgebraCtx,
    expressions: bool,
    depth: usize,
}

fn err<T>(offset: usize, message: impl Into<String>, expected: &[&str]) -> Result<T, ParseError> {
    Err(ParseError {
        offset,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        message: message.into(),
    })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, what: &str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos, format!("unexpected {}", self.describe()), &[what])
        }
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(_) => {
                let ch = self.src[self.pos..].chars().next().expect("char boundary");
                format!("'{ch}'")
            }
        }
    }

    /// Digits only (no sign), as a string slice.
    fn digits(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, &self.src[start..self.pos]))
    }

    fn signed_int(&mut self, what: &str) -> Result<(usize, i64), ParseError> {
        let start = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let Some((at, d)) = self.digits() else {
            return err(self.pos, format!("unexpected {}", self.describe()), &[what]);
        };
        let v: i64 = d
            .parse()
            .map_err(|_| ParseError {
                offset: at,
                expected: vec![],
                message: format!("integer {d} is out of range"),
            })?;
        Ok((start, if neg { -v } else { v }))
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            terms.push((neg, self.term()?));
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 {
            terms.pop().expect("one term").1
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.unit(true)?];
        while self.eat(b'*') {
            factors.push(self.unit(self.expressions)?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Expr::Product(factors)
        })
    }

    fn unit(&mut self, coeff_allowed: bool) -> Result<Expr, ParseError> {
        let expected_units: &[&str] = match (self.expressions, coeff_allowed) {
            (true, _) => &["integer", "variable", "'('"],
            (false, true) => &["integer", "variable"],
            (false, false) => &["variable"],
        };
        match self.peek() {
            Some(b'(') if self.expressions => {
                let open = self.pos;
                self.pos += 1;
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return err(open, format!("parentheses nested deeper than {MAX_DEPTH}"), &[]);
                }
                let inner = self.sum()?;
                self.expect(b')', "')'")?;
                self.depth -= 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() && coeff_allowed => self.coeff(),
            Some(b'x' | b'X' | b'g') => self.factor(),
            _ => err(self.pos, format!("unexpected {}", self.describe()), expected_units),
        }
    }

    fn coeff(&mut self) -> Result<Expr, ParseError> {
        let (start, num) = self.digits().expect("peeked a digit");
        let mut text = num.to_string();
        if self.eat(b'/') {
            let Some((at, den)) = self.digits() else {
                return err(self.pos, format!("unexpected {}", self.describe()), &["positive integer"]);
            };
            if den.bytes().all(|b| b == b'0') {
                return err(at, "zero denominator", &["positive integer"]);
            }
            text = format!("{num}/{den}");
        }
        let c: Scalar = text.parse().map_err(|_| ParseError {
            offset: start,
            expected: vec![],
            message: format!("malformed number {text}"),
        })?;
        Ok(Expr::Scalar(c))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let base = self.var()?;
        if self.eat(b'^') {
            let (at, e) = self.signed_int("integer exponent")?;
            return self.power(base, e, at).map(Expr::Basis);
        }
        let _ = start;
        Ok(Expr::Basis(base))
    }

    fn var(&mut self) -> Result<Basis, ParseError> {
        let start = self.pos;
        let c = self.bytes[self.pos];
        self.pos += 1;
        let ctx = self.ctx;
        match c {
            b'x' => {
                let Some((at, d)) = self.digits_immediate() else {
                    return err(self.pos, "variable index missing", &["positive integer"]);
                };
                let i: usize = d.parse().unwrap_or(usize::MAX);
                if i == 0 || i > ctx.dim() {
                    return err(at, format!("x{d} is not a variable here (dim {})", ctx.dim()), &[]);
                }
                Ok(ctx.mono(Monomial::var(i as u32 - 1)))
            }
            b'X' => match ctx {
                AlgebraCtx::Polynomial | AlgebraCtx::Laurent => Ok(ctx.x_pow(1)),
                _ => err(start, "X is only available in K[X] and K[X, X^-1]", &[]),
            },
            _ => {
                if !ctx.has_group() {
                    return err(start, "group elements need a group context", &[]);
                }
                if self.bytes.get(self.pos) != Some(&b'[') {
                    return err(self.pos, format!("unexpected {}", self.describe()), &["'['"]);
                }
                self.pos += 1;
                let free = self.int_list()?;
                let torsion = if self.eat(b';') { self.int_list()? } else { Vec::new() };
                self.expect(b']', "']'")?;
                let group = ctx.group();
                let torsion = if torsion.is_empty() {
                    vec![0; group.torsion.len()]
                } else {
                    torsion
                };
                match group.element(free, torsion) {
                    Some(g) => Ok(ctx.group_elem(g)),
                    None => err(start, format!("not an element of a group of rank {}", group.rank), &[]),
                }
            }
        }
    }

    /// Digits directly after the current position (no whitespace), for
    /// variable indices.
    fn digits_immediate(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, &self.src[start..self.pos]))
    }

    fn int_list(&mut self) -> Result<Vec<i64>, ParseError> {
        let mut out = vec![self.signed_int("integer")?.1];
        while self.eat(b',') {
            out.push(self.signed_int("integer")?.1);
        }
        Ok(out)
    }

    fn power(&self, base: Basis, e: i64, at: usize) -> Result<Basis, ParseError> {
        let ctx = self.ctx;
        if ctx.has_group() && base.mono.is_one() {
            let group = ctx.group();
            return Ok(ctx.group_elem(group.pow(&base.group, e)));
        }
        if e < 1 {
            return err(at, "exponents must be at least 1 here", &["positive integer"]);
        }
        let e = u32::try_from(e).map_err(|_| ParseError {
            offset: at,
            expected: vec![],
            message: "exponent out of range".into(),
        })?;
        let (i, _) = base.mono.pairs()[0];
        Ok(Basis::new(base.group, Monomial::var_pow(i, e)))
    }
}

fn run<T>(
    ctx: &AlgebraCtx,
    text: &str,
    expressions: bool,
    f: impl FnOnce(&mut Parser<'_>) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut p = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
        ctx,
        expressions,
        depth: 0,
    };
    let out = f(&mut p)?;
    if p.peek().is_some() {
        let what = p.describe();
        return err(p.pos, format!("unexpected {what}"), &["'+'", "'-'", "'*'", "end of input"]);
    }
    Ok(out)
}

/// Parses the element grammar into a canonical element of `ctx`.
pub fn parse_element(ctx: &AlgebraCtx, text: &str) -> Result<Element, ParseError> {
    let expr = run(ctx, text, false, |p| p.sum())?;
    expr.eval(ctx).map_err(|message| ParseError {
        offset: 0,
        expected: vec![],
        message,
    })
}

/// Parses an expression (the element grammar plus parentheses).
pub fn parse_expr(ctx: &AlgebraCtx, text: &str) -> Result<Expr, ParseError> {
    run(ctx, text, true, |p| p.sum())
}

/// Parses a single group element `g[…]` (or `1`).
pub fn parse_group_element(ctx: &AlgebraCtx, text: &str) -> Result<GroupElement, ParseError> {
    let e = parse_element(ctx, text)?;
    match e.as_basis() {
        Some(b) if b.mono.is_one() && e.coefficient(b).is_one() => Ok(b.group.clone()),
        _ => err(0, format!("'{text}' is not a group element"), &["g[…]"]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use comprelie_core::algebra::GroupSpec;

    #[test]
    fn examples() {
        let s2 = AlgebraCtx::symmetric(2);
        let e = parse_element(&s2, "3/2*x1^2*x2 + x2").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.to_string(), "3/2*x1^2*x2 + x2");
        let l = AlgebraCtx::Laurent;
        assert_eq!(parse_element(&l, "X^-3 - X").unwrap().to_string(), "X^-3 - X");
        let m = AlgebraCtx::Mixed {
            group: GroupSpec::new(2, &[]),
            dim: 2,
        };
        let e = parse_element(&m, "g[1,0]*x1").unwrap();
        let b = e.as_basis().unwrap();
        assert_eq!(b.group.free, vec![1, 0]);
        assert_eq!(b.mono, Monomial::var(0));
    }

    #[test]
    fn canonical_round_trip() {
        let s3 = AlgebraCtx::symmetric(3);
        for text in ["0", "1", "-x3 + 1/2", "x1*x2*x3 - 7*x1^4"] {
            let e = parse_element(&s3, text).unwrap();
            assert_eq!(parse_element(&s3, &e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn errors_carry_offsets() {
        let s2 = AlgebraCtx::symmetric(2);
        let e = parse_element(&s2, "x1 + x3").unwrap_err();
        assert_eq!(e.offset, 6);
        let e = parse_element(&s2, "x1^0").unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse_element(&s2, "x1 * 3").unwrap_err();
        assert_eq!(e.offset, 5);
        assert_eq!(e.expected, ["variable"]);
        let e = parse_element(&s2, "(x1)").unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse_element(&s2, "1/0").unwrap_err();
        assert_eq!(e.offset, 2);
    }

    #[test]
    fn expressions_and_depth() {
        let s2 = AlgebraCtx::symmetric(2);
        let e = parse_expr(&s2, "x1 * (x1*x2)").unwrap();
        assert_eq!(e.eval(&s2).unwrap().to_string(), "x1^2*x2");
        let deep = format!("{}x1{}", "(".repeat(MAX_DEPTH + 1), ")".repeat(MAX_DEPTH + 1));
        assert!(parse_expr(&s2, &deep).is_err());
        let ok = format!("{}x1{}", "(".repeat(MAX_DEPTH), ")".repeat(MAX_DEPTH));
        assert!(parse_expr(&s2, &ok).is_ok());
    }
}
