//! Verification outcomes and their stable JSON shape.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{Element, Scalar, TensorElement};

/// A value appearing in a witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Element(Element),
    Tensor(TensorElement),
    Scalar(Scalar),
    /// Anything else (triple tensors, index tuples), already rendered.
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Element(e) => write!(f, "{e}"),
            Value::Tensor(t) => write!(f, "{t}"),
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<Element> for Value {
    fn from(e: Element) -> Self {
        Value::Element(e)
    }
}

impl From<TensorElement> for Value {
    fn from(t: TensorElement) -> Self {
        Value::Tensor(t)
    }
}

impl From<Scalar> for Value {
    fn from(s: Scalar) -> Self {
        Value::Scalar(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// The first failing input of a check, with both sides of the identity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub identity: String,
    pub inputs: Vec<Value>,
    pub lhs: Value,
    pub rhs: Value,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs: Vec<String> = self.inputs.iter().map(Value::to_string).collect();
        write!(
            f,
            "{} fails at ({}): lhs = {}, rhs = {}",
            self.identity,
            inputs.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

/// Pass, or fail with a witness. `checked_count` counts the inputs examined,
/// including the failing one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Report {
    pub verdict: Verdict,
    pub checked_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Report {
    pub fn pass(checked_count: u64) -> Self {
        Report {
            verdict: Verdict::Pass,
            checked_count,
            witness: None,
        }
    }

    pub fn fail(checked_count: u64, witness: Witness) -> Self {
        Report {
            verdict: Verdict::Fail,
            checked_count,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Runs checks in order, summing counts and stopping at the first failure.
    pub fn sequence<'a, E>(
        checks: impl IntoIterator<Item = Box<dyn FnOnce() -> Result<Report, E> + 'a>>,
    ) -> Result<Report, E> {
        let mut total = 0;
        for check in checks {
            let r = check()?;
            total += r.checked_count;
            if !r.passed() {
                return Ok(Report {
                    checked_count: total,
                    ..r
                });
            }
        }
        Ok(Report::pass(total))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "pass ({} checked)", self.checked_count),
            Some(w) => write!(f, "fail ({} checked)\n{w}", self.checked_count),
        }
    }
}
