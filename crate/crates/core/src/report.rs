//! Structured validation reports.

use std::fmt;

use crate::scalar::{format_scalar, Scalar};
use crate::tensor::TensorElement;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Residual {
    Scalar(Scalar),
    Tensor(TensorElement),
    Note(String),
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Scalar(x) => write!(f, "{}", format_scalar(x)),
            Residual::Tensor(t) => write!(f, "{t}"),
            Residual::Note(s) => write!(f, "{s}"),
        }
    }
}

/// One failed instance of an identity: which check, at which index data,
/// and what the nonzero residual was.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub check: String,
    /// Index tuples naming the instance, in the order the check defines them.
    pub indices: Vec<Vec<usize>>,
    /// Output basis index for scalar identities, when there is one.
    pub target: Option<usize>,
    pub residual: Residual,
}

impl Violation {
    pub fn scalar(check: &str, indices: Vec<Vec<usize>>, target: Option<usize>, r: Scalar) -> Self {
        Violation {
            check: check.to_string(),
            indices,
            target,
            residual: Residual::Scalar(r),
        }
    }

    pub fn tensor(check: &str, indices: Vec<Vec<usize>>, r: TensorElement) -> Self {
        Violation {
            check: check.to_string(),
            indices,
            target: None,
            residual: Residual::Tensor(r),
        }
    }

    pub fn note(check: &str, indices: Vec<Vec<usize>>, note: impl Into<String>) -> Self {
        Violation {
            check: check.to_string(),
            indices,
            target: None,
            residual: Residual::Note(note.into()),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.check)?;
        for t in &self.indices {
            let s: Vec<String> = t.iter().map(ToString::to_string).collect();
            write!(f, " ({})", s.join(","))?;
        }
        if let Some(k) = self.target {
            write!(f, " k={k}")?;
        }
        write!(f, " residual={}", self.residual)
    }
}

/// All violations found by one or more checks. Empty means the identity holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        ValidationReport { violations }
    }

    pub fn push(&mut self, v: Violation) {
        let pos = self.violations.partition_point(|x| x <= &v);
        self.violations.insert(pos, v);
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.violations.sort();
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Violations from the named check only.
    pub fn of_check<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.check == check)
    }

    pub fn checks(&self) -> Vec<&str> {
        let mut c: Vec<&str> = self.violations.iter().map(|v| v.check.as_str()).collect();
        c.dedup();
        c
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromIterator<Violation> for ValidationReport {
    fn from_iter<I: IntoIterator<Item = Violation>>(iter: I) -> Self {
        Self::from_violations(iter.into_iter().collect())
    }
}
