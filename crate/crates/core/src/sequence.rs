use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// An ordered list of mutation vertices, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MutationSequence(Vec<usize>);

impl MutationSequence {
    pub fn new(steps: impl Into<Vec<usize>>) -> Self {
        MutationSequence(steps.into())
    }

    pub fn empty() -> Self {
        MutationSequence(Vec::new())
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, v: usize) {
        self.0.push(v);
    }

    /// Normal form with every adjacent repeated pair cancelled.
    pub fn reduced(&self) -> MutationSequence {
        reduce_sequence(&self.0)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

/// Cancels adjacent equal steps until none remain.
///
/// A single stack pass reaches the unique normal form: every cancellation
/// exposes at most one new adjacent pair, which is the stack top.
pub fn reduce_sequence(steps: &[usize]) -> MutationSequence {
    let mut out: Vec<usize> = Vec::with_capacity(steps.len());
    for &v in steps {
        if out.last() == Some(&v) {
            out.pop();
        } else {
            out.push(v);
        }
    }
    MutationSequence(out)
}

impl From<Vec<usize>> for MutationSequence {
    fn from(v: Vec<usize>) -> Self {
        MutationSequence(v)
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid mutation step {0:?}")]
pub struct ParseSequenceError(pub String);

impl FromStr for MutationSequence {
    type Err = ParseSequenceError;

    /// Parses `"0,1,2"`, `"[0, 1, 2]"` or the empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        if body.trim().is_empty() {
            return Ok(MutationSequence::empty());
        }
        body.split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<usize>().map_err(|_| ParseSequenceError(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(MutationSequence)
    }
}
