//! Structured outcome of a condition check.

use serde::Serialize;

/// Either a certificate that the condition holds or a counter-certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Verdict<C, F> {
    Holds(C),
    Fails(F),
}

impl<C, F> Verdict<C, F> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            Verdict::Holds(c) => Some(c),
            Verdict::Fails(_) => None,
        }
    }

    pub fn counterexample(&self) -> Option<&F> {
        match self {
            Verdict::Holds(_) => None,
            Verdict::Fails(f) => Some(f),
        }
    }
}
