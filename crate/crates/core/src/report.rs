//! Structured outcomes of premise/conclusion verification runs.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::rings::{format_rational, ExactPower, Rational};

/// One side of a checked relation.
#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Power(ExactPower),
    Rational(Rational),
    Integer(BigInt),
    /// `exp(x)`, used for the degree-based size on polynomial rings.
    Exp(Rational),
    /// A ring element, by its display form.
    Element(String),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Power(p) => write!(f, "{p}"),
            Quantity::Rational(r) => write!(f, "{}", format_rational(r)),
            Quantity::Integer(n) => write!(f, "{n}"),
            Quantity::Exp(r) => write!(f, "exp({})", format_rational(r)),
            Quantity::Element(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "=")]
    Equal,
    /// The right side divides the left side.
    #[serde(rename = "divisible-by")]
    DivisibleBy,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::AtLeast => write!(f, ">="),
            Relation::Equal => write!(f, "="),
            Relation::DivisibleBy => write!(f, "divisible by"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Conclusion {
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub relation: Relation,
    /// Exact order of `lhs` against `rhs` where the sides are comparable.
    pub ordering: Option<Ordering>,
    pub holds: bool,
}

impl Conclusion {
    pub fn at_least(lhs: Quantity, rhs: Quantity, ordering: Ordering) -> Self {
        Self {
            lhs,
            rhs,
            relation: Relation::AtLeast,
            ordering: Some(ordering),
            holds: ordering != Ordering::Less,
        }
    }

    pub fn equal(lhs: Quantity, rhs: Quantity, ordering: Option<Ordering>, holds: bool) -> Self {
        Self {
            lhs,
            rhs,
            relation: Relation::Equal,
            ordering,
            holds,
        }
    }

    pub fn divisible_by(lhs: BigInt, rhs: BigInt) -> Self {
        let holds = num_traits::Zero::is_zero(&(&lhs % &rhs));
        Self {
            lhs: Quantity::Integer(lhs),
            rhs: Quantity::Integer(rhs),
            relation: Relation::DivisibleBy,
            ordering: None,
            holds,
        }
    }

    /// Equality attains the bound.
    pub fn is_tight(&self) -> bool {
        self.ordering == Some(Ordering::Equal)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Premise {
    pub description: String,
    pub pass: bool,
}

/// An extremal configuration, e.g. the pair realising a supremum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub items: Vec<String>,
}

impl Witness {
    pub fn new(label: impl Into<String>, items: impl IntoIterator<Item = impl ToString>) -> Self {
        Self {
            label: label.into(),
            items: items.into_iter().map(|x| x.to_string()).collect(),
        }
    }
}

/// Outcome of one verification. A report passes when every premise passes,
/// the main conclusion (if asserted) holds, and every auxiliary conclusion
/// holds. A missing conclusion with passing premises is a vacuous pass.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub premises: Vec<Premise>,
    pub conclusion: Option<Conclusion>,
    pub witness: Option<Witness>,
    /// Additional named conclusions asserted by the same run.
    pub auxiliary: Vec<(String, Conclusion)>,
    /// Named values echoed for context (exponents, counts, constants).
    pub notes: Vec<(String, String)>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            premises: Vec::new(),
            conclusion: None,
            witness: None,
            auxiliary: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn premise(&mut self, description: impl Into<String>, pass: bool) -> &mut Self {
        self.premises.push(Premise {
            description: description.into(),
            pass,
        });
        self
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.notes.push((key.into(), value.to_string()));
        self
    }

    pub fn premises_hold(&self) -> bool {
        self.premises.iter().all(|p| p.pass)
    }

    pub fn passed(&self) -> bool {
        self.premises_hold()
            && self.conclusion.as_ref().is_none_or(|c| c.holds)
            && self.auxiliary.iter().all(|(_, c)| c.holds)
    }

    pub fn note_value(&self, key: &str) -> Option<&str> {
        self.notes
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

pub fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.name)?;
        if let Some(c) = &self.conclusion {
            write!(f, ": {} {} {}", c.lhs, c.relation, c.rhs)?;
        } else if !self.premises.is_empty() {
            let held = self.premises.iter().filter(|p| p.pass).count();
            write!(f, ": {held}/{} premises hold", self.premises.len())?;
        }
        Ok(())
    }
}

/// Serializes through `Display`, keeping big integers exact as strings.
pub fn serialize_display<T: fmt::Display, S: serde::Serializer>(
    value: &T,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}
