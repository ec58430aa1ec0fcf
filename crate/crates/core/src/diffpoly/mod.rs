//! Exact sparse differential polynomials over ℚ with the zero derivation on
//! coefficients.
//!
//! A polynomial lives in a [`Ring`], an ordered list of differential
//! indeterminates `x_0, …, x_{n-1}`. Monomials are products of derivatives
//! `x_i^(r)`; the derivation sends `x_i^(r)` to `x_i^(r+1)` and extends by
//! the Leibniz rule.

mod ext_int;
mod monomial;
mod operator;
mod poly;
mod ranking;

pub use ext_int::ExtInt;
pub use monomial::Monomial;
pub use operator::LinearOperator;
pub use poly::DiffPoly;
pub use ranking::Ranking;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

/// Name of the fresh indeterminate adjoined by pencil constructions.
pub const FRESH_VARIABLE: &str = "w";

/// Weak or strong convention for the order of a polynomial in a variable it
/// does not involve (0 and −∞ respectively).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    Weak,
    #[default]
    Strong,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Weak => "weak",
            Convention::Strong => "strong",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(Convention::Weak),
            "strong" => Ok(Convention::Strong),
            other => Err(Error::InvalidRanking(format!("unknown convention `{other}`"))),
        }
    }
}

/// The derivative `x_var^(order)`.
///
/// Field order matters: the derived `Ord` compares the order first and the
/// variable index second, which is the canonical orderly ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Derivative {
    pub order: u32,
    pub var: usize,
}

impl Derivative {
    pub fn new(var: usize, order: u32) -> Self {
        Derivative { order, var }
    }

    pub fn next(self) -> Self {
        Derivative::new(self.var, self.order + 1)
    }
}

/// An ordered list of differential indeterminates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

pub type RingRef = Arc<Ring>;

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<RingRef> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::UnknownVariable(format!("`{name}` is not an identifier")));
            }
            if names[..i].contains(name) {
                return Err(Error::UnknownVariable(format!("`{name}` declared twice")));
            }
        }
        Ok(Arc::new(Ring { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn check_var(&self, var: usize) -> Result<()> {
        if var < self.names.len() {
            Ok(())
        } else {
            Err(Error::InvalidVariable {
                index: var,
                len: self.names.len(),
            })
        }
    }

    /// The ring with one more indeterminate appended, named `base` or
    /// `base1`, `base2`, … whichever is free first.
    pub fn extended(&self, base: &str) -> (RingRef, usize) {
        let mut name = base.to_string();
        let mut k = 1;
        while self.names.contains(&name) {
            name = format!("{base}{k}");
            k += 1;
        }
        let mut names = self.names.clone();
        names.push(name);
        let index = names.len() - 1;
        (Arc::new(Ring { names }), index)
    }

    /// True when `self` is `other` with zero or more variables appended.
    pub fn extends(&self, other: &Ring) -> bool {
        self.names.len() >= other.names.len() && self.names[..other.names.len()] == other.names[..]
    }

    pub fn render_derivative(&self, d: Derivative) -> String {
        render_derivative(self.name(d.var), d.order)
    }
}

pub(crate) fn render_derivative(name: &str, order: u32) -> String {
    match order {
        0 => name.to_string(),
        1..=3 => format!("{name}{}", "'".repeat(order as usize)),
        k => format!("{name}^({k})"),
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}
