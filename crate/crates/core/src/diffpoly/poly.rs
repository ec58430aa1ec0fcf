use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Convention, Derivative, ExtInt, Monomial, Ranking, Rational, RingRef};
use crate::error::{Error, Result};

/// A differential polynomial with exact rational coefficients.
///
/// Terms are stored in a map from monomial to nonzero coefficient, so the
/// zero polynomial is the empty map and equality is structural.
#[derive(Clone)]
pub struct DiffPoly {
    ring: RingRef,
    terms: BTreeMap<Monomial, Rational>,
}

impl DiffPoly {
    pub fn zero(ring: &RingRef) -> Self {
        DiffPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        DiffPoly::constant(ring, Rational::one())
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        DiffPoly::monomial(ring, Monomial::one(), c)
    }

    pub fn integer(ring: &RingRef, c: i64) -> Self {
        DiffPoly::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// `x_var^(order)`.
    pub fn derivative(ring: &RingRef, var: usize, order: u32) -> Result<Self> {
        ring.check_var(var)?;
        Ok(DiffPoly::monomial(
            ring,
            Monomial::from_derivative(Derivative::new(var, order), 1),
            Rational::one(),
        ))
    }

    pub fn var(ring: &RingRef, var: usize) -> Result<Self> {
        DiffPoly::derivative(ring, var, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ring: &RingRef, terms: I) -> Self {
        let mut p = DiffPoly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn same_ring(&self, other: &DiffPoly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    fn check_ring(&self, other: &DiffPoly) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn checked_add(&self, other: &DiffPoly) -> Result<DiffPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffPoly) -> Result<DiffPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &DiffPoly) -> Result<DiffPoly> {
        self.check_ring(other)?;
        let mut out = DiffPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero(&self.ring);
        }
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> DiffPoly {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> DiffPoly {
        (0..exp).fold(DiffPoly::one(&self.ring), |acc, _| &acc * self)
    }

    /// The formal derivative.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            for &(d, e) in m.factors() {
                let lowered = m.with_degree(d, e - 1);
                let term = lowered.mul(&Monomial::from_derivative(d.next(), 1));
                out.add_term(term, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    pub fn derive_n(&self, k: u32) -> DiffPoly {
        (0..k).fold(self.clone(), |p, _| p.derive())
    }

    /// All derivatives occurring in the support.
    pub fn derivatives(&self) -> BTreeSet<Derivative> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(d, _)| d))
            .collect()
    }

    pub fn involves_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.involves_var(var))
    }

    /// Highest order of `var` occurring, `None` when absent.
    pub fn order_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().filter_map(|m| m.order_in(var)).max()
    }

    pub fn ord(&self, var: usize, convention: Convention) -> Result<ExtInt> {
        self.ring.check_var(var)?;
        Ok(match (self.order_in(var), convention) {
            (Some(r), _) => ExtInt::from(r),
            (None, Convention::Strong) => ExtInt::NegInf,
            (None, Convention::Weak) => ExtInt::ZERO,
        })
    }

    pub fn leader_in(&self, var: usize) -> Result<Derivative> {
        self.ring.check_var(var)?;
        self.order_in(var)
            .map(|r| Derivative::new(var, r))
            .ok_or_else(|| Error::VariableAbsent(self.ring.name(var).to_string()))
    }

    pub fn leader(&self, ranking: &Ranking) -> Result<Derivative> {
        self.derivatives()
            .into_iter()
            .max_by(|a, b| ranking.cmp(*a, *b))
            .ok_or(Error::ConstantPolynomial)
    }

    pub fn degree_in(&self, d: Derivative) -> u32 {
        self.terms.keys().map(|m| m.degree_in(d)).max().unwrap_or(0)
    }

    /// Coefficient of `d^k` when viewing the polynomial as univariate in `d`.
    pub fn coeff_of_power(&self, d: Derivative, k: u32) -> DiffPoly {
        DiffPoly::from_terms(
            &self.ring,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree_in(d) == k)
                .map(|(m, c)| (m.with_degree(d, 0), c.clone())),
        )
    }

    /// Coefficients `[a_0, …, a_deg]` with `self = Σ a_i d^i`.
    pub fn univariate(&self, d: Derivative) -> Vec<DiffPoly> {
        (0..=self.degree_in(d)).map(|k| self.coeff_of_power(d, k)).collect()
    }

    /// The partial derivative with respect to the derivative `d`.
    pub fn partial(&self, d: Derivative) -> DiffPoly {
        DiffPoly::from_terms(
            &self.ring,
            self.terms.iter().filter_map(|(m, c)| {
                let e = m.degree_in(d);
                (e > 0).then(|| (m.with_degree(d, e - 1), c * Rational::from_integer(BigInt::from(e))))
            }),
        )
    }

    pub fn separant(&self, var: usize) -> Result<DiffPoly> {
        Ok(self.partial(self.leader_in(var)?))
    }

    pub fn initial_in(&self, var: usize) -> Result<DiffPoly> {
        let ell = self.leader_in(var)?;
        Ok(self.coeff_of_power(ell, self.degree_in(ell)))
    }

    pub fn deg_in_leader(&self, var: usize) -> Result<u32> {
        let ell = self.leader_in(var)?;
        Ok(self.degree_in(ell))
    }

    /// Strict comparison `g ≻_var self`: lower order in `var`, or the same
    /// order and a smaller degree in the common leader.
    pub fn is_lower_than(&self, other: &DiffPoly, var: usize) -> bool {
        match (self.order_in(var), other.order_in(var)) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(a), Some(b)) if a != b => a < b,
            (Some(a), Some(_)) => {
                let ell = Derivative::new(var, a);
                self.degree_in(ell) < other.degree_in(ell)
            }
        }
    }

    /// Leading monomial with respect to `ranking` (lex on ranked derivatives).
    pub fn leading_monomial(&self, ranking: &Ranking) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| ranking.cmp_monomials(a, b))
    }

    /// Rank of the polynomial: its leader and the degree in it; constants
    /// have no rank and sort below everything.
    pub fn rank(&self, ranking: &Ranking) -> Option<(Derivative, u32)> {
        self.leader(ranking).ok().map(|l| (l, self.degree_in(l)))
    }

    /// The same polynomial viewed in a ring that extends its own.
    pub fn embed(&self, ring: &RingRef) -> Result<DiffPoly> {
        if !ring.extends(&self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(DiffPoly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    /// The same polynomial in a ring that is a prefix of its own; fails if a
    /// dropped variable occurs.
    pub fn restrict(&self, ring: &RingRef) -> Result<DiffPoly> {
        if !self.ring.extends(ring) {
            return Err(Error::RingMismatch);
        }
        if let Some(d) = self.derivatives().into_iter().find(|d| d.var >= ring.len()) {
            return Err(Error::VariableAbsent(self.ring.name(d.var).to_string()));
        }
        Ok(DiffPoly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Substitute the constant `value` for `var`; its proper derivatives
    /// become zero.
    pub fn substitute_constant(&self, var: usize, value: &Rational) -> Result<DiffPoly> {
        self.ring.check_var(var)?;
        let mut out = DiffPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for &(d, e) in m.factors() {
                if d.var != var {
                    kept.push((d, e));
                } else if d.order == 0 {
                    coeff *= pow_rational(value, e);
                } else {
                    coeff = Rational::zero();
                }
            }
            out.add_term(Monomial::from_factors(kept), coeff);
        }
        Ok(out)
    }

    /// Rename variables through `map` (old index → new index) into `ring`.
    pub fn reindex(&self, ring: &RingRef, map: &[usize]) -> Result<DiffPoly> {
        if let Some(d) = self.derivatives().into_iter().find(|d| d.var >= map.len()) {
            return Err(Error::InvalidVariable {
                index: d.var,
                len: map.len(),
            });
        }
        for &v in map {
            ring.check_var(v)?;
        }
        Ok(DiffPoly::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| {
                (m.map_derivatives(|d| Some(Derivative::new(map[d.var], d.order))), c.clone())
            }),
        ))
    }

    /// True if every monomial has total degree at most one.
    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() <= 1)
    }

    pub fn max_order(&self) -> Option<u32> {
        self.derivatives().into_iter().map(|d| d.order).max()
    }
}

fn pow_rational(value: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * value)
}

impl PartialEq for DiffPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for DiffPoly {}

impl PartialOrd for DiffPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DiffPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms
            .iter()
            .rev()
            .cmp(other.terms.iter().rev())
            .then_with(|| self.ring.names().cmp(other.ring.names()))
    }
}

impl std::hash::Hash for DiffPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&DiffPoly> for &DiffPoly {
            type Output = DiffPoly;

            /// Panics when the operands live over different rings; use the
            /// `checked_*` methods to get an error instead.
            fn $method(self, rhs: &DiffPoly) -> DiffPoly {
                self.$checked(rhs).expect("operands over different variable lists")
            }
        }

        impl $trait<DiffPoly> for DiffPoly {
            type Output = DiffPoly;

            fn $method(self, rhs: DiffPoly) -> DiffPoly {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&DiffPoly> for DiffPoly {
            type Output = DiffPoly;

            fn $method(self, rhs: &DiffPoly) -> DiffPoly {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &DiffPoly {
    type Output = DiffPoly;

    fn neg(self) -> DiffPoly {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;

    fn neg(self) -> DiffPoly {
        -&self
    }
}

pub(crate) fn render_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_monomial(ring: &super::Ring, m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|&(d, e)| {
            let base = ring.render_derivative(d);
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for DiffPoly {
    /// Canonical text: terms in descending monomial order, `*` between
    /// factors, `^` for powers and `p/q` for non-integral coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            let body = if m.is_one() {
                render_rational(&abs)
            } else if abs.is_one() {
                render_monomial(&self.ring, m)
            } else {
                format!("{}*{}", render_rational(&abs), render_monomial(&self.ring, m))
            };
            match (i, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly({self})")
    }
}
