use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::{DiffPoly, Rational, RingRef};

/// An element `Σ c_k ∂^k` of the Weyl algebra with coefficients written on
/// the left.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearOperator {
    ring: RingRef,
    coeffs: BTreeMap<u32, DiffPoly>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

impl LinearOperator {
    pub fn zero(ring: &RingRef) -> Self {
        LinearOperator {
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// `c·∂^k`.
    pub fn term(c: DiffPoly, k: u32) -> Self {
        let mut op = LinearOperator::zero(c.ring());
        op.add_term(k, c);
        op
    }

    /// Multiplication by `c`.
    pub fn lift(c: DiffPoly) -> Self {
        LinearOperator::term(c, 0)
    }

    /// The derivation itself.
    pub fn d(ring: &RingRef) -> Self {
        LinearOperator::term(DiffPoly::one(ring), 1)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(k, c_k)` pairs in increasing `k`.
    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &DiffPoly)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: u32) -> DiffPoly {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| DiffPoly::zero(&self.ring))
    }

    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, k: u32, c: DiffPoly) {
        let sum = match self.coeffs.remove(&k) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn add(&self, other: &LinearOperator) -> LinearOperator {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    /// `p·L`: multiply every coefficient on the left by `p`.
    pub fn left_mul(&self, p: &DiffPoly) -> LinearOperator {
        let mut out = LinearOperator::zero(&self.ring);
        for (k, c) in &self.coeffs {
            out.add_term(*k, p * c);
        }
        out
    }

    /// `self ∘ other`, normalized with `∂^k c = Σ_j C(k,j) c^(j) ∂^(k-j)`.
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        let mut out = LinearOperator::zero(&self.ring);
        for (&k, a) in &self.coeffs {
            for (&m, b) in &other.coeffs {
                let mut db = b.clone();
                for j in 0..=k {
                    let c = a * &db.scale(&Rational::from_integer(binomial(k, j)));
                    out.add_term(k - j + m, c);
                    db = db.derive();
                }
            }
        }
        out
    }

    /// `L(p) = Σ c_k ∂^k(p)`.
    pub fn apply(&self, p: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero(p.ring());
        let mut current = p.clone();
        let mut at = 0;
        for (&k, c) in &self.coeffs {
            while at < k {
                current = current.derive();
                at += 1;
            }
            out = out + c * &current;
        }
        out
    }

    /// JSON form: a list of `[k, coefficient-text]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(k, c)| serde_json::json!([k, c.to_string()]))
                .collect(),
        )
    }
}

impl fmt::Display for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(k, c)| {
                let d = match k {
                    0 => String::new(),
                    1 => "D".to_string(),
                    k => format!("D^{k}"),
                };
                match (k, c.is_nonzero_constant() && c.to_string() == "1") {
                    (0, _) => format!("({c})"),
                    (_, true) => d,
                    _ => format!("({c})*{d}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOperator({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::Ring;

    #[test]
    fn apply_examples() {
        let r = Ring::new(&["x"]).unwrap();
        let x = DiffPoly::var(&r, 0).unwrap();
        let x1 = x.derive();
        let p = &x1 - &x;
        assert_eq!(LinearOperator::d(&r).apply(&p), x1.derive() - &x1);
        let d_plus_one = LinearOperator::d(&r).add(&LinearOperator::lift(DiffPoly::one(&r)));
        assert_eq!(d_plus_one.apply(&p), x1.derive() - &x);
        assert!(LinearOperator::zero(&r).apply(&p).is_zero());
    }

    #[test]
    fn weyl_relation() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let x = DiffPoly::var(&r, 0).unwrap();
        let y = DiffPoly::var(&r, 1).unwrap();
        let c = &x * &y.derive() + DiffPoly::integer(&r, 2);
        let p = y.derive().pow(2) - &x;
        let lhs = LinearOperator::d(&r).compose(&LinearOperator::lift(c.clone()));
        let rhs = LinearOperator::lift(c.derive()).add(&LinearOperator::term(c.clone(), 1));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.apply(&p), (&c * &p).derive());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, 0), BigInt::from(1));
        assert_eq!(binomial(4, 4), BigInt::from(1));
    }
}
