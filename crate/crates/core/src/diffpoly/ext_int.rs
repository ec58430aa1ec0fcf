use std::fmt;
use std::iter::Sum;
use std::ops::Add;

/// An integer or −∞. Addition saturates at −∞.
///
/// Variant order gives `NegInf < Fin(_)` under the derived `Ord`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
}

impl ExtInt {
    pub const ZERO: ExtInt = ExtInt::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            ExtInt::NegInf => None,
        }
    }

    /// `self + delta`, keeping −∞ fixed.
    pub fn offset(self, delta: i64) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(v + delta),
            ExtInt::NegInf => ExtInt::NegInf,
        }
    }

    /// JSON form: integers as numbers, −∞ as the string `"-inf"`.
    pub fn to_json(self) -> serde_json::Value {
        match self {
            ExtInt::Fin(v) => serde_json::Value::from(v),
            ExtInt::NegInf => serde_json::Value::from("-inf"),
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Option<ExtInt> {
        match value {
            serde_json::Value::String(s) if s == "-inf" => Some(ExtInt::NegInf),
            other => other.as_i64().map(ExtInt::Fin),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

impl From<u32> for ExtInt {
    fn from(v: u32) -> Self {
        ExtInt::Fin(v as i64)
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => ExtInt::Fin(a + b),
            _ => ExtInt::NegInf,
        }
    }
}

impl Sum for ExtInt {
    fn sum<I: Iterator<Item = ExtInt>>(iter: I) -> ExtInt {
        iter.fold(ExtInt::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::NegInf => write!(f, "-inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturating_addition() {
        assert_eq!(ExtInt::NegInf + ExtInt::Fin(3), ExtInt::NegInf);
        assert_eq!(ExtInt::Fin(2) + ExtInt::Fin(3), ExtInt::Fin(5));
        assert_eq!(
            [ExtInt::Fin(1), ExtInt::NegInf].into_iter().sum::<ExtInt>(),
            ExtInt::NegInf
        );
        assert_eq!(std::iter::empty::<ExtInt>().sum::<ExtInt>(), ExtInt::ZERO);
    }

    #[test]
    fn neg_inf_is_least() {
        assert!(ExtInt::NegInf < ExtInt::Fin(0));
        assert_eq!(ExtInt::Fin(4).max(ExtInt::NegInf), ExtInt::Fin(4));
    }

    #[test]
    fn json_sentinel() {
        assert_eq!(ExtInt::NegInf.to_json(), serde_json::json!("-inf"));
        assert_eq!(ExtInt::from_json(&serde_json::json!(7)), Some(ExtInt::Fin(7)));
        assert_eq!(ExtInt::from_json(&serde_json::json!("-inf")), Some(ExtInt::NegInf));
    }
}
