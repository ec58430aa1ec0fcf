use super::Derivative;

/// A power product of derivatives.
///
/// Factors are kept sorted by derivative in descending canonical (orderly)
/// order with nonzero exponents, so the derived `Ord` is the lexicographic
/// monomial order with respect to the orderly ranking.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Derivative, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_derivative(d: Derivative, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial {
                factors: vec![(d, exp)],
            }
        }
    }

    pub fn from_factors<I: IntoIterator<Item = (Derivative, u32)>>(factors: I) -> Self {
        factors
            .into_iter()
            .fold(Monomial::one(), |m, (d, e)| m.mul(&Monomial::from_derivative(d, e)))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors, highest derivative first.
    pub fn factors(&self) -> &[(Derivative, u32)] {
        &self.factors
    }

    pub fn degree_in(&self, d: Derivative) -> u32 {
        self.factors
            .iter()
            .find(|(f, _)| *f == d)
            .map_or(0, |&(_, e)| e)
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Highest order of `var` occurring, if any.
    pub fn order_in(&self, var: usize) -> Option<u32> {
        self.factors
            .iter()
            .filter(|(d, _)| d.var == var)
            .map(|(d, _)| d.order)
            .max()
    }

    pub fn involves_var(&self, var: usize) -> bool {
        self.factors.iter().any(|(d, _)| d.var == var)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// The monomial with the power of `d` replaced by `exp`.
    pub fn with_degree(&self, d: Derivative, exp: u32) -> Monomial {
        let rest = Monomial {
            factors: self.factors.iter().copied().filter(|(f, _)| *f != d).collect(),
        };
        rest.mul(&Monomial::from_derivative(d, exp))
    }

    /// Replace every derivative by the image of `f`; factors mapping to
    /// `None` are dropped.
    pub fn map_derivatives<F: Fn(Derivative) -> Option<Derivative>>(&self, f: F) -> Monomial {
        Monomial::from_factors(
            self.factors
                .iter()
                .filter_map(|&(d, e)| f(d).map(|d2| (d2, e))),
        )
    }
}
