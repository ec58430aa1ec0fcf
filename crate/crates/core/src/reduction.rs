//! Ritt division, autoreduced sets and a simplified characteristic-set loop.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::One;

use crate::diffpoly::{Derivative, DiffPoly, LinearOperator, Ranking, Rational};
use crate::error::{Error, Result};

/// Which multipliers a division may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DivisionMode {
    /// Separants and initials: the remainder has no proper derivative of a
    /// leader and lower degree than the divisor in each leader.
    #[default]
    Full,
    /// Separants only: proper derivatives of leaders are eliminated, and the
    /// leader degree is lowered when the divisor is of degree one in its
    /// leader (its separant then equals its initial).
    Partial,
    /// Pure ∂-division: only proper derivatives of leaders are eliminated.
    Proper,
}

impl DivisionMode {
    pub fn name(self) -> &'static str {
        match self {
            DivisionMode::Full => "full",
            DivisionMode::Partial => "partial",
            DivisionMode::Proper => "proper",
        }
    }

    fn reduces_degree(self, divisor_degree: u32) -> bool {
        match self {
            DivisionMode::Full => true,
            DivisionMode::Partial => divisor_degree == 1,
            DivisionMode::Proper => false,
        }
    }
}

impl std::str::FromStr for DivisionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(DivisionMode::Full),
            "partial" => Ok(DivisionMode::Partial),
            "proper" => Ok(DivisionMode::Proper),
            other => Err(Error::InvalidRanking(format!("unknown division mode `{other}`"))),
        }
    }
}

/// The outcome `s·f = Σ Qᵢ(gᵢ) + r` of a Ritt division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionCertificate {
    pub s: DiffPoly,
    pub quotients: Vec<LinearOperator>,
    pub remainder: DiffPoly,
    pub mode: DivisionMode,
    /// Non-constant separants and initials that were multiplied in.
    pub multipliers: BTreeSet<DiffPoly>,
}

impl DivisionCertificate {
    /// Recheck the identity `s·f = Σ Qᵢ(gᵢ) + r` exactly.
    pub fn verify(&self, f: &DiffPoly, divisors: &[DiffPoly]) -> bool {
        if divisors.len() != self.quotients.len() {
            return false;
        }
        let rhs = self
            .quotients
            .iter()
            .zip(divisors)
            .fold(self.remainder.clone(), |acc, (q, g)| acc + q.apply(g));
        &self.s * f == rhs
    }

    pub fn is_trivial(&self) -> bool {
        self.quotients.iter().all(LinearOperator::is_zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "s": self.s.to_string(),
            "quotients": self.quotients.iter().map(LinearOperator::to_json).collect::<Vec<_>>(),
            "remainder": self.remainder.to_string(),
            "mode": self.mode.name(),
        })
    }
}

impl fmt::Display for DivisionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode: {}", self.mode.name())?;
        writeln!(f, "s: {}", self.s)?;
        for (i, q) in self.quotients.iter().enumerate() {
            writeln!(f, "Q{}: {}", i + 1, q)?;
        }
        write!(f, "remainder: {}", self.remainder)
    }
}

/// Leader data of a divisor: leader, its degree, separant and initial.
struct Pivot {
    leader: Derivative,
    degree: u32,
    separant: DiffPoly,
    initial: DiffPoly,
}

impl Pivot {
    fn new(g: &DiffPoly, leader: Derivative) -> Pivot {
        let degree = g.degree_in(leader);
        Pivot {
            leader,
            degree,
            separant: g.partial(leader),
            initial: g.coeff_of_power(leader, degree),
        }
    }

    /// Whether an occurrence of `d` with degree `e` can be reduced.
    fn applies(&self, d: Derivative, e: u32, mode: DivisionMode) -> bool {
        d.var == self.leader.var
            && (d.order > self.leader.order
                || (d.order == self.leader.order && mode.reduces_degree(self.degree) && e >= self.degree))
    }
}

fn pivots(divisors: &[DiffPoly], ranking: &Ranking, var: Option<usize>) -> Result<Vec<Pivot>> {
    if var.is_some() && divisors.len() != 1 {
        return Err(Error::ShapeMismatch(
            "division in a named variable takes exactly one divisor".into(),
        ));
    }
    divisors
        .iter()
        .map(|g| {
            if g.is_zero() {
                return Err(Error::ZeroDivisor);
            }
            if g.is_constant() {
                return Err(Error::ConstantDivisor);
            }
            let leader = match var {
                Some(v) => g.leader_in(v)?,
                None => g.leader(ranking)?,
            };
            Ok(Pivot::new(g, leader))
        })
        .collect()
}

/// Derivatives of `f` in decreasing order for the active comparison.
fn candidates(f: &DiffPoly, ranking: &Ranking, var: Option<usize>) -> Vec<Derivative> {
    let mut ds: Vec<Derivative> = f
        .derivatives()
        .into_iter()
        .filter(|d| var.is_none_or(|v| d.var == v))
        .collect();
    ds.sort_by(|a, b| ranking.cmp(*b, *a));
    ds
}

/// The highest reducible occurrence in `f` and the divisor chosen for it.
fn next_reduction(
    f: &DiffPoly,
    pivots: &[Pivot],
    mode: DivisionMode,
    ranking: &Ranking,
    var: Option<usize>,
) -> Option<(Derivative, u32, usize)> {
    for d in candidates(f, ranking, var) {
        let e = f.degree_in(d);
        let chosen = pivots
            .iter()
            .enumerate()
            .filter(|(_, p)| p.applies(d, e, mode))
            .min_by(|(i, a), (j, b)| {
                ranking
                    .cmp(a.leader, b.leader)
                    .then(a.degree.cmp(&b.degree))
                    .then(i.cmp(j))
            });
        if let Some((j, _)) = chosen {
            return Some((d, e, j));
        }
    }
    None
}

/// Ritt division of `f` by `divisors`.
///
/// With `var = Some(v)` the single divisor is used through its leader in
/// `x_v` and only derivatives of `x_v` are reduced; otherwise leaders are
/// taken under `ranking`. Multipliers that are nonzero constants are
/// divided out, so `s` only collects non-constant separants and initials.
pub fn ritt_divide(
    f: &DiffPoly,
    divisors: &[DiffPoly],
    mode: DivisionMode,
    ranking: &Ranking,
    var: Option<usize>,
) -> Result<DivisionCertificate> {
    for g in divisors {
        if !g.same_ring(f) {
            return Err(Error::RingMismatch);
        }
    }
    if let Some(v) = var {
        f.ring().check_var(v)?;
    }
    let pivots = pivots(divisors, ranking, var)?;
    let ring = f.ring().clone();
    let mut s = DiffPoly::one(&ring);
    let mut quotients = vec![LinearOperator::zero(&ring); divisors.len()];
    let mut rem = f.clone();
    let mut multipliers = BTreeSet::new();
    let mut derived: HashMap<(usize, u32), DiffPoly> = HashMap::new();

    while let Some((d, e, j)) = next_reduction(&rem, &pivots, mode, ranking, var) {
        let p = &pivots[j];
        let c = rem.coeff_of_power(d, e);
        let (multiplier, shift, (k, theta)) = if d.order > p.leader.order {
            let k = d.order - p.leader.order;
            let theta = derived
                .entry((j, k))
                .or_insert_with(|| divisors[j].derive_n(k))
                .clone();
            (p.separant.clone(), e - 1, (k, theta))
        } else {
            (p.initial.clone(), e - p.degree, (0, divisors[j].clone()))
        };
        let power = DiffPoly::derivative(&ring, d.var, d.order)?.pow(shift);
        let mut coeff = &c * &power;
        if let Some(m) = multiplier.constant_value() {
            coeff = coeff.scale(&(Rational::one() / m));
        } else {
            rem = &multiplier * &rem;
            s = &multiplier * &s;
            for q in quotients.iter_mut() {
                *q = q.left_mul(&multiplier);
            }
            multipliers.insert(multiplier);
        }
        rem = rem - &coeff * &theta;
        quotients[j] = quotients[j].add(&LinearOperator::term(coeff, k));

        if rem.degree_in(d) >= e {
            return Err(Error::InvariantViolation(format!(
                "division step did not lower the degree of {} (still {})",
                ring.render_derivative(d),
                rem.degree_in(d)
            )));
        }
        if let Some((d2, e2, _)) = next_reduction(&rem, &pivots, mode, ranking, var) {
            let before = (d, e);
            let worse = match ranking.cmp(d2, before.0) {
                Ordering::Greater => true,
                Ordering::Equal => e2 >= before.1,
                Ordering::Less => false,
            };
            if worse {
                return Err(Error::InvariantViolation(
                    "division measure did not decrease".into(),
                ));
            }
        }
    }

    Ok(DivisionCertificate {
        s,
        quotients,
        remainder: rem,
        mode,
        multipliers,
    })
}

/// Whether `f` is reduced with respect to `g` in the given mode, leaders
/// taken under `ranking`.
pub fn is_reduced_wrt(f: &DiffPoly, g: &DiffPoly, mode: DivisionMode, ranking: &Ranking) -> Result<bool> {
    let p = pivots(std::slice::from_ref(g), ranking, None)?.remove(0);
    Ok(f.derivatives().into_iter().all(|d| !p.applies(d, f.degree_in(d), mode)))
}

/// Whether `f` is reduced with respect to `g` in the variable `x_var`.
pub fn is_reduced_wrt_in(f: &DiffPoly, g: &DiffPoly, mode: DivisionMode, var: usize) -> Result<bool> {
    let p = pivots(std::slice::from_ref(g), &Ranking::Orderly, Some(var))?.remove(0);
    Ok(f.derivatives().into_iter().all(|d| !p.applies(d, f.degree_in(d), mode)))
}

/// A sequence of polynomials of strictly increasing rank, pairwise reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoreducedSet {
    elements: Vec<DiffPoly>,
    ranking: Ranking,
}

impl AutoreducedSet {
    /// Sorts `elements` by rank and checks that they are autoreduced.
    pub fn new(mut elements: Vec<DiffPoly>, ranking: Ranking) -> Result<Self> {
        if let Some(first) = elements.first() {
            if elements.iter().any(|e| !e.same_ring(first)) {
                return Err(Error::RingMismatch);
            }
        }
        elements.sort_by(|a, b| ranking.cmp_rank(a, b));
        for (i, a) in elements.iter().enumerate() {
            if a.is_constant() {
                return Err(Error::HypothesisFailure(format!(
                    "constant element {a} in an autoreduced set"
                )));
            }
            for (j, b) in elements.iter().enumerate() {
                if i != j && !is_reduced_wrt(a, b, DivisionMode::Full, &ranking)? {
                    return Err(Error::HypothesisFailure(format!("{a} is not reduced with respect to {b}")));
                }
            }
        }
        let leading: BTreeSet<usize> = elements
            .iter()
            .map(|e| e.leader(&ranking).map(|d| d.var))
            .collect::<Result<_>>()?;
        if leading.len() != elements.len() {
            return Err(Error::InvariantViolation(
                "autoreduced set with repeated leading variables".into(),
            ));
        }
        Ok(AutoreducedSet { elements, ranking })
    }

    pub fn empty(ranking: Ranking) -> Self {
        AutoreducedSet {
            elements: Vec::new(),
            ranking,
        }
    }

    pub fn elements(&self) -> &[DiffPoly] {
        &self.elements
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leaders(&self) -> Vec<Derivative> {
        self.elements
            .iter()
            .map(|e| e.leader(&self.ranking).expect("autoreduced elements are non-constant"))
            .collect()
    }

    /// Full-mode remainder of `f` by this set.
    pub fn reduce(&self, f: &DiffPoly) -> Result<DivisionCertificate> {
        ritt_divide(f, &self.elements, DivisionMode::Full, &self.ranking, None)
    }

    /// The induced ordering on autoreduced sets: compare element ranks
    /// pairwise; when one is a prefix of the other, the longer set is lower.
    pub fn cmp_induced(&self, other: &AutoreducedSet) -> Ordering {
        for (a, b) in self.elements.iter().zip(&other.elements) {
            let o = self.ranking.cmp_rank(a, b);
            if o != Ordering::Equal {
                return o;
            }
        }
        other.elements.len().cmp(&self.elements.len())
    }
}

impl fmt::Display for AutoreducedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Result of [`autoreduce_loop`].
///
/// Without case splitting the charset describes one saturation branch: the
/// ideal saturated by `multipliers`.
#[derive(Debug, Clone)]
pub struct CharSetResult {
    pub charset: AutoreducedSet,
    pub multipliers: BTreeSet<DiffPoly>,
    pub converged: bool,
    pub rounds: usize,
}

pub const DEFAULT_MAX_ROUNDS: usize = 64;

/// The lowest autoreduced subset of `basis`, chosen greedily by rank.
pub fn basic_set(basis: &[DiffPoly], ranking: &Ranking) -> Result<AutoreducedSet> {
    let mut sorted: Vec<&DiffPoly> = basis.iter().filter(|p| !p.is_constant()).collect();
    sorted.sort_by(|a, b| ranking.cmp_rank(a, b).then_with(|| a.cmp(b)));
    let mut chosen: Vec<DiffPoly> = Vec::new();
    for p in sorted {
        let mut ok = true;
        for g in &chosen {
            if !is_reduced_wrt(p, g, DivisionMode::Full, ranking)? {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(p.clone());
        }
    }
    AutoreducedSet::new(chosen, ranking.clone())
}

fn inconsistent(witness: &DiffPoly) -> Error {
    Error::Inconsistent {
        witness: witness.to_string(),
    }
}

/// Ritt–Wu style loop: take a basic set of the current basis, reduce the
/// rest by it, adjoin nonzero remainders, repeat until every remainder is
/// zero or `max_rounds` is used up.
pub fn autoreduce_loop(generators: &[DiffPoly], ranking: &Ranking, max_rounds: usize) -> Result<CharSetResult> {
    let mut basis: Vec<DiffPoly> = Vec::new();
    for g in generators {
        if let Some(first) = basis.first() {
            if !g.same_ring(first) {
                return Err(Error::RingMismatch);
            }
        }
        if g.is_nonzero_constant() {
            return Err(inconsistent(g));
        }
        if !g.is_zero() && !basis.contains(g) {
            basis.push(g.clone());
        }
    }
    let mut multipliers = BTreeSet::new();
    let mut previous: Option<AutoreducedSet> = None;
    for round in 1..=max_rounds {
        let current = basic_set(&basis, ranking)?;
        if let Some(prev) = &previous {
            if current.cmp_induced(prev) != Ordering::Less {
                return Err(Error::InvariantViolation(format!(
                    "basic set {current} did not decrease from {prev}"
                )));
            }
        }
        let mut fresh = Vec::new();
        for p in &basis {
            if current.elements.contains(p) {
                continue;
            }
            let cert = current.reduce(p)?;
            multipliers.extend(cert.multipliers.iter().cloned());
            let r = cert.remainder;
            if r.is_nonzero_constant() {
                return Err(inconsistent(&r));
            }
            if !r.is_zero() && !basis.contains(&r) && !fresh.contains(&r) {
                fresh.push(r);
            }
        }
        if fresh.is_empty() {
            return Ok(CharSetResult {
                charset: current,
                multipliers,
                converged: true,
                rounds: round,
            });
        }
        basis.extend(fresh);
        previous = Some(current);
    }
    Ok(CharSetResult {
        charset: basic_set(&basis, ranking)?,
        multipliers,
        converged: false,
        rounds: max_rounds,
    })
}

/// Zero full-mode remainder with respect to `charset`.
pub fn membership(f: &DiffPoly, charset: &AutoreducedSet) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    if charset.is_empty() {
        return Ok(false);
    }
    Ok(charset.reduce(f)?.remainder.is_zero())
}

/// Absolute-dimension bound: finite when the charset has one element per
/// variable, infinite otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DimBound {
    Finite(i64),
    Infinite,
}

impl DimBound {
    pub fn to_json(self) -> serde_json::Value {
        match self {
            DimBound::Finite(v) => serde_json::Value::from(v),
            DimBound::Infinite => serde_json::Value::from("inf"),
        }
    }
}

impl fmt::Display for DimBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimBound::Finite(v) => write!(f, "{v}"),
            DimBound::Infinite => write!(f, "inf"),
        }
    }
}

/// Differential dimension `n − s` and the absolute-dimension bound, the sum
/// of the leader orders when `s = n`.
pub fn dimensions(charset: &AutoreducedSet, n: usize) -> Result<(usize, DimBound)> {
    let s = charset.len();
    if s > n {
        return Err(Error::InvariantViolation(format!(
            "autoreduced set of length {s} in {n} variables"
        )));
    }
    let bound = if s == n {
        DimBound::Finite(charset.leaders().iter().map(|d| d.order as i64).sum())
    } else {
        DimBound::Infinite
    };
    Ok((n - s, bound))
}

/// The prefix of `charset` lying in the variables of `keep`, which must be
/// the lowest block of the elimination ranking it was computed under.
pub fn elimination_project(charset: &AutoreducedSet, keep: &[usize]) -> Result<AutoreducedSet> {
    let keep: BTreeSet<usize> = keep.iter().copied().collect();
    match charset.ranking() {
        Ranking::Elimination { blocks } if blocks.first().map(|b| b.iter().copied().collect::<BTreeSet<_>>()) == Some(keep.clone()) => {}
        Ranking::Elimination { .. } => {
            return Err(Error::RankingMismatch(
                "the kept variables are not the lowest elimination block".into(),
            ))
        }
        Ranking::Orderly => {
            return Err(Error::RankingMismatch(
                "projection needs an elimination ranking".into(),
            ))
        }
    }
    let prefix: Vec<DiffPoly> = charset
        .elements()
        .iter()
        .take_while(|e| e.derivatives().iter().all(|d| keep.contains(&d.var)))
        .cloned()
        .collect();
    AutoreducedSet::new(prefix, charset.ranking().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::{Ring, RingRef};
    use crate::text::parse_poly;

    fn ring() -> RingRef {
        Ring::new(&["x", "y", "z"]).unwrap()
    }

    fn p(r: &RingRef, s: &str) -> DiffPoly {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn partial_division_by_linear() {
        let r = ring();
        let f = p(&r, "x''");
        let g = p(&r, "x' - x");
        let cert = ritt_divide(&f, &[g.clone()], DivisionMode::Partial, &Ranking::Orderly, Some(0)).unwrap();
        assert_eq!(cert.s, p(&r, "1"));
        assert_eq!(cert.quotients[0].coeff(1), p(&r, "1"));
        assert_eq!(cert.quotients[0].coeff(0), p(&r, "1"));
        assert_eq!(cert.remainder, p(&r, "x"));
        assert!(cert.verify(&f, &[g]));
    }

    #[test]
    fn partial_division_keeps_separant() {
        let r = ring();
        let f = p(&r, "x''");
        let g = p(&r, "x'^2 - x");
        let cert = ritt_divide(&f, &[g.clone()], DivisionMode::Partial, &Ranking::Orderly, Some(0)).unwrap();
        assert_eq!(cert.s, p(&r, "2*x'"));
        assert_eq!(cert.quotients[0], LinearOperator::term(p(&r, "1"), 1));
        assert_eq!(cert.remainder, p(&r, "x'"));
        assert!(cert.verify(&f, &[g]));
    }

    #[test]
    fn already_reduced() {
        let r = ring();
        let f = p(&r, "y");
        let g = p(&r, "x' - x");
        let cert = ritt_divide(&f, &[g], DivisionMode::Partial, &Ranking::Orderly, None).unwrap();
        assert_eq!(cert.s, p(&r, "1"));
        assert!(cert.is_trivial());
        assert_eq!(cert.remainder, f);
    }

    #[test]
    fn divisor_errors() {
        let r = ring();
        let f = p(&r, "x");
        assert!(matches!(
            ritt_divide(&f, &[p(&r, "3")], DivisionMode::Full, &Ranking::Orderly, None),
            Err(Error::ConstantDivisor)
        ));
        assert!(matches!(
            ritt_divide(&f, &[DiffPoly::zero(&r)], DivisionMode::Full, &Ranking::Orderly, None),
            Err(Error::ZeroDivisor)
        ));
        assert!(matches!(
            ritt_divide(&f, &[p(&r, "y")], DivisionMode::Full, &Ranking::Orderly, Some(0)),
            Err(Error::VariableAbsent(_))
        ));
    }

    #[test]
    fn full_division_lowers_degree() {
        let r = ring();
        let g = p(&r, "x*x'^2 + 1");
        let f = p(&r, "x'^3 + x''");
        let cert = ritt_divide(&f, &[g.clone()], DivisionMode::Full, &Ranking::Orderly, None).unwrap();
        assert!(cert.verify(&f, &[g.clone()]));
        assert!(is_reduced_wrt(&cert.remainder, &g, DivisionMode::Full, &Ranking::Orderly).unwrap());
        assert!(cert.multipliers.contains(&p(&r, "x")));
    }

    #[test]
    fn reduced_predicates() {
        let r = ring();
        let o = Ranking::Orderly;
        assert!(is_reduced_wrt(&p(&r, "x"), &p(&r, "x'"), DivisionMode::Full, &o).unwrap());
        assert!(!is_reduced_wrt(&p(&r, "x'^2"), &p(&r, "x' - x"), DivisionMode::Full, &o).unwrap());
        assert!(is_reduced_wrt(&p(&r, "y^(5)"), &p(&r, "x' - x"), DivisionMode::Full, &o).unwrap());
        assert!(is_reduced_wrt(&p(&r, "x'^3"), &p(&r, "x'^2 - x"), DivisionMode::Partial, &o).unwrap());
        assert!(!is_reduced_wrt(&p(&r, "x'^3"), &p(&r, "x'^2 - x"), DivisionMode::Full, &o).unwrap());
        assert!(is_reduced_wrt(&p(&r, "x'"), &p(&r, "x' - x"), DivisionMode::Proper, &o).unwrap());
        assert!(!is_reduced_wrt_in(&p(&r, "x''"), &p(&r, "x' + y''"), DivisionMode::Proper, 0).unwrap());
    }

    #[test]
    fn proper_division_in_a_variable() {
        let r = ring();
        let u1 = p(&r, "x + x' + y'' + z'''");
        let u3 = p(&r, "x'' + y + z");
        let cert = ritt_divide(&u3, &[u1.clone()], DivisionMode::Proper, &Ranking::Orderly, Some(0)).unwrap();
        assert_eq!(cert.remainder, p(&r, "-x' + y - y''' + z - z^(4)"));
        assert!(cert.verify(&u3, &[u1]));
    }

    #[test]
    fn loop_on_input_already_autoreduced() {
        let r = ring();
        let gens = [p(&r, "x' - x"), p(&r, "y' - x")];
        let res = autoreduce_loop(&gens, &Ranking::Orderly, DEFAULT_MAX_ROUNDS).unwrap();
        assert!(res.converged);
        assert_eq!(res.charset.elements(), &gens);
    }

    #[test]
    fn loop_on_increasing_example() {
        let r = ring();
        let gens = [p(&r, "x' + y' + 1"), p(&r, "x^(50) + y + z"), p(&r, "x^(100) + y' + z'")];
        let res = autoreduce_loop(&gens, &Ranking::Orderly, DEFAULT_MAX_ROUNDS).unwrap();
        assert!(res.converged);
        let cs = res.charset.elements();
        assert_eq!(cs.len(), 3);
        for a in cs {
            for b in cs {
                if a != b {
                    assert!(is_reduced_wrt(a, b, DivisionMode::Full, &Ranking::Orderly).unwrap());
                }
            }
        }
        for g in &gens {
            assert!(membership(g, &res.charset).unwrap());
        }
        assert!(res.multipliers.is_empty());
    }

    #[test]
    fn loop_detects_inconsistency() {
        let r = ring();
        let gens = [p(&r, "x' - x"), p(&r, "x' - x - 1")];
        assert!(matches!(
            autoreduce_loop(&gens, &Ranking::Orderly, DEFAULT_MAX_ROUNDS),
            Err(Error::Inconsistent { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let r = ring();
        let cs = AutoreducedSet::new(vec![p(&r, "x' - x"), p(&r, "y' - x")], Ranking::Orderly).unwrap();
        assert!(membership(&p(&r, "y'' - x'"), &cs).unwrap());
        assert!(!membership(&p(&r, "y"), &cs).unwrap());
        assert!(membership(&DiffPoly::zero(&r), &cs).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let cs = AutoreducedSet::new(vec![p(&r, "x' - x"), p(&r, "y' - x")], Ranking::Orderly).unwrap();
        assert_eq!(dimensions(&cs, 2).unwrap(), (0, DimBound::Finite(2)));
        let one = AutoreducedSet::new(vec![p(&r, "x' - x")], Ranking::Orderly).unwrap();
        assert_eq!(dimensions(&one, 2).unwrap(), (1, DimBound::Infinite));
        let r1 = Ring::new(&["x"]).unwrap();
        let cubic = AutoreducedSet::new(vec![p(&r1, "x''' + x")], Ranking::Orderly).unwrap();
        assert_eq!(dimensions(&cubic, 1).unwrap(), (0, DimBound::Finite(3)));
        assert!(dimensions(&cs, 1).unwrap_err().is_internal());
    }

    #[test]
    fn induced_ordering() {
        let r = ring();
        let o = Ranking::Orderly;
        let a = AutoreducedSet::new(vec![p(&r, "x' - x")], o.clone()).unwrap();
        let b = AutoreducedSet::new(vec![p(&r, "x' - x"), p(&r, "y' - x")], o.clone()).unwrap();
        let c = AutoreducedSet::new(vec![p(&r, "x")], o).unwrap();
        assert_eq!(b.cmp_induced(&a), Ordering::Less);
        assert_eq!(c.cmp_induced(&a), Ordering::Less);
        assert_eq!(a.cmp_induced(&a), Ordering::Equal);
    }

    #[test]
    fn not_autoreduced_is_rejected() {
        let r = ring();
        assert!(AutoreducedSet::new(vec![p(&r, "x'"), p(&r, "x'' + y")], Ranking::Orderly).is_err());
    }

    #[test]
    fn projection() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let elim = Ranking::elimination(vec![vec![1], vec![0]]).unwrap();
        let cs = AutoreducedSet::new(vec![p(&r, "y' - y"), p(&r, "x' - y")], elim.clone()).unwrap();
        let proj = elimination_project(&cs, &[1]).unwrap();
        assert_eq!(proj.elements(), &[p(&r, "y' - y")]);
        let only_x = AutoreducedSet::new(vec![p(&r, "x' - y")], elim).unwrap();
        assert!(elimination_project(&only_x, &[1]).unwrap().is_empty());
        assert!(matches!(elimination_project(&cs, &[0]), Err(Error::RankingMismatch(_))));
        let orderly = AutoreducedSet::new(vec![p(&r, "y' - y")], Ranking::Orderly).unwrap();
        assert!(elimination_project(&orderly, &[1]).is_err());
    }

    #[test]
    fn certificate_json() {
        let r = ring();
        let cert = ritt_divide(&p(&r, "x''"), &[p(&r, "x' - x")], DivisionMode::Partial, &Ranking::Orderly, Some(0)).unwrap();
        assert_eq!(
            cert.to_json(),
            serde_json::json!({"s": "1", "quotients": [[[0, "1"], [1, "1"]]], "remainder": "x", "mode": "partial"})
        );
    }
}
