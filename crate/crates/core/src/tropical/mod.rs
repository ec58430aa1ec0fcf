//! Order matrices, tropical determinants and transversal algebra.

mod assignment;
mod forms;
mod perm;

pub use assignment::max_assignment;
pub use forms::{
    detect_first_form, detect_second_form, detect_third_form, second_from_third, third_from_second,
    to_first_form, to_second_form, Form, FormCertificate,
};
pub use perm::Perm;

use std::cmp::Ordering;
use std::fmt;

use crate::diffpoly::{Convention, DiffPoly, ExtInt, Ring};
use crate::error::{Error, Result};

/// Size up to which tropical determinants enumerate every permutation and
/// report all maximizing witnesses.
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// A matrix over `ℤ≥0 ∪ {−∞}` with a convention tag and labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderMatrix {
    entries: Vec<Vec<ExtInt>>,
    cols: usize,
    convention: Convention,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl OrderMatrix {
    pub fn new(entries: Vec<Vec<ExtInt>>, convention: Convention) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if let Some(bad) = entries.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "ragged rows of length {cols} and {}",
                bad.len()
            )));
        }
        if convention == Convention::Weak && entries.iter().flatten().any(|e| !e.is_finite()) {
            return Err(Error::ShapeMismatch("weak-convention matrix with a -inf entry".into()));
        }
        let rows = entries.len();
        Ok(OrderMatrix {
            entries,
            cols,
            convention,
            row_labels: (1..=rows).map(|i| format!("u{i}")).collect(),
            col_labels: (1..=cols).map(|j| format!("c{j}")).collect(),
        })
    }

    /// Build from integers, reading negative values as −∞ (strong convention).
    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        OrderMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| if v < 0 { ExtInt::NegInf } else { ExtInt::Fin(v) }).collect())
                .collect(),
            Convention::Strong,
        )
    }

    /// The order matrix `a_ij = ord_{x_j}(u_i)` of a system.
    pub fn of_system(system: &[DiffPoly], ring: &Ring, convention: Convention) -> Result<Self> {
        let mut entries = Vec::with_capacity(system.len());
        for u in system {
            if u.ring().as_ref() != ring {
                return Err(Error::RingMismatch);
            }
            entries.push((0..ring.len()).map(|j| u.ord(j, convention)).collect::<Result<Vec<_>>>()?);
        }
        let mut m = OrderMatrix::new(entries, convention)?;
        m.cols = ring.len();
        m.col_labels = ring.names().to_vec();
        Ok(m)
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        if rows.len() != self.rows() || cols.len() != self.cols {
            return Err(Error::ShapeMismatch("label count does not match the shape".into()));
        }
        self.row_labels = rows;
        self.col_labels = cols;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> ExtInt {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<ExtInt>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<ExtInt> {
        self.entries.iter().map(|r| r[j]).collect()
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows())
        } else {
            Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols,
            })
        }
    }

    /// The matrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> OrderMatrix {
        let pick = |v: &[String], skip: usize| -> Vec<String> {
            v.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, s)| s.clone()).collect()
        };
        OrderMatrix {
            entries: self
                .entries
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != r)
                .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, e)| *e).collect())
                .collect(),
            cols: self.cols - 1,
            convention: self.convention,
            row_labels: pick(&self.row_labels, r),
            col_labels: pick(&self.col_labels, c),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|r| serde_json::Value::Array(r.iter().map(|e| e.to_json()).collect()))
                .collect(),
        )
    }

    /// Plain integer rows with −1 for −∞, convenient for comparisons.
    pub fn to_ints(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.finite().unwrap_or(-1)).collect())
            .collect()
    }
}

impl fmt::Display for OrderMatrix {
    /// Aligned grid with row and column labels; −∞ prints as `·`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |e: &ExtInt| match e {
            ExtInt::Fin(v) => v.to_string(),
            ExtInt::NegInf => "·".to_string(),
        };
        let label_w = self.row_labels.iter().map(|s| s.chars().count()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| {
                self.entries
                    .iter()
                    .map(|r| cell(&r[j]).chars().count())
                    .chain(std::iter::once(self.col_labels[j].chars().count()))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        write!(f, "{:label_w$}", "")?;
        for (j, w) in widths.iter().enumerate() {
            write!(f, " {:>w$}", self.col_labels[j])?;
        }
        for (i, row) in self.entries.iter().enumerate() {
            writeln!(f)?;
            write!(f, "{:label_w$}", self.row_labels[i])?;
            for (j, w) in widths.iter().enumerate() {
                write!(f, " {:>w$}", cell(&row[j]))?;
            }
        }
        Ok(())
    }
}

/// Tropical determinant with its maximizing permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tdet {
    pub value: ExtInt,
    /// Maximizing permutations `row → column`; empty when the value is −∞.
    pub witnesses: Vec<Perm>,
    /// Whether `witnesses` lists every maximizer.
    pub complete: bool,
}

/// Exhaustive tropical determinant over all permutations.
pub fn tdet_brute(a: &OrderMatrix) -> Result<Tdet> {
    let n = a.require_square()?;
    let mut best = ExtInt::NegInf;
    let mut witnesses = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        a: &OrderMatrix,
        acc: ExtInt,
        current: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut ExtInt,
        witnesses: &mut Vec<Perm>,
    ) {
        let n = used.len();
        if !acc.is_finite() {
            return;
        }
        let i = current.len();
        if i == n {
            match acc.cmp(best) {
                Ordering::Greater => {
                    *best = acc;
                    witnesses.clear();
                    witnesses.push(Perm::from_images(current.clone()).expect("distinct images"));
                }
                Ordering::Equal => witnesses.push(Perm::from_images(current.clone()).expect("distinct images")),
                Ordering::Less => {}
            }
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                current.push(j);
                rec(a, acc + a.get(i, j), current, used, best, witnesses);
                current.pop();
                used[j] = false;
            }
        }
    }
    rec(a, ExtInt::ZERO, &mut current, &mut used, &mut best, &mut witnesses);
    Ok(Tdet {
        value: best,
        witnesses,
        complete: true,
    })
}

/// Tropical determinant through the assignment method; one witness.
pub fn tdet_assignment(a: &OrderMatrix) -> Result<Tdet> {
    a.require_square()?;
    let (value, witness) = max_assignment(&a.entries);
    Ok(Tdet {
        value,
        witnesses: witness.into_iter().collect(),
        complete: false,
    })
}

/// Tropical determinant: exhaustive up to [`BRUTE_FORCE_LIMIT`], the
/// assignment method beyond.
pub fn tdet(a: &OrderMatrix) -> Result<Tdet> {
    if a.rows() <= BRUTE_FORCE_LIMIT {
        tdet_brute(a)
    } else {
        tdet_assignment(a)
    }
}

/// Jacobi number: the value of the tropical determinant.
pub fn jacobi_number(a: &OrderMatrix) -> Result<ExtInt> {
    if a.rows() <= BRUTE_FORCE_LIMIT {
        tdet_brute(a).map(|t| t.value)
    } else {
        tdet_assignment(a).map(|t| t.value)
    }
}

fn check_perm_size(a: &OrderMatrix, p: &Perm) -> Result<()> {
    if p.len() != a.rows() || !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "permutation of {} points for a {}x{} matrix",
            p.len(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// `Σ a_{i,ρ(i)}`.
pub fn transversal_value(a: &OrderMatrix, rho: &Perm) -> Result<ExtInt> {
    check_perm_size(a, rho)?;
    Ok((0..a.rows()).map(|i| a.get(i, rho.apply(i))).sum())
}

/// `a_{i1,i2} + a_{i2,i3} + … + a_{is,i1}` for the cycle `(i1 … is)`.
pub fn cyclic_sum(a: &OrderMatrix, tau: &Perm) -> Result<ExtInt> {
    check_perm_size(a, tau)?;
    let cycle = tau.as_cycle().ok_or(Error::NotACycle)?;
    Ok(cycle.iter().map(|&i| a.get(i, tau.apply(i))).sum())
}

/// Disjoint cycles of `rho` as single-cycle permutations.
pub fn cycle_decompose(rho: &Perm) -> Vec<Perm> {
    rho.cycles()
        .into_iter()
        .map(|c| Perm::cycle(rho.len(), &c).expect("cycle of a permutation"))
        .collect()
}

/// `b_ij = a_{σ(i), τ(j)}`.
pub fn permute(a: &OrderMatrix, sigma: &Perm, tau: &Perm) -> Result<OrderMatrix> {
    if sigma.len() != a.rows() || tau.len() != a.cols() {
        return Err(Error::ShapeMismatch(format!(
            "permutations of sizes {} and {} for a {}x{} matrix",
            sigma.len(),
            tau.len(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(OrderMatrix {
        entries: (0..a.rows())
            .map(|i| (0..a.cols()).map(|j| a.get(sigma.apply(i), tau.apply(j))).collect())
            .collect(),
        cols: a.cols,
        convention: a.convention,
        row_labels: (0..a.rows()).map(|i| a.row_labels[sigma.apply(i)].clone()).collect(),
        col_labels: (0..a.cols()).map(|j| a.col_labels[tau.apply(j)].clone()).collect(),
    })
}

/// Ascending-sorted column vectors, the key of Ritt's matrix ordering.
pub fn ritt_key(a: &OrderMatrix) -> Vec<Vec<ExtInt>> {
    (0..a.cols())
        .map(|j| {
            let mut c = a.column(j);
            c.sort();
            c
        })
        .collect()
}

/// Ritt's matrix ordering: sorted columns compared lexicographically,
/// columns taken left to right.
pub fn ritt_compare(a: &OrderMatrix, b: &OrderMatrix) -> Result<Ordering> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} against {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(ritt_key(a).cmp(&ritt_key(b)))
}
