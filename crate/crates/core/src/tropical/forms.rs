//! Ritt's first, second and third forms of a square order matrix.

use std::fmt;

use super::{permute, tdet, OrderMatrix, Perm};
use crate::diffpoly::ExtInt;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    First,
    Second,
    Third,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::First => "first form",
            Form::Second => "second form",
            Form::Third => "third form",
        }
    }
}

/// Row and column permutations bringing a matrix into a form:
/// `apply(A)_ij = a_{σ(i), τ(j)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormCertificate {
    pub row_perm: Perm,
    pub col_perm: Perm,
    pub form: Form,
    /// Index chosen by the second-form search (1-based), if one ran.
    pub index: Option<usize>,
}

impl FormCertificate {
    fn identity(n: usize, form: Form) -> Self {
        FormCertificate {
            row_perm: Perm::identity(n),
            col_perm: Perm::identity(n),
            form,
            index: None,
        }
    }

    pub fn apply(&self, a: &OrderMatrix) -> Result<OrderMatrix> {
        permute(a, &self.row_perm, &self.col_perm)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "form": self.form.name(),
            "row_perm": self.row_perm.images(),
            "col_perm": self.col_perm.images(),
            "index": self.index,
        })
    }
}

impl fmt::Display for FormCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: rows {} columns {}", self.form.name(), self.row_perm, self.col_perm)?;
        if let Some(i) = self.index {
            write!(f, " (i = {i})")?;
        }
        Ok(())
    }
}

/// Tracks `(σ, τ)` while rows and columns are rearranged step by step.
struct Arrangement {
    sigma: Perm,
    tau: Perm,
}

impl Arrangement {
    fn new(n: usize) -> Self {
        Arrangement {
            sigma: Perm::identity(n),
            tau: Perm::identity(n),
        }
    }

    /// Follow the current arrangement by rows `s` and columns `t`.
    fn then(&mut self, s: &Perm, t: &Perm) {
        self.sigma = self.sigma.compose(s);
        self.tau = self.tau.compose(t);
    }

    fn certificate(self, form: Form, index: Option<usize>) -> FormCertificate {
        FormCertificate {
            row_perm: self.sigma,
            col_perm: self.tau,
            form,
            index,
        }
    }
}

fn diagonal_sum(a: &OrderMatrix, upto: usize) -> ExtInt {
    (0..upto).map(|i| a.get(i, i)).sum()
}

/// Diagonal is a maximal transversal and `a_21 ≥ a_11 ≠ −∞`.
pub fn detect_first_form(a: &OrderMatrix) -> bool {
    let n = a.rows();
    if !a.is_square() || n < 2 {
        return false;
    }
    let a11 = a.get(0, 0);
    if !a11.is_finite() || a.get(1, 0) < a11 {
        return false;
    }
    tdet(a).is_ok_and(|t| t.value == diagonal_sum(a, n))
}

/// The three second-form conditions: `a_1n + a_22 + … + a_{n-1,n-1} + a_n1`
/// is maximal, the leading `(n-1)`-diagonal is a finite maximal transversal
/// of the minor without row and column `n`, and `a_n1` is the maximum of
/// column 1.
pub fn detect_second_form(a: &OrderMatrix) -> bool {
    let n = a.rows();
    if !a.is_square() || n < 2 {
        return false;
    }
    let shape = a.get(0, n - 1) + (1..n - 1).map(|i| a.get(i, i)).sum::<ExtInt>() + a.get(n - 1, 0);
    if tdet(a).map(|t| t.value).ok() != Some(shape) {
        return false;
    }
    let lead = diagonal_sum(a, n - 1);
    if !lead.is_finite() || tdet(&a.minor(n - 1, n - 1)).map(|t| t.value).ok() != Some(lead) {
        return false;
    }
    a.column(0).into_iter().max() == Some(a.get(n - 1, 0))
}

/// Columns `(1, n, 2, 3, …, n-1)` of a matrix: the map from second to third
/// form, `b_{i,2} = a_{i,n}` and `b_{i,k+1} = a_{i,k}`.
fn third_columns(n: usize) -> Perm {
    let mut images = vec![0; n];
    if n >= 2 {
        images[1] = n - 1;
        for (j, img) in images.iter_mut().enumerate().skip(2) {
            *img = j - 1;
        }
    }
    Perm::from_images(images).expect("cyclic shift")
}

/// Third form: `b_n1 + Σ b_{i,i+1}` is maximal, the minor without row `n`
/// and column 2 has the finite maximal transversal `b_11 + Σ_{i≥2} b_{i,i+1}`
/// and `b_n1` is the maximum of column 1.
pub fn detect_third_form(b: &OrderMatrix) -> bool {
    b.is_square()
        && b.rows() >= 2
        && permute(b, &Perm::identity(b.rows()), &third_columns(b.rows()).inverse())
            .is_ok_and(|a| detect_second_form(&a))
}

pub fn third_from_second(a: &OrderMatrix) -> Result<OrderMatrix> {
    if !detect_second_form(a) {
        return Err(Error::NotInForm(Form::Second.name()));
    }
    permute(a, &Perm::identity(a.rows()), &third_columns(a.rows()))
}

pub fn second_from_third(b: &OrderMatrix) -> Result<OrderMatrix> {
    if !detect_third_form(b) {
        return Err(Error::NotInForm(Form::Third.name()));
    }
    permute(b, &Perm::identity(b.rows()), &third_columns(b.rows()).inverse())
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::HypothesisFailure(msg.into())
}

fn common_checks(a: &OrderMatrix) -> Result<(usize, super::Tdet)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n < 2 {
        return Err(hypothesis("the matrix needs at least two rows"));
    }
    if a.column(0).iter().filter(|e| e.is_finite()).count() < 2 {
        return Err(hypothesis("column 1 has fewer than two finite entries"));
    }
    let t = tdet(a)?;
    if !t.value.is_finite() {
        return Err(hypothesis("the matrix has no finite transversal"));
    }
    Ok((n, t))
}

/// Bring `a` into first form without moving column 1.
///
/// Needs a maximal transversal whose entry `c` in column 1 is finite and
/// another row whose column-1 entry is at least `c`.
pub fn to_first_form(a: &OrderMatrix) -> Result<FormCertificate> {
    let (n, t) = common_checks(a)?;
    if detect_first_form(a) {
        return Ok(FormCertificate::identity(n, Form::First));
    }
    let column = a.column(0);
    let choice = t.witnesses.iter().find_map(|rho| {
        let r = rho.inverse().apply(0);
        let c = column[r];
        (0..n).find(|&i| i != r && column[i] >= c).map(|i| (rho, i))
    });
    let Some((rho, i)) = choice else {
        return Err(hypothesis(
            "every maximal transversal meets column 1 in its unique maximum",
        ));
    };
    let mut arr = Arrangement::new(n);
    // Rows in the order ρ⁻¹ put the transversal on the diagonal.
    arr.then(&rho.inverse(), &Perm::identity(n));
    let t_pos = rho.apply(i);
    let swap = Perm::transposition(n, 1, t_pos);
    arr.then(&swap, &swap);
    let cert = arr.certificate(Form::First, None);
    if !detect_first_form(&cert.apply(a)?) {
        return Err(Error::InvariantViolation(format!(
            "first-form arrangement {cert} fails the detector"
        )));
    }
    Ok(cert)
}

/// Bring `a` into second form by the search through the shifted
/// transversals.
///
/// Needs every maximal transversal to meet column 1 in the (finite) column
/// maximum. With more than [`super::BRUTE_FORCE_LIMIT`] rows only one
/// maximal transversal is examined.
pub fn to_second_form(a: &OrderMatrix) -> Result<FormCertificate> {
    let (n, t) = common_checks(a)?;
    let column = a.column(0);
    let max = *column.iter().max().expect("n >= 2");
    for rho in &t.witnesses {
        if column[rho.inverse().apply(0)] != max {
            return Err(hypothesis(format!(
                "the maximal transversal {rho} does not meet column 1 in its maximum"
            )));
        }
    }
    if detect_second_form(a) {
        return Ok(FormCertificate::identity(n, Form::Second));
    }

    // Rows: all but r in their original order, then r. Columns: 1, then the
    // transversal's columns for those rows, giving the pattern i → i+1, n → 1.
    let rho = &t.witnesses[0];
    let r = rho.inverse().apply(0);
    let mut rows: Vec<usize> = (0..n).filter(|&i| i != r).collect();
    rows.push(r);
    let mut cols = vec![0];
    cols.extend(rows[..n - 1].iter().map(|&i| rho.apply(i)));
    let mut arr = Arrangement::new(n);
    arr.then(
        &Perm::from_images(rows).expect("row order"),
        &Perm::from_images(cols).expect("column order"),
    );
    let b = permute(a, &arr.sigma, &arr.tau)?;

    // Smallest i whose shifted transversal is maximal in the minor without
    // row n and column i+1 (all 0-based below: i in 0..n-1, column i+1).
    let mut tried = Vec::new();
    let found = (0..n - 1).find(|&i| {
        let shifted: ExtInt = (0..n - 1)
            .map(|j| if j == i { b.get(j, 0) } else { b.get(j, j + 1) })
            .sum();
        let best = tdet(&b.minor(n - 1, i + 1)).map(|t| t.value).unwrap_or(ExtInt::NegInf);
        tried.push((i + 1, shifted, best));
        shifted.is_finite() && shifted == best
    });
    let Some(i) = found else {
        return Err(Error::InvariantViolation(format!(
            "no index satisfies the second-form search on {:?}; (i, shifted, minor tdet) = {:?}",
            b.to_ints(),
            tried
        )));
    };
    let rows_swap = Perm::transposition(n, 0, i);
    let cols_swap = Perm::transposition(n, 1, i + 1);
    arr.then(&rows_swap, &cols_swap);
    arr.then(&Perm::identity(n), &third_columns(n).inverse());
    let cert = arr.certificate(Form::Second, Some(i + 1));
    let out = cert.apply(a)?;
    if !detect_second_form(&out) {
        return Err(Error::InvariantViolation(format!(
            "second-form certificate {cert} fails the detector on {:?}",
            out.to_ints()
        )));
    }
    Ok(cert)
}
