//! Reduction drivers: form-preserving division steps, scripted traces and
//! the linear reduction loop.

use std::cmp::Ordering;
use std::fmt;

use crate::diffpoly::{Convention, DiffPoly, ExtInt, Ranking, RingRef};
use crate::error::{Error, Result};
use crate::reduction::{
    autoreduce_loop, dimensions, membership, ritt_divide, AutoreducedSet, DimBound, DivisionCertificate,
    DivisionMode, DEFAULT_MAX_ROUNDS,
};
use crate::tropical::{
    detect_first_form, detect_second_form, jacobi_number, ritt_compare, to_first_form, to_second_form,
    OrderMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    FirstForm,
    SecondForm,
    Scripted,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::FirstForm => "first-form",
            StepKind::SecondForm => "second-form",
            StepKind::Scripted => "scripted",
        }
    }
}

/// One division `u_divided ← remainder of u_divided by u_by in x_var`.
///
/// Matrices and Jacobi numbers refer to the block the step acted on: the
/// whole system for the public step functions and scripted divisions, the
/// arranged active block inside [`linear_reduce`].
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub divided: usize,
    pub by: usize,
    pub var: usize,
    pub certificate: DivisionCertificate,
    pub matrix_before: OrderMatrix,
    pub matrix_after: OrderMatrix,
    pub j_before: ExtInt,
    pub j_after: ExtInt,
}

impl ReductionStep {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.name(),
            "divided": self.divided,
            "by": self.by,
            "var": self.var,
            "J_before": self.j_before.to_json(),
            "J_after": self.j_after.to_json(),
            "matrix_after": self.matrix_after.to_json(),
            "remainder": self.certificate.remainder.to_string(),
        })
    }
}

/// Steps together with the Jacobi numbers of the whole system, starting
/// with the initial value.
#[derive(Debug, Clone)]
pub struct Trace {
    pub steps: Vec<ReductionStep>,
    pub j_sequence: Vec<ExtInt>,
    pub j_sequence_weak: Vec<ExtInt>,
    pub system: Vec<DiffPoly>,
}

impl Trace {
    fn start(system: &[DiffPoly]) -> Result<Trace> {
        let (strong, weak) = jacobi_pair(system)?;
        Ok(Trace {
            steps: Vec::new(),
            j_sequence: vec![strong],
            j_sequence_weak: vec![weak],
            system: system.to_vec(),
        })
    }

    fn push(&mut self, step: ReductionStep, system: Vec<DiffPoly>) -> Result<()> {
        let (strong, weak) = jacobi_pair(&system)?;
        self.j_sequence.push(strong);
        self.j_sequence_weak.push(weak);
        self.steps.push(step);
        self.system = system;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "steps": self.steps.iter().map(ReductionStep::to_json).collect::<Vec<_>>(),
            "J_sequence": self.j_sequence.iter().map(|j| j.to_json()).collect::<Vec<_>>(),
            "J_sequence_weak": self.j_sequence_weak.iter().map(|j| j.to_json()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq = |v: &[ExtInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        writeln!(f, "J (strong): {}", seq(&self.j_sequence))?;
        write!(f, "J (weak):   {}", seq(&self.j_sequence_weak))?;
        for (k, s) in self.steps.iter().enumerate() {
            write!(
                f,
                "\nstep {}: {} u{} by u{} in {}: J {} -> {}\n  remainder: {}",
                k + 1,
                s.kind.name(),
                s.divided + 1,
                s.by + 1,
                self.system[0].ring().name(s.var),
                s.j_before,
                s.j_after,
                s.certificate.remainder
            )?;
        }
        Ok(())
    }
}

fn ring_of(system: &[DiffPoly]) -> Result<RingRef> {
    let first = system
        .first()
        .ok_or_else(|| Error::ShapeMismatch("empty system".into()))?;
    if system.iter().any(|p| !p.same_ring(first)) {
        return Err(Error::RingMismatch);
    }
    Ok(first.ring().clone())
}

pub fn order_matrix(system: &[DiffPoly], convention: Convention) -> Result<OrderMatrix> {
    let ring = ring_of(system)?;
    OrderMatrix::of_system(system, &ring, convention)
}

/// Strong and weak Jacobi numbers of a square system.
pub fn jacobi_pair(system: &[DiffPoly]) -> Result<(ExtInt, ExtInt)> {
    Ok((
        jacobi_number(&order_matrix(system, Convention::Strong)?)?,
        jacobi_number(&order_matrix(system, Convention::Weak)?)?,
    ))
}

/// Strong order matrix of the block `rows × cols`, in that order.
fn block_matrix(system: &[DiffPoly], rows: &[usize], cols: &[usize]) -> Result<OrderMatrix> {
    let entries = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| system[i].ord(j, Convention::Strong)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let ring = system[0].ring();
    OrderMatrix::new(entries, Convention::Strong)?.with_labels(
        rows.iter().map(|i| format!("u{}", i + 1)).collect(),
        cols.iter().map(|&j| ring.name(j).to_string()).collect(),
    )
}

/// The separant of the pivot in `x_var` must be a unit, or a charset must
/// show it does not vanish on the component.
fn check_separant(
    pivot: &DiffPoly,
    index: usize,
    var: usize,
    charset: Option<&AutoreducedSet>,
) -> Result<()> {
    let s = pivot.separant(var)?;
    if s.is_nonzero_constant() {
        return Ok(());
    }
    let name = pivot.ring().name(var);
    match charset {
        None => Err(Error::NonUnitSeparant {
            equation: index + 1,
            var: name.to_string(),
            separant: s.to_string(),
        }),
        Some(cs) if membership(&s, cs)? => Err(Error::degenerate(index + 1, name, &s)),
        Some(_) => Ok(()),
    }
}

/// Divide `rows[dividend_pos]` by `rows[0]` in `cols[0]` and check the
/// inequalities that hold for form-preserving steps on the block.
fn form_step(
    system: &[DiffPoly],
    rows: &[usize],
    cols: &[usize],
    kind: StepKind,
    ranking: &Ranking,
    charset: Option<&AutoreducedSet>,
) -> Result<(Vec<DiffPoly>, ReductionStep)> {
    let dividend_pos = match kind {
        StepKind::FirstForm => 1,
        _ => rows.len() - 1,
    };
    let before = block_matrix(system, rows, cols)?;
    let j_before = jacobi_number(&before)?;
    if !j_before.is_finite() {
        return Err(Error::HypothesisFailure(
            "form steps need a finite Jacobi number".into(),
        ));
    }
    let (pivot, dividend, var) = (rows[0], rows[dividend_pos], cols[0]);
    check_separant(&system[pivot], pivot, var, charset)?;
    let cert = ritt_divide(
        &system[dividend],
        std::slice::from_ref(&system[pivot]),
        DivisionMode::Partial,
        ranking,
        Some(var),
    )?;
    if !cert.verify(&system[dividend], std::slice::from_ref(&system[pivot])) {
        return Err(Error::InvariantViolation("division certificate identity fails".into()));
    }
    let mut next = system.to_vec();
    next[dividend] = cert.remainder.clone();
    let after = block_matrix(&next, rows, cols)?;
    let j_after = jacobi_number(&after)?;

    if j_after > j_before {
        return Err(Error::InvariantViolation(format!(
            "{} step raised the Jacobi number from {j_before} to {j_after}",
            kind.name()
        )));
    }
    if next[dividend] != system[dividend] && ritt_compare(&after, &before)? != Ordering::Less {
        return Err(Error::InvariantViolation(format!(
            "{} step did not decrease the matrix in Ritt's ordering",
            kind.name()
        )));
    }
    let shift = before.get(dividend_pos, 0).finite().zip(before.get(0, 0).finite()).map(|(a, b)| a - b);
    for j in 0..cols.len() {
        let bound = match shift {
            Some(d) => before.get(dividend_pos, j).max(before.get(0, j).offset(d)),
            None => before.get(dividend_pos, j),
        };
        if after.get(dividend_pos, j) > bound {
            return Err(Error::InvariantViolation(format!(
                "division inequality fails in column {}",
                j + 1
            )));
        }
    }

    let step = ReductionStep {
        kind,
        divided: dividend,
        by: pivot,
        var,
        certificate: cert,
        matrix_before: before,
        matrix_after: after,
        j_before,
        j_after,
    };
    Ok((next, step))
}

fn square_indices(system: &[DiffPoly]) -> Result<Vec<usize>> {
    let ring = ring_of(system)?;
    if ring.len() != system.len() {
        return Err(Error::NotSquare {
            rows: system.len(),
            cols: ring.len(),
        });
    }
    Ok((0..system.len()).collect())
}

/// Replace `u_2` by its partial remainder by `u_1` in `x_1`; the order
/// matrix must be in first form.
pub fn step_first_form(
    system: &[DiffPoly],
    ranking: &Ranking,
    charset: Option<&AutoreducedSet>,
) -> Result<(Vec<DiffPoly>, ReductionStep)> {
    let idx = square_indices(system)?;
    if !detect_first_form(&order_matrix(system, Convention::Strong)?) {
        return Err(Error::NotInForm("first form"));
    }
    form_step(system, &idx, &idx, StepKind::FirstForm, ranking, charset)
}

/// Replace `u_n` by its partial remainder by `u_1` in `x_1`; the order
/// matrix must be in second form.
pub fn step_second_form(
    system: &[DiffPoly],
    ranking: &Ranking,
    charset: Option<&AutoreducedSet>,
) -> Result<(Vec<DiffPoly>, ReductionStep)> {
    let idx = square_indices(system)?;
    if !detect_second_form(&order_matrix(system, Convention::Strong)?) {
        return Err(Error::NotInForm("second form"));
    }
    form_step(system, &idx, &idx, StepKind::SecondForm, ranking, charset)
}

/// One entry of a division script: divide `dividend` by `divisor` in `var`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScriptEntry {
    pub dividend: usize,
    pub divisor: usize,
    pub var: usize,
}

/// Unrestricted divisions in the given order, without monotonicity checks.
pub fn scripted_divide(
    system: &[DiffPoly],
    script: &[ScriptEntry],
    ranking: &Ranking,
    mode: DivisionMode,
) -> Result<Trace> {
    let ring = ring_of(system)?;
    let mut trace = Trace::start(system)?;
    let mut current = system.to_vec();
    for (index, e) in script.iter().enumerate() {
        let bad = |reason: String| Error::BadScriptEntry { index: index + 1, reason };
        if e.dividend >= current.len() || e.divisor >= current.len() {
            return Err(bad("equation index out of range".into()));
        }
        if e.dividend == e.divisor {
            return Err(bad("an equation cannot be divided by itself".into()));
        }
        if e.var >= ring.len() {
            return Err(bad("variable index out of range".into()));
        }
        let name = ring.name(e.var);
        let g = &current[e.divisor];
        let f = &current[e.dividend];
        let (Some(r), fo) = (g.order_in(e.var), f.order_in(e.var)) else {
            return Err(bad(format!("u{} does not involve {name}", e.divisor + 1)));
        };
        if fo.is_none_or(|o| o < r) {
            return Err(bad(format!(
                "u{} has lower order in {name} than u{}",
                e.dividend + 1,
                e.divisor + 1
            )));
        }
        let before = order_matrix(&current, Convention::Strong)?;
        let j_before = jacobi_number(&before)?;
        let cert = ritt_divide(f, std::slice::from_ref(g), mode, ranking, Some(e.var))?;
        if !cert.verify(f, std::slice::from_ref(g)) {
            return Err(Error::InvariantViolation("division certificate identity fails".into()));
        }
        let mut next = current.clone();
        next[e.dividend] = cert.remainder.clone();
        let after = order_matrix(&next, Convention::Strong)?;
        let j_after = jacobi_number(&after)?;
        let step = ReductionStep {
            kind: StepKind::Scripted,
            divided: e.dividend,
            by: e.divisor,
            var: e.var,
            certificate: cert,
            matrix_before: before,
            matrix_after: after,
            j_before,
            j_after,
        };
        trace.push(step, next.clone())?;
        current = next;
    }
    Ok(trace)
}

/// Parse `"0/2@x;1/2@x"`: dividend and divisor indices (0-based) and a
/// variable name, entries separated by `;`.
pub fn parse_script(text: &str, ring: &crate::diffpoly::Ring) -> Result<Vec<ScriptEntry>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(index, entry)| {
            let bad = |reason: &str| Error::BadScriptEntry {
                index: index + 1,
                reason: format!("`{entry}`: {reason}"),
            };
            let (pair, var) = entry.split_once('@').ok_or_else(|| bad("expected `i/j@var`"))?;
            let (i, j) = pair.split_once('/').ok_or_else(|| bad("expected `i/j@var`"))?;
            let dividend = i.trim().parse().map_err(|_| bad("bad dividend index"))?;
            let divisor = j.trim().parse().map_err(|_| bad("bad divisor index"))?;
            let var = ring.index_of(var.trim()).map_err(|_| bad("unknown variable"))?;
            Ok(ScriptEntry { dividend, divisor, var })
        })
        .collect()
}

/// Result of [`linear_reduce`].
#[derive(Debug, Clone)]
pub struct LinearReduction {
    pub trace: Trace,
    pub charset: AutoreducedSet,
    pub dims: (usize, DimBound),
    /// Rows and columns fixed by a column with a single finite entry, in
    /// the order they were found.
    pub pivots: Vec<(usize, usize)>,
    pub ranking: Ranking,
}

/// Step budget `10·n·(1 + max order)`.
pub fn step_budget(system: &[DiffPoly]) -> usize {
    let max_order = system.iter().filter_map(DiffPoly::max_order).max().unwrap_or(0) as usize;
    10 * system.len() * (1 + max_order)
}

/// Elimination ranking with the first fixed column highest, then the next
/// one, and the columns never fixed lowest.
pub fn triangular_ranking(pivots: &[(usize, usize)], rest: &[usize]) -> Result<Ranking> {
    let mut blocks = Vec::new();
    if !rest.is_empty() {
        blocks.push(rest.to_vec());
    }
    blocks.extend(pivots.iter().rev().map(|&(_, c)| vec![c]));
    if blocks.is_empty() {
        return Ok(Ranking::Orderly);
    }
    Ranking::elimination(blocks)
}

/// Reduce a square linear system column by column. Whenever some column of
/// the active block has a single finite entry, that row and column are
/// fixed and the complementary block remains; otherwise the block is
/// brought into first form (or else second form) and divided in its first
/// column.
///
/// The final system is autoreduced under `ranking`, or by default under
/// [`triangular_ranking`], which keeps the nested triangular shape.
pub fn linear_reduce(system: &[DiffPoly], ranking: Option<&Ranking>) -> Result<LinearReduction> {
    let idx = square_indices(system)?;
    if let Some((i, _)) = system.iter().enumerate().find(|(_, p)| !p.is_linear()) {
        return Err(Error::HypothesisFailure(format!("equation {} is not linear", i + 1)));
    }
    let budget = step_budget(system);
    let mut trace = Trace::start(system)?;
    let j_initial = trace.j_sequence[0];
    let mut current = system.to_vec();
    let mut rows = idx.clone();
    let mut cols = idx;
    let mut pivots = Vec::new();

    while !rows.is_empty() {
        let block = block_matrix(&current, &rows, &cols)?;
        if !jacobi_number(&block)?.is_finite() {
            break;
        }
        // A finite Jacobi number leaves at least one finite entry per column.
        let single = (0..cols.len()).find_map(|j| {
            let mut finite = (0..rows.len()).filter(|&i| block.get(i, j).is_finite());
            match (finite.next(), finite.next()) {
                (Some(i), None) => Some((i, j)),
                _ => None,
            }
        });
        if let Some((i, j)) = single {
            pivots.push((rows.remove(i), cols.remove(j)));
            continue;
        }
        if trace.steps.len() >= budget {
            return Err(Error::NoConvergence(budget));
        }
        let (cert, kind) = match to_first_form(&block) {
            Ok(cert) => (cert, StepKind::FirstForm),
            Err(Error::HypothesisFailure(_)) => (to_second_form(&block)?, StepKind::SecondForm),
            Err(e) => return Err(e),
        };
        rows = (0..rows.len()).map(|i| rows[cert.row_perm.apply(i)]).collect();
        cols = (0..cols.len()).map(|j| cols[cert.col_perm.apply(j)]).collect();
        let (next, step) = form_step(&current, &rows, &cols, kind, &Ranking::Orderly, None)?;
        trace.push(step, next.clone())?;
        let last = trace.j_sequence.len() - 1;
        if trace.j_sequence[last] > trace.j_sequence[last - 1] {
            return Err(Error::InvariantViolation("Jacobi number increased during reduction".into()));
        }
        current = next;
    }

    let final_ranking = match ranking {
        Some(r) => r.clone(),
        None => triangular_ranking(&pivots, &cols)?,
    };
    let result = autoreduce_loop(&current, &final_ranking, DEFAULT_MAX_ROUNDS)?;
    if !result.converged {
        return Err(Error::NoConvergence(DEFAULT_MAX_ROUNDS));
    }
    let dims = dimensions(&result.charset, system.len())?;
    if let (0, DimBound::Finite(bound)) = dims {
        if ExtInt::Fin(bound) > j_initial {
            return Err(Error::InvariantViolation(format!(
                "dimension bound {bound} exceeds the initial Jacobi number {j_initial}"
            )));
        }
    }
    Ok(LinearReduction {
        trace,
        charset: result.charset,
        dims,
        pivots,
        ranking: final_ranking,
    })
}

/// Whether the matrix is nested triangular: some column has exactly one
/// finite entry and the complementary minor is again nested triangular.
pub fn is_nested_triangular(a: &OrderMatrix) -> bool {
    if a.rows() == 0 {
        return true;
    }
    (0..a.cols()).any(|j| {
        let finite: Vec<usize> = (0..a.rows()).filter(|&i| a.get(i, j).is_finite()).collect();
        finite.len() == 1 && is_nested_triangular(&a.minor(finite[0], j))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::Ring;
    use crate::text::parse_system;

    fn system(text: &str) -> Vec<DiffPoly> {
        parse_system(text, None).unwrap().equations
    }

    fn increasing() -> Vec<DiffPoly> {
        system("vars x, y, z\nx^(100) + y' + z'\nx^(50) + y + z\nx' + y' + 1\n")
    }

    fn fin(v: &[i64]) -> Vec<ExtInt> {
        v.iter().map(|&x| ExtInt::Fin(x)).collect()
    }

    #[test]
    fn increasing_trace() {
        let sys = increasing();
        let script = parse_script("0/2@x;1/2@x", sys[0].ring()).unwrap();
        let trace = scripted_divide(&sys, &script, &Ranking::Orderly, DivisionMode::Proper).unwrap();
        assert_eq!(trace.j_sequence_weak, fin(&[101, 150, 101]));
        assert_eq!(trace.j_sequence, fin(&[101, 101, 101]));
        assert_eq!(trace.system[0].to_string(), "-y^(100) + z' + y'");
        assert_eq!(trace.system[1].to_string(), "-y^(50) + z + y");
    }

    #[test]
    fn empty_script() {
        let trace = scripted_divide(&increasing(), &[], &Ranking::Orderly, DivisionMode::Proper).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.j_sequence, fin(&[101]));
    }

    #[test]
    fn bad_script_entries() {
        let sys = increasing();
        let ring = sys[0].ring().clone();
        for script in ["2/0@x", "0/0@x", "0/7@x", "2/0@z"] {
            let s = parse_script(script, &ring).unwrap();
            assert!(matches!(
                scripted_divide(&sys, &s, &Ranking::Orderly, DivisionMode::Proper),
                Err(Error::BadScriptEntry { index: 1, .. })
            ), "{script}");
        }
        assert!(parse_script("0-2@x", &ring).is_err());
        assert!(parse_script("0/2@q", &ring).is_err());
    }

    #[test]
    fn second_form_example_raises_j() {
        let sys = system("vars x, y, z\nx + x' + y'' + z'''\nx' + y' + z'\nx'' + y' + z'\n");
        let before = order_matrix(&sys, Convention::Strong).unwrap();
        assert_eq!(before.to_ints(), vec![vec![1, 2, 3], vec![1, 1, 1], vec![2, 1, 1]]);
        assert!(matches!(step_second_form(&sys, &Ranking::Orderly, None), Err(Error::NotInForm(_))));
        let script = parse_script("2/0@x", sys[0].ring()).unwrap();
        let trace = scripted_divide(&sys, &script, &Ranking::Orderly, DivisionMode::Proper).unwrap();
        assert_eq!(trace.steps[0].matrix_after.to_ints(), vec![vec![1, 2, 3], vec![1, 1, 1], vec![1, 3, 4]]);
        assert_eq!(trace.j_sequence, fin(&[6, 7]));
        assert_eq!(trace.system[2].to_string(), "-z^(4) - y''' + z' + y' - x'");
    }

    #[test]
    fn first_form_step_on_linear_system() {
        let sys = system("vars x, y\nx' + y\nx'' + y'\n");
        let (next, step) = step_first_form(&sys, &Ranking::Orderly, None).unwrap();
        assert!(step.j_after <= step.j_before);
        assert!(next[1].is_zero());
    }

    #[test]
    fn identity_step_when_already_reduced() {
        let sys = system("vars x, y\nx'^2 + y\nx' + y'\n");
        let r = Ring::new(&["x", "y"]).unwrap();
        let cs = AutoreducedSet::new(
            vec![crate::text::parse_poly("x'^2 + y", &r).unwrap()],
            Ranking::Orderly,
        )
        .unwrap();
        let sys: Vec<DiffPoly> = sys.iter().map(|p| p.reindex(&r, &[0, 1]).unwrap()).collect();
        let (next, step) = step_first_form(&sys, &Ranking::Orderly, Some(&cs)).unwrap();
        assert_eq!(next, sys);
        assert!(step.certificate.is_trivial());
    }

    #[test]
    fn separant_conditions() {
        let sys = system("vars x, y\nx'^2 + y\nx'' + y'\n");
        assert!(matches!(step_first_form(&sys, &Ranking::Orderly, None), Err(Error::NonUnitSeparant { .. })));
        let ring = sys[0].ring().clone();
        let cs = AutoreducedSet::new(vec![crate::text::parse_poly("x'", &ring).unwrap()], Ranking::Orderly).unwrap();
        assert!(matches!(step_first_form(&sys, &Ranking::Orderly, Some(&cs)), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn linear_reduce_examples() {
        let sys = system("vars x, y\nx' - x\ny' - x\n");
        let out = linear_reduce(&sys, None).unwrap();
        assert_eq!(out.dims, (0, DimBound::Finite(2)));
        assert!(out.trace.steps.is_empty());
        assert_eq!(out.pivots, vec![(1, 1), (0, 0)]);

        let out = linear_reduce(&increasing(), None).unwrap();
        assert!(out.trace.j_sequence.windows(2).all(|w| w[1] <= w[0]));
        match out.dims {
            (0, DimBound::Finite(b)) => assert!(b <= 101),
            (_, DimBound::Infinite) => {}
            other => panic!("{other:?}"),
        }
        let last = order_matrix(&out.trace.system, Convention::Strong).unwrap();
        assert!(is_nested_triangular(&last));
    }

    #[test]
    fn inconsistent_linear_system() {
        let sys = system("vars x, y\nx + y\nx + y + 1\n");
        assert!(matches!(linear_reduce(&sys, None), Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn nonlinear_input_is_rejected() {
        let sys = system("vars x\nx'^2\n");
        assert!(matches!(linear_reduce(&sys, None), Err(Error::HypothesisFailure(_))));
    }
}
