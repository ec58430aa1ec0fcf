//! Maximum-weight perfect assignment by the Hungarian method.

use super::perm::Perm;
use crate::diffpoly::ExtInt;

/// Minimum-cost assignment on a square cost matrix; returns `row → column`.
fn hungarian_min(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    // 1-based potentials and matching, column 0 is a sentinel.
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        if p[j] != 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Maximum transversal of a square matrix over `ℤ ∪ {−∞}`.
///
/// −∞ entries are replaced by a penalty small enough that any assignment
/// using one loses to every all-finite assignment; if the optimum still
/// uses one, no finite transversal exists.
pub fn max_assignment(entries: &[Vec<ExtInt>]) -> (ExtInt, Option<Perm>) {
    let n = entries.len();
    if n == 0 {
        return (ExtInt::ZERO, Some(Perm::identity(0)));
    }
    let finite: Vec<i64> = entries.iter().flatten().filter_map(|e| e.finite()).collect();
    let (Some(&lo), Some(&hi)) = (finite.iter().min(), finite.iter().max()) else {
        return (ExtInt::NegInf, None);
    };
    let penalty = lo - (n as i64) * (hi - lo) - 1;
    let cost: Vec<Vec<i64>> = entries
        .iter()
        .map(|row| row.iter().map(|e| -e.finite().unwrap_or(penalty)).collect())
        .collect();
    let assignment = hungarian_min(&cost);
    let value: ExtInt = assignment.iter().enumerate().map(|(i, &j)| entries[i][j]).sum();
    if value.is_finite() {
        (value, Some(Perm::from_images(assignment).expect("assignment is a permutation")))
    } else {
        (ExtInt::NegInf, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<ExtInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| if v < 0 { ExtInt::NegInf } else { ExtInt::Fin(v) }).collect())
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(max_assignment(&m(&[&[1, 18], &[0, 1]])).0, ExtInt::Fin(18));
        assert_eq!(max_assignment(&m(&[&[1, 18], &[-1, 1]])).0, ExtInt::Fin(2));
        assert_eq!(max_assignment(&m(&[&[1, 2, 3], &[1, 1, 1], &[2, 1, 1]])).0, ExtInt::Fin(6));
        assert_eq!(max_assignment(&m(&[&[-1, 5], &[-1, 2]])).0, ExtInt::NegInf);
        assert_eq!(max_assignment(&m(&[&[-1]])).0, ExtInt::NegInf);
    }

    #[test]
    fn witness_attains_value() {
        let a = m(&[&[3, -1, 2, 0], &[1, 4, -1, 2], &[0, 0, 5, 1], &[2, 3, 1, -1]]);
        let (v, w) = max_assignment(&a);
        let w = w.unwrap();
        let sum: ExtInt = (0..4).map(|i| a[i][w.apply(i)]).sum();
        assert_eq!(sum, v);
    }
}
