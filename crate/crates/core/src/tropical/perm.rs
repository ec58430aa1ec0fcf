use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}` acting on the left.
///
/// `compose` reads right to left: `a.compose(&b)` maps `i` to `a(b(i))`,
/// so in 1-based cycle notation `(12)(13) = (132)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Product of the given cycles (0-based), applied right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut out = Perm::identity(n);
        for cycle in cycles.iter().rev() {
            out = Perm::cycle(n, cycle)?.compose(&out);
        }
        Ok(out)
    }

    /// The cycle `c[0] → c[1] → … → c[0]`.
    pub fn cycle(n: usize, c: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for (k, &i) in c.iter().enumerate() {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("cycle {c:?} on {n} points")));
            }
            seen[i] = true;
            images[i] = c[(k + 1) % c.len()];
        }
        Ok(Perm { images })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Perm { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    /// Disjoint cycles of length at least two, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.images[i] == i).collect()
    }

    /// The single nontrivial cycle, if the permutation is one.
    pub fn as_cycle(&self) -> Option<Vec<usize>> {
        let mut cycles = self.cycles();
        (cycles.len() == 1).then(|| cycles.remove(0))
    }

    /// Every permutation of `n` points in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if current.len() == n {
                out.push(Perm {
                    images: current.clone(),
                });
                return;
            }
            for j in 0..n {
                if !used[j] {
                    used[j] = true;
                    current.push(j);
                    rec(n, current, used, out);
                    current.pop();
                    used[j] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Perm {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_action_convention() {
        let a = Perm::cycle(3, &[0, 1]).unwrap();
        let b = Perm::cycle(3, &[0, 2]).unwrap();
        let expected = Perm::cycle(3, &[0, 2, 1]).unwrap();
        assert_eq!(a.compose(&b), expected);
        assert_eq!(a.compose(&b).to_string(), "(1 3 2)");
        assert_eq!(Perm::from_cycles(3, &[vec![0, 1], vec![0, 2]]).unwrap(), expected);
    }

    #[test]
    fn inverse_and_cycles() {
        let p = Perm::from_cycles(5, &[vec![0, 2], vec![1, 3, 4]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 2], vec![1, 3, 4]]);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.to_string(), "(1 3)(2 4 5)");
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert!(p.as_cycle().is_none());
        assert_eq!(Perm::cycle(4, &[3, 1]).unwrap().as_cycle(), Some(vec![1, 3]));
    }

    #[test]
    fn validation() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![2, 0]).is_err());
        assert!(Perm::cycle(3, &[0, 3]).is_err());
        assert_eq!(Perm::all(4).len(), 24);
    }
}
