use std::cmp::Ordering;

use super::{DiffPoly, Derivative, Monomial, Ring};
use crate::error::{Error, Result};

/// A ranking on derivatives.
///
/// `Orderly` compares `(order, variable index)` lexicographically.
/// `Elimination` compares the block first (later blocks rank higher,
/// variables not listed sit below every block) and falls back to the
/// orderly comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum Ranking {
    #[default]
    Orderly,
    Elimination { blocks: Vec<Vec<usize>> },
}

impl Ranking {
    pub fn elimination(blocks: Vec<Vec<usize>>) -> Result<Ranking> {
        let mut seen = std::collections::BTreeSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidRanking("empty block".into()));
            }
            for &v in block {
                if !seen.insert(v) {
                    return Err(Error::InvalidRanking(format!("variable {v} in two blocks")));
                }
            }
        }
        Ok(Ranking::Elimination { blocks })
    }

    /// Parse `orderly` or `elim:b1;b2;…` where each block is a comma list of
    /// variable names, lowest block first.
    pub fn parse(text: &str, ring: &Ring) -> Result<Ranking> {
        let text = text.trim();
        if text == "orderly" {
            return Ok(Ranking::Orderly);
        }
        let body = text
            .strip_prefix("elim:")
            .ok_or_else(|| Error::InvalidRanking(format!("unknown ranking `{text}`")))?;
        let blocks = body
            .split(';')
            .map(|block| {
                block
                    .split(',')
                    .map(|name| ring.index_of(name.trim()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ranking::elimination(blocks)
    }

    pub fn render(&self, ring: &Ring) -> String {
        match self {
            Ranking::Orderly => "orderly".into(),
            Ranking::Elimination { blocks } => {
                let blocks: Vec<String> = blocks
                    .iter()
                    .map(|b| b.iter().map(|&v| ring.name(v)).collect::<Vec<_>>().join(","))
                    .collect();
                format!("elim:{}", blocks.join(";"))
            }
        }
    }

    fn block_of(&self, var: usize) -> usize {
        match self {
            Ranking::Orderly => 0,
            Ranking::Elimination { blocks } => blocks
                .iter()
                .position(|b| b.contains(&var))
                .map_or(0, |i| i + 1),
        }
    }

    pub fn cmp(&self, a: Derivative, b: Derivative) -> Ordering {
        self.block_of(a.var)
            .cmp(&self.block_of(b.var))
            .then_with(|| a.cmp(&b))
    }

    /// Lexicographic comparison of monomials after sorting their factors by
    /// this ranking.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if let Ranking::Orderly = self {
            return a.cmp(b);
        }
        let sorted = |m: &Monomial| {
            let mut f = m.factors().to_vec();
            f.sort_by(|x, y| self.cmp(y.0, x.0));
            f
        };
        let (fa, fb) = (sorted(a), sorted(b));
        for (x, y) in fa.iter().zip(&fb) {
            let o = self.cmp(x.0, y.0).then(x.1.cmp(&y.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        fa.len().cmp(&fb.len())
    }

    /// Compare polynomials by rank: leader first, then degree in the leader.
    /// Constants rank below every non-constant polynomial.
    pub fn cmp_rank(&self, f: &DiffPoly, g: &DiffPoly) -> Ordering {
        match (f.rank(self), g.rank(self)) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some((lf, df)), Some((lg, dg))) => self.cmp(lf, lg).then(df.cmp(&dg)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(var: usize, order: u32) -> Derivative {
        Derivative::new(var, order)
    }

    fn rankings() -> Vec<Ranking> {
        vec![
            Ranking::Orderly,
            Ranking::elimination(vec![vec![0, 2], vec![1]]).unwrap(),
            Ranking::elimination(vec![vec![3], vec![1], vec![0, 2]]).unwrap(),
        ]
    }

    #[test]
    fn ranking_axioms_on_a_grid() {
        for ranking in rankings() {
            for i in 0..=6 {
                for r in 0..=20 {
                    assert_eq!(ranking.cmp(d(i, r + 1), d(i, r)), Ordering::Greater);
                    for j in 0..=6 {
                        for s in 0..=20 {
                            if ranking.cmp(d(i, r), d(j, s)) == Ordering::Greater {
                                assert_eq!(
                                    ranking.cmp(d(i, r + 1), d(j, s + 1)),
                                    Ordering::Greater
                                );
                            }
                            let total = ranking.cmp(d(i, r), d(j, s));
                            assert_eq!(total == Ordering::Equal, (i, r) == (j, s));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn elimination_puts_later_blocks_on_top() {
        let ranking = Ranking::elimination(vec![vec![0], vec![1]]).unwrap();
        assert_eq!(ranking.cmp(d(1, 0), d(0, 50)), Ordering::Greater);
        assert_eq!(Ranking::Orderly.cmp(d(1, 0), d(0, 50)), Ordering::Less);
    }

    #[test]
    fn rejects_overlapping_blocks() {
        assert!(Ranking::elimination(vec![vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn parse_and_render() {
        let ring = Ring::new(&["x", "y", "z"]).unwrap();
        let r = Ranking::parse("elim:y;x,z", &ring).unwrap();
        assert_eq!(r, Ranking::Elimination { blocks: vec![vec![1], vec![0, 2]] });
        assert_eq!(r.render(&ring), "elim:y;x,z");
        assert!(Ranking::parse("lex", &ring).is_err());
        assert!(Ranking::parse("elim:q", &ring).is_err());
    }
}
