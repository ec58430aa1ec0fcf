//! Bipartite matching and functional-graph utilities.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A bipartite multigraph on `X = {0..left}` and `Y = {0..right}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    left: usize,
    right: usize,
    edges: BTreeMap<(usize, usize), usize>,
}

impl BipartiteMultigraph {
    /// Parallel edges are given by repeating a pair.
    pub fn new(left: usize, right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = BipartiteMultigraph {
            left,
            right,
            edges: BTreeMap::new(),
        };
        for &(x, y) in edges {
            if x >= left || y >= right {
                return Err(Error::InvalidGraph(format!("edge ({x}, {y}) out of range")));
            }
            *g.edges.entry((x, y)).or_insert(0) += 1;
        }
        Ok(g)
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn multiplicity(&self, x: usize, y: usize) -> usize {
        self.edges.get(&(x, y)).copied().unwrap_or(0)
    }

    /// Edges with multiplicity, sorted.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().map(|(&e, &m)| (e, m))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    /// Distinct right neighbours of `x`.
    pub fn neighbours(&self, x: usize) -> Vec<usize> {
        self.edges.range((x, 0)..(x + 1, 0)).map(|(&(_, y), _)| y).collect()
    }

    pub fn left_degree(&self, x: usize) -> usize {
        self.edges.range((x, 0)..(x + 1, 0)).map(|(_, &m)| m).sum()
    }

    pub fn right_degree(&self, y: usize) -> usize {
        self.edges.iter().filter(|((_, b), _)| *b == y).map(|(_, &m)| m).sum()
    }

    fn remove_matching(&mut self, m: &Matching) {
        for &(x, y) in &m.pairs {
            let e = self.edges.get_mut(&(x, y)).expect("matching edge present");
            *e -= 1;
            if *e == 0 {
                self.edges.remove(&(x, y));
            }
        }
    }
}

/// Pairs `(x, y)` with distinct left and distinct right ends.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_saturating(&self, g: &BipartiteMultigraph) -> bool {
        self.is_valid(g) && self.pairs.len() == g.left
    }

    /// Every pair is an edge and no end is used twice.
    pub fn is_valid(&self, g: &BipartiteMultigraph) -> bool {
        let xs: BTreeSet<usize> = self.pairs.iter().map(|p| p.0).collect();
        let ys: BTreeSet<usize> = self.pairs.iter().map(|p| p.1).collect();
        xs.len() == self.pairs.len()
            && ys.len() == self.pairs.len()
            && self.pairs.iter().all(|&(x, y)| g.multiplicity(x, y) > 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.pairs)
    }
}

/// Outcome of [`hall_matching`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HallResult {
    Saturated(Matching),
    /// `set ⊆ X` with `|N(set)| < |set|`.
    Violation { set: Vec<usize>, neighbours: Vec<usize> },
}

fn augment(g: &BipartiteMultigraph, x: usize, seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for y in g.neighbours(x) {
        if seen[y] {
            continue;
        }
        seen[y] = true;
        if match_right[y].is_none_or(|x2| augment(g, x2, seen, match_right)) {
            match_right[y] = Some(x);
            return true;
        }
    }
    false
}

/// Maximum matching by augmenting paths.
pub fn maximum_matching(g: &BipartiteMultigraph) -> Matching {
    let mut match_right = vec![None; g.right];
    for x in 0..g.left {
        let mut seen = vec![false; g.right];
        augment(g, x, &mut seen, &mut match_right);
    }
    let mut pairs: Vec<(usize, usize)> = match_right
        .iter()
        .enumerate()
        .filter_map(|(y, x)| x.map(|x| (x, y)))
        .collect();
    pairs.sort();
    Matching { pairs }
}

/// A matching saturating `X`, or a set violating Hall's condition.
pub fn hall_matching(g: &BipartiteMultigraph) -> HallResult {
    let mut match_right: Vec<Option<usize>> = vec![None; g.right];
    for x in 0..g.left {
        let mut seen = vec![false; g.right];
        if augment(g, x, &mut seen, &mut match_right) {
            continue;
        }
        // Alternating search from x: every reachable right vertex is
        // matched into the reachable left set, which is one larger.
        let mut set = BTreeSet::from([x]);
        let mut neighbours = BTreeSet::new();
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for y in g.neighbours(u) {
                if neighbours.insert(y) {
                    let partner = match_right[y].expect("no augmenting path exists");
                    if set.insert(partner) {
                        queue.push_back(partner);
                    }
                }
            }
        }
        return HallResult::Violation {
            set: set.into_iter().collect(),
            neighbours: neighbours.into_iter().collect(),
        };
    }
    let mut pairs: Vec<(usize, usize)> = match_right
        .iter()
        .enumerate()
        .filter_map(|(y, x)| x.map(|x| (x, y)))
        .collect();
    pairs.sort();
    HallResult::Saturated(Matching { pairs })
}

/// Split a `k`-regular bipartite multigraph into `k` perfect matchings whose
/// union, with multiplicity, is the edge multiset.
pub fn decompose_regular(g: &BipartiteMultigraph, k: usize) -> Result<Vec<Matching>> {
    if k == 0 {
        return Err(Error::InvalidGraph("regularity degree must be positive".into()));
    }
    for x in 0..g.left {
        let degree = g.left_degree(x);
        if degree != k {
            return Err(Error::NotRegular { k, side: "left", vertex: x, degree });
        }
    }
    for y in 0..g.right {
        let degree = g.right_degree(y);
        if degree != k {
            return Err(Error::NotRegular { k, side: "right", vertex: y, degree });
        }
    }
    let mut rest = g.clone();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        match hall_matching(&rest) {
            HallResult::Saturated(m) => {
                rest.remove_matching(&m);
                out.push(m);
            }
            HallResult::Violation { set, .. } => {
                return Err(Error::InvariantViolation(format!(
                    "regular multigraph violates Hall's condition on {set:?}"
                )))
            }
        }
    }
    Ok(out)
}

/// A directed cycle of the functional graph `v → succ[v]`, found by
/// walking from vertex 0; returned in walk order from its first vertex.
pub fn find_directed_cycle(succ: &[usize]) -> Result<Vec<usize>> {
    let n = succ.len();
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    for (v, &w) in succ.iter().enumerate() {
        if w >= n {
            return Err(Error::InvalidGraph(format!("successor {w} of {v} out of range")));
        }
        if w == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {v}")));
        }
    }
    let mut position = vec![None; n];
    let mut walk = Vec::new();
    let mut v = 0;
    while position[v].is_none() {
        position[v] = Some(walk.len());
        walk.push(v);
        v = succ[v];
    }
    Ok(walk.split_off(position[v].expect("revisited vertex")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph() {
        let edges: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        let g = BipartiteMultigraph::new(3, 3, &edges).unwrap();
        match hall_matching(&g) {
            HallResult::Saturated(m) => assert!(m.is_saturating(&g)),
            other => panic!("{other:?}"),
        }
        let parts = decompose_regular(&g, 3).unwrap();
        assert_eq!(parts.len(), 3);
        let covered: BTreeSet<(usize, usize)> = parts.iter().flat_map(|m| m.pairs.clone()).collect();
        assert_eq!(covered.len(), 9);
    }

    #[test]
    fn hall_violation() {
        let g = BipartiteMultigraph::new(2, 2, &[(0, 0), (1, 0)]).unwrap();
        assert_eq!(
            hall_matching(&g),
            HallResult::Violation {
                set: vec![0, 1],
                neighbours: vec![0]
            }
        );
    }

    #[test]
    fn one_regular_is_its_own_matching() {
        let g = BipartiteMultigraph::new(3, 3, &[(0, 2), (1, 0), (2, 1)]).unwrap();
        let parts = decompose_regular(&g, 1).unwrap();
        assert_eq!(parts, vec![Matching { pairs: vec![(0, 2), (1, 0), (2, 1)] }]);
    }

    #[test]
    fn irregular_input_is_named() {
        let g = BipartiteMultigraph::new(2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(matches!(
            decompose_regular(&g, 2),
            Err(Error::NotRegular { side: "left", vertex: 1, degree: 1, .. })
        ));
        assert!(BipartiteMultigraph::new(1, 1, &[(0, 1)]).is_err());
    }

    #[test]
    fn directed_cycles() {
        assert_eq!(find_directed_cycle(&[1, 2, 0]).unwrap(), vec![0, 1, 2]);
        assert_eq!(find_directed_cycle(&[1, 0, 0]).unwrap(), vec![0, 1]);
        assert_eq!(find_directed_cycle(&[2, 0, 3, 2]).unwrap(), vec![2, 3]);
        assert!(find_directed_cycle(&[0, 0]).is_err());
        assert!(find_directed_cycle(&[5, 0]).is_err());
    }
}
