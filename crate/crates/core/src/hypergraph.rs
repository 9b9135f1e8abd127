//! Abstract hypergraphs, colorings and the exact search oracles.
//!
//! The oracles are exhaustive backtracking searches with a node budget.
//! Running out of budget is reported as [`SearchOutcome::BudgetExhausted`]
//! and is never conflated with unsatisfiability.

use std::collections::BTreeSet;

use thiserror::Error;

/// Sorted, duplicate-free list of vertex ids.
pub type Hyperedge = Vec<usize>;

/// Default node budget of the exact oracles.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {edge:?} references vertex {vertex} outside 0..{n}")]
    VertexOutOfRange {
        edge: Vec<usize>,
        vertex: usize,
        n: usize,
    },
    #[error("empty hyperedge")]
    EmptyEdge,
    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("coloring covers {got} vertices, hypergraph has {n}")]
    PartialColoring { got: usize, n: usize },
    #[error("color {color} of vertex {vertex} is outside 1..={k}")]
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        k: usize,
    },
    #[error("vertex counts differ: {0} vs {1}")]
    MismatchedVertexCount(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
}

impl Hypergraph {
    /// Validates ids, sorts every edge and the edge list, drops duplicate
    /// edges.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let mut canonical = BTreeSet::new();
        for mut edge in edges {
            if edge.is_empty() {
                return Err(HypergraphError::EmptyEdge);
            }
            if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { edge, vertex, n });
            }
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex(edge));
            }
            canonical.insert(edge);
        }
        Ok(Hypergraph {
            n,
            edges: canonical.into_iter().collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Hypergraph { n, edges: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// Common edge size, if every edge has the same size and there is at
    /// least one edge.
    pub fn uniformity(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == first).then_some(first)
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        self.edges
            .binary_search_by(|e| e.as_slice().cmp(edge))
            .is_ok()
    }

    /// Edge-set union on the same vertex set.
    pub fn union(&self, other: &Hypergraph) -> Result<Hypergraph, HypergraphError> {
        if self.n != other.n {
            return Err(HypergraphError::MismatchedVertexCount(self.n, other.n));
        }
        let edges: BTreeSet<Hyperedge> = self.edges.iter().chain(&other.edges).cloned().collect();
        Ok(Hypergraph {
            n: self.n,
            edges: edges.into_iter().collect(),
        })
    }

    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![vec![]; self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }
}

/// Total vertex coloring with colors `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    k: usize,
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(k: usize, colors: Vec<usize>) -> Result<Self, HypergraphError> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(HypergraphError::ColorOutOfRange { vertex, color, k });
        }
        Ok(Coloring { k, colors })
    }

    /// Every vertex gets color 1.
    pub fn uniform(k: usize, n: usize) -> Self {
        Coloring {
            k: k.max(1),
            colors: vec![1; n],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }
}

/// Edges of `h` that miss at least one of the `k` colors.
pub fn is_polychromatic(h: &Hypergraph, c: &Coloring) -> Result<Vec<Hyperedge>, HypergraphError> {
    if c.colors.len() != h.n {
        return Err(HypergraphError::PartialColoring {
            got: c.colors.len(),
            n: h.n,
        });
    }
    let mut seen = vec![false; c.k + 1];
    let mut violations = vec![];
    for e in &h.edges {
        seen.iter_mut().for_each(|s| *s = false);
        for &v in e {
            seen[c.colors[v]] = true;
        }
        if seen[1..].iter().any(|s| !s) {
            violations.push(e.clone());
        }
    }
    Ok(violations)
}

/// Per-edge intersection sizes with a vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitProfile {
    pub counts: Vec<usize>,
    /// `None` when the hypergraph has no edges.
    pub min: Option<usize>,
    pub max: Option<usize>,
}

impl HitProfile {
    /// True iff every edge is hit at least once and at most `t` times.
    pub fn is_shallow_hitting(&self, t: usize) -> bool {
        self.counts.iter().all(|&c| (1..=t).contains(&c))
    }
}

pub fn hit_profile(h: &Hypergraph, x: &[usize]) -> HitProfile {
    let mut member = vec![false; h.n];
    for &v in x {
        if v < h.n {
            member[v] = true;
        }
    }
    let counts: Vec<usize> = h
        .edges
        .iter()
        .map(|e| e.iter().filter(|&&v| member[v]).count())
        .collect();
    HitProfile {
        min: counts.iter().copied().min(),
        max: counts.iter().copied().max(),
        counts,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    Unsat,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult<T> {
    pub outcome: SearchOutcome<T>,
    /// Branching nodes explored.
    pub nodes: u64,
}

impl<T> SearchResult<T> {
    pub fn found(&self) -> Option<&T> {
        match &self.outcome {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self.outcome, SearchOutcome::Unsat)
    }
}

enum Step {
    Done,
    Unsat,
    Exhausted,
}

struct ColorSearch<'a> {
    k: usize,
    edges: &'a [Hyperedge],
    incidence: Vec<Vec<usize>>,
    colors: Vec<usize>,
    // counts[e * k + c - 1]: vertices of color c in edge e
    counts: Vec<usize>,
    present: Vec<usize>,
    open: Vec<usize>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'a> ColorSearch<'a> {
    fn new(h: &'a Hypergraph, k: usize, budget: u64) -> Self {
        ColorSearch {
            k,
            edges: &h.edges,
            incidence: h.incidence(),
            colors: vec![0; h.n],
            counts: vec![0; h.edges.len() * k],
            present: vec![0; h.edges.len()],
            open: h.edges.iter().map(|e| e.len()).collect(),
            trail: vec![],
            nodes: 0,
            budget,
        }
    }

    /// Assigns and queues forced assignments. Returns false on a conflict;
    /// the assignment is recorded on the trail either way.
    fn assign(&mut self, v: usize, c: usize, forced: &mut Vec<(usize, usize)>) -> bool {
        self.colors[v] = c;
        self.trail.push(v);
        let mut ok = true;
        for &e in &self.incidence[v] {
            let slot = e * self.k + c - 1;
            self.counts[slot] += 1;
            if self.counts[slot] == 1 {
                self.present[e] += 1;
            }
            self.open[e] -= 1;
            let missing = self.k - self.present[e];
            if missing > self.open[e] {
                ok = false;
            } else if missing == 1 && self.open[e] == 1 {
                let w = *self.edges[e]
                    .iter()
                    .find(|&&w| self.colors[w] == 0)
                    .unwrap();
                let color = (1..=self.k)
                    .find(|&col| self.counts[e * self.k + col - 1] == 0)
                    .unwrap();
                forced.push((w, color));
            }
        }
        ok
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let c = self.colors[v];
            for &e in &self.incidence[v] {
                let slot = e * self.k + c - 1;
                self.counts[slot] -= 1;
                if self.counts[slot] == 0 {
                    self.present[e] -= 1;
                }
                self.open[e] += 1;
            }
            self.colors[v] = 0;
        }
    }

    fn decide(&mut self, v: usize, c: usize) -> bool {
        let mut queue = vec![];
        if !self.assign(v, c, &mut queue) {
            return false;
        }
        while let Some((w, col)) = queue.pop() {
            if self.colors[w] != 0 {
                if self.colors[w] != col {
                    return false;
                }
                continue;
            }
            if !self.assign(w, col, &mut queue) {
                return false;
            }
        }
        true
    }

    // Branches on the smallest unassigned id with ascending colors, so the
    // first leaf reached is the lexicographically first solution. A decision
    // never opens a color above 1 + the largest color among smaller ids: the
    // lexicographically first solution always introduces colors in order.
    fn search(&mut self) -> Step {
        let Some(v) = self.colors.iter().position(|&c| c == 0) else {
            return Step::Done;
        };
        let ceiling = self.colors[..v].iter().copied().max().unwrap_or(0) + 1;
        for c in 1..=ceiling.min(self.k) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::Exhausted;
            }
            let mark = self.trail.len();
            if self.decide(v, c) {
                match self.search() {
                    Step::Unsat => {}
                    other => return other,
                }
            }
            self.undo_to(mark);
        }
        Step::Unsat
    }
}

/// Lexicographically first polychromatic `k`-coloring (by vertex id, then
/// color), or a proof by exhaustion that none exists.
pub fn exact_polychromatic(h: &Hypergraph, k: usize, budget: u64) -> SearchResult<Coloring> {
    if k == 0 {
        let outcome = if h.edges.is_empty() && h.n == 0 {
            SearchOutcome::Found(Coloring { k, colors: vec![] })
        } else {
            SearchOutcome::Unsat
        };
        return SearchResult { outcome, nodes: 0 };
    }
    if h.edges.iter().any(|e| e.len() < k) {
        return SearchResult {
            outcome: SearchOutcome::Unsat,
            nodes: 0,
        };
    }
    let mut search = ColorSearch::new(h, k, budget);
    let outcome = match search.search() {
        Step::Done => SearchOutcome::Found(Coloring {
            k,
            colors: search.colors.clone(),
        }),
        Step::Unsat => SearchOutcome::Unsat,
        Step::Exhausted => SearchOutcome::BudgetExhausted,
    };
    SearchResult {
        outcome,
        nodes: search.nodes,
    }
}

/// Pairwise disjoint `k`-subsets; sorted, each subset sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSystem {
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueSystem {
    /// Pairwise disjoint, all of size `k`, and every edge of `h` contains one.
    pub fn serves(&self, h: &Hypergraph, k: usize) -> bool {
        let mut used = BTreeSet::new();
        for c in &self.cliques {
            if c.len() != k || !c.iter().all(|v| used.insert(*v)) {
                return false;
            }
        }
        h.edges.iter().all(|e| {
            self.cliques
                .iter()
                .any(|c| c.iter().all(|v| e.binary_search(v).is_ok()))
        })
    }
}

struct CliqueSearch<'a> {
    k: usize,
    edges: &'a [Hyperedge],
    used: Vec<bool>,
    chosen: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    fn served(&self, edge: &[usize]) -> bool {
        self.chosen
            .iter()
            .any(|c| c.iter().all(|v| edge.binary_search(v).is_ok()))
    }

    // Every useful clique lies inside the edge it serves, so branching over
    // the k-subsets of the first unserved edge is complete.
    fn search(&mut self) -> Step {
        let Some(edge) = self.edges.iter().find(|e| !self.served(e)) else {
            return Step::Done;
        };
        let free: Vec<usize> = edge.iter().copied().filter(|&v| !self.used[v]).collect();
        let mut pick: Vec<usize> = (0..self.k).collect();
        if free.len() < self.k {
            return Step::Unsat;
        }
        loop {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::Exhausted;
            }
            let clique: Vec<usize> = pick.iter().map(|&i| free[i]).collect();
            for &v in &clique {
                self.used[v] = true;
            }
            self.chosen.push(clique);
            match self.search() {
                Step::Unsat => {}
                other => return other,
            }
            for v in self.chosen.pop().unwrap() {
                self.used[v] = false;
            }
            if !next_combination(&mut pick, free.len()) {
                return Step::Unsat;
            }
        }
    }
}

/// Advances `pick` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order.
pub(crate) fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let r = pick.len();
    let Some(i) = (0..r).rev().find(|&i| pick[i] < n - r + i) else {
        return false;
    };
    pick[i] += 1;
    for j in i + 1..r {
        pick[j] = pick[j - 1] + 1;
    }
    true
}

/// Searches for hitting `k`-cliques: pairwise disjoint `k`-subsets such that
/// every edge fully contains at least one.
pub fn exact_hitting_cliques(h: &Hypergraph, k: usize, budget: u64) -> SearchResult<CliqueSystem> {
    if k == 0 {
        return SearchResult {
            outcome: SearchOutcome::Unsat,
            nodes: 0,
        };
    }
    let mut search = CliqueSearch {
        k,
        edges: &h.edges,
        used: vec![false; h.n],
        chosen: vec![],
        nodes: 0,
        budget,
    };
    let outcome = match search.search() {
        Step::Done => {
            let mut cliques = search.chosen.clone();
            cliques.sort();
            SearchOutcome::Found(CliqueSystem { cliques })
        }
        Step::Unsat => SearchOutcome::Unsat,
        Step::Exhausted => SearchOutcome::BudgetExhausted,
    };
    SearchResult {
        outcome,
        nodes: search.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree2() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    // Full k^n enumeration in lexicographic order; returns the first hit.
    fn brute_force(h: &Hypergraph, k: usize) -> Option<Vec<usize>> {
        let n = h.n();
        let total = k.pow(n as u32);
        (0..total).find_map(|mut code| {
            let mut colors = vec![0; n];
            for v in (0..n).rev() {
                colors[v] = code % k + 1;
                code /= k;
            }
            let c = Coloring::new(k, colors.clone()).unwrap();
            is_polychromatic(h, &c)
                .unwrap()
                .is_empty()
                .then_some(colors)
        })
    }

    #[test]
    fn canonicalizes_edges() {
        let h = Hypergraph::new(4, vec![vec![3, 1], vec![1, 3], vec![0, 2]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(h.uniformity(), Some(2));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Hypergraph::new(2, vec![vec![0, 2]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 2, .. })
        ));
        assert_eq!(
            Hypergraph::new(2, vec![vec![]]),
            Err(HypergraphError::EmptyEdge)
        );
        assert!(Hypergraph::new(2, vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn no_edges_is_polychromatic() {
        let h = Hypergraph::empty(3);
        let c = Coloring::uniform(2, 3);
        assert!(is_polychromatic(&h, &c).unwrap().is_empty());
    }

    #[test]
    fn monochromatic_pair_violates() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let c = Coloring::new(2, vec![1, 1]).unwrap();
        assert_eq!(is_polychromatic(&h, &c).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn partial_coloring_is_an_error() {
        let h = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        let c = Coloring::new(2, vec![1, 2]).unwrap();
        assert_eq!(
            is_polychromatic(&h, &c),
            Err(HypergraphError::PartialColoring { got: 2, n: 3 })
        );
    }

    #[test]
    fn tree2_has_no_polychromatic_two_coloring() {
        let h = tree2();
        for code in 0..8usize {
            let colors = (0..3).map(|v| (code >> v) % 2 + 1).collect();
            let c = Coloring::new(2, colors).unwrap();
            assert!(!is_polychromatic(&h, &c).unwrap().is_empty());
        }
        assert!(exact_polychromatic(&h, 2, DEFAULT_BUDGET).is_unsat());
    }

    #[test]
    fn single_edge_gets_lexicographically_first_coloring() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let r = exact_polychromatic(&h, 2, DEFAULT_BUDGET);
        assert_eq!(r.found().unwrap().colors(), &[1, 2]);
    }

    #[test]
    fn budget_exhaustion_is_not_unsat() {
        // all triples of 6 vertices: rainbow triples would need 6 colors
        let mut edges = vec![];
        let mut pick = vec![0, 1, 2];
        loop {
            edges.push(pick.clone());
            if !next_combination(&mut pick, 6) {
                break;
            }
        }
        let h = Hypergraph::new(6, edges).unwrap();
        let r = exact_polychromatic(&h, 3, 1);
        assert_eq!(r.outcome, SearchOutcome::BudgetExhausted);
        assert!(exact_polychromatic(&h, 3, DEFAULT_BUDGET).is_unsat());
    }

    #[test]
    fn two_coloring_of_graphs_is_bipartiteness() {
        let even =
            Hypergraph::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let odd = Hypergraph::new(
            5,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]],
        )
        .unwrap();
        assert!(exact_polychromatic(&even, 2, DEFAULT_BUDGET)
            .found()
            .is_some());
        assert!(exact_polychromatic(&odd, 2, DEFAULT_BUDGET).is_unsat());
    }

    #[test]
    fn agrees_with_brute_force_on_small_instances() {
        let cases = vec![
            (4, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 3]]),
            (
                5,
                vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 4], vec![1, 3]],
            ),
            (
                6,
                vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 3, 5], vec![1, 2, 4]],
            ),
        ];
        for (n, edges) in cases {
            let h = Hypergraph::new(n, edges).unwrap();
            for k in 1..=3 {
                let ours = exact_polychromatic(&h, k, DEFAULT_BUDGET);
                let expected = brute_force(&h, k);
                assert_eq!(
                    ours.found().map(|c| c.colors().to_vec()),
                    expected,
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn hit_profile_counts() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2, 3]]).unwrap();
        let all = hit_profile(&h, &[0, 1, 2, 3]);
        assert_eq!(all.counts, vec![2, 3]);
        let none = hit_profile(&h, &[]);
        assert_eq!(none.min, Some(0));
        assert!(!none.is_shallow_hitting(2));
        assert_eq!(hit_profile(&Hypergraph::empty(2), &[0]).min, None);
    }

    #[test]
    fn consecutive_windows_have_hitting_cliques() {
        for k in 1..=4 {
            let n = 2 * k;
            let m = 2 * k - 1;
            let edges = (0..=n - m).map(|i| (i..i + m).collect()).collect();
            let h = Hypergraph::new(n, edges).unwrap();
            let r = exact_hitting_cliques(&h, k, DEFAULT_BUDGET);
            let expected = if k == 1 {
                vec![vec![0], vec![1]]
            } else {
                vec![(0..k).collect::<Vec<_>>(), (k..2 * k).collect()]
            };
            let found = r.found().unwrap();
            assert!(found.serves(&h, k));
            assert_eq!(found.cliques, expected, "k={k}");
        }
    }

    #[test]
    fn tree2_has_no_hitting_two_cliques() {
        assert!(exact_hitting_cliques(&tree2(), 2, DEFAULT_BUDGET).is_unsat());
    }

    #[test]
    fn no_edges_have_empty_clique_system() {
        let r = exact_hitting_cliques(&Hypergraph::empty(5), 2, DEFAULT_BUDGET);
        assert_eq!(r.found().unwrap().cliques, Vec::<Vec<usize>>::new());
    }

    #[test]
    fn union_identities() {
        let a = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        let b = Hypergraph::new(3, vec![vec![1, 2]]).unwrap();
        assert_eq!(a.union(&Hypergraph::empty(3)).unwrap(), a);
        assert_eq!(a.union(&a).unwrap(), a);
        assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        assert!(a.union(&Hypergraph::empty(4)).is_err());
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut pick = vec![0, 1];
        let mut seen = vec![pick.clone()];
        while next_combination(&mut pick, 4) {
            seen.push(pick.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
    }
}
