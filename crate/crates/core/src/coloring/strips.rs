//! Axis-parallel strips via hitting cliques.
//!
//! Grouping `k` points with consecutive `x` (resp. `y`) gives cliques that
//! every vertical (resp. horizontal) window of `2k - 1` points fully
//! contains. Each point lies in at most one clique per axis, so points are
//! the edges (or loops) of a bipartite multigraph on the cliques with
//! maximum degree `k`; a proper `k`-edge-coloring gives every clique all `k`
//! colors.

use crate::geometry::{Key, PointSet};
use crate::hypergraph::Coloring;

use super::ColoringError;

/// Disjoint `k`-cliques of consecutive points by `x` and by `y`. The last
/// `n mod k` points of each order are left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripCliques {
    pub by_x: Vec<Vec<usize>>,
    pub by_y: Vec<Vec<usize>>,
}

pub fn strip_cliques(ps: &PointSet, k: usize) -> Result<StripCliques, ColoringError> {
    if k == 0 {
        return Err(ColoringError::ZeroColors);
    }
    let group = |key| {
        ps.order_by(key)
            .chunks_exact(k)
            .map(|c| {
                let mut c = c.to_vec();
                c.sort_unstable();
                c
            })
            .collect()
    };
    Ok(StripCliques {
        by_x: group(Key::X),
        by_y: group(Key::Y),
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MultiEdge {
    Link { left: usize, right: usize },
    LeftLoop(usize),
    RightLoop(usize),
}

/// Bipartite multigraph whose edges carry a label (a point id). Loops count
/// once towards the degree of their vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, MultiEdge)>,
}

impl BipartiteMultigraph {
    /// Points are edges between their `x`-clique and their `y`-clique; a
    /// point in only one clique is a loop; a point in none is skipped.
    pub fn from_cliques(n: usize, cliques: &StripCliques) -> Self {
        let mut a = vec![None; n];
        let mut b = vec![None; n];
        for (i, c) in cliques.by_x.iter().enumerate() {
            c.iter().for_each(|&v| a[v] = Some(i));
        }
        for (i, c) in cliques.by_y.iter().enumerate() {
            c.iter().for_each(|&v| b[v] = Some(i));
        }
        let edges = (0..n)
            .filter_map(|v| {
                let e = match (a[v], b[v]) {
                    (Some(left), Some(right)) => MultiEdge::Link { left, right },
                    (Some(left), None) => MultiEdge::LeftLoop(left),
                    (None, Some(right)) => MultiEdge::RightLoop(right),
                    (None, None) => return None,
                };
                Some((v, e))
            })
            .collect();
        BipartiteMultigraph {
            left: cliques.by_x.len(),
            right: cliques.by_y.len(),
            edges,
        }
    }

    // right vertices are numbered after the left ones
    fn ends(&self, e: MultiEdge) -> (usize, Option<usize>) {
        match e {
            MultiEdge::Link { left, right } => (left, Some(self.left + right)),
            MultiEdge::LeftLoop(left) => (left, None),
            MultiEdge::RightLoop(right) => (self.left + right, None),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.left + self.right];
        for &(_, e) in &self.edges {
            let (u, v) = self.ends(e);
            deg[u] += 1;
            if let Some(v) = v {
                deg[v] += 1;
            }
        }
        deg
    }
}

/// Proper edge coloring with colors `1..=k`, one color per entry of
/// `g.edges`.
///
/// Links are colored first by alternating-path recoloring: for a link
/// `(u, v)` take `a` free at `u` and `b` free at `v`; if `a` is taken at
/// `v`, swap `a` and `b` along the `a/b` path starting at `v`, which cannot
/// reach `u` in a bipartite graph. Loops come last and take the smallest
/// color absent at their vertex.
pub fn edge_color_bipartite(
    g: &BipartiteMultigraph,
    k: usize,
) -> Result<Vec<usize>, ColoringError> {
    if k == 0 {
        return Err(ColoringError::ZeroColors);
    }
    if let Some((vertex, &degree)) = g.degrees().iter().enumerate().find(|(_, &d)| d > k) {
        return Err(ColoringError::DegreeExceeded { vertex, degree, k });
    }
    let nv = g.left + g.right;
    // at[v][c]: edge of color c + 1 at v
    let mut at: Vec<Vec<Option<usize>>> = vec![vec![None; k]; nv];
    let mut color = vec![0usize; g.edges.len()];
    let free = |slots: &[Option<usize>]| slots.iter().position(Option::is_none);

    for (i, &(_, e)) in g.edges.iter().enumerate() {
        let (u, Some(v)) = g.ends(e) else { continue };
        let a = free(&at[u]).expect("degree bound leaves a free color");
        let b = free(&at[v]).expect("degree bound leaves a free color");
        if at[v][a].is_some() {
            let mut path = vec![];
            let mut cur = v;
            let mut want = a;
            while let Some(edge) = at[cur][want] {
                path.push(edge);
                let (x, y) = g.ends(g.edges[edge].1);
                cur = if x == cur { y.unwrap() } else { x };
                want = if want == a { b } else { a };
            }
            for &edge in &path {
                let (x, y) = g.ends(g.edges[edge].1);
                at[x][color[edge] - 1] = None;
                at[y.unwrap()][color[edge] - 1] = None;
            }
            for &edge in &path {
                color[edge] = if color[edge] == a + 1 { b + 1 } else { a + 1 };
                let (x, y) = g.ends(g.edges[edge].1);
                at[x][color[edge] - 1] = Some(edge);
                at[y.unwrap()][color[edge] - 1] = Some(edge);
            }
        }
        color[i] = a + 1;
        at[u][a] = Some(i);
        at[v][a] = Some(i);
    }
    for (i, &(_, e)) in g.edges.iter().enumerate() {
        let (u, None) = g.ends(e) else { continue };
        let c = free(&at[u]).expect("degree bound leaves a free color");
        color[i] = c + 1;
        at[u][c] = Some(i);
    }
    Ok(color)
}

/// Coloring in which every vertical or horizontal window of `2k - 1` points
/// sees all `k` colors. Points outside every clique get color 1.
pub fn color_strips(ps: &PointSet, k: usize) -> Result<Coloring, ColoringError> {
    let cliques = strip_cliques(ps, k)?;
    let g = BipartiteMultigraph::from_cliques(ps.len(), &cliques);
    let edge_colors = edge_color_bipartite(&g, k)?;
    let mut colors = vec![1; ps.len()];
    for (&(point, _), &c) in g.edges.iter().zip(&edge_colors) {
        colors[point] = c;
    }
    Ok(Coloring::new(k, colors)?)
}
