//! The two non-2-colorable families and their geometric realizations.
//!
//! * the complete `m`-ary tree hypergraph (children sets and root-to-leaf
//!   paths), realized with south-west quadrants and diagonal strips;
//! * the stage hypergraph `H_m` built on the forest `F_m`, realized with
//!   bottomless rectangles and horizontal strips.
//!
//! Layouts are never trusted: every realization is re-checked against the
//! sweep enumeration before it is returned.

use std::collections::{BTreeMap, HashSet};

use num::{BigUint, One, ToPrimitive, Zero};
use thiserror::Error;

use crate::geometry::{min_gap, rat, GeometryError, Key, Point, PointSet, Rational};
use crate::hypergraph::{next_combination, Hyperedge, Hypergraph, HypergraphError};
use crate::ranges::{enumerate_union, Range, RangeError, RangeFamily};

/// Largest vertex count any construction will materialize.
pub const MAX_CONSTRUCTION_VERTICES: u64 = 1 << 20;

const MAX_LAYOUT_RETRIES: usize = 8;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("uniformity {0} is not supported (need m >= {1})")]
    BadUniformity(usize, usize),
    #[error("construction too large: {vertices} vertices (limit {limit})")]
    TooLarge { vertices: BigUint, limit: u64 },
    #[error("layout failed verification after {retries} attempts: {missing} intended edges not captured")]
    VerificationFailed { retries: usize, missing: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Range(#[from] RangeError),
}

/// An ordered vertex block of `F_m`; `vertices` lists it in stage order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub level: usize,
    pub vertices: Vec<usize>,
    /// Index of the stage holding the parents, `None` for the root stage.
    pub parent_stage: Option<usize>,
}

/// Rooted forest with vertex ids `0..n` in breadth-first order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RootedForest {
    pub parent: Vec<Option<usize>>,
    pub level: Vec<usize>,
    pub children: Vec<Vec<usize>>,
    pub names: Vec<String>,
    /// Empty for plain trees.
    pub stages: Vec<Stage>,
}

impl RootedForest {
    fn add(&mut self, parent: Option<usize>, name: String) -> usize {
        let id = self.parent.len();
        let level = parent.map_or(0, |p| self.level[p] + 1);
        self.parent.push(parent);
        self.level.push(level);
        self.children.push(vec![]);
        self.names.push(name);
        if let Some(p) = parent {
            self.children[p].push(id);
        }
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self, mut v: usize) -> usize {
        while let Some(p) = self.parent[v] {
            v = p;
        }
        v
    }

    /// `v` and all its ancestors, sorted by id.
    pub fn path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.sort_unstable();
        path
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.children[v].is_empty())
    }

    /// Sorted children sets of all non-leaf vertices.
    pub fn children_edges(&self) -> Vec<Hyperedge> {
        self.children
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| {
                let mut e = c.clone();
                e.sort_unstable();
                e
            })
            .collect()
    }

    /// Root-to-leaf paths.
    pub fn path_edges(&self) -> Vec<Hyperedge> {
        self.leaves().map(|v| self.path(v)).collect()
    }

    /// Every `m` consecutive vertices of every stage.
    pub fn stage_edges(&self, m: usize) -> Vec<Hyperedge> {
        self.stages
            .iter()
            .flat_map(|s| {
                s.vertices.windows(m).map(|w| {
                    let mut e = w.to_vec();
                    e.sort_unstable();
                    e
                })
            })
            .collect()
    }
}

/// A hypergraph together with the forest it was built from.
#[derive(Clone, Debug)]
pub struct Construction {
    pub hypergraph: Hypergraph,
    pub forest: RootedForest,
}

/// A placement of a construction's vertices as points.
#[derive(Clone, Debug)]
pub struct LabeledRealization {
    pub points: PointSet,
    /// construction vertex -> point id (a bijection)
    pub vmap: Vec<usize>,
    pub names: Vec<String>,
    /// edges on construction vertices
    pub intended: Hypergraph,
    pub families: Vec<RangeFamily>,
    pub m: usize,
}

impl LabeledRealization {
    /// The intended hypergraph with vertices renamed to point ids.
    pub fn mapped_hypergraph(&self) -> Result<Hypergraph, HypergraphError> {
        let edges = self
            .intended
            .edges()
            .iter()
            .map(|e| e.iter().map(|&v| self.vmap[v]).collect())
            .collect();
        Hypergraph::new(self.points.len(), edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationReport {
    /// intended edges (construction vertices) whose image is not captured
    pub missing: Vec<Hyperedge>,
    /// captured `m`-sets that are not images of intended edges
    pub extra_captured: usize,
}

impl RealizationReport {
    pub fn is_ok(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Containment check of every intended edge in the union enumeration.
pub fn verify_realization(r: &LabeledRealization) -> Result<RealizationReport, RangeError> {
    let captured: HashSet<Hyperedge> = enumerate_union(&r.points, &r.families, r.m)?
        .into_iter()
        .collect();
    let mut missing = vec![];
    let mut hit = 0;
    for e in r.intended.edges() {
        let mut image: Vec<usize> = e.iter().map(|&v| r.vmap[v]).collect();
        image.sort_unstable();
        if captured.contains(&image) {
            hit += 1;
        } else {
            missing.push(e.clone());
        }
    }
    Ok(RealizationReport {
        missing,
        extra_captured: captured.len() - hit,
    })
}

fn check_size(vertices: BigUint) -> Result<usize, ConstructionError> {
    match vertices.to_u64() {
        Some(v) if v <= MAX_CONSTRUCTION_VERTICES => Ok(v as usize),
        _ => Err(ConstructionError::TooLarge {
            vertices,
            limit: MAX_CONSTRUCTION_VERTICES,
        }),
    }
}

/// Vertex count `(m^m - 1) / (m - 1)` of the complete `m`-ary tree with
/// levels `0..m`.
pub fn tree_size(m: usize) -> BigUint {
    (0..m).map(|j| BigUint::from(m).pow(j as u32)).sum()
}

/// Complete `m`-ary tree with `m` vertex levels; edges are the children sets
/// of non-leaves and the root-to-leaf paths, all of size `m`.
pub fn mary_tree_hypergraph(m: usize) -> Result<Construction, ConstructionError> {
    if m < 2 {
        return Err(ConstructionError::BadUniformity(m, 2));
    }
    check_size(tree_size(m))?;
    let mut forest = RootedForest::default();
    forest.add(None, "r".to_string());
    let mut frontier = vec![0];
    for _ in 1..m {
        let mut next = vec![];
        for &p in &frontier {
            for i in 0..m {
                let name = format!("{}/{}", forest.names[p], i);
                next.push(forest.add(Some(p), name));
            }
        }
        frontier = next;
    }
    let mut edges = forest.children_edges();
    edges.extend(forest.path_edges());
    let hypergraph = Hypergraph::new(forest.len(), edges)?;
    Ok(Construction { hypergraph, forest })
}

// Relative layout of the subtree at `v`: root at the origin, bottommost and
// leftmost; children on the line x + y = p.
fn tree_layout(forest: &RootedForest, v: usize) -> Vec<(usize, Rational, Rational)> {
    let children = &forest.children[v];
    let mut out = vec![(v, rat(0), rat(0))];
    if children.is_empty() {
        return out;
    }
    let p = children.len() as i64;
    let subs: Vec<_> = children.iter().map(|&c| tree_layout(forest, c)).collect();
    let extent = subs
        .iter()
        .flatten()
        .flat_map(|(_, x, y)| [x.clone(), y.clone()])
        .max()
        .unwrap_or_else(|| rat(0));
    let scale = rat(1) / (extent + rat(1));
    for (i, sub) in subs.into_iter().enumerate() {
        let i = i as i64 + 1;
        for (w, x, y) in sub {
            out.push((w, rat(i) + &scale * x, rat(p - i) + &scale * y));
        }
    }
    out
}

/// Realizes the `m`-ary tree hypergraph: root-to-leaf paths are south-west
/// captured and children sets are diagonal-strip captured.
///
/// Children of one vertex start on a common line of slope -1, and distinct
/// subtrees reuse the same lines. Each point then gets a distinct tiny
/// upward shift, grouped by sibling set, so that every sibling set occupies
/// its own narrow band of `x + y` and all sums become distinct. The shifts
/// stay below half of every coordinate gap, so `x`- and `y`-orders (and with
/// them all quadrant captures) are unchanged.
pub fn realize_tree(m: usize) -> Result<(LabeledRealization, RootedForest), ConstructionError> {
    let Construction { hypergraph, forest } = mary_tree_hypergraph(m)?;
    let layout = tree_layout(&forest, 0);
    let mut base = vec![(rat(0), rat(0)); forest.len()];
    for (v, x, y) in layout {
        base[v] = (x, y);
    }

    let mut shift_index = vec![0usize; forest.len()];
    let mut next = 1;
    for kids in forest.children.iter().filter(|c| !c.is_empty()) {
        for &c in kids {
            shift_index[c] = next;
            next += 1;
        }
        next += 1;
    }
    let gap =
        min_gap(base.iter().map(|(x, y)| x + y)).min(min_gap(base.iter().map(|(_, y)| y.clone())));
    let mut eta = gap / rat(2 * (next as i64 + 1));

    let mut last_missing = 0;
    for _ in 0..MAX_LAYOUT_RETRIES {
        let coords = base
            .iter()
            .zip(&shift_index)
            .map(|((x, y), &u)| (x.clone(), y + &eta * rat(u as i64)));
        let realization = LabeledRealization {
            points: PointSet::new(coords)?,
            vmap: (0..forest.len()).collect(),
            names: forest.names.clone(),
            intended: hypergraph.clone(),
            families: vec![RangeFamily::SW, RangeFamily::DS],
            m,
        };
        let report = verify_realization(&realization)?;
        if report.is_ok() {
            return Ok((realization, forest));
        }
        last_missing = report.missing.len();
        eta /= rat(2);
    }
    Err(ConstructionError::VerificationFailed {
        retries: MAX_LAYOUT_RETRIES,
        missing: last_missing,
    })
}

fn binomial(n: &BigUint, r: &BigUint) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = BigUint::zero();
    while &i < r {
        acc = acc * (n - &i) / (&i + BigUint::one());
        i += BigUint::one();
    }
    acc
}

/// Exact vertex count of the forest `F_m`.
pub fn stage_forest_size(m: usize) -> BigUint {
    let mm = BigUint::from(m);
    let size = |j: usize| mm.pow((m - j) as u32);
    let mut stages = BigUint::one();
    let mut total = BigUint::zero();
    for j in 0..m {
        total += &stages * size(j);
        if j + 1 < m {
            stages *= binomial(&size(j), &size(j + 1));
        }
    }
    total
}

/// The stage hypergraph `H_m`: stage edges (every `m` consecutive vertices
/// of a stage) and path edges (every root-to-leaf path of `F_m`).
///
/// Only `m <= 2` fits under [`MAX_CONSTRUCTION_VERTICES`]; larger `m` fails
/// with the exact vertex count.
pub fn stage_hypergraph(m: usize) -> Result<Construction, ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::BadUniformity(m, 1));
    }
    check_size(stage_forest_size(m))?;
    let mut forest = RootedForest::default();
    let roots = m.pow(m as u32);
    let root_stage: Vec<usize> = (0..roots)
        .map(|i| forest.add(None, format!("S0[{i}]")))
        .collect();
    forest.stages.push(Stage {
        level: 0,
        vertices: root_stage,
        parent_stage: None,
    });
    let mut s = 0;
    while s < forest.stages.len() {
        let level = forest.stages[s].level;
        if level + 1 < m {
            let parents = forest.stages[s].vertices.clone();
            let child_size = m.pow((m - level - 1) as u32);
            let mut pick: Vec<usize> = (0..child_size).collect();
            loop {
                let id = forest.stages.len();
                let vertices = pick
                    .iter()
                    .enumerate()
                    .map(|(i, &pos)| forest.add(Some(parents[pos]), format!("S{id}[{i}]")))
                    .collect();
                forest.stages.push(Stage {
                    level: level + 1,
                    vertices,
                    parent_stage: Some(s),
                });
                if !next_combination(&mut pick, parents.len()) {
                    break;
                }
            }
        }
        s += 1;
    }
    let mut edges = forest.stage_edges(m);
    edges.extend(forest.path_edges());
    let hypergraph = Hypergraph::new(forest.len(), edges)?;
    Ok(Construction { hypergraph, forest })
}

/// Occupied horizontal bands, keyed by lower boundary.
struct Bands(BTreeMap<Rational, Rational>);

impl Bands {
    /// Middle third of the free gap above the band starting at `lo`.
    fn gap_above(&self, lo: &Rational) -> (Rational, Rational) {
        let hi = &self.0[lo];
        let ceiling = self
            .0
            .range(hi.clone()..)
            .map(|(next_lo, _)| next_lo.clone())
            .find(|next_lo| next_lo > hi)
            .unwrap_or_else(|| hi + rat(1));
        let third = (&ceiling - hi) / rat(3);
        (hi + &third, hi + &third * rat(2))
    }
}

/// Realizes `H_m` with bottomless rectangles and horizontal strips.
///
/// Stages are embedded in breadth-first order, each as an ascending
/// sequence inside its own horizontal band. The child stages of a stage go
/// into disjoint sub-bands of the middle third of the gap above it, each
/// child first taking its parent's `x`. Counting child bands from the top
/// (`b = 1..r`), a child in band `b` then moves right by `b * delta` with
/// `delta = gap_x / (2 (r + 1))`, so the children of one parent form a
/// descending sequence and the global `x`-order is otherwise unchanged.
/// Finally a tiny id-proportional upward shift makes all `x + y` distinct
/// without changing any order.
pub fn realize_stages(m: usize) -> Result<(LabeledRealization, RootedForest), ConstructionError> {
    let Construction { hypergraph, forest } = stage_hypergraph(m)?;
    let n = forest.len();
    let mut xy: Vec<Option<(Rational, Rational)>> = vec![None; n];
    let mut band_of = vec![(rat(0), rat(1)); forest.stages.len()];
    let mut bands = Bands(BTreeMap::new());
    bands.0.insert(rat(0), rat(1));

    let roots = &forest.stages[0].vertices;
    let len = roots.len() as i64;
    for (i, &v) in roots.iter().enumerate() {
        let i = i as i64 + 1;
        xy[v] = Some((rat(i), rat(i) / rat(len + 1)));
    }

    for s in 0..forest.stages.len() {
        let kids: Vec<usize> = (0..forest.stages.len())
            .filter(|&t| forest.stages[t].parent_stage == Some(s))
            .collect();
        if kids.is_empty() {
            continue;
        }
        let r = kids.len() as i64;
        let (h_lo, h_hi) = bands.gap_above(&band_of[s].0);
        let part = (&h_hi - &h_lo) / rat(2 * r + 1);
        let gap_x = min_gap(xy.iter().flatten().map(|(x, _)| x.clone()));
        let delta = gap_x / rat(2 * (r + 1));
        for (i, &t) in kids.iter().enumerate() {
            let i = i as i64 + 1;
            let lo = &h_lo + &part * rat(2 * i - 1);
            let hi = &h_lo + &part * rat(2 * i);
            let from_top = r - i + 1;
            let members = &forest.stages[t].vertices;
            let count = members.len() as i64;
            for (j, &v) in members.iter().enumerate() {
                let parent = forest.parent[v].expect("non-root stage vertex has a parent");
                let px = xy[parent].as_ref().unwrap().0.clone();
                let x = px + &delta * rat(from_top);
                let y = &lo + (&hi - &lo) * rat(j as i64 + 1) / rat(count + 1);
                xy[v] = Some((x, y));
            }
            bands.0.insert(lo.clone(), hi.clone());
            band_of[t] = (lo, hi);
        }
    }

    let xy: Vec<(Rational, Rational)> = xy.into_iter().map(Option::unwrap).collect();
    let gap =
        min_gap(xy.iter().map(|(_, y)| y.clone())).min(min_gap(xy.iter().map(|(x, y)| x + y)));
    let eta = gap / rat(2 * (n as i64 + 1));
    let coords = xy
        .iter()
        .enumerate()
        .map(|(i, (x, y))| (x.clone(), y + &eta * rat(i as i64)));
    let realization = LabeledRealization {
        points: PointSet::new(coords)?,
        vmap: (0..n).collect(),
        names: forest.names.clone(),
        intended: hypergraph,
        families: vec![RangeFamily::BL, RangeFamily::HS],
        m,
    };
    let report = verify_realization(&realization)?;
    if !report.is_ok() {
        return Err(ConstructionError::VerificationFailed {
            retries: 1,
            missing: report.missing.len(),
        });
    }
    Ok((realization, forest))
}

/// Bottomless rectangle with top-right corner at `v` and the root of `v` on
/// its left side.
pub fn path_rectangle(r: &LabeledRealization, forest: &RootedForest, v: usize) -> Range {
    let corner: &Point = r.points.point(r.vmap[v]);
    let root = r.points.point(r.vmap[forest.root(v)]);
    Range::Bottomless {
        left: root.x.clone(),
        right: corner.x.clone(),
        top: corner.y.clone(),
    }
}

/// Ids of `stage` sorted by the given key in the realization.
pub fn stage_order_by(r: &LabeledRealization, stage: &Stage, key: Key) -> Vec<usize> {
    let mut ids: Vec<usize> = stage.vertices.iter().map(|&v| r.vmap[v]).collect();
    ids.sort_by_key(|&id| r.points.rank(key, id));
    ids
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{exact_polychromatic, DEFAULT_BUDGET};

    #[test]
    fn binary_tree_hypergraph() {
        let c = mary_tree_hypergraph(2).unwrap();
        assert_eq!(c.forest.len(), 3);
        assert_eq!(c.hypergraph.edges(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn ternary_tree_counts() {
        let c = mary_tree_hypergraph(3).unwrap();
        assert_eq!(c.forest.len(), 13);
        assert_eq!(c.forest.children_edges().len(), 4);
        assert_eq!(c.forest.path_edges().len(), 9);
        assert_eq!(c.hypergraph.edges().len(), 13);
        assert_eq!(c.hypergraph.uniformity(), Some(3));
    }

    #[test]
    fn tree_size_formula() {
        for m in 2..=6usize {
            let expected = (m.pow(m as u32) - 1) / (m - 1);
            assert_eq!(tree_size(m), BigUint::from(expected));
            if m <= 5 {
                assert_eq!(mary_tree_hypergraph(m).unwrap().forest.len(), expected);
            }
        }
        assert!(matches!(
            mary_tree_hypergraph(8),
            Err(ConstructionError::TooLarge { .. })
        ));
        assert!(mary_tree_hypergraph(1).is_err());
    }

    #[test]
    fn stage_forest_counts() {
        let c = stage_hypergraph(2).unwrap();
        assert_eq!(c.forest.len(), 16);
        assert_eq!(c.forest.stages.len(), 7);
        assert_eq!(c.forest.stage_edges(2).len(), 9);
        assert_eq!(c.forest.path_edges().len(), 12);
        assert_eq!(c.hypergraph.edges().len(), 21);
        assert_eq!(stage_forest_size(2), BigUint::from(16u32));
    }

    #[test]
    fn stages_have_prescribed_sizes_and_partition_into_edges() {
        let m = 2;
        let c = stage_hypergraph(m).unwrap();
        for s in &c.forest.stages {
            assert_eq!(s.vertices.len(), m.pow((m - s.level) as u32));
            assert_eq!(s.vertices.len() % m, 0);
        }
    }

    #[test]
    fn three_is_too_large_with_exact_count() {
        assert_eq!(stage_forest_size(3), BigUint::from(1_223_261_352u64));
        match stage_hypergraph(3) {
            Err(ConstructionError::TooLarge { vertices, .. }) => {
                assert_eq!(vertices, BigUint::from(1_223_261_352u64))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_stage_hypergraph() {
        let c = stage_hypergraph(1).unwrap();
        assert_eq!(c.forest.len(), 1);
        assert_eq!(c.hypergraph.edges(), &[vec![0]]);
    }

    #[test]
    fn constructions_are_not_two_colorable() {
        for c in [
            stage_hypergraph(2).unwrap(),
            mary_tree_hypergraph(2).unwrap(),
            mary_tree_hypergraph(3).unwrap(),
        ] {
            assert!(exact_polychromatic(&c.hypergraph, 2, DEFAULT_BUDGET).is_unsat());
        }
    }

    #[test]
    fn tree_root_is_bottom_left() {
        for m in 2..=4 {
            let (r, _) = realize_tree(m).unwrap();
            assert_eq!(r.points.order_by(Key::X)[0], r.vmap[0]);
            assert_eq!(r.points.order_by(Key::Y)[0], r.vmap[0]);
            assert!(r.points.general_position().is_ok());
        }
    }

    #[test]
    fn stage_bands_are_disjoint_and_ascending() {
        let (r, forest) = realize_stages(2).unwrap();
        for s in &forest.stages {
            let ids: Vec<usize> = s.vertices.iter().map(|&v| r.vmap[v]).collect();
            assert_eq!(stage_order_by(&r, s, Key::X), ids);
            assert_eq!(stage_order_by(&r, s, Key::Y), ids);
        }
        // y-ranges of distinct stages do not interleave
        let mut spans: Vec<(usize, usize)> = forest
            .stages
            .iter()
            .map(|s| {
                let ys = s.vertices.iter().map(|&v| r.points.rank(Key::Y, r.vmap[v]));
                (ys.clone().min().unwrap(), ys.max().unwrap())
            })
            .collect();
        spans.sort();
        assert!(spans.windows(2).all(|w| w[0].1 < w[1].0));
    }

    #[test]
    fn moving_a_point_across_bands_breaks_the_realization() {
        let (mut r, forest) = realize_stages(2).unwrap();
        // move the last vertex of the topmost level-1 stage below everything
        let victim = forest.stages.last().unwrap().vertices[1];
        let mut pts: Vec<Point> = r.points.points().to_vec();
        pts[r.vmap[victim]].y = rat(-5);
        r.points = PointSet::from_points(pts).unwrap();
        let report = verify_realization(&r).unwrap();
        assert!(!report.is_ok());
    }
}
