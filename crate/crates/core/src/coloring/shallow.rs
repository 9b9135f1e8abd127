//! Greedy 2-shallow hitting sets for quadrants.
//!
//! The north-west quadrant sets `Q_1, ..., Q_a` are visited by decreasing
//! apex `x`; whenever `Q_i` holds no chosen point yet, its leftmost point is
//! chosen. The other orientations run the same greedy in a reflected frame
//! (south-east through the 180 degree rotation).

use crate::geometry::{Key, PointSet};
use crate::hypergraph::{hit_profile, Hyperedge, Hypergraph};
use crate::ranges::{enumerate_hyperedges, north_west_sequence, Quadrant, RangeError, RangeFamily};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShallowHittingSet {
    pub orientation: Quadrant,
    pub m: usize,
    /// ids in insertion order
    pub order: Vec<usize>,
}

pub fn quadrant_shallow_hitting_set(
    ps: &PointSet,
    orientation: Quadrant,
    m: usize,
) -> ShallowHittingSet {
    let frame = orientation.frame(ps);
    let mut chosen = vec![false; ps.len()];
    let mut order = vec![];
    for q in north_west_sequence(&frame, m) {
        if q.iter().any(|&v| chosen[v]) {
            continue;
        }
        let leftmost = q
            .iter()
            .copied()
            .min_by_key(|&v| frame.rank(Key::X, v))
            .unwrap();
        chosen[leftmost] = true;
        order.push(leftmost);
    }
    ShallowHittingSet {
        orientation,
        m,
        order,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StaircaseViolation {
    /// `x` or `y` does not decrease from position `j` to `j + 1`
    NotMonotone { j: usize },
    /// the first point is not the leftmost of the `m` topmost points
    FirstNotLeftmostOfTop,
    /// the `m` topmost points are hit `count != 1` times
    TopEdgeHit { count: usize },
    /// the bottomless rectangle spanned by positions `j, j + 1` holds fewer
    /// than `m + 1` points
    PairRectangle { j: usize, count: usize },
    /// the rectangle spanned by positions `j, j + 2` holds fewer than `m + 2`
    /// points
    TripleRectangle { j: usize, count: usize },
}

impl ShallowHittingSet {
    pub fn ids(&self) -> &[usize] {
        &self.order
    }

    /// Checks the structural properties of the greedy set in its north-west
    /// frame: monotone staircase, first point, single hit of the topmost
    /// `m`, and the point counts of the pair and triple rectangles.
    pub fn staircase_violations(&self, ps: &PointSet) -> Vec<StaircaseViolation> {
        let mut out = vec![];
        let m = self.m;
        if m == 0 || m > ps.len() {
            if !self.order.is_empty() {
                out.push(StaircaseViolation::TopEdgeHit {
                    count: self.order.len(),
                });
            }
            return out;
        }
        let f = self.orientation.frame(ps);
        let xr = |v: usize| f.rank(Key::X, v);
        let yr = |v: usize| f.rank(Key::Y, v);
        let n = f.len();
        let x = &self.order;

        for j in 0..x.len().saturating_sub(1) {
            if xr(x[j + 1]) >= xr(x[j]) || yr(x[j + 1]) >= yr(x[j]) {
                out.push(StaircaseViolation::NotMonotone { j });
            }
        }
        let top: Vec<usize> = f.order_by(Key::Y)[n - m..].to_vec();
        let leftmost_top = top.iter().copied().min_by_key(|&v| xr(v)).unwrap();
        if x.first() != Some(&leftmost_top) {
            out.push(StaircaseViolation::FirstNotLeftmostOfTop);
        }
        let hits = top.iter().filter(|v| x.contains(v)).count();
        if hits != 1 {
            out.push(StaircaseViolation::TopEdgeHit { count: hits });
        }
        let count_in = |x_lo: usize, x_hi: usize, y_lo: usize, y_hi: usize| {
            f.points()
                .iter()
                .filter(|p| {
                    let (a, b) = (xr(p.id), yr(p.id));
                    x_lo <= a && a <= x_hi && y_lo <= b && b <= y_hi
                })
                .count()
        };
        for j in 0..x.len().saturating_sub(1) {
            let count = count_in(xr(x[j + 1]), xr(x[j]), 0, yr(x[j]));
            if count < m + 1 {
                out.push(StaircaseViolation::PairRectangle { j, count });
            }
        }
        for j in 0..x.len().saturating_sub(2) {
            let count = count_in(xr(x[j + 2]), xr(x[j]), yr(x[j + 2]), yr(x[j]));
            if count < m + 2 {
                out.push(StaircaseViolation::TripleRectangle { j, count });
            }
        }
        out
    }
}

/// Maximum hits of one greedy set per edge class: rows are NW edges other than the
/// topmost `m`, NE edges other than the topmost `m`, SW edges other than the
/// bottommost `m`, SE edges other than the bottommost `m`, the topmost `m`,
/// the bottommost `m`; columns are `S_NW, S_NE, S_SW, S_SE`.
pub const HIT_BOUNDS: [[usize; 4]; 6] = [
    [2, 0, 1, 1],
    [0, 2, 1, 1],
    [1, 1, 2, 0],
    [1, 1, 0, 2],
    [1, 1, 1, 1],
    [1, 1, 1, 1],
];

/// Observed maxima of the hit-count matrix together with any cell exceeding
/// [`HIT_BOUNDS`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitCountCertificate {
    pub observed: [[usize; 4]; 6],
    /// `(row, column, observed)`
    pub excesses: Vec<(usize, usize, usize)>,
    pub sets: [ShallowHittingSet; 4],
}

impl HitCountCertificate {
    pub fn is_ok(&self) -> bool {
        self.excesses.is_empty()
    }
}

pub fn quadrant_hitting_profile(
    ps: &PointSet,
    m: usize,
) -> Result<HitCountCertificate, RangeError> {
    let sets = Quadrant::ALL.map(|q| quadrant_shallow_hitting_set(ps, q, m));
    let n = ps.len();
    let mut observed = [[0usize; 4]; 6];
    if m == 0 || m > n {
        return Ok(HitCountCertificate {
            observed,
            excesses: vec![],
            sets,
        });
    }
    let sorted = |ids: &[usize]| {
        let mut v = ids.to_vec();
        v.sort_unstable();
        v
    };
    let by_y = ps.order_by(Key::Y);
    let top = sorted(&by_y[n - m..]);
    let bottom = sorted(&by_y[..m]);

    let mut rows: Vec<Vec<Hyperedge>> = vec![];
    for (q, skip) in [
        (RangeFamily::NW, &top),
        (RangeFamily::NE, &top),
        (RangeFamily::SW, &bottom),
        (RangeFamily::SE, &bottom),
    ] {
        let edges = enumerate_hyperedges(ps, q, m)?;
        rows.push(edges.into_iter().filter(|e| e != skip).collect());
    }
    rows.push(vec![top]);
    rows.push(vec![bottom]);

    let mut excesses = vec![];
    for (r, edges) in rows.into_iter().enumerate() {
        let h = Hypergraph::new(n, edges).expect("enumerated edges are valid");
        for (c, s) in sets.iter().enumerate() {
            let max = hit_profile(&h, s.ids()).max.unwrap_or(0);
            observed[r][c] = max;
            if max > HIT_BOUNDS[r][c] {
                excesses.push((r, c, max));
            }
        }
    }
    Ok(HitCountCertificate {
        observed,
        excesses,
        sets,
    })
}

/// Largest number of points of `set` in one `m`-edge of `family`.
pub fn max_hits(
    ps: &PointSet,
    family: RangeFamily,
    m: usize,
    set: &[usize],
) -> Result<usize, RangeError> {
    let h = Hypergraph::new(ps.len(), enumerate_hyperedges(ps, family, m)?)
        .expect("enumerated edges are valid");
    Ok(hit_profile(&h, set).max.unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rat, ratio};

    fn four_points() -> PointSet {
        PointSet::new(vec![
            (rat(1), rat(1)),
            (rat(2), rat(3)),
            (rat(3), ratio(5, 2)),
            (rat(4), rat(4)),
        ])
        .unwrap()
    }

    #[test]
    fn hand_run_of_the_greedy() {
        let s = quadrant_shallow_hitting_set(&four_points(), Quadrant::NW, 2);
        assert_eq!(s.order, vec![1]);
        assert!(s.staircase_violations(&four_points()).is_empty());
    }

    #[test]
    fn whole_set_is_one_edge() {
        let ps = PointSet::random(7, 3);
        let s = quadrant_shallow_hitting_set(&ps, Quadrant::NW, 7);
        let leftmost = ps.order_by(Key::X)[0];
        assert_eq!(s.order, vec![leftmost]);
    }

    #[test]
    fn oversized_m_gives_empty_set() {
        let ps = PointSet::random(5, 3);
        for q in Quadrant::ALL {
            assert!(quadrant_shallow_hitting_set(&ps, q, 6).order.is_empty());
        }
        assert!(quadrant_hitting_profile(&ps, 6).unwrap().is_ok());
    }

    #[test]
    fn two_shallow_on_random_set() {
        let ps = PointSet::random(25, 17);
        for q in Quadrant::ALL {
            let s = quadrant_shallow_hitting_set(&ps, q, 5);
            let h = Hypergraph::new(25, enumerate_hyperedges(&ps, q.family(), 5).unwrap()).unwrap();
            assert!(hit_profile(&h, s.ids()).is_shallow_hitting(2), "{q}");
            assert!(s.staircase_violations(&ps).is_empty(), "{q}");
        }
    }

    #[test]
    fn hit_bound_matrix_on_random_set() {
        let ps = PointSet::random(30, 5);
        let cert = quadrant_hitting_profile(&ps, 4).unwrap();
        assert!(cert.is_ok(), "{:?}", cert.observed);
    }

    #[test]
    fn n_equals_m_profile_is_trivial() {
        let ps = PointSet::random(4, 9);
        let cert = quadrant_hitting_profile(&ps, 4).unwrap();
        assert!(cert.observed.iter().flatten().all(|&c| c <= 1));
    }
}
