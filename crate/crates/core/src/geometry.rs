//! Exact planar point sets.
//!
//! Coordinates are arbitrary-precision rationals and every predicate in the
//! crate is decided on them (or on ranks derived from them) without rounding.
//! A [`PointSet`] caches the permutations of its ids sorted by `x`, by `y` and
//! by `x + y`, together with the inverse ranks, so that sweeps can work on
//! small integers.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Exact rational coordinate, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest `f64`, for drawing only.
pub fn approx(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact average of two rationals.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / rat(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub id: usize,
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn sum(&self) -> Rational {
        &self.x + &self.y
    }

    pub fn coord(&self, key: Key) -> Rational {
        match key {
            Key::X => self.x.clone(),
            Key::Y => self.y.clone(),
            Key::Sum => self.sum(),
        }
    }
}

/// Sort key for point orders. `Sum` is the diagonal key `x + y`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Key {
    X,
    Y,
    Sum,
}

impl Key {
    pub const ALL: [Key; 3] = [Key::X, Key::Y, Key::Sum];
}

/// Axis reflections. `Both` is the 180 degree rotation, which maps `x + y`
/// to `-(x + y)` and therefore keeps lines of slope -1 as lines of slope -1.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Reflection {
    /// `x -> -x`
    Horizontal,
    /// `y -> -y`
    Vertical,
    /// `(x, y) -> (-x, -y)`
    Both,
}

/// Result of a general-position check. Each list holds every pair of ids
/// `(a, b)` with `a < b` whose key values coincide.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneralPositionReport {
    pub x: Vec<(usize, usize)>,
    pub y: Vec<(usize, usize)>,
    pub sum: Vec<(usize, usize)>,
}

impl GeneralPositionReport {
    pub fn is_ok(&self) -> bool {
        self.x.is_empty() && self.y.is_empty() && self.sum.is_empty()
    }

    fn pairs_mut(&mut self, key: Key) -> &mut Vec<(usize, usize)> {
        match key {
            Key::X => &mut self.x,
            Key::Y => &mut self.y,
            Key::Sum => &mut self.sum,
        }
    }
}

impl fmt::Display for GeneralPositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "general position");
        }
        write!(
            f,
            "equal x: {:?}; equal y: {:?}; equal x+y: {:?}",
            self.x, self.y, self.sum
        )
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("point set is not in general position ({0})")]
    NotInGeneralPosition(GeneralPositionReport),
    #[error("point ids must be exactly 0..{n}, found id {id}")]
    BadIds { n: usize, id: usize },
}

/// Checks pairwise distinctness of `x`, `y` and `x + y` over `points`.
pub fn check_general_position(points: &[Point]) -> GeneralPositionReport {
    let mut report = GeneralPositionReport::default();
    for key in Key::ALL {
        let mut keyed: Vec<(Rational, usize)> =
            points.iter().map(|p| (p.coord(key), p.id)).collect();
        keyed.sort();
        let mut start = 0;
        while start < keyed.len() {
            let mut end = start + 1;
            while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                end += 1;
            }
            for a in start..end {
                for b in a + 1..end {
                    let (i, j) = (keyed[a].1, keyed[b].1);
                    report.pairs_mut(key).push((i.min(j), i.max(j)));
                }
            }
            start = end;
        }
        report.pairs_mut(key).sort();
    }
    report
}

/// A finite planar point set with dense ids `0..n`.
///
/// Sets built through [`PointSet::new`] or [`PointSet::from_points`] are in
/// general position. Single-axis reflections keep `x` and `y` distinct but
/// may create ties in `x + y`; the diagonal order then breaks ties by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    orders: [Vec<usize>; 3],
    ranks: [Vec<usize>; 3],
}

fn key_index(key: Key) -> usize {
    match key {
        Key::X => 0,
        Key::Y => 1,
        Key::Sum => 2,
    }
}

impl PointSet {
    /// Builds a point set from coordinates; ids are assigned in input order.
    pub fn new<I>(coords: I) -> Result<Self, GeometryError>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let points = coords
            .into_iter()
            .enumerate()
            .map(|(id, (x, y))| Point { id, x, y })
            .collect();
        Self::from_points(points)
    }

    /// Convenience constructor for integer coordinates.
    pub fn from_integers(coords: &[(i64, i64)]) -> Result<Self, GeometryError> {
        Self::new(coords.iter().map(|&(x, y)| (rat(x), rat(y))))
    }

    /// Builds a point set from points carrying explicit ids. The ids must be a
    /// permutation of `0..n`.
    pub fn from_points(mut points: Vec<Point>) -> Result<Self, GeometryError> {
        let n = points.len();
        points.sort_by_key(|p| p.id);
        for (expected, p) in points.iter().enumerate() {
            if p.id != expected {
                return Err(GeometryError::BadIds { n, id: p.id });
            }
        }
        let report = check_general_position(&points);
        if !report.is_ok() {
            return Err(GeometryError::NotInGeneralPosition(report));
        }
        Ok(Self::build(points))
    }

    /// Assumes dense ids in position order; ties in any key are broken by id.
    fn build(points: Vec<Point>) -> Self {
        let n = points.len();
        let mut orders: [Vec<usize>; 3] = Default::default();
        let mut ranks: [Vec<usize>; 3] = Default::default();
        for key in Key::ALL {
            let values: Vec<Rational> = points.iter().map(|p| p.coord(key)).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| values[a].cmp(&values[b]).then(a.cmp(&b)));
            let mut rank = vec![0; n];
            for (r, &id) in order.iter().enumerate() {
                rank[id] = r;
            }
            orders[key_index(key)] = order;
            ranks[key_index(key)] = rank;
        }
        PointSet {
            points,
            orders,
            ranks,
        }
    }

    /// Seeded random point set with small distinct integer coordinates in
    /// general position. Sum collisions are resolved by redrawing `y`.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = (10 * n).max(1);
        let xs = sample(&mut rng, span, n).into_vec();
        loop {
            let ys = sample(&mut rng, span, n).into_vec();
            let coords = xs
                .iter()
                .zip(&ys)
                .map(|(&x, &y)| (rat(x as i64), rat(y as i64)));
            if let Ok(ps) = PointSet::new(coords) {
                return ps;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, id: usize) -> &Point {
        &self.points[id]
    }

    /// Ids sorted strictly increasing by `key`.
    pub fn order_by(&self, key: Key) -> &[usize] {
        &self.orders[key_index(key)]
    }

    /// Position of `id` in [`PointSet::order_by`].
    pub fn rank(&self, key: Key, id: usize) -> usize {
        self.ranks[key_index(key)][id]
    }

    /// Value of `key` at the point with the given rank.
    pub fn value_at_rank(&self, key: Key, rank: usize) -> Rational {
        self.points[self.orders[key_index(key)][rank]].coord(key)
    }

    pub fn general_position(&self) -> GeneralPositionReport {
        check_general_position(&self.points)
    }

    /// Id-preserving reflection.
    pub fn reflect(&self, axis: Reflection) -> PointSet {
        let points = self
            .points
            .iter()
            .map(|p| {
                let (x, y) = match axis {
                    Reflection::Horizontal => (-&p.x, p.y.clone()),
                    Reflection::Vertical => (p.x.clone(), -&p.y),
                    Reflection::Both => (-&p.x, -&p.y),
                };
                Point { id: p.id, x, y }
            })
            .collect();
        Self::build(points)
    }

    /// Restriction to `ids` (which must be distinct). The returned set has
    /// dense ids following the order of `ids`; the vector maps new ids back
    /// to ids of `self`.
    pub fn subset(&self, ids: &[usize]) -> (PointSet, Vec<usize>) {
        let points = ids
            .iter()
            .enumerate()
            .map(|(new_id, &old)| Point {
                id: new_id,
                x: self.points[old].x.clone(),
                y: self.points[old].y.clone(),
            })
            .collect();
        (Self::build(points), ids.to_vec())
    }

    /// Same ids, `x` multiplied by `factor` (which must be positive).
    pub fn scale_x(&self, factor: &Rational) -> Result<PointSet, GeometryError> {
        assert!(*factor > Rational::zero(), "scale factor must be positive");
        let points = self
            .points
            .iter()
            .map(|p| Point {
                id: p.id,
                x: &p.x * factor,
                y: p.y.clone(),
            })
            .collect();
        Self::from_points(points)
    }

    /// Smallest positive difference between consecutive values of `key`, or
    /// one when fewer than two distinct values exist.
    pub fn min_gap(&self, key: Key) -> Rational {
        min_gap(self.points.iter().map(|p| p.coord(key)))
    }

    /// `(min x, min y, max x, max y)`, or `None` for the empty set.
    pub fn bounding_box(&self) -> Option<(Rational, Rational, Rational, Rational)> {
        if self.is_empty() {
            return None;
        }
        let n = self.len();
        Some((
            self.value_at_rank(Key::X, 0),
            self.value_at_rank(Key::Y, 0),
            self.value_at_rank(Key::X, n - 1),
            self.value_at_rank(Key::Y, n - 1),
        ))
    }
}

/// Smallest positive difference among `values`, one if there is none.
pub fn min_gap<I: IntoIterator<Item = Rational>>(values: I) -> Rational {
    let mut v: Vec<Rational> = values.into_iter().collect();
    v.sort();
    v.dedup();
    v.windows(2)
        .map(|w| &w[1] - &w[0])
        .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
        .unwrap_or_else(Rational::one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_is_in_general_position() {
        let ps = PointSet::from_integers(&[(0, 0)]).unwrap();
        assert!(ps.general_position().is_ok());
    }

    #[test]
    fn diagonal_pair_is_in_general_position() {
        assert!(PointSet::from_integers(&[(0, 0), (1, 1)]).is_ok());
    }

    #[test]
    fn antidiagonal_pair_violates_sums() {
        let pts = vec![
            Point {
                id: 0,
                x: rat(0),
                y: rat(1),
            },
            Point {
                id: 1,
                x: rat(1),
                y: rat(0),
            },
        ];
        let report = check_general_position(&pts);
        assert_eq!(report.sum, vec![(0, 1)]);
        assert!(report.x.is_empty() && report.y.is_empty());
        assert!(matches!(
            PointSet::from_points(pts),
            Err(GeometryError::NotInGeneralPosition(_))
        ));
    }

    #[test]
    fn report_lists_every_pair_of_a_tie_group() {
        let pts: Vec<Point> = (0..3)
            .map(|i| Point {
                id: i,
                x: rat(5),
                y: rat(i as i64 * 7),
            })
            .collect();
        let report = check_general_position(&pts);
        assert_eq!(report.x, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn rejects_non_dense_ids() {
        let pts = vec![Point {
            id: 3,
            x: rat(0),
            y: rat(0),
        }];
        assert_eq!(
            PointSet::from_points(pts),
            Err(GeometryError::BadIds { n: 1, id: 3 })
        );
    }

    #[test]
    fn horizontal_flip_negates_x() {
        let ps = PointSet::from_integers(&[(1, 2)]).unwrap();
        let flipped = ps.reflect(Reflection::Horizontal);
        assert_eq!(flipped.point(0).x, rat(-1));
        assert_eq!(flipped.point(0).y, rat(2));
    }

    #[test]
    fn reflections_are_involutions() {
        let ps = PointSet::random(12, 7);
        for axis in [
            Reflection::Horizontal,
            Reflection::Vertical,
            Reflection::Both,
        ] {
            assert_eq!(ps.reflect(axis).reflect(axis), ps);
        }
    }

    #[test]
    fn order_by_examples() {
        let ps = PointSet::from_integers(&[(3, 1), (1, 2)]).unwrap();
        assert_eq!(ps.order_by(Key::X), &[1, 0]);
        let ps = PointSet::from_integers(&[(0, 3), (2, 0)]).unwrap();
        assert_eq!(ps.order_by(Key::Sum), &[1, 0]);
    }

    #[test]
    fn vertical_flip_reverses_y_order() {
        let ps = PointSet::random(15, 3);
        let mut rev = ps.reflect(Reflection::Vertical).order_by(Key::Y).to_vec();
        rev.reverse();
        assert_eq!(rev, ps.order_by(Key::Y));
    }

    #[test]
    fn rotation_keeps_general_position() {
        let ps = PointSet::random(25, 11);
        assert!(ps.reflect(Reflection::Both).general_position().is_ok());
    }

    #[test]
    fn subset_maps_back() {
        let ps = PointSet::random(10, 1);
        let (sub, back) = ps.subset(&[2, 5, 7]);
        assert_eq!(sub.len(), 3);
        for (new_id, &old) in back.iter().enumerate() {
            assert_eq!(sub.point(new_id).x, ps.point(old).x);
        }
    }

    #[test]
    fn random_is_deterministic_and_general() {
        let a = PointSet::random(40, 99);
        let b = PointSet::random(40, 99);
        assert_eq!(a, b);
        assert!(a.general_position().is_ok());
    }

    #[test]
    fn min_gap_of_values() {
        assert_eq!(min_gap(vec![rat(0), rat(3), ratio(7, 2)]), ratio(1, 2));
        assert_eq!(min_gap(vec![rat(4)]), rat(1));
    }
}
