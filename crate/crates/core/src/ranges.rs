//! Range families, capture predicates and sweep enumeration of the
//! `m`-element captured sets.
//!
//! All sweeps run on ranks. Quadrants other than north-west are handled by
//! reflecting the point set and running the north-west sweep; topless
//! rectangles likewise go through the bottomless sweep.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{midpoint, rat, Key, Point, PointSet, Rational, Reflection};
use crate::hypergraph::Hyperedge;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RangeFamily {
    NW,
    NE,
    SW,
    SE,
    /// horizontal strips `a1 <= y <= a2`
    HS,
    /// vertical strips `a1 <= x <= a2`
    VS,
    /// diagonal strips `a1 <= x + y <= a2`
    DS,
    /// bottomless rectangles `a1 <= x <= a2, y <= b`
    BL,
    /// topless rectangles `a1 <= x <= a2, y >= b`
    TL,
    /// axis-aligned squares; capture predicate only
    SQ,
}

impl RangeFamily {
    pub const ALL: [RangeFamily; 10] = [
        RangeFamily::NW,
        RangeFamily::NE,
        RangeFamily::SW,
        RangeFamily::SE,
        RangeFamily::HS,
        RangeFamily::VS,
        RangeFamily::DS,
        RangeFamily::BL,
        RangeFamily::TL,
        RangeFamily::SQ,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RangeFamily::NW => "nw",
            RangeFamily::NE => "ne",
            RangeFamily::SW => "sw",
            RangeFamily::SE => "se",
            RangeFamily::HS => "hs",
            RangeFamily::VS => "vs",
            RangeFamily::DS => "ds",
            RangeFamily::BL => "bl",
            RangeFamily::TL => "tl",
            RangeFamily::SQ => "sq",
        }
    }

    pub fn quadrant(self) -> Option<Quadrant> {
        match self {
            RangeFamily::NW => Some(Quadrant::NW),
            RangeFamily::NE => Some(Quadrant::NE),
            RangeFamily::SW => Some(Quadrant::SW),
            RangeFamily::SE => Some(Quadrant::SE),
            _ => None,
        }
    }

    /// Parses a comma separated tag list such as `"nw,hs,bl"`.
    pub fn parse_list(s: &str) -> Result<Vec<RangeFamily>, RangeError> {
        let mut out = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            out.insert(part.parse()?);
        }
        Ok(out.into_iter().collect())
    }
}

impl fmt::Display for RangeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for RangeFamily {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RangeFamily::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| RangeError::UnknownFamily(s.to_string()))
    }
}

/// Opening direction of a quadrant.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadrant {
    NW,
    NE,
    SW,
    SE,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::NW, Quadrant::NE, Quadrant::SW, Quadrant::SE];

    pub fn family(self) -> RangeFamily {
        match self {
            Quadrant::NW => RangeFamily::NW,
            Quadrant::NE => RangeFamily::NE,
            Quadrant::SW => RangeFamily::SW,
            Quadrant::SE => RangeFamily::SE,
        }
    }

    /// Reflection that turns this orientation into north-west.
    pub fn to_north_west(self) -> Option<Reflection> {
        match self {
            Quadrant::NW => None,
            Quadrant::NE => Some(Reflection::Horizontal),
            Quadrant::SW => Some(Reflection::Vertical),
            Quadrant::SE => Some(Reflection::Both),
        }
    }

    /// The point set seen from the north-west frame of this orientation.
    pub fn frame(self, ps: &PointSet) -> PointSet {
        match self.to_north_west() {
            None => ps.clone(),
            Some(axis) => ps.reflect(axis),
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family().tag())
    }
}

impl FromStr for Quadrant {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let family: RangeFamily = s.parse()?;
        family
            .quadrant()
            .ok_or_else(|| RangeError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RangeError {
    #[error("unknown range family `{0}`")]
    UnknownFamily(String),
    #[error("uniformity must be at least 1")]
    ZeroUniformity,
    #[error("family {0} has a capture predicate only and cannot be enumerated")]
    NotEnumerable(RangeFamily),
    #[error("{edge:?} is not a hyperedge of family {family}")]
    NotAHyperedge {
        family: RangeFamily,
        edge: Vec<usize>,
    },
    #[error("cannot shrink a hyperedge with fewer than two vertices")]
    TooSmallToShrink,
    #[error("invalid range parameters: {0}")]
    InvalidParameters(&'static str),
}

/// A closed planar range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Range {
    Quadrant {
        orientation: Quadrant,
        apex_x: Rational,
        apex_y: Rational,
    },
    /// `lo <= key <= hi`; `Key::Y` is a horizontal strip, `Key::X` a
    /// vertical one and `Key::Sum` a diagonal strip of slope -1.
    Strip {
        key: Key,
        lo: Rational,
        hi: Rational,
    },
    Bottomless {
        left: Rational,
        right: Rational,
        top: Rational,
    },
    Topless {
        left: Rational,
        right: Rational,
        bottom: Rational,
    },
    Square {
        left: Rational,
        bottom: Rational,
        side: Rational,
    },
}

impl Range {
    pub fn family(&self) -> RangeFamily {
        match self {
            Range::Quadrant { orientation, .. } => orientation.family(),
            Range::Strip { key: Key::X, .. } => RangeFamily::VS,
            Range::Strip { key: Key::Y, .. } => RangeFamily::HS,
            Range::Strip { key: Key::Sum, .. } => RangeFamily::DS,
            Range::Bottomless { .. } => RangeFamily::BL,
            Range::Topless { .. } => RangeFamily::TL,
            Range::Square { .. } => RangeFamily::SQ,
        }
    }

    /// Interval parameters must satisfy `lo < hi`, squares `side > 0`.
    pub fn validate(&self) -> Result<(), RangeError> {
        match self {
            Range::Strip { lo, hi, .. } if lo >= hi => {
                Err(RangeError::InvalidParameters("strip needs lo < hi"))
            }
            Range::Bottomless { left, right, .. } | Range::Topless { left, right, .. }
                if left >= right =>
            {
                Err(RangeError::InvalidParameters(
                    "rectangle needs left < right",
                ))
            }
            Range::Square { side, .. } if *side <= Rational::zero() => {
                Err(RangeError::InvalidParameters("square needs side > 0"))
            }
            _ => Ok(()),
        }
    }

    /// Parameters in a fixed per-family order, as used by the range JSON
    /// format: quadrant `(x, y)`, strip `(lo, hi)`, bottomless
    /// `(left, right, top)`, topless `(left, right, bottom)`, square
    /// `(left, bottom, side)`.
    pub fn params(&self) -> Vec<Rational> {
        match self {
            Range::Quadrant { apex_x, apex_y, .. } => vec![apex_x.clone(), apex_y.clone()],
            Range::Strip { lo, hi, .. } => vec![lo.clone(), hi.clone()],
            Range::Bottomless { left, right, top } => {
                vec![left.clone(), right.clone(), top.clone()]
            }
            Range::Topless {
                left,
                right,
                bottom,
            } => vec![left.clone(), right.clone(), bottom.clone()],
            Range::Square { left, bottom, side } => {
                vec![left.clone(), bottom.clone(), side.clone()]
            }
        }
    }

    /// Inverse of [`Range::params`].
    pub fn from_params(family: RangeFamily, params: &[Rational]) -> Result<Range, RangeError> {
        let want = match family {
            RangeFamily::NW
            | RangeFamily::NE
            | RangeFamily::SW
            | RangeFamily::SE
            | RangeFamily::HS
            | RangeFamily::VS
            | RangeFamily::DS => 2,
            _ => 3,
        };
        if params.len() != want {
            return Err(RangeError::InvalidParameters("wrong parameter count"));
        }
        let p = |i: usize| params[i].clone();
        let range = match family {
            RangeFamily::HS => Range::Strip {
                key: Key::Y,
                lo: p(0),
                hi: p(1),
            },
            RangeFamily::VS => Range::Strip {
                key: Key::X,
                lo: p(0),
                hi: p(1),
            },
            RangeFamily::DS => Range::Strip {
                key: Key::Sum,
                lo: p(0),
                hi: p(1),
            },
            RangeFamily::BL => Range::Bottomless {
                left: p(0),
                right: p(1),
                top: p(2),
            },
            RangeFamily::TL => Range::Topless {
                left: p(0),
                right: p(1),
                bottom: p(2),
            },
            RangeFamily::SQ => Range::Square {
                left: p(0),
                bottom: p(1),
                side: p(2),
            },
            quadrant => Range::Quadrant {
                orientation: quadrant.quadrant().unwrap(),
                apex_x: p(0),
                apex_y: p(1),
            },
        };
        range.validate()?;
        Ok(range)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Range::Quadrant {
                orientation,
                apex_x,
                apex_y,
            } => match orientation {
                Quadrant::NW => p.x <= *apex_x && p.y >= *apex_y,
                Quadrant::NE => p.x >= *apex_x && p.y >= *apex_y,
                Quadrant::SW => p.x <= *apex_x && p.y <= *apex_y,
                Quadrant::SE => p.x >= *apex_x && p.y <= *apex_y,
            },
            Range::Strip { key, lo, hi } => {
                let v = p.coord(*key);
                *lo <= v && v <= *hi
            }
            Range::Bottomless { left, right, top } => *left <= p.x && p.x <= *right && p.y <= *top,
            Range::Topless {
                left,
                right,
                bottom,
            } => *left <= p.x && p.x <= *right && p.y >= *bottom,
            Range::Square { left, bottom, side } => {
                *left <= p.x && p.x <= left + side && *bottom <= p.y && p.y <= bottom + side
            }
        }
    }

    /// Sorted ids of the points of `ps` inside the range.
    pub fn captures(&self, ps: &PointSet) -> Vec<usize> {
        ps.points()
            .iter()
            .filter(|p| self.contains(p))
            .map(|p| p.id)
            .collect()
    }
}

/// Sorted, deduplicated `m`-element sets captured by `family`.
pub fn enumerate_hyperedges(
    ps: &PointSet,
    family: RangeFamily,
    m: usize,
) -> Result<Vec<Hyperedge>, RangeError> {
    if m == 0 {
        return Err(RangeError::ZeroUniformity);
    }
    if m > ps.len() {
        return match family {
            RangeFamily::SQ => Err(RangeError::NotEnumerable(family)),
            _ => Ok(vec![]),
        };
    }
    let mut edges = match family {
        RangeFamily::VS => windows(ps, Key::X, m),
        RangeFamily::HS => windows(ps, Key::Y, m),
        RangeFamily::DS => windows(ps, Key::Sum, m),
        RangeFamily::BL => bottomless(ps, m),
        RangeFamily::TL => bottomless(&ps.reflect(Reflection::Vertical), m),
        RangeFamily::SQ => return Err(RangeError::NotEnumerable(family)),
        quadrant => {
            let q = quadrant.quadrant().unwrap();
            north_west_sequence(&q.frame(ps), m)
        }
    };
    edges.sort();
    edges.dedup();
    Ok(edges)
}

/// Union over several families, sorted and deduplicated.
pub fn enumerate_union(
    ps: &PointSet,
    families: &[RangeFamily],
    m: usize,
) -> Result<Vec<Hyperedge>, RangeError> {
    let mut all = BTreeSet::new();
    for &family in families {
        all.extend(enumerate_hyperedges(ps, family, m)?);
    }
    Ok(all.into_iter().collect())
}

fn sorted(mut ids: Vec<usize>) -> Vec<usize> {
    ids.sort_unstable();
    ids
}

fn windows(ps: &PointSet, key: Key, m: usize) -> Vec<Hyperedge> {
    ps.order_by(key)
        .windows(m)
        .map(|w| sorted(w.to_vec()))
        .collect()
}

/// North-west captured `m`-sets ordered along their apices by decreasing
/// `x`: the first is the `m` topmost points, the last the `m` leftmost.
///
/// Each set is the top `m` by `y` of an `x`-prefix; equal sets come from
/// contiguous prefixes, so consecutive deduplication is exact.
pub fn north_west_sequence(ps: &PointSet, m: usize) -> Vec<Hyperedge> {
    if m == 0 || m > ps.len() {
        return vec![];
    }
    let y_order = ps.order_by(Key::Y);
    let mut top: BTreeSet<usize> = BTreeSet::new();
    let mut seq: Vec<Hyperedge> = vec![];
    for &id in ps.order_by(Key::X) {
        let r = ps.rank(Key::Y, id);
        top.insert(r);
        if top.len() > m {
            let lowest = *top.iter().next().unwrap();
            top.remove(&lowest);
            if lowest == r {
                continue;
            }
        }
        if top.len() == m {
            seq.push(sorted(top.iter().map(|&r| y_order[r]).collect()));
        }
    }
    seq.reverse();
    seq
}

fn bottomless(ps: &PointSet, m: usize) -> Vec<Hyperedge> {
    let n = ps.len();
    let x_order = ps.order_by(Key::X);
    let y_order = ps.order_by(Key::Y);
    let mut seen: HashSet<Hyperedge> = HashSet::new();
    for i in 0..n {
        let mut low: BTreeSet<usize> = BTreeSet::new();
        for &id in &x_order[i..] {
            let r = ps.rank(Key::Y, id);
            low.insert(r);
            if low.len() > m {
                let highest = *low.iter().next_back().unwrap();
                low.remove(&highest);
                if highest == r {
                    continue;
                }
            }
            if low.len() == m {
                seen.insert(sorted(low.iter().map(|&r| y_order[r]).collect()));
            }
        }
    }
    seen.into_iter().collect()
}

/// Boundary strictly between the value at `rank` and its lower neighbor.
fn below(ps: &PointSet, key: Key, rank: usize) -> Rational {
    let v = ps.value_at_rank(key, rank);
    if rank == 0 {
        v - rat(1)
    } else {
        midpoint(&ps.value_at_rank(key, rank - 1), &v)
    }
}

/// Boundary strictly between the value at `rank` and its upper neighbor.
fn above(ps: &PointSet, key: Key, rank: usize) -> Rational {
    let v = ps.value_at_rank(key, rank);
    if rank + 1 == ps.len() {
        v + rat(1)
    } else {
        midpoint(&v, &ps.value_at_rank(key, rank + 1))
    }
}

/// The tightest range of `family` around `edge`, with every boundary at the
/// midpoint to the neighboring coordinate (or one unit past an extreme
/// point). It is returned only if it captures exactly `edge`, which happens
/// iff `edge` is captured by the family at all.
pub fn witness(ps: &PointSet, family: RangeFamily, edge: &[usize]) -> Option<Range> {
    if edge.is_empty() || edge.iter().any(|&v| v >= ps.len()) {
        return None;
    }
    let rank_span = |key: Key| {
        let ranks = edge.iter().map(|&v| ps.rank(key, v));
        (ranks.clone().min().unwrap(), ranks.max().unwrap())
    };
    let (x_lo, x_hi) = rank_span(Key::X);
    let (y_lo, y_hi) = rank_span(Key::Y);
    let quadrant = |orientation, apex_x, apex_y| Range::Quadrant {
        orientation,
        apex_x,
        apex_y,
    };
    let strip = |key: Key| {
        let (lo, hi) = rank_span(key);
        Range::Strip {
            key,
            lo: below(ps, key, lo),
            hi: above(ps, key, hi),
        }
    };
    let range = match family {
        RangeFamily::NW => quadrant(
            Quadrant::NW,
            above(ps, Key::X, x_hi),
            below(ps, Key::Y, y_lo),
        ),
        RangeFamily::NE => quadrant(
            Quadrant::NE,
            below(ps, Key::X, x_lo),
            below(ps, Key::Y, y_lo),
        ),
        RangeFamily::SW => quadrant(
            Quadrant::SW,
            above(ps, Key::X, x_hi),
            above(ps, Key::Y, y_hi),
        ),
        RangeFamily::SE => quadrant(
            Quadrant::SE,
            below(ps, Key::X, x_lo),
            above(ps, Key::Y, y_hi),
        ),
        RangeFamily::HS => strip(Key::Y),
        RangeFamily::VS => strip(Key::X),
        RangeFamily::DS => strip(Key::Sum),
        RangeFamily::BL => Range::Bottomless {
            left: below(ps, Key::X, x_lo),
            right: above(ps, Key::X, x_hi),
            top: above(ps, Key::Y, y_hi),
        },
        RangeFamily::TL => Range::Topless {
            left: below(ps, Key::X, x_lo),
            right: above(ps, Key::X, x_hi),
            bottom: below(ps, Key::Y, y_lo),
        },
        RangeFamily::SQ => return None,
    };
    let mut want = edge.to_vec();
    want.sort_unstable();
    (range.captures(ps) == want).then_some(range)
}

pub fn is_captured(ps: &PointSet, family: RangeFamily, edge: &[usize]) -> bool {
    witness(ps, family, edge).is_some()
}

/// A captured subset of `edge` with one vertex fewer.
///
/// Tries the natural boundary move first (raise the bottom of a north
/// quadrant, narrow a strip from its top end, cut a rectangle from the
/// left), then every other single-vertex removal.
pub fn shrink_witness(
    ps: &PointSet,
    family: RangeFamily,
    edge: &[usize],
) -> Result<Hyperedge, RangeError> {
    if !is_captured(ps, family, edge) {
        return Err(RangeError::NotAHyperedge {
            family,
            edge: edge.to_vec(),
        });
    }
    if edge.len() < 2 {
        return Err(RangeError::TooSmallToShrink);
    }
    let extreme = |key: Key, lowest: bool| {
        let it = edge.iter().copied();
        if lowest {
            it.min_by_key(|&v| ps.rank(key, v)).unwrap()
        } else {
            it.max_by_key(|&v| ps.rank(key, v)).unwrap()
        }
    };
    let preferred = match family {
        RangeFamily::NW | RangeFamily::NE => vec![extreme(Key::Y, true)],
        RangeFamily::SW | RangeFamily::SE | RangeFamily::HS => vec![extreme(Key::Y, false)],
        RangeFamily::VS => vec![extreme(Key::X, false)],
        RangeFamily::DS => vec![extreme(Key::Sum, false)],
        RangeFamily::BL | RangeFamily::TL => vec![extreme(Key::X, true), extreme(Key::X, false)],
        RangeFamily::SQ => vec![],
    };
    let candidates = preferred
        .into_iter()
        .chain(edge.iter().copied())
        .collect::<Vec<_>>();
    for drop in candidates {
        let smaller: Vec<usize> = edge.iter().copied().filter(|&v| v != drop).collect();
        if is_captured(ps, family, &smaller) {
            return Ok(sorted(smaller));
        }
    }
    Err(RangeError::NotAHyperedge {
        family,
        edge: edge.to_vec(),
    })
}
