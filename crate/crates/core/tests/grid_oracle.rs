//! Sweep enumeration against brute force over a parameter grid.
//!
//! Every captured set of a family is realized by a range whose boundaries
//! sit just off point coordinates, so trying every boundary in
//! `{v - ε, v + ε}` plus one value beyond each end finds all of them.

use std::collections::{BTreeMap, BTreeSet};

use num::One;
use polychrome::geometry::{rat, ratio, Key};
use polychrome::ranges::{enumerate_hyperedges, enumerate_union, Quadrant};
use polychrome::{PointSet, Range, RangeFamily, Rational};

fn candidates(ps: &PointSet, key: Key) -> Vec<Rational> {
    let eps = ps.min_gap(key) / rat(2);
    let values: Vec<Rational> = ps.points().iter().map(|p| p.coord(key)).collect();
    let lo = values.iter().min().unwrap() - Rational::one();
    let hi = values.iter().max().unwrap() + Rational::one();
    let mut out = vec![lo, hi];
    for v in values {
        out.push(&v - &eps);
        out.push(&v + &eps);
    }
    out
}

/// All nonempty captured sets, grouped by size.
fn grid(ps: &PointSet, family: RangeFamily) -> BTreeMap<usize, BTreeSet<Vec<usize>>> {
    let xs = candidates(ps, Key::X);
    let ys = candidates(ps, Key::Y);
    let mut ranges = vec![];
    match family {
        RangeFamily::HS | RangeFamily::VS | RangeFamily::DS => {
            let key = match family {
                RangeFamily::HS => Key::Y,
                RangeFamily::VS => Key::X,
                _ => Key::Sum,
            };
            let c = candidates(ps, key);
            for lo in &c {
                for hi in c.iter().filter(|hi| *hi > lo) {
                    ranges.push(Range::Strip {
                        key,
                        lo: lo.clone(),
                        hi: hi.clone(),
                    });
                }
            }
        }
        RangeFamily::BL | RangeFamily::TL => {
            for left in &xs {
                for right in xs.iter().filter(|r| *r > left) {
                    for b in &ys {
                        let (left, right, b) = (left.clone(), right.clone(), b.clone());
                        ranges.push(if family == RangeFamily::BL {
                            Range::Bottomless {
                                left,
                                right,
                                top: b,
                            }
                        } else {
                            Range::Topless {
                                left,
                                right,
                                bottom: b,
                            }
                        });
                    }
                }
            }
        }
        quadrant => {
            let orientation: Quadrant = quadrant.quadrant().unwrap();
            for a in &xs {
                for b in &ys {
                    ranges.push(Range::Quadrant {
                        orientation,
                        apex_x: a.clone(),
                        apex_y: b.clone(),
                    });
                }
            }
        }
    }
    let mut out: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for r in ranges {
        let e = r.captures(ps);
        if !e.is_empty() {
            out.entry(e.len()).or_default().insert(e);
        }
    }
    out
}

const FAMILIES: [RangeFamily; 9] = [
    RangeFamily::NW,
    RangeFamily::NE,
    RangeFamily::SW,
    RangeFamily::SE,
    RangeFamily::HS,
    RangeFamily::VS,
    RangeFamily::DS,
    RangeFamily::BL,
    RangeFamily::TL,
];

fn check(ps: &PointSet) {
    for family in FAMILIES {
        let all = grid(ps, family);
        for m in 1..=4 {
            let expected: Vec<Vec<usize>> = all
                .get(&m)
                .map(|s| s.iter().cloned().collect())
                .unwrap_or_default();
            let got = enumerate_hyperedges(ps, family, m).unwrap();
            assert_eq!(got, expected, "{family} m={m} n={}", ps.len());
        }
    }
}

#[test]
fn random_sets_match_the_grid() {
    for (n, seed) in [
        (1, 0),
        (2, 1),
        (3, 2),
        (5, 3),
        (7, 4),
        (9, 5),
        (10, 6),
        (12, 7),
        (12, 8),
    ] {
        check(&PointSet::random(n, seed));
    }
}

#[test]
fn rational_coordinates_match_the_grid() {
    let ps = PointSet::new(vec![
        (ratio(1, 3), ratio(7, 2)),
        (ratio(-2, 5), ratio(1, 7)),
        (ratio(9, 4), ratio(-1, 2)),
        (ratio(3, 2), ratio(5, 3)),
        (ratio(0, 1), ratio(11, 5)),
        (ratio(-7, 3), ratio(2, 9)),
    ])
    .unwrap();
    check(&ps);
}

#[test]
fn union_matches_grid_on_ten_points() {
    let ps = PointSet::random(10, 42);
    let families = [
        RangeFamily::NW,
        RangeFamily::NE,
        RangeFamily::SW,
        RangeFamily::SE,
        RangeFamily::HS,
        RangeFamily::VS,
    ];
    let mut expected = BTreeSet::new();
    for f in families {
        expected.extend(grid(&ps, f).remove(&3).unwrap_or_default());
    }
    let got = enumerate_union(&ps, &families, 3).unwrap();
    assert_eq!(got, expected.into_iter().collect::<Vec<_>>());
}

#[test]
fn strip_union_on_three_points() {
    let ps = PointSet::from_integers(&[(0, 1), (1, 2), (2, 0)]).unwrap();
    let got = enumerate_union(&ps, &[RangeFamily::HS, RangeFamily::VS], 2).unwrap();
    // VS: {0,1}, {1,2}; HS (y order 2, 0, 1): {0,2}, {0,1}
    assert_eq!(got, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
}

#[test]
fn oversized_uniformity_is_empty() {
    let ps = PointSet::random(5, 1);
    for family in FAMILIES {
        assert!(enumerate_hyperedges(&ps, family, 6).unwrap().is_empty());
    }
}
