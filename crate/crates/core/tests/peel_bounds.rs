//! Hit counts of one pipeline peel on the preset families.
//!
//! A peel is the union of the greedy quadrant sets of `R1`. It must hit every
//! `R1` edge at most `t` times and every `R2` edge at most `s` times.

use polychrome::coloring::shallow::max_hits;
use polychrome::coloring::{preset_case, quadrant_shallow_hitting_set, PRESET_NAMES};
use polychrome::ranges::Quadrant;
use polychrome::{PointSet, RangeFamily};

fn instances() -> impl Iterator<Item = (PointSet, usize)> {
    (0..150u64).map(|seed| {
        let n = 10 + (seed as usize * 7) % 51;
        let m = 1 + (seed as usize / 3) % 10;
        (PointSet::random(n, seed), m)
    })
}

#[test]
fn peels_respect_preset_bounds() {
    for name in PRESET_NAMES {
        let cfg = preset_case(name).unwrap();
        for (ps, m) in instances() {
            let mut peel: Vec<usize> = cfg
                .r1
                .iter()
                .flat_map(|&q| quadrant_shallow_hitting_set(&ps, q, m).order)
                .collect();
            peel.sort_unstable();
            peel.dedup();
            for q in &cfg.r1 {
                let hits = max_hits(&ps, q.family(), m, &peel).unwrap();
                assert!(
                    hits <= cfg.t,
                    "{name}: {q} edge hit {hits} times, n={} m={m}",
                    ps.len()
                );
            }
            for &f in &cfg.r2 {
                let hits = max_hits(&ps, f, m, &peel).unwrap();
                assert!(
                    hits <= cfg.s,
                    "{name}: {f} edge hit {hits} times, n={} m={m}",
                    ps.len()
                );
            }
        }
    }
}

#[test]
fn north_west_and_south_east_sets_hit_diagonal_strips_at_most_twice() {
    for (ps, m) in instances() {
        for q in [Quadrant::NW, Quadrant::SE] {
            let set = quadrant_shallow_hitting_set(&ps, q, m);
            let hits = max_hits(&ps, RangeFamily::DS, m, set.ids()).unwrap();
            assert!(hits <= 2, "{q}: {hits} hits, n={} m={m}", ps.len());
        }
    }
}
