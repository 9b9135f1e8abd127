//! Peeling shallow hitting sets.
//!
//! [`peel_single`] colors one quadrant family: with `m = (k - 1) t + 1`,
//! the greedy hitting set of the current points at the current uniformity
//! becomes the highest remaining color and the uniformity drops by `t`.
//!
//! [`peel_pipeline`] handles a union `R1 ∪ R2` where `R1` is a set of
//! quadrant orientations: `k` peels, each taking the union of the
//! per-orientation greedy sets at uniformity `m_i = m - (i - 1) max(s, t)`,
//! followed by a base coloring of what is left for `R2` at `f(k)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::geometry::PointSet;
use crate::hypergraph::{
    exact_polychromatic, is_polychromatic, Coloring, Hypergraph, SearchOutcome,
};
use crate::io::points_to_json;
use crate::ranges::{enumerate_hyperedges, enumerate_union, Quadrant, RangeFamily};

use super::shallow::quadrant_shallow_hitting_set;
use super::strips::color_strips;
use super::ColoringError;

/// Names accepted by [`preset_case`].
pub const PRESET_NAMES: [&str; 3] = [
    "bottomless+north-quadrants",
    "quadrants+strips",
    "nw+se+three-strips",
];

/// Uniformity at which the base colorer is guaranteed to succeed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    /// `slope * k - offset`
    Affine { slope: usize, offset: usize },
    /// `ceil(4 k ln k + k ln 3)`
    ThreeStripLog,
}

impl Threshold {
    pub fn eval(self, k: usize) -> usize {
        match self {
            Threshold::Affine { slope, offset } => (slope * k).saturating_sub(offset),
            Threshold::ThreeStripLog => {
                let k = k as f64;
                (4.0 * k * k.ln() + k * 3f64.ln()).ceil() as usize
            }
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BaseColorer {
    /// hitting-clique coloring of horizontal and vertical strips
    Strips,
    /// exhaustive search on the remaining instance
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub name: String,
    pub r1: Vec<Quadrant>,
    pub r2: Vec<RangeFamily>,
    /// maximum hits of an `R2` edge by one peel
    pub s: usize,
    /// shallowness of one peel on `R1` edges
    pub t: usize,
    pub threshold: Threshold,
    pub base: BaseColorer,
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), ColoringError> {
        let bad = |msg: &str| Err(ColoringError::InvalidConfig(msg.to_string()));
        if self.s == 0 || self.t == 0 {
            return bad("s and t must be positive");
        }
        if self.r1.is_empty() {
            return bad("R1 must contain at least one quadrant orientation");
        }
        if self.r1.iter().any(|q| self.r2.contains(&q.family())) {
            return bad("R1 and R2 must be disjoint");
        }
        if self.base == BaseColorer::Strips
            && !self
                .r2
                .iter()
                .all(|f| matches!(f, RangeFamily::HS | RangeFamily::VS))
        {
            return bad("the strip base colorer only handles HS and VS");
        }
        Ok(())
    }

    /// `f(k) + k max(s, t)`
    pub fn uniformity(&self, k: usize) -> usize {
        self.threshold.eval(k) + k * self.s.max(self.t)
    }

    /// All families of `R1 ∪ R2`.
    pub fn families(&self) -> Vec<RangeFamily> {
        let all: BTreeSet<RangeFamily> = self
            .r1
            .iter()
            .map(|q| q.family())
            .chain(self.r2.iter().copied())
            .collect();
        all.into_iter().collect()
    }
}

/// Looks up a preset by name, ignoring ASCII case.
pub fn preset_case(name: &str) -> Result<PipelineConfig, ColoringError> {
    let lower = name.to_ascii_lowercase();
    let name = lower.as_str();
    let config = match name {
        "bottomless+north-quadrants" => PipelineConfig {
            name: name.to_string(),
            r1: vec![Quadrant::NW, Quadrant::NE],
            r2: vec![RangeFamily::BL],
            s: 2,
            t: 2,
            threshold: Threshold::Affine {
                slope: 3,
                offset: 2,
            },
            base: BaseColorer::Exact,
        },
        "quadrants+strips" => PipelineConfig {
            name: name.to_string(),
            r1: Quadrant::ALL.to_vec(),
            r2: vec![RangeFamily::HS, RangeFamily::VS],
            s: 8,
            t: 4,
            threshold: Threshold::Affine {
                slope: 2,
                offset: 1,
            },
            base: BaseColorer::Strips,
        },
        "nw+se+three-strips" => PipelineConfig {
            name: name.to_string(),
            r1: vec![Quadrant::NW, Quadrant::SE],
            r2: vec![RangeFamily::HS, RangeFamily::VS, RangeFamily::DS],
            s: 4,
            t: 3,
            threshold: Threshold::ThreeStripLog,
            base: BaseColorer::Exact,
        },
        other => return Err(ColoringError::UnknownPreset(other.to_string())),
    };
    Ok(config)
}

/// Polychromatic coloring of the `families`-hypergraph at uniformity `m` by
/// exhaustive search. Unsatisfiability is surfaced as
/// [`ColoringError::CitedBoundFalsified`] with the serialized instance.
pub fn base_color_exact(
    ps: &PointSet,
    families: &[RangeFamily],
    m: usize,
    k: usize,
    budget: u64,
) -> Result<Coloring, ColoringError> {
    if k == 0 {
        return Err(ColoringError::ZeroColors);
    }
    let h = Hypergraph::new(ps.len(), enumerate_union(ps, families, m)?)?;
    let run = exact_polychromatic(&h, k, budget);
    match run.outcome {
        SearchOutcome::Found(c) => Ok(c),
        SearchOutcome::Unsat => Err(ColoringError::CitedBoundFalsified {
            k,
            m,
            families: families.to_vec(),
            instance: points_to_json(ps),
        }),
        SearchOutcome::BudgetExhausted => Err(ColoringError::BudgetExhausted { nodes: run.nodes }),
    }
}

/// Colors `H(ps, family, (k - 1) t + 1)` with `k` colors by repeated greedy
/// hitting sets. Only quadrant families have a provider, and it is
/// 2-shallow, so `t >= 2` is required.
pub fn peel_single(
    ps: &PointSet,
    family: RangeFamily,
    t: usize,
    k: usize,
) -> Result<Coloring, ColoringError> {
    if k == 0 {
        return Err(ColoringError::ZeroColors);
    }
    let orientation = match family.quadrant() {
        Some(q) if t >= 2 => q,
        _ => return Err(ColoringError::NoProvider(family, t)),
    };
    let mut colors = vec![1; ps.len()];
    let mut active: Vec<usize> = (0..ps.len()).collect();
    let mut m = (k - 1) * t + 1;
    for color in (2..=k).rev() {
        let (sub, back) = ps.subset(&active);
        let set = quadrant_shallow_hitting_set(&sub, orientation, m);
        let mut taken = vec![false; sub.len()];
        for &v in set.ids() {
            taken[v] = true;
            colors[back[v]] = color;
        }
        active = back
            .into_iter()
            .enumerate()
            .filter(|&(v, _)| !taken[v])
            .map(|(_, id)| id)
            .collect();
        m -= t;
    }
    Ok(Coloring::new(k, colors)?)
}

/// One peel of the pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peel {
    pub color: usize,
    pub uniformity: usize,
    /// per-orientation greedy sets, ids of the input point set
    pub sets: Vec<(Quadrant, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineRun {
    pub preset: String,
    pub k: usize,
    pub m: usize,
    /// `m_1, ..., m_{k+1}`; the last entry is the base threshold
    pub schedule: Vec<usize>,
    pub peels: Vec<Peel>,
    pub base_threshold: usize,
    /// ids colored by the base colorer
    pub remainder: Vec<usize>,
    pub coloring: Coloring,
    /// non-polychromatic `m`-edges per family; all zero on success
    pub violations: BTreeMap<RangeFamily, usize>,
}

impl PipelineRun {
    pub fn is_polychromatic(&self) -> bool {
        self.violations.values().all(|&v| v == 0)
    }
}

pub fn peel_pipeline(
    ps: &PointSet,
    cfg: &PipelineConfig,
    k: usize,
    budget: u64,
) -> Result<PipelineRun, ColoringError> {
    cfg.validate()?;
    if k == 0 {
        return Err(ColoringError::ZeroColors);
    }
    let m = cfg.uniformity(k);
    let step = cfg.s.max(cfg.t);
    let mut colors = vec![0usize; ps.len()];
    let mut active: Vec<usize> = (0..ps.len()).collect();
    let mut schedule = vec![];
    let mut peels = vec![];

    for color in 1..=k {
        let m_i = m - (color - 1) * step;
        schedule.push(m_i);
        let (sub, back) = ps.subset(&active);
        let mut sets = vec![];
        for &q in &cfg.r1 {
            let set = quadrant_shallow_hitting_set(&sub, q, m_i);
            let ids: Vec<usize> = set.ids().iter().map(|&v| back[v]).collect();
            for &id in &ids {
                colors[id] = color;
            }
            sets.push((q, ids));
        }
        active.retain(|&id| colors[id] == 0);
        peels.push(Peel {
            color,
            uniformity: m_i,
            sets,
        });
    }

    let base_threshold = cfg.threshold.eval(k);
    schedule.push(base_threshold);
    let (sub, back) = ps.subset(&active);
    let base = match cfg.base {
        BaseColorer::Strips => color_strips(&sub, k)?,
        BaseColorer::Exact => base_color_exact(&sub, &cfg.r2, base_threshold, k, budget)?,
    };
    for (v, &id) in back.iter().enumerate() {
        colors[id] = base.color(v);
    }
    let coloring = Coloring::new(k, colors)?;

    let mut violations = BTreeMap::new();
    for family in cfg.families() {
        let h = Hypergraph::new(ps.len(), enumerate_hyperedges(ps, family, m)?)?;
        violations.insert(family, is_polychromatic(&h, &coloring)?.len());
    }
    Ok(PipelineRun {
        preset: cfg.name.clone(),
        k,
        m,
        schedule,
        peels,
        base_threshold,
        remainder: active,
        coloring,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::DEFAULT_BUDGET;

    fn polychromatic_for(ps: &PointSet, family: RangeFamily, m: usize, c: &Coloring) -> bool {
        let h = Hypergraph::new(ps.len(), enumerate_hyperedges(ps, family, m).unwrap()).unwrap();
        is_polychromatic(&h, c).unwrap().is_empty()
    }

    #[test]
    fn thresholds() {
        assert_eq!(
            Threshold::Affine {
                slope: 3,
                offset: 2
            }
            .eval(2),
            4
        );
        assert_eq!(
            Threshold::Affine {
                slope: 2,
                offset: 1
            }
            .eval(3),
            5
        );
        // 8 ln 2 + 2 ln 3 = 7.742...
        assert_eq!(Threshold::ThreeStripLog.eval(2), 8);
        // ln 3 = 1.0986...
        assert_eq!(Threshold::ThreeStripLog.eval(1), 2);
    }

    #[test]
    fn preset_uniformities() {
        assert_eq!(
            preset_case("bottomless+north-quadrants")
                .unwrap()
                .uniformity(2),
            8
        );
        for k in 1..=4 {
            assert_eq!(
                preset_case("quadrants+strips").unwrap().uniformity(k),
                10 * k - 1
            );
            assert_eq!(
                preset_case("bottomless+north-quadrants")
                    .unwrap()
                    .uniformity(k),
                5 * k - 2
            );
        }
        assert_eq!(preset_case("nw+se+three-strips").unwrap().uniformity(2), 16);
        assert!(matches!(
            preset_case("nope"),
            Err(ColoringError::UnknownPreset(_))
        ));
        for name in PRESET_NAMES {
            preset_case(name).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn rejects_overlapping_families() {
        let mut cfg = preset_case("quadrants+strips").unwrap();
        cfg.r2.push(RangeFamily::NW);
        cfg.base = BaseColorer::Exact;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn peel_single_with_one_color() {
        let ps = PointSet::random(10, 1);
        let c = peel_single(&ps, RangeFamily::NW, 2, 1).unwrap();
        assert!(c.colors().iter().all(|&x| x == 1));
    }

    #[test]
    fn peel_single_north_west_three_colors() {
        let ps = PointSet::random(40, 21);
        let c = peel_single(&ps, RangeFamily::NW, 2, 3).unwrap();
        assert!(polychromatic_for(&ps, RangeFamily::NW, 5, &c));
    }

    #[test]
    fn peel_single_south_west_two_colors() {
        let ps = PointSet::random(30, 22);
        let c = peel_single(&ps, RangeFamily::SW, 2, 2).unwrap();
        assert!(polychromatic_for(&ps, RangeFamily::SW, 3, &c));
    }

    #[test]
    fn peel_single_needs_a_provider() {
        let ps = PointSet::random(10, 1);
        assert!(matches!(
            peel_single(&ps, RangeFamily::BL, 2, 2),
            Err(ColoringError::NoProvider(..))
        ));
        assert!(matches!(
            peel_single(&ps, RangeFamily::NW, 1, 2),
            Err(ColoringError::NoProvider(..))
        ));
    }

    #[test]
    fn quadrants_strips_pipeline() {
        let ps = PointSet::random(120, 5);
        let run = peel_pipeline(
            &ps,
            &preset_case("quadrants+strips").unwrap(),
            2,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(run.m, 19);
        assert_eq!(run.schedule, vec![19, 11, 3]);
        assert!(run.is_polychromatic(), "{:?}", run.violations);
    }

    #[test]
    fn base_exact_single_color() {
        let ps = PointSet::random(12, 2);
        let c = base_color_exact(&ps, &[RangeFamily::BL], 1, 1, DEFAULT_BUDGET).unwrap();
        assert!(c.colors().iter().all(|&x| x == 1));
    }

    #[test]
    fn base_exact_surfaces_unsat() {
        // every single point is a 1-edge; two colors cannot both appear
        let ps = PointSet::random(3, 2);
        assert!(matches!(
            base_color_exact(&ps, &[RangeFamily::VS], 1, 2, DEFAULT_BUDGET),
            Err(ColoringError::CitedBoundFalsified { .. })
        ));
    }
}
