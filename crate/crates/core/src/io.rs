//! JSON formats.
//!
//! Rationals are `[numerator, denominator]` pairs of decimal strings. All
//! writers emit compact JSON with a trailing newline; output depends only on
//! the value written.

use std::collections::BTreeMap;

use num::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::PipelineRun;
use crate::geometry::{GeometryError, Point, PointSet, Rational};
use crate::hypergraph::{Coloring, Hyperedge, Hypergraph, HypergraphError};
use crate::ranges::{Quadrant, Range, RangeError, RangeFamily};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed rational [{0}, {1}]")]
    BadRational(String, String),
    #[error("the uniformity field says {declared}, but an edge has {found} vertices")]
    WrongUniformity { declared: usize, found: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Range(#[from] RangeError),
}

type RationalJson = [String; 2];

fn rational_to_json(q: &Rational) -> RationalJson {
    [q.numer().to_string(), q.denom().to_string()]
}

fn rational_from_json([n, d]: &RationalJson) -> Result<Rational, IoError> {
    let bad = || IoError::BadRational(n.clone(), d.clone());
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn finish<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable value");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    id: usize,
    x: RationalJson,
    y: RationalJson,
}

#[derive(Serialize, Deserialize)]
struct PointsJson {
    points: Vec<PointJson>,
}

pub fn points_to_json(ps: &PointSet) -> String {
    let points = ps
        .points()
        .iter()
        .map(|p| PointJson {
            id: p.id,
            x: rational_to_json(&p.x),
            y: rational_to_json(&p.y),
        })
        .collect();
    finish(&PointsJson { points })
}

pub fn points_from_json(s: &str) -> Result<PointSet, IoError> {
    let parsed: PointsJson = serde_json::from_str(s)?;
    let points = parsed
        .points
        .iter()
        .map(|p| {
            Ok(Point {
                id: p.id,
                x: rational_from_json(&p.x)?,
                y: rational_from_json(&p.y)?,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(PointSet::from_points(points)?)
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    m: usize,
    edges: Vec<Hyperedge>,
}

/// `m` is the common edge size, or 0 for an edge-less or mixed hypergraph.
pub fn hypergraph_to_json(h: &Hypergraph) -> String {
    finish(&HypergraphJson {
        n: h.n(),
        m: h.uniformity().unwrap_or(0),
        edges: h.edges().to_vec(),
    })
}

pub fn hypergraph_from_json(s: &str) -> Result<Hypergraph, IoError> {
    let parsed: HypergraphJson = serde_json::from_str(s)?;
    if parsed.m != 0 {
        if let Some(e) = parsed.edges.iter().find(|e| e.len() != parsed.m) {
            return Err(IoError::WrongUniformity {
                declared: parsed.m,
                found: e.len(),
            });
        }
    }
    Ok(Hypergraph::new(parsed.n, parsed.edges)?)
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    k: usize,
    colors: Vec<usize>,
}

pub fn coloring_to_json(c: &Coloring) -> String {
    finish(&ColoringJson {
        k: c.k(),
        colors: c.colors().to_vec(),
    })
}

pub fn coloring_from_json(s: &str) -> Result<Coloring, IoError> {
    let parsed: ColoringJson = serde_json::from_str(s)?;
    Ok(Coloring::new(parsed.k, parsed.colors)?)
}

#[derive(Serialize, Deserialize)]
struct VmapJson {
    vmap: BTreeMap<String, usize>,
}

pub fn vmap_to_json(vmap: &BTreeMap<String, usize>) -> String {
    finish(&VmapJson { vmap: vmap.clone() })
}

pub fn vmap_from_json(s: &str) -> Result<BTreeMap<String, usize>, IoError> {
    let parsed: VmapJson = serde_json::from_str(s)?;
    Ok(parsed.vmap)
}

#[derive(Serialize, Deserialize)]
struct RangeJson {
    family: RangeFamily,
    params: Vec<RationalJson>,
}

#[derive(Serialize, Deserialize)]
struct RangesJson {
    ranges: Vec<RangeJson>,
}

/// `{"ranges":[{"family":"bl","params":[...]}, ...]}` with parameters in the
/// order of [`Range::params`].
pub fn ranges_to_json(ranges: &[Range]) -> String {
    let ranges = ranges
        .iter()
        .map(|r| RangeJson {
            family: r.family(),
            params: r.params().iter().map(rational_to_json).collect(),
        })
        .collect();
    finish(&RangesJson { ranges })
}

pub fn ranges_from_json(s: &str) -> Result<Vec<Range>, IoError> {
    let parsed: RangesJson = serde_json::from_str(s)?;
    parsed
        .ranges
        .iter()
        .map(|r| {
            let params = r
                .params
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Range::from_params(r.family, &params)?)
        })
        .collect()
}

#[derive(Serialize)]
struct PeelJson<'a> {
    color: usize,
    uniformity: usize,
    hitting_sets: BTreeMap<&'static str, &'a [usize]>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    preset: &'a str,
    k: usize,
    m: usize,
    schedule: &'a [usize],
    peels: Vec<PeelJson<'a>>,
    base_threshold: usize,
    remainder: &'a [usize],
    violations: &'a BTreeMap<RangeFamily, usize>,
}

fn quadrant_tag(q: Quadrant) -> &'static str {
    q.family().tag()
}

pub fn pipeline_report_json(run: &PipelineRun) -> String {
    let peels = run
        .peels
        .iter()
        .map(|p| PeelJson {
            color: p.color,
            uniformity: p.uniformity,
            hitting_sets: p
                .sets
                .iter()
                .map(|(q, ids)| (quadrant_tag(*q), ids.as_slice()))
                .collect(),
        })
        .collect();
    finish(&ReportJson {
        preset: &run.preset,
        k: run.k,
        m: run.m,
        schedule: &run.schedule,
        peels,
        base_threshold: run.base_threshold,
        remainder: &run.remainder,
        violations: &run.violations,
    })
}
