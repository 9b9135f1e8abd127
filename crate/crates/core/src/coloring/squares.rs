//! Bottomless and topless rectangles as squares.
//!
//! Every `m`-edge of BL (resp. TL) has a witness rectangle, bounded by a
//! bottom (resp. top) side one unit past all points. Scaling `x` by a large
//! enough `λ` makes each of these wider than tall; extending the free side
//! then turns it into a square holding the same points.

use num::{One, Zero};

use crate::geometry::{PointSet, Rational};
use crate::hypergraph::Hyperedge;
use crate::ranges::{enumerate_hyperedges, witness, Range, RangeError, RangeFamily};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWitness {
    pub family: RangeFamily,
    pub edge: Hyperedge,
    /// in the coordinates of the stretched set
    pub square: Range,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StretchedSquares {
    pub points: PointSet,
    pub scale: Rational,
    pub squares: Vec<SquareWitness>,
}

struct Bounded {
    family: RangeFamily,
    edge: Hyperedge,
    left: Rational,
    right: Rational,
    bottom: Rational,
    top: Rational,
}

pub fn stretch_to_squares(ps: &PointSet, m: usize) -> Result<StretchedSquares, RangeError> {
    let mut rects = vec![];
    if let Some((_, min_y, _, max_y)) = ps.bounding_box() {
        let floor = min_y - Rational::one();
        let ceiling = max_y + Rational::one();
        for family in [RangeFamily::BL, RangeFamily::TL] {
            for edge in enumerate_hyperedges(ps, family, m)? {
                let w = witness(ps, family, &edge).expect("enumerated edges have witnesses");
                let (left, right, bottom, top) = match w {
                    Range::Bottomless { left, right, top } => (left, right, floor.clone(), top),
                    Range::Topless {
                        left,
                        right,
                        bottom,
                    } => (left, right, bottom, ceiling.clone()),
                    _ => unreachable!(),
                };
                rects.push(Bounded {
                    family,
                    edge,
                    left,
                    right,
                    bottom,
                    top,
                });
            }
        }
    } else {
        enumerate_hyperedges(ps, RangeFamily::BL, m)?;
    }

    let worst = rects
        .iter()
        .map(|r| (&r.top - &r.bottom) / (&r.right - &r.left))
        .max();
    let mut scale = match worst {
        Some(ratio) if ratio >= Rational::one() => ratio * Rational::from_integer(2.into()),
        _ => Rational::one(),
    };
    let points = loop {
        match ps.scale_x(&scale) {
            Ok(points) => break points,
            Err(_) => scale += Rational::one(),
        }
    };

    let squares = rects
        .into_iter()
        .map(|r| {
            let left = &r.left * &scale;
            let side = (&r.right - &r.left) * &scale;
            debug_assert!(side > &r.top - &r.bottom);
            let bottom = match r.family {
                RangeFamily::BL => &r.top - &side,
                _ => r.bottom,
            };
            SquareWitness {
                family: r.family,
                edge: r.edge,
                square: Range::Square { left, bottom, side },
            }
        })
        .collect();
    debug_assert!(scale > Rational::zero());
    Ok(StretchedSquares {
        points,
        scale,
        squares,
    })
}
