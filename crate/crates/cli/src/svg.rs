//! SVG 1.1 figures of point sets, colorings and ranges.
//!
//! Ranges are drawn as translucent polygons: each range is an intersection of
//! half-planes, clipped against the bounding box of the points grown by 10%
//! on every side.

use std::fmt::Write;

use polychrome::geometry::{approx, Key};
use polychrome::{Coloring, PointSet, Range};

const CANVAS: f64 = 800.0;
const POINT_COLORS: [&str; 8] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324",
];
const RANGE_COLORS: [&str; 6] = [
    "#4363d8", "#f58231", "#3cb44b", "#e6194b", "#911eb4", "#808000",
];

/// `a x + b y <= c`
type HalfPlane = (f64, f64, f64);

fn half_planes(r: &Range) -> Vec<HalfPlane> {
    use polychrome::ranges::Quadrant;
    match r {
        Range::Quadrant {
            orientation,
            apex_x,
            apex_y,
        } => {
            let (x, y) = (approx(apex_x), approx(apex_y));
            let horizontal = match orientation {
                Quadrant::NW | Quadrant::SW => (1.0, 0.0, x),
                Quadrant::NE | Quadrant::SE => (-1.0, 0.0, -x),
            };
            let vertical = match orientation {
                Quadrant::NW | Quadrant::NE => (0.0, -1.0, -y),
                Quadrant::SW | Quadrant::SE => (0.0, 1.0, y),
            };
            vec![horizontal, vertical]
        }
        Range::Strip { key, lo, hi } => {
            let (a, b) = match key {
                Key::X => (1.0, 0.0),
                Key::Y => (0.0, 1.0),
                Key::Sum => (1.0, 1.0),
            };
            vec![(a, b, approx(hi)), (-a, -b, -approx(lo))]
        }
        Range::Bottomless { left, right, top } => vec![
            (-1.0, 0.0, -approx(left)),
            (1.0, 0.0, approx(right)),
            (0.0, 1.0, approx(top)),
        ],
        Range::Topless {
            left,
            right,
            bottom,
        } => vec![
            (-1.0, 0.0, -approx(left)),
            (1.0, 0.0, approx(right)),
            (0.0, -1.0, -approx(bottom)),
        ],
        Range::Square { left, bottom, side } => {
            let (l, b, s) = (approx(left), approx(bottom), approx(side));
            vec![
                (-1.0, 0.0, -l),
                (1.0, 0.0, l + s),
                (0.0, -1.0, -b),
                (0.0, 1.0, b + s),
            ]
        }
    }
}

/// Sutherland-Hodgman against one half-plane.
fn clip(poly: &[(f64, f64)], (a, b, c): HalfPlane) -> Vec<(f64, f64)> {
    let inside = |p: (f64, f64)| a * p.0 + b * p.1 <= c;
    let cross = |p: (f64, f64), q: (f64, f64)| {
        let fp = a * p.0 + b * p.1 - c;
        let fq = a * q.0 + b * q.1 - c;
        let t = fp / (fp - fq);
        (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
    };
    let mut out = vec![];
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        match (inside(p), inside(q)) {
            (true, true) => out.push(q),
            (true, false) => out.push(cross(p, q)),
            (false, true) => {
                out.push(cross(p, q));
                out.push(q);
            }
            (false, false) => {}
        }
    }
    out.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    if out.len() > 1 {
        let (first, last) = (out[0], out[out.len() - 1]);
        if (first.0 - last.0).abs() < 1e-12 && (first.1 - last.1).abs() < 1e-12 {
            out.pop();
        }
    }
    out
}

struct View {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    scale: f64,
}

impl View {
    fn new(ps: &PointSet) -> View {
        let (x0, y0, x1, y1) = match ps.bounding_box() {
            Some((a, b, c, d)) => (approx(&a), approx(&b), approx(&c), approx(&d)),
            None => (0.0, 0.0, 1.0, 1.0),
        };
        let w = if x1 > x0 { x1 - x0 } else { 1.0 };
        let h = if y1 > y0 { y1 - y0 } else { 1.0 };
        let (x0, x1) = (x0 - 0.1 * w, x0 + 1.1 * w);
        let (y0, y1) = (y0 - 0.1 * h, y0 + 1.1 * h);
        let scale = CANVAS / (x1 - x0).max(y1 - y0);
        View {
            x0,
            y0,
            x1,
            y1,
            scale,
        }
    }

    fn width(&self) -> f64 {
        (self.x1 - self.x0) * self.scale
    }

    fn height(&self) -> f64 {
        (self.y1 - self.y0) * self.scale
    }

    fn px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        ((x - self.x0) * self.scale, (self.y1 - y) * self.scale)
    }

    fn corners(&self) -> Vec<(f64, f64)> {
        vec![
            (self.x0, self.y0),
            (self.x1, self.y0),
            (self.x1, self.y1),
            (self.x0, self.y1),
        ]
    }
}

pub fn render(ps: &PointSet, coloring: Option<&Coloring>, ranges: &[Range]) -> String {
    let view = View::new(ps);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = view.width(),
        h = view.height()
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{:.3}" height="{:.3}" fill="#ffffff"/>"##,
        view.width(),
        view.height()
    );

    for (i, r) in ranges.iter().enumerate() {
        let poly = half_planes(r)
            .into_iter()
            .fold(view.corners(), |p, h| clip(&p, h));
        if poly.len() < 3 {
            continue;
        }
        let pts: Vec<String> = poly
            .iter()
            .map(|&p| {
                let (x, y) = view.px(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let color = RANGE_COLORS[i % RANGE_COLORS.len()];
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="{color}" fill-opacity="0.2" stroke="{color}" stroke-opacity="0.8" stroke-width="1"><title>{} {}</title></polygon>"#,
            pts.join(" "),
            r.family(),
            i
        );
    }

    for p in ps.points() {
        let (x, y) = view.px((approx(&p.x), approx(&p.y)));
        let fill = match coloring {
            Some(c) => POINT_COLORS[(c.color(p.id) - 1) % POINT_COLORS.len()],
            None => "#000000",
        };
        let title = match coloring {
            Some(c) => format!("{} (color {})", p.id, c.color(p.id)),
            None => p.id.to_string(),
        };
        let _ = writeln!(
            s,
            r##"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{fill}" stroke="#000000" stroke-width="0.5"><title>{title}</title></circle>"##
        );
    }
    s.push_str("</svg>\n");
    s
}
