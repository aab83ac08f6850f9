//! Planar polyline realizations of standard curves, for cross-checking the
//! combinatorial intersection numbers.
//!
//! Punctures sit on the unit circle at angles `2 pi k / n`. A curve around
//! the run `p_a .. p_b` is drawn as the boundary of an annular sector: an
//! inner arc below radius 1 and an outer arc above it, spanning slightly more
//! than the run's angles, joined by two radial segments. Angles live on a
//! grid of `2n * (2n + 2)` half-steps per turn. Radial segments and
//! punctures sit on even half-steps, interior arc vertices on odd ones, so a
//! radial segment always crosses another curve's arc in the middle of a
//! chord. Distinct curves differ in radius by far more than the sagitta of a
//! chord, so arcs never meet each other.
//!
//! The angular margin grows with the width and the radial half-thickness
//! grows with the width plus a fraction keyed to the index, so nested curves
//! nest as sectors, and sectors of distinct curves never share a corner.
//! Vertices are rounded to an integer grid and every predicate is exact.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::disk_curves::{encircled_punctures, Curve};
use crate::error::{Error, Result};

/// Integer point on the scaled grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolylineCurve {
    /// Closed polygon; the last vertex connects back to the first.
    pub vertices: Vec<Point>,
    pub source: Curve,
    pub scale: i64,
}

const BASE_SCALE: i64 = 1 << 24;
const MAX_ATTEMPTS: usize = 3;

fn grid_per_step(n: usize) -> i64 {
    2 * n as i64 + 2
}

fn scale_for(attempt: usize) -> i64 {
    BASE_SCALE + 7919 * attempt as i64
}

/// `angle` in half-steps.
fn polar(scale: i64, n: usize, angle: i64, radius: f64) -> Point {
    let theta = 2.0 * PI * angle as f64 / (2 * n as i64 * grid_per_step(n)) as f64;
    let r = radius * scale as f64;
    Point { x: (r * theta.cos()).round() as i64, y: (r * theta.sin()).round() as i64 }
}

/// Puncture `p_k` on the grid.
pub fn puncture(n: usize, k: usize, scale: i64) -> Point {
    polar(scale, n, 2 * k as i64 * grid_per_step(n), 1.0)
}

/// Realize `c` at the default scale.
pub fn realize(c: &Curve) -> Result<PolylineCurve> {
    realize_at(c, BASE_SCALE)
}

pub fn realize_at(c: &Curve, scale: i64) -> Result<PolylineCurve> {
    let n = c.punctures();
    let j = c.width() as i64;
    let step = grid_per_step(n);
    let first = encircled_punctures(c)[0] as i64;
    let lo = 2 * (first * step - j);
    let hi = 2 * ((first + j - 1) * step + j);
    let fraction = c.class().index as f64 / (2 * n) as f64;
    let half = (j as f64 + fraction) * 0.9 / n as f64;
    let (inner, outer) = (1.0 - half, 1.0 + half);

    let angles: Vec<i64> = std::iter::once(lo)
        .chain((lo + 1..hi).step_by(2))
        .chain(std::iter::once(hi))
        .collect();
    let mut vertices = Vec::with_capacity(2 * angles.len());
    vertices.extend(angles.iter().map(|&a| polar(scale, n, a, inner)));
    vertices.extend(angles.iter().rev().map(|&a| polar(scale, n, a, outer)));
    let poly = PolylineCurve { vertices, source: *c, scale };
    if !poly.is_simple() {
        return Err(Error::SelfIntersection { curve: c.to_string() });
    }
    let inside = encircled_punctures(c);
    for k in 0..n {
        let w = poly.winding_number(puncture(n, k, scale));
        let want = i64::from(inside.contains(&k));
        if w.abs() != want {
            return Err(Error::BadWinding { curve: c.to_string(), puncture: k });
        }
    }
    Ok(poly)
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (abx, aby) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (acx, acy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    abx * acy - aby * acx
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0
        && a.x.min(b.x) <= p.x
        && p.x <= a.x.max(b.x)
        && a.y.min(b.y) <= p.y
        && p.y <= a.y.max(b.y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Contact {
    None,
    Proper,
    Degenerate,
}

fn contact(a: Point, b: Point, c: Point, d: Point) -> Contact {
    if a.x.max(b.x) < c.x.min(d.x)
        || c.x.max(d.x) < a.x.min(b.x)
        || a.y.max(b.y) < c.y.min(d.y)
        || c.y.max(d.y) < a.y.min(b.y)
    {
        return Contact::None;
    }
    let (o1, o2) = (orient(a, b, c).signum(), orient(a, b, d).signum());
    let (o3, o4) = (orient(c, d, a).signum(), orient(c, d, b).signum());
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Contact::Proper;
    }
    if on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b) {
        return Contact::Degenerate;
    }
    Contact::None
}

impl PolylineCurve {
    fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let v = &self.vertices;
        (0..v.len()).map(move |k| (v[k], v[(k + 1) % v.len()]))
    }

    /// No two non-adjacent edges touch, and adjacent edges do not fold back
    /// onto each other.
    pub fn is_simple(&self) -> bool {
        let segs: Vec<(Point, Point)> = self.segments().collect();
        let m = segs.len();
        for a in 0..m {
            for b in a + 1..m {
                let (p, q) = segs[a];
                let (r, s) = segs[b];
                let shared = if b == a + 1 {
                    Some((q, p, s))
                } else if a == 0 && b == m - 1 {
                    Some((p, q, r))
                } else {
                    None
                };
                match shared {
                    Some((v, x, y)) => {
                        let dot = (x.x - v.x) as i128 * (y.x - v.x) as i128
                            + (x.y - v.y) as i128 * (y.y - v.y) as i128;
                        if orient(v, x, y) == 0 && dot > 0 {
                            return false;
                        }
                    }
                    None => {
                        if contact(p, q, r, s) != Contact::None {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Winding number around `p`, which must not lie on the curve.
    pub fn winding_number(&self, p: Point) -> i64 {
        let mut w = 0;
        for (a, b) in self.segments() {
            if a.y <= p.y {
                if b.y > p.y && orient(a, b, p) > 0 {
                    w += 1;
                }
            } else if b.y <= p.y && orient(a, b, p) < 0 {
                w -= 1;
            }
        }
        w
    }
}

/// Transverse crossings between two realizations.
///
/// Touching or collinear segments are degenerate; the pair is re-realized at
/// a different grid scale a few times before giving up.
pub fn count_intersections(a: &PolylineCurve, b: &PolylineCurve) -> Result<usize> {
    let mut attempt = 0;
    let (mut pa, mut pb) = (a.clone(), b.clone());
    loop {
        match crossings(&pa, &pb) {
            Some(count) => return Ok(count),
            None if attempt + 1 < MAX_ATTEMPTS => {
                attempt += 1;
                pa = realize_at(&a.source, scale_for(attempt))?;
                pb = realize_at(&b.source, scale_for(attempt))?;
            }
            None => {
                return Err(Error::Degenerate {
                    a: a.source.to_string(),
                    b: b.source.to_string(),
                    attempts: MAX_ATTEMPTS,
                })
            }
        }
    }
}

fn crossings(a: &PolylineCurve, b: &PolylineCurve) -> Option<usize> {
    let sb: Vec<(Point, Point)> = b.segments().collect();
    let mut count = 0;
    for (p, q) in a.segments() {
        for &(r, s) in &sb {
            match contact(p, q, r, s) {
                Contact::None => {}
                Contact::Proper => count += 1,
                Contact::Degenerate => return None,
            }
        }
    }
    Some(count)
}

/// Debug overlay of several realizations with the punctures marked.
pub fn overlay_svg(curves: &[PolylineCurve]) -> String {
    let Some(first) = curves.first() else {
        return String::from("<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n");
    };
    let n = first.source.punctures();
    let scale = first.scale as f64;
    let size = 400.0;
    let map = |p: Point| (size / 2.0 + p.x as f64 / scale * size / 4.5, size / 2.0 - p.y as f64 / scale * size / 4.5);
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="400" height="400" viewBox="0 0 400 400">"#).unwrap();
    for c in curves {
        let pts: Vec<String> = c
            .vertices
            .iter()
            .map(|&p| {
                let (x, y) = map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            out,
            r#"<polygon points="{}" fill="none" stroke="steelblue"><title>{}</title></polygon>"#,
            pts.join(" "),
            c.source
        )
        .unwrap();
    }
    for k in 0..n {
        let (x, y) = map(puncture(n, k, first.scale));
        writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk_curves::beta_curve;
    use crate::pants_path::standard_decomposition;

    fn curve(i: i64, j: i64, n: usize) -> Curve {
        beta_curve(i, j, n).unwrap()
    }

    #[test]
    fn winds_once_around_its_punctures() {
        let c = realize(&curve(2, 3, 6)).unwrap();
        for k in 0..6 {
            let w = c.winding_number(puncture(6, k, c.scale)).abs();
            assert_eq!(w, i64::from(k <= 2), "puncture {k}");
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(realize(&curve(11, 4, 6)).unwrap(), realize(&curve(11, 4, 6)).unwrap());
    }

    #[test]
    fn p1_realizes_disjointly() {
        let p = standard_decomposition(1, 6).unwrap();
        let polys: Vec<PolylineCurve> = p.curves().iter().map(|c| realize(c).unwrap()).collect();
        for a in 0..polys.len() {
            for b in a + 1..polys.len() {
                assert_eq!(count_intersections(&polys[a], &polys[b]).unwrap(), 0);
            }
        }
    }

    #[test]
    fn basic_pairs() {
        let count = |a: Curve, b: Curve| count_intersections(&realize(&a).unwrap(), &realize(&b).unwrap()).unwrap();
        // {0,1} vs {3,4}
        assert_eq!(count(curve(1, 2, 6), curve(7, 2, 6)), 0);
        // {0,1,2} vs {1,2,3}
        assert_eq!(count(curve(2, 3, 6), curve(4, 3, 6)), 2);
        // {0,1} inside {5,0,1,2}
        assert_eq!(count(curve(1, 2, 6), curve(1, 4, 6)), 0);
        // {0,1,2,3} vs {3,4,5,0}
        assert_eq!(count(curve(3, 4, 6), curve(9, 4, 6)), 4);
    }

    #[test]
    fn simplicity_check_catches_a_bow_tie() {
        let p = |x, y| Point { x, y };
        let bow = PolylineCurve {
            vertices: vec![p(0, 0), p(10, 10), p(10, 0), p(0, 10)],
            source: curve(1, 2, 6),
            scale: 1,
        };
        assert!(!bow.is_simple());
        let square = PolylineCurve { vertices: vec![p(0, 0), p(10, 0), p(10, 10), p(0, 10)], ..bow };
        assert!(square.is_simple());
        assert_eq!(square.winding_number(p(5, 5)).abs(), 1);
        assert_eq!(square.winding_number(p(15, 5)), 0);
    }

    #[test]
    fn overlay_lists_every_curve() {
        let polys: Vec<PolylineCurve> =
            [curve(1, 2, 5), curve(2, 3, 5)].iter().map(|c| realize(c).unwrap()).collect();
        let svg = overlay_svg(&polys);
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 5);
    }
}
