//! Knot-theoretic codes and pictures of closed braid diagrams.
//!
//! Edges are labeled by walking each component upward from the bottom of
//! its lowest strand position, numbering edges `1, 2, ...` consecutively and
//! continuing the count from one component to the next. Components with no
//! crossings carry no edges and are absent from PD codes.
//!
//! PD tuples list the four edges at a crossing counter-clockwise, starting
//! from the incoming under-edge. For a positive crossing this is
//! `X(under_in, over_out, under_out, over_in)`, for a negative one
//! `X(under_in, over_in, under_out, over_out)`.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::diagram::{BlockKind, LinkDiagram};
use crate::error::{Error, Result};
use crate::link_template::LinkTemplate;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdCode {
    pub crossings: Vec<[usize; 4]>,
}

impl PdCode {
    /// Every label `1..=2c` occurs exactly twice.
    pub fn check(&self) -> std::result::Result<(), String> {
        let edges = 2 * self.crossings.len();
        let mut seen = vec![0u8; edges + 1];
        for (c, x) in self.crossings.iter().enumerate() {
            for &e in x {
                if e == 0 || e > edges {
                    return Err(format!("crossing {} uses label {e} outside 1..={edges}", c + 1));
                }
                seen[e] += 1;
            }
        }
        match seen.iter().skip(1).position(|&k| k != 2) {
            Some(e) => Err(format!("label {} appears {} times", e + 1, seen[e + 1])),
            None => Ok(()),
        }
    }

    pub fn edge_count(&self) -> usize {
        let mut labels: Vec<usize> = self.crossings.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }
}

/// One `X(a,b,c,d)` per line.
impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for [a, b, c, d] in &self.crossings {
            writeln!(f, "X({a},{b},{c},{d})")?;
        }
        Ok(())
    }
}

/// Signed Gauss code: `+c` passes over crossing `c`, `-c` under it.
/// Crossings are numbered from 1 in braid word order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussCode {
    pub components: Vec<Vec<i64>>,
    /// Crossing signs, `+1` or `-1`, indexed by crossing number - 1.
    pub signs: Vec<i8>,
}

impl GaussCode {
    /// Each crossing is visited exactly once over and once under.
    pub fn check(&self) -> std::result::Result<(), String> {
        let mut over = vec![0u32; self.signs.len()];
        let mut under = vec![0u32; self.signs.len()];
        for v in self.components.iter().flatten() {
            let c = v.unsigned_abs() as usize;
            if c == 0 || c > self.signs.len() {
                return Err(format!("visit {v} names no crossing"));
            }
            if *v > 0 {
                over[c - 1] += 1;
            } else {
                under[c - 1] += 1;
            }
        }
        for c in 0..self.signs.len() {
            if over[c] != 1 || under[c] != 1 {
                return Err(format!("crossing {} visited {} over, {} under", c + 1, over[c], under[c]));
            }
        }
        Ok(())
    }

    /// Rebuild the PD code from the visit sequences and crossing signs.
    pub fn to_pd(&self) -> PdCode {
        let c = self.signs.len();
        // (in, out) edge labels of the over and under passes of each crossing
        let mut over = vec![(0, 0); c];
        let mut under = vec![(0, 0); c];
        let mut base = 1;
        for comp in &self.components {
            let len = comp.len();
            for (v, &visit) in comp.iter().enumerate() {
                let edges = (base + v, base + (v + 1) % len);
                let k = visit.unsigned_abs() as usize - 1;
                if visit > 0 {
                    over[k] = edges;
                } else {
                    under[k] = edges;
                }
            }
            base += len;
        }
        let crossings = (0..c)
            .map(|k| {
                let ((ui, uo), (oi, oo)) = (under[k], over[k]);
                if self.signs[k] > 0 {
                    [ui, oo, uo, oi]
                } else {
                    [ui, oi, uo, oo]
                }
            })
            .collect();
        PdCode { crossings }
    }
}

/// `.gauss` file: a header, one comma-separated line per component, then the signs.
impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# components={} crossings={}", self.components.len(), self.signs.len())?;
        for comp in &self.components {
            writeln!(f, "{}", join(comp.iter()))?;
        }
        writeln!(f, "signs: {}", join(self.signs.iter().map(|s| if *s > 0 { "+1" } else { "-1" })))
    }
}

fn join<T: fmt::Display>(items: impl Iterator<Item = T>) -> String {
    let mut out = String::new();
    for (k, x) in items.enumerate() {
        if k > 0 {
            out.push(',');
        }
        write!(out, "{x}").unwrap();
    }
    out
}

/// A pass through crossing `crossing` (0-based letter index).
#[derive(Debug, Clone, Copy)]
struct Visit {
    crossing: usize,
    over: bool,
}

/// Walk every component of the closure; one visit list per component,
/// ordered by the lowest bottom position of the component.
fn traverse(d: &LinkDiagram) -> Vec<Vec<Visit>> {
    let n = d.strand_count;
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, &g) in d.braid_word.iter().enumerate() {
        let k = g.unsigned_abs() as usize;
        touching[k - 1].push(t);
        touching[k].push(t);
    }
    let mut started = vec![false; n];
    let mut components = Vec::new();
    for origin in 0..n {
        if started[origin] {
            continue;
        }
        let mut visits = Vec::new();
        let (mut pos, mut after) = (origin, None::<usize>);
        loop {
            let list = &touching[pos];
            let next = match after {
                None => list.first().copied(),
                Some(t) => {
                    let idx = list.partition_point(|&x| x <= t);
                    list.get(idx).copied()
                }
            };
            let Some(t) = next else {
                // passed the top; the closure returns to the bottom of `pos`
                started[pos] = true;
                if pos == origin && (after.is_some() || list.is_empty()) {
                    break;
                }
                after = None;
                continue;
            };
            let g = d.braid_word[t];
            let k = g.unsigned_abs() as usize;
            let entering_left = pos == k - 1;
            visits.push(Visit { crossing: t, over: entering_left == (g > 0) });
            pos = if entering_left { k } else { k - 1 };
            after = Some(t);
        }
        components.push(visits);
    }
    components
}

pub fn to_gauss(d: &LinkDiagram) -> GaussCode {
    let components = traverse(d)
        .into_iter()
        .map(|vs| {
            vs.into_iter()
                .map(|v| {
                    let c = v.crossing as i64 + 1;
                    if v.over { c } else { -c }
                })
                .collect()
        })
        .collect();
    let signs = d.braid_word.iter().map(|&g| if g > 0 { 1 } else { -1 }).collect();
    GaussCode { components, signs }
}

/// PD code read directly off the braid positions.
pub fn to_pd(d: &LinkDiagram) -> PdCode {
    let c = d.braid_word.len();
    // per letter: edge labels entering and leaving at the left / right positions
    let mut enter = vec![[0usize; 2]; c];
    let mut leave = vec![[0usize; 2]; c];
    let mut base = 1;
    for visits in traverse(d) {
        let len = visits.len();
        for (v, visit) in visits.iter().enumerate() {
            let (incoming, outgoing) = (base + v, base + (v + 1) % len);
            let g = d.braid_word[visit.crossing];
            // the left-entering strand leaves right
            let entered_left = visit.over == (g > 0);
            let (side_in, side_out) = if entered_left { (0, 1) } else { (1, 0) };
            enter[visit.crossing][side_in] = incoming;
            leave[visit.crossing][side_out] = outgoing;
        }
        base += len;
    }
    let crossings = (0..c)
        .map(|t| {
            let [bl, br] = enter[t];
            let [tl, tr] = leave[t];
            if d.braid_word[t] > 0 {
                // over strand bottom-left to top-right
                [br, tr, tl, bl]
            } else {
                // over strand bottom-right to top-left
                [bl, br, tr, tl]
            }
        })
        .collect();
    PdCode { crossings }
}

/// Dowker-Thistlethwaite code of a knot diagram.
///
/// Visits along the knot are numbered `1..=2c`; each crossing pairs an odd
/// and an even number. The code lists, for `1, 3, 5, ...`, the paired even
/// number, negated when that even visit passes over.
pub fn to_dt(d: &LinkDiagram) -> Result<Vec<i64>> {
    let components = d.components();
    if components != 1 {
        return Err(Error::DtRequiresKnot { components });
    }
    let visits = traverse(d).into_iter().next().unwrap_or_default();
    let mut odd_label = vec![0usize; d.braid_word.len()];
    let mut even_label = vec![(0usize, false); d.braid_word.len()];
    for (k, v) in visits.iter().enumerate() {
        let label = k + 1;
        if label % 2 == 1 {
            if odd_label[v.crossing] != 0 {
                return Err(Error::DtParity { crossing: v.crossing + 1 });
            }
            odd_label[v.crossing] = label;
        } else {
            if even_label[v.crossing].0 != 0 {
                return Err(Error::DtParity { crossing: v.crossing + 1 });
            }
            even_label[v.crossing] = (label, v.over);
        }
    }
    let mut pairs: Vec<(usize, i64)> = (0..d.braid_word.len())
        .map(|c| {
            let (even, over) = even_label[c];
            (odd_label[c], if over { -(even as i64) } else { even as i64 })
        })
        .collect();
    pairs.sort_unstable();
    Ok(pairs.into_iter().map(|(_, e)| e).collect())
}

/// `.dt` file body: comma-separated even integers.
pub fn dt_text(code: &[i64]) -> String {
    format!("{}\n", join(code.iter()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SvgOptions {
    /// Draw every crossing instead of annotated twist boxes.
    pub expand_twists: bool,
}

/// Largest diagram drawn crossing by crossing.
pub const EXPAND_LIMIT: usize = 20_000;

const STRAND_GAP: usize = 40;
const MARGIN: usize = 30;
const BOX_ROW: usize = 36;
const CROSSING_ROW: usize = 24;
const LABEL_WIDTH: usize = 320;

/// Schematic SVG of a filled template: vertical strands with one labeled box
/// per twist region, or every crossing when expanded.
pub fn render_svg(d: &LinkDiagram, t: &LinkTemplate, options: &SvgOptions) -> Result<String> {
    if options.expand_twists {
        if d.crossing_total > EXPAND_LIMIT {
            return Err(Error::ExpandTooLarge { crossings: d.crossing_total, limit: EXPAND_LIMIT });
        }
        return Ok(render_expanded(d, t));
    }
    Ok(render_boxes(d, t))
}

fn x_of(position: usize) -> usize {
    MARGIN + position * STRAND_GAP
}

fn svg_open(out: &mut String, width: usize, height: usize, title: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, "<title>{title}</title>").unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#).unwrap();
}

struct TwistBox {
    first: usize,
    width: usize,
    label: String,
    class: &'static str,
}

fn render_boxes(d: &LinkDiagram, t: &LinkTemplate) -> String {
    let n = d.strand_count;
    let mut boxes = Vec::new();
    let mut monodromy_letters = 0;
    let mut extra = 0;
    for b in &d.blocks {
        match b.kind {
            BlockKind::Rotation { .. } => monodromy_letters += b.letters.len(),
            BlockKind::ExtraTwist { twists } => {
                monodromy_letters += b.letters.len();
                extra = twists;
            }
            _ => {}
        }
    }
    if !d.blocks.is_empty() {
        let mut label = format!(
            "monodromy: rotate {}/{} turn, {} crossings",
            2 * t.n - t.l,
            t.n,
            monodromy_letters
        );
        if extra != 0 {
            write!(label, ", {extra:+} full twists").unwrap();
        }
        boxes.push(TwistBox { first: 0, width: n, label, class: "monodromy" });
    }
    for b in &d.blocks {
        match b.kind {
            BlockKind::Loop { i, j, slope, .. } => boxes.push(TwistBox {
                first: b.first_strand,
                width: b.width,
                label: format!("b{i}_{j}: {slope} full twists on {j} strands"),
                class: "loop",
            }),
            BlockKind::Augmentation { slope } => boxes.push(TwistBox {
                first: 0,
                width: n,
                label: format!("B_q: {slope} full twists on {n} strands"),
                class: "augmentation",
            }),
            _ => {}
        }
    }
    let width = 2 * MARGIN + (n.max(1) - 1) * STRAND_GAP + LABEL_WIDTH;
    let height = 2 * MARGIN + boxes.len().max(1) * BOX_ROW;
    let mut out = String::new();
    svg_open(&mut out, width, height, &format!("closed braid n={} l={}", t.n, t.l));
    // rows run bottom to top
    let y_of = |row: usize| height - MARGIN - (row + 1) * BOX_ROW;
    for p in 0..n {
        writeln!(
            out,
            r#"<line class="strand" x1="{x}" y1="{MARGIN}" x2="{x}" y2="{y2}" stroke="gray" stroke-width="2"/>"#,
            x = x_of(p),
            y2 = height - MARGIN
        )
        .unwrap();
    }
    for (row, b) in boxes.iter().enumerate() {
        let y = y_of(row) + 4;
        let x = x_of(b.first) - STRAND_GAP / 3;
        let w = (b.width - 1) * STRAND_GAP + 2 * (STRAND_GAP / 3);
        writeln!(
            out,
            r#"<rect class="{}" x="{x}" y="{y}" width="{w}" height="{}" fill="{}" stroke="black"/>"#,
            b.class,
            BOX_ROW - 8,
            match b.class {
                "loop" => "#cfe0ff",
                "augmentation" => "#ffe3c4",
                _ => "#e4e4e4",
            }
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="11">{}</text>"#,
            x_of(n.max(1) - 1) + STRAND_GAP / 2 + 4,
            y + BOX_ROW / 2,
            b.label
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn render_expanded(d: &LinkDiagram, t: &LinkTemplate) -> String {
    let n = d.strand_count;
    let rows = d.braid_word.len();
    let width = 2 * MARGIN + (n.max(1) - 1) * STRAND_GAP;
    let height = 2 * MARGIN + rows.max(1) * CROSSING_ROW;
    let mut out = String::new();
    svg_open(&mut out, width, height, &format!("closed braid n={} l={} expanded", t.n, t.l));
    let y_of = |row: usize| height - MARGIN - row * CROSSING_ROW;
    let line = |out: &mut String, x1: usize, y1: usize, x2: usize, y2: usize| {
        writeln!(
            out,
            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="2"/>"#
        )
        .unwrap();
    };
    for (row, &g) in d.braid_word.iter().enumerate() {
        let k = g.unsigned_abs() as usize;
        let (y0, y1) = (y_of(row), y_of(row + 1));
        for p in (0..n).filter(|&p| p != k - 1 && p != k) {
            line(&mut out, x_of(p), y0, x_of(p), y1);
        }
        let (xl, xr) = (x_of(k - 1), x_of(k));
        let (xm, ym) = ((xl + xr) / 2, (y0 + y1) / 2);
        let gap = 5;
        if g > 0 {
            line(&mut out, xl, y0, xr, y1);
            line(&mut out, xr, y0, xm + gap, ym + gap / 2);
            line(&mut out, xm - gap, ym - gap / 2, xl, y1);
        } else {
            line(&mut out, xr, y0, xl, y1);
            line(&mut out, xl, y0, xm - gap, ym + gap / 2);
            line(&mut out, xm + gap, ym - gap / 2, xr, y1);
        }
    }
    if rows == 0 {
        for p in 0..n {
            line(&mut out, x_of(p), MARGIN, x_of(p), height - MARGIN);
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{fill, FillingSystem};
    use crate::link_template::build_template;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::from_word(2, vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn trefoil_pd_hand_labeled() {
        // Walking up from the bottom of position 0: edges 1..6 are entered in
        // the order (letter 0, left), (1, right), (2, left), (0, right),
        // (1, left), (2, right); each positive letter is X(br, tr, tl, bl).
        let pd = to_pd(&trefoil());
        assert_eq!(pd.crossings, vec![[4, 2, 5, 1], [2, 6, 3, 5], [6, 4, 1, 3]]);
        pd.check().unwrap();
        assert_eq!(pd.to_string(), "X(4,2,5,1)\nX(2,6,3,5)\nX(6,4,1,3)\n");
        // positive crossings: over edge label increases by one from d to b
        for [_, b, _, d] in pd.crossings {
            assert_eq!(b % 6, (d % 6 + 1) % 6);
        }
    }

    #[test]
    fn trefoil_gauss_and_dt() {
        let g = to_gauss(&trefoil());
        assert_eq!(g.components, vec![vec![1, -2, 3, -1, 2, -3]]);
        g.check().unwrap();
        assert_eq!(g.to_pd(), to_pd(&trefoil()));
        assert_eq!(g.to_string(), "# components=1 crossings=3\n1,-2,3,-1,2,-3\nsigns: +1,+1,+1\n");
        let dt = to_dt(&trefoil()).unwrap();
        assert_eq!(dt, vec![4, 6, 2]);
        assert_eq!(dt_text(&dt), "4,6,2\n");
    }

    #[test]
    fn unknot_has_empty_codes() {
        let d = LinkDiagram::from_word(1, vec![]).unwrap();
        assert!(to_pd(&d).crossings.is_empty());
        let g = to_gauss(&d);
        assert_eq!(g.components, vec![Vec::<i64>::new()]);
        assert_eq!(to_dt(&d).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn kink_and_negative_crossings() {
        let d = LinkDiagram::from_word(2, vec![-1]).unwrap();
        let pd = to_pd(&d);
        pd.check().unwrap();
        assert_eq!(to_gauss(&d).to_pd(), pd);
        let d = LinkDiagram::from_word(3, vec![1, -2, 1, -2]).unwrap();
        let pd = to_pd(&d);
        pd.check().unwrap();
        assert_eq!(to_gauss(&d).to_pd(), pd);
        assert_eq!(to_dt(&d).unwrap().len(), 4);
    }

    #[test]
    fn dt_rejects_links() {
        let hopf = LinkDiagram::from_word(2, vec![1, 1]).unwrap();
        assert_eq!(to_dt(&hopf), Err(Error::DtRequiresKnot { components: 2 }));
        let t = build_template(4, 2).unwrap();
        let d = fill(&t, &FillingSystem::uniform(&t, 1)).unwrap();
        assert_eq!(to_dt(&d), Err(Error::DtRequiresKnot { components: 2 }));
    }

    #[test]
    fn svg_boxes_and_determinism() {
        let t = build_template(6, 1).unwrap();
        let d = fill(&t, &FillingSystem::uniform(&t, 70)).unwrap();
        let a = render_svg(&d, &t, &SvgOptions::default()).unwrap();
        let b = render_svg(&d, &t, &SvgOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches(r#"class="strand""#).count(), 6);
        assert_eq!(a.matches(r#"<rect class="loop""#).count(), 44);
        assert_eq!(a.matches(r#"<rect class="monodromy""#).count(), 1);
        assert_eq!(a.matches(r#"<rect class="augmentation""#).count(), 1);
        assert!(a.contains("b1_2: 70 full twists on 2 strands"));
        assert!(matches!(
            render_svg(&d, &t, &SvgOptions { expand_twists: true }),
            Err(Error::ExpandTooLarge { .. })
        ));
    }

    #[test]
    fn svg_empty_word_and_expanded() {
        let t = build_template(4, 4).unwrap();
        let d = LinkDiagram::from_word(4, vec![]).unwrap();
        let s = render_svg(&d, &t, &SvgOptions::default()).unwrap();
        assert_eq!(s.matches("<rect class=").count(), 0);
        assert_eq!(s.matches(r#"class="strand""#).count(), 4);
        let d = LinkDiagram::from_word(3, vec![1, -2, 1]).unwrap();
        let s = render_svg(&d, &t, &SvgOptions { expand_twists: true }).unwrap();
        assert_eq!(s.matches("<line").count(), 3 * (1 + 3));
    }
}
