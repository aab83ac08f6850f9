//! Dehn filling as twist insertion, and exact crossing counts.
//!
//! A `1/s` filling of an unknotted loop around `j` strands inserts `s` full
//! twists on those strands, `s * j * (j - 1)` crossings. The monodromy of the
//! template, a rotation by `-l/n` of a turn plus the extra full twists, is the
//! braid `delta^(t*n - l)` with `delta = s_1 s_2 ... s_{n-1}`.
//!
//! With the default `t = 2` the monodromy is `delta^(2n - l)`, a positive
//! rotation by `(2n - l)/n` of a turn. The loops advance around the disk at
//! the same rate as their fiber index grows, so the rotation is spread
//! through the fibers: before the loops of fiber `i` we emit enough `delta`s
//! to reach `floor((i - n mod 2) / 2)` rotations. Every loop then lands on
//! consecutive braid positions, with no wrap-around, and the monodromy
//! contributes exactly `(n - 1)(2n - l)` crossings. A different `t` appends
//! `t - 2` full twists on all strands.
//!
//! Braid conventions: strands sit at positions `0..n` left to right, the
//! generator `k` (`1 <= k < n`) crosses positions `k - 1` and `k`, and a
//! positive letter carries the left strand over the right one. Words read
//! bottom to top.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link_template::{loop_heights, LinkTemplate, Loop, DEFAULT_EXTRA_FULL_TWISTS};

/// Slope window `[ceil(2 pi (2n-l)), floor(2 pi (2n-l) + 2)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeRange {
    pub lower: i64,
    pub upper: i64,
    pub threshold: f64,
}

impl SlopeRange {
    pub fn for_parameters(n: usize, l: usize) -> SlopeRange {
        let threshold = 2.0 * PI * (2 * n - l) as f64;
        SlopeRange {
            lower: threshold.ceil() as i64,
            upper: (threshold + 2.0).floor() as i64,
            threshold,
        }
    }

    pub fn contains(&self, s: i64) -> bool {
        (self.lower..=self.upper).contains(&s.abs())
    }
}

/// Filling slopes `1/s` for the augmentation circle and every drilled loop.
///
/// Loop slopes are keyed by the path step of the loop. The effective slope is
/// the base slope plus any perturbation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FillingSystem {
    pub s_q: i64,
    pub s_loops: BTreeMap<usize, i64>,
    pub perturbations: BTreeMap<usize, i64>,
    pub range: Option<SlopeRange>,
}

/// Lower end of the slope window on every boundary component.
pub fn default_slopes(t: &LinkTemplate) -> FillingSystem {
    let range = SlopeRange::for_parameters(t.n, t.l);
    let mut f = FillingSystem::uniform(t, range.lower);
    f.range = Some(range);
    f
}

impl FillingSystem {
    pub fn uniform(t: &LinkTemplate, s: i64) -> FillingSystem {
        FillingSystem {
            s_q: s,
            s_loops: t.loops.iter().map(|lp| (lp.step, s)).collect(),
            perturbations: BTreeMap::new(),
            range: None,
        }
    }

    /// Shift the slope of one loop, e.g. to step off a boundary slope.
    pub fn perturb(&mut self, step: usize, delta: i64) {
        *self.perturbations.entry(step).or_insert(0) += delta;
    }

    pub fn loop_slope(&self, step: usize) -> Result<i64> {
        let base = *self.s_loops.get(&step).ok_or(Error::MissingSlope { step })?;
        let s = base + self.perturbations.get(&step).copied().unwrap_or(0);
        if s == 0 {
            return Err(Error::ZeroSlope { target: format!("loop at step {step}") });
        }
        Ok(s)
    }

    fn check_q(&self) -> Result<i64> {
        if self.s_q == 0 {
            return Err(Error::ZeroSlope { target: "B_q".into() });
        }
        Ok(self.s_q)
    }

    /// All effective slopes lie in the recorded window. False without a window.
    pub fn in_range(&self, t: &LinkTemplate) -> bool {
        let Some(range) = self.range else { return false };
        range.contains(self.s_q)
            && t.loops.iter().all(|lp| self.loop_slope(lp.step).is_ok_and(|s| range.contains(s)))
    }
}

/// What a stretch of the braid word realizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockKind {
    /// `delta^power`, part of the monodromy.
    Rotation { power: i64 },
    /// Full twists on all strands beyond the default two.
    ExtraTwist { twists: i64 },
    Loop { step: usize, i: i64, j: usize, slope: i64 },
    Augmentation { slope: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub first_strand: usize,
    pub width: usize,
    pub letters: Range<usize>,
}

/// Closed braid diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    pub strand_count: usize,
    /// Signed generators: `k` is `s_k`, `-k` its inverse.
    pub braid_word: Vec<i32>,
    pub closed: bool,
    pub crossing_total: usize,
    /// Component id of the strand starting at each bottom position.
    pub component_labels: Vec<usize>,
    pub blocks: Vec<Block>,
}

impl LinkDiagram {
    /// Closure of an arbitrary braid word on `strands` strands.
    pub fn from_word(strands: usize, word: Vec<i32>) -> Result<LinkDiagram> {
        if strands == 0 {
            return Err(Error::BraidParse("a braid needs at least one strand".into()));
        }
        if let Some(&bad) = word.iter().find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands) {
            return Err(Error::BraidParse(format!("generator {bad} invalid on {strands} strands")));
        }
        Ok(Self::assemble(strands, word, Vec::new()))
    }

    fn assemble(strands: usize, word: Vec<i32>, blocks: Vec<Block>) -> LinkDiagram {
        let component_labels = cycle_labels(&braid_permutation(strands, &word));
        LinkDiagram {
            strand_count: strands,
            crossing_total: word.len(),
            braid_word: word,
            closed: true,
            component_labels,
            blocks,
        }
    }

    pub fn components(&self) -> usize {
        self.component_labels.iter().max().map_or(0, |&m| m + 1)
    }

    /// Top position reached by the strand entering at each bottom position.
    pub fn permutation(&self) -> Vec<usize> {
        braid_permutation(self.strand_count, &self.braid_word)
    }
}

/// Top position reached by the strand entering at each bottom position.
pub fn braid_permutation(strands: usize, word: &[i32]) -> Vec<usize> {
    let mut at: Vec<usize> = (0..strands).collect();
    for &g in word {
        let k = g.unsigned_abs() as usize;
        at.swap(k - 1, k);
    }
    let mut perm = vec![0; strands];
    for (top, &strand) in at.iter().enumerate() {
        perm[strand] = top;
    }
    perm
}

/// Cycle ids of a permutation, numbered by smallest member.
pub fn cycle_labels(perm: &[usize]) -> Vec<usize> {
    let mut labels = vec![usize::MAX; perm.len()];
    let mut next = 0;
    for start in 0..perm.len() {
        if labels[start] != usize::MAX {
            continue;
        }
        let mut k = start;
        while labels[k] == usize::MAX {
            labels[k] = next;
            k = perm[k];
        }
        next += 1;
    }
    labels
}

/// `s` full twists on positions `first .. first + width`.
pub fn full_twists(first: usize, width: usize, s: i64) -> Vec<i32> {
    let gens: Vec<i32> = (first + 1..first + width).map(|g| g as i32).collect();
    let one: Vec<i32> = if s >= 0 {
        gens.iter().copied().cycle().take(gens.len() * width).collect()
    } else {
        gens.iter().rev().map(|g| -g).cycle().take(gens.len() * width).collect()
    };
    one.repeat(s.unsigned_abs() as usize)
}

/// `delta^power` on `n` strands.
pub fn rotation(n: usize, power: i64) -> Vec<i32> {
    let one: Vec<i32> = if power >= 0 {
        (1..n as i32).collect()
    } else {
        (1..n as i32).rev().map(|g| -g).collect()
    };
    one.repeat(power.unsigned_abs() as usize)
}

/// Rotations emitted before the loops of fiber `i`.
fn frame_rotation(i: i64, n: usize) -> i64 {
    (i - (n % 2) as i64).div_euclid(2)
}

/// Bottom position of puncture 0 is `-frame_offset (mod n)`.
fn frame_offset(n: usize) -> i64 {
    1 - (n / 2) as i64
}

/// Leftmost braid position of a loop once the frame has rotated `rotations` times.
fn loop_position(lp: &Loop, n: usize, rotations: i64) -> Result<usize> {
    let first = lp.strands.first().copied().unwrap_or(0) as i64;
    let start = (first - frame_offset(n) - rotations).rem_euclid(n as i64) as usize;
    if start + lp.j > n {
        return Err(Error::FrameOverflow { curve: lp.label(), start, width: lp.j, n });
    }
    Ok(start)
}

/// Order of loops inside one fiber. Loops of a fiber are nested, so their
/// twist blocks commute and the choice does not change the link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FiberOrder {
    #[default]
    WidestFirst,
    NarrowestFirst,
}

/// Fill every loop and the augmentation circle.
pub fn fill(t: &LinkTemplate, f: &FillingSystem) -> Result<LinkDiagram> {
    fill_with(t, f, FiberOrder::default())
}

pub fn fill_with(t: &LinkTemplate, f: &FillingSystem, order: FiberOrder) -> Result<LinkDiagram> {
    let n = t.n;
    let total_rotation = (2 * n - t.l) as i64;
    let s_q = if t.has_augmentation { Some(f.check_q()?) } else { None };

    let mut word = Vec::new();
    let mut blocks = Vec::new();
    let mut push = |word: &mut Vec<i32>, kind: BlockKind, first: usize, width: usize, letters: Vec<i32>| {
        let begin = word.len();
        word.extend(letters);
        blocks.push(Block { kind, first_strand: first, width, letters: begin..word.len() });
    };

    let mut rotations = 0;
    for (fiber, mut loops) in loop_heights(t)? {
        let target = frame_rotation(fiber, n);
        if target > rotations {
            push(&mut word, BlockKind::Rotation { power: target - rotations }, 0, n, rotation(n, target - rotations));
            rotations = target;
        }
        if order == FiberOrder::NarrowestFirst {
            loops.reverse();
        }
        for lp in loops {
            let s = f.loop_slope(lp.step)?;
            let first = loop_position(lp, n, rotations)?;
            let kind = BlockKind::Loop { step: lp.step, i: lp.i, j: lp.j, slope: s };
            push(&mut word, kind, first, lp.j, full_twists(first, lp.j, s));
        }
    }
    if total_rotation > rotations {
        let power = total_rotation - rotations;
        push(&mut word, BlockKind::Rotation { power }, 0, n, rotation(n, power));
    }
    let extra = t.extra_full_twists - DEFAULT_EXTRA_FULL_TWISTS;
    if extra != 0 {
        push(&mut word, BlockKind::ExtraTwist { twists: extra }, 0, n, full_twists(0, n, extra));
    }
    if let Some(s) = s_q {
        push(&mut word, BlockKind::Augmentation { slope: s }, 0, n, full_twists(0, n, s));
    }
    Ok(LinkDiagram::assemble(n, word, blocks))
}

/// Crossings contributed by the monodromy block.
pub fn monodromy_crossings(t: &LinkTemplate) -> u64 {
    let n = t.n as u64;
    let extra = (t.extra_full_twists - DEFAULT_EXTRA_FULL_TWISTS).unsigned_abs();
    (n - 1) * (2 * n - t.l as u64) + extra * n * (n - 1)
}

/// Closed-form crossing count of [`fill`]:
/// monodromy + `|s_q| n(n-1)` + sum over loops of `|s| j(j-1)`.
pub fn crossing_census(t: &LinkTemplate, f: &FillingSystem) -> Result<u64> {
    let n = t.n as u64;
    let mut total = monodromy_crossings(t);
    if t.has_augmentation {
        total += f.check_q()?.unsigned_abs() * n * (n - 1);
    }
    for lp in &t.loops {
        let j = lp.j as u64;
        total += f.loop_slope(lp.step)?.unsigned_abs() * j * (j - 1);
    }
    Ok(total)
}

/// Crossing census against `4 pi n^5`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub l: usize,
    pub census: u64,
    pub bound: f64,
    pub margin: f64,
    pub pass: bool,
    pub slopes_in_range: bool,
    /// Published estimate with multiplier `2 pi (2n - 1) + 2`.
    pub estimate_2n_minus_1: f64,
    /// Same estimate with multiplier `2 pi (2n - l) + 2`, matching the slope window.
    pub estimate_2n_minus_l: f64,
}

/// The upper estimate `(n-1)(2n-l) + M n(n-1) + sum_j M j(j-1)(2n-l)` with
/// `M = 2 pi (2n - x) + 2`.
pub fn published_estimate(n: usize, l: usize, x: usize) -> f64 {
    let (nf, blocks) = (n as f64, (2 * n - l) as f64);
    let multiplier = 2.0 * PI * (2 * n - x) as f64 + 2.0;
    let loops: f64 = (2..n).map(|j| (j * (j - 1)) as f64).sum::<f64>() * blocks;
    (nf - 1.0) * blocks + multiplier * nf * (nf - 1.0) + multiplier * loops
}

pub fn crossing_bound(n: usize) -> f64 {
    4.0 * PI * (n as f64).powi(5)
}

pub fn verify_bound(t: &LinkTemplate, f: &FillingSystem) -> Result<BoundReport> {
    let census = crossing_census(t, f)?;
    let bound = crossing_bound(t.n);
    Ok(BoundReport {
        n: t.n,
        l: t.l,
        census,
        bound,
        margin: bound - census as f64,
        pass: (census as f64) < bound,
        slopes_in_range: f.in_range(t),
        estimate_2n_minus_1: published_estimate(t.n, t.l, 1),
        estimate_2n_minus_l: published_estimate(t.n, t.l, t.l),
    })
}

/// A closed `n`-braid is an `n`-bridge presentation.
pub fn bridge_upper_bound(d: &LinkDiagram) -> usize {
    d.strand_count
}

/// Header of the braid word text format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidHeader {
    pub n: usize,
    pub l: usize,
    pub components: usize,
}

/// `n=<n> l=<l> components=<c>` followed by one line of signed generators.
pub fn to_braid_text(d: &LinkDiagram, l: usize) -> String {
    let mut out = format!("n={} l={} components={}\n", d.strand_count, l, d.components());
    for (k, g) in d.braid_word.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        write!(out, "{g}").unwrap();
    }
    out.push('\n');
    out
}

pub fn parse_braid_text(text: &str) -> Result<(BraidHeader, LinkDiagram)> {
    let err = |m: String| Error::BraidParse(m);
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| err("empty input".into()))?;
    let mut fields = BTreeMap::new();
    for part in header.split_whitespace() {
        let (k, v) = part.split_once('=').ok_or_else(|| err(format!("bad header field {part:?}")))?;
        let v: usize = v.parse().map_err(|_| err(format!("bad value in {part:?}")))?;
        fields.insert(k, v);
    }
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| err(format!("header lacks {k}")));
    let head = BraidHeader { n: get("n")?, l: get("l")?, components: get("components")? };
    let word = lines
        .next()
        .unwrap_or("")
        .split_whitespace()
        .map(|tok| tok.parse::<i32>().map_err(|_| err(format!("bad generator {tok:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if lines.any(|rest| !rest.trim().is_empty()) {
        return Err(err("trailing content after the braid word".into()));
    }
    let d = LinkDiagram::from_word(head.n, word)?;
    if d.components() != head.components {
        return Err(err(format!(
            "header claims {} components, word closes to {}",
            head.components,
            d.components()
        )));
    }
    Ok((head, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link_template::{build_template, build_template_with};
    use proptest::prelude::*;

    #[test]
    fn slope_windows() {
        let r = SlopeRange::for_parameters(6, 1);
        assert_eq!((r.lower, r.upper), (70, 71));
        let r = SlopeRange::for_parameters(4, 4);
        assert_eq!((r.lower, r.upper), (26, 27));
        let t = build_template(6, 1).unwrap();
        let mut f = default_slopes(&t);
        assert!(f.in_range(&t));
        assert_eq!(f.loop_slope(1).unwrap(), 70);
        f.perturb(1, 1);
        assert_eq!(f.loop_slope(1).unwrap(), 71);
        assert!(f.in_range(&t));
        f.perturb(1, 1);
        assert!(!f.in_range(&t));
    }

    #[test]
    fn one_full_twist() {
        for j in 1..8 {
            assert_eq!(full_twists(0, j, 1).len(), j * (j - 1));
            assert_eq!(full_twists(2, j, -3).len(), 3 * j * (j - 1));
        }
        assert_eq!(full_twists(1, 3, 1), vec![2, 3, 2, 3, 2, 3]);
        assert_eq!(full_twists(1, 3, -1), vec![-3, -2, -3, -2, -3, -2]);
        // a full twist is a pure braid
        let p = braid_permutation(5, &full_twists(1, 4, 1));
        assert_eq!(p, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn delta_rotates_positions() {
        let p = braid_permutation(4, &rotation(4, 1));
        // position 0 goes to n-1, the rest move left
        assert_eq!(p, vec![3, 0, 1, 2]);
        assert_eq!(braid_permutation(4, &rotation(4, 4)), vec![0, 1, 2, 3]);
        assert_eq!(rotation(4, 4).len(), 12);
    }

    #[test]
    fn zero_and_missing_slopes() {
        let t = build_template(4, 4).unwrap();
        let f = FillingSystem::uniform(&t, 0);
        assert!(matches!(fill(&t, &f), Err(Error::ZeroSlope { .. })));
        let mut f = FillingSystem::uniform(&t, 3);
        f.s_loops.remove(&5);
        assert_eq!(fill(&t, &f).unwrap_err(), Error::MissingSlope { step: 5 });
        let mut f = FillingSystem::uniform(&t, 3);
        f.perturb(2, -3);
        assert!(matches!(crossing_census(&t, &f), Err(Error::ZeroSlope { .. })));
    }

    #[test]
    fn small_case_by_expansion() {
        // n=4, l=4, unit slopes, no extra twist: loops contribute 4*(2 + 6),
        // B_q 12, monodromy delta^4 (4*3) plus two negative full twists (24).
        let t = build_template_with(4, 4, 0).unwrap();
        let f = FillingSystem::uniform(&t, 1);
        let d = fill(&t, &f).unwrap();
        let letters: usize = d.braid_word.len();
        assert_eq!(letters, 4 * (2 + 6) + 12 + 12 + 24);
        assert_eq!(crossing_census(&t, &f).unwrap(), letters as u64);
        assert_eq!(d.components(), 4);
    }

    #[test]
    fn loops_land_on_their_punctures() {
        // Track which puncture occupies each position and compare with each
        // loop's strand set at the moment its twist block starts.
        for (n, l) in [(4, 1), (5, 5), (6, 2), (7, 1), (8, 4)] {
            let t = build_template(n, l).unwrap();
            let d = fill(&t, &FillingSystem::uniform(&t, 1)).unwrap();
            let mut at: Vec<i64> = (0..n as i64).map(|p| (p + frame_offset(n)).rem_euclid(n as i64)).collect();
            let mut cursor = 0;
            for b in &d.blocks {
                for &g in &d.braid_word[cursor..b.letters.start] {
                    let k = g.unsigned_abs() as usize;
                    at.swap(k - 1, k);
                }
                cursor = b.letters.start;
                if let BlockKind::Loop { step, .. } = b.kind {
                    let lp = t.loops.iter().find(|lp| lp.step == step).unwrap();
                    let mut here: Vec<usize> = at[b.first_strand..b.first_strand + b.width].iter().map(|&k| k as usize).collect();
                    let mut want = lp.strands.clone();
                    here.sort_unstable();
                    want.sort_unstable();
                    assert_eq!(here, want, "n={n} l={l} loop {}", lp.label());
                }
            }
        }
    }

    #[test]
    fn census_matches_word_length() {
        for n in 4..=8 {
            for l in (1..=n).filter(|l| n % l == 0) {
                let t = build_template(n, l).unwrap();
                let f = default_slopes(&t);
                let d = fill(&t, &f).unwrap();
                assert_eq!(d.crossing_total as u64, crossing_census(&t, &f).unwrap());
                assert_eq!(d.components(), l);
            }
        }
    }

    #[test]
    fn six_one_bound() {
        let t = build_template(6, 1).unwrap();
        let f = FillingSystem::uniform(&t, 70);
        let census = crossing_census(&t, &f).unwrap();
        assert_eq!(census, 55 + 70 * 30 + 70 * 11 * 40);
        let report = verify_bound(&t, &f).unwrap();
        assert!((report.bound - 97_716.1).abs() < 0.1, "{}", report.bound);
        assert!(report.pass);
        let huge = FillingSystem::uniform(&t, 1_000_000);
        let report = verify_bound(&t, &huge).unwrap();
        assert!(!report.pass);
        assert!(report.margin < 0.0);
    }

    #[test]
    fn fiber_order_only_reorders() {
        let t = build_template(6, 2).unwrap();
        let f = FillingSystem::uniform(&t, 2);
        let a = fill_with(&t, &f, FiberOrder::WidestFirst).unwrap();
        let b = fill_with(&t, &f, FiberOrder::NarrowestFirst).unwrap();
        assert_ne!(a.braid_word, b.braid_word);
        assert_eq!(a.crossing_total, b.crossing_total);
        assert_eq!(a.permutation(), b.permutation());
    }

    #[test]
    fn bridge_bound_is_strand_count() {
        let unknot = LinkDiagram::from_word(1, vec![]).unwrap();
        assert_eq!(bridge_upper_bound(&unknot), 1);
        assert_eq!(unknot.components(), 1);
        let t = build_template(8, 2).unwrap();
        let d = fill(&t, &FillingSystem::uniform(&t, 1)).unwrap();
        assert_eq!(bridge_upper_bound(&d), 8);
    }

    #[test]
    fn braid_text_format() {
        let d = LinkDiagram::from_word(3, vec![1, -2]).unwrap();
        let text = to_braid_text(&d, 1);
        assert_eq!(text, "n=3 l=1 components=1\n1 -2\n");
        let (head, back) = parse_braid_text(&text).unwrap();
        assert_eq!(head, BraidHeader { n: 3, l: 1, components: 1 });
        assert_eq!(back.braid_word, d.braid_word);
        assert!(parse_braid_text("n=3 l=1 components=2\n1 -2\n").is_err());
        assert!(parse_braid_text("n=3 l=1 components=1\n1 3\n").is_err());
        assert!(parse_braid_text("n=3 l=1\n1\n").is_err());
    }

    proptest! {
        #[test]
        fn braid_text_round_trip(n in 1usize..8, raw in proptest::collection::vec((1i32..8, any::<bool>()), 0..40)) {
            let word: Vec<i32> = raw
                .into_iter()
                .filter(|(g, _)| (*g as usize) < n)
                .map(|(g, neg)| if neg { -g } else { g })
                .collect();
            let d = LinkDiagram::from_word(n, word).unwrap();
            let (head, back) = parse_braid_text(&to_braid_text(&d, 1)).unwrap();
            prop_assert_eq!(head.components, d.components());
            prop_assert_eq!(back, d);
        }

        #[test]
        fn twists_keep_the_permutation(n in 4usize..9, s in -3i64..4) {
            prop_assume!(s != 0);
            let t = build_template(n, n).unwrap();
            let d = fill(&t, &FillingSystem::uniform(&t, s)).unwrap();
            let mono = braid_permutation(n, &rotation(n, (2 * n - t.l) as i64));
            prop_assert_eq!(d.permutation(), mono);
        }
    }
}
