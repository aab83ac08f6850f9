//! Pants decompositions of the punctured disk and the rotating path between them.
//!
//! `P_i` is the nested chain of curves `b{2i-1}_{j}` (even `j`) and `b{2i}_{j}`
//! (odd `j`) for `2 <= j <= n-1`. Rotating its curves by one puncture, one at
//! a time, walks from `P_i` to `P_{i+1}` through associative moves. The full
//! path concatenates these walks from `P_1` up to `P_{2n+1-l}`.

use std::collections::{BTreeSet, HashSet};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::disk_curves::{beta_curve, geometric_intersection, Curve, CurveClass};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Order in which the curves of `P_i` are listed, and so rotated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CurveOrder {
    /// Even widths ascending, then odd widths ascending.
    #[default]
    ParityBlocks,
    /// Strictly ascending width, alternating the two families. Not every
    /// intermediate collection is disjoint under this order; it is kept so
    /// the certifier can demonstrate the failure.
    WidthAscending,
}

/// Ordered collection of `n-2` pairwise disjoint, pairwise distinct curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PantsDecomposition {
    n: usize,
    curves: Vec<Curve>,
}

impl PantsDecomposition {
    /// Validates count, disjointness and distinctness.
    pub fn new(n: usize, curves: Vec<Curve>) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidDecomposition { reason };
        if n < 4 {
            return Err(Error::DiskTooSmall { n });
        }
        if curves.len() != n - 2 {
            return Err(invalid(format!("{} curves, expected {}", curves.len(), n - 2)));
        }
        for (a, c) in curves.iter().enumerate() {
            if c.punctures() != n {
                return Err(Error::MismatchedDisk { left: n, right: c.punctures() });
            }
            for d in &curves[a + 1..] {
                if c.class() == d.class() {
                    return Err(invalid(format!("{c} and {d} are the same curve")));
                }
                let x = geometric_intersection(c, d)?;
                if x != 0 {
                    return Err(invalid(format!("{c} and {d} intersect {x} times")));
                }
            }
        }
        Ok(PantsDecomposition { n, curves })
    }

    pub fn punctures(&self) -> usize {
        self.n
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn classes(&self) -> BTreeSet<CurveClass> {
        self.curves.iter().map(Curve::class).collect()
    }

    /// Equal as collections of isotopy classes.
    pub fn same_classes(&self, other: &PantsDecomposition) -> bool {
        self.n == other.n && self.classes() == other.classes()
    }

    /// Number of complementary pants, checked by Euler bookkeeping.
    ///
    /// The curves nest into a forest under the outer boundary. Each region
    /// (inside a curve or `q`, outside its maximal children) is bounded by its
    /// own curve, its child curves and the punctures it holds directly; every
    /// region must have exactly three boundary components, and the regions'
    /// Euler characteristics (-1 each) must sum to `1 - n`.
    pub fn pants_count(&self) -> Result<usize> {
        let masks: Vec<Vec<bool>> = self.curves.iter().map(Curve::mask).collect();
        let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);
        // parent = smallest strictly containing curve, None for the outer boundary
        let parent: Vec<Option<usize>> = (0..masks.len())
            .map(|a| {
                (0..masks.len())
                    .filter(|&b| b != a && subset(&masks[a], &masks[b]))
                    .min_by_key(|&b| self.curves[b].width())
            })
            .collect();
        let mut regions = Vec::with_capacity(masks.len() + 1);
        for owner in std::iter::once(None).chain((0..masks.len()).map(Some)) {
            let children = (0..masks.len()).filter(|&c| parent[c] == owner).count();
            let direct = (0..self.n)
                .filter(|&k| owner.is_none_or(|o| masks[o][k]))
                .filter(|&k| !(0..masks.len()).any(|c| parent[c] == owner && masks[c][k]))
                .count();
            let boundaries = 1 + children + direct;
            if boundaries != 3 {
                let name = owner.map_or_else(|| "q".to_string(), |o| self.curves[o].to_string());
                return Err(Error::InvalidDecomposition {
                    reason: format!("region bounded by {name} has {boundaries} boundary components"),
                });
            }
            regions.push(boundaries);
        }
        let chi: i64 = regions.iter().map(|&b| 2 - b as i64).sum();
        if chi != 1 - self.n as i64 {
            return Err(Error::InvalidDecomposition {
                reason: format!("pants have total Euler characteristic {chi}"),
            });
        }
        Ok(regions.len())
    }

    pub fn tokens(&self) -> Vec<String> {
        self.curves.iter().map(Curve::token).collect()
    }
}

fn check_disk(n: usize) -> Result<()> {
    if n < 4 {
        Err(Error::DiskTooSmall { n })
    } else {
        Ok(())
    }
}

/// The curves of `P_i` in the given order, unvalidated.
fn standard_curves(i: usize, n: usize, order: CurveOrder) -> Result<Vec<Curve>> {
    check_disk(n)?;
    if i < 1 || i > 2 * n {
        return Err(Error::DecompositionIndexOutOfRange { i, max: 2 * n });
    }
    let odd_index = 2 * i as i64 - 1;
    let even_index = 2 * i as i64;
    let pick = |j: usize| if j.is_multiple_of(2) { odd_index } else { even_index };
    let widths: Vec<usize> = match order {
        CurveOrder::WidthAscending => (2..n).collect(),
        CurveOrder::ParityBlocks => {
            (2..n).filter(|j| j % 2 == 0).chain((2..n).filter(|j| j % 2 == 1)).collect()
        }
    };
    widths.into_iter().map(|j| beta_curve(pick(j), j as i64, n)).collect()
}

/// `P_i` for `1 <= i <= 2n`.
pub fn standard_decomposition(i: usize, n: usize) -> Result<PantsDecomposition> {
    standard_decomposition_with(i, n, CurveOrder::default())
}

pub fn standard_decomposition_with(
    i: usize,
    n: usize,
    order: CurveOrder,
) -> Result<PantsDecomposition> {
    PantsDecomposition::new(n, standard_curves(i, n, order)?)
}

/// `P_i^k`: the first `k` curves of `P_{i+1}` and the last `n-2-k` of `P_i`.
pub fn interpolant(i: usize, k: usize, n: usize) -> Result<PantsDecomposition> {
    interpolant_with(i, k, n, CurveOrder::default())
}

pub fn interpolant_with(i: usize, k: usize, n: usize, order: CurveOrder) -> Result<PantsDecomposition> {
    check_disk(n)?;
    if k > n - 2 {
        return Err(Error::InterpolantOutOfRange { k, max: n - 2 });
    }
    let here = standard_curves(i, n, order)?;
    if k == 0 {
        return PantsDecomposition::new(n, here);
    }
    let next = standard_curves(i + 1, n, order)?;
    let curves = next[..k].iter().chain(&here[k..]).copied().collect();
    PantsDecomposition::new(n, curves)
}

/// Certificate of an associative move: `out` is replaced by `inn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AMove {
    pub out: Curve,
    pub inn: Curve,
}

/// Decide whether `q` is obtained from `p` by one associative move.
///
/// On failure the error string says why.
pub fn is_a_move(p: &PantsDecomposition, q: &PantsDecomposition) -> Result<AMove, String> {
    if p.n != q.n {
        return Err(format!("different disks (n={} vs n={})", p.n, q.n));
    }
    let q_classes = q.classes();
    let p_classes = p.classes();
    let removed: Vec<&Curve> = p.curves.iter().filter(|c| !q_classes.contains(&c.class())).collect();
    let added: Vec<&Curve> = q.curves.iter().filter(|c| !p_classes.contains(&c.class())).collect();
    match (removed.len(), added.len()) {
        (0, 0) => return Err("no curve replaced".into()),
        (1, 1) => {}
        _ => return Err("more than one curve replaced".into()),
    }
    let (out, inn) = (*removed[0], *added[0]);
    let x = geometric_intersection(&out, &inn).map_err(|e| e.to_string())?;
    if x != 2 {
        return Err(format!("{inn} meets {out} {x} times, expected 2"));
    }
    for c in p.curves.iter().filter(|c| c.class() != out.class()) {
        let y = geometric_intersection(c, &inn).map_err(|e| e.to_string())?;
        if y != 0 {
            return Err(format!("{inn} meets unchanged curve {c}"));
        }
    }
    Ok(AMove { out, inn })
}

/// Simple moves live in one-holed tori; a planar surface has none.
pub fn is_s_move(_p: &PantsDecomposition, _q: &PantsDecomposition) -> bool {
    false
}

/// One certified move of the path; `step` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathMove {
    pub step: usize,
    pub out: Curve,
    pub inn: Curve,
}

/// Certified path of associative moves from `P_1` to `P_{2n+1-l}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PantsPath {
    n: usize,
    l: usize,
    steps: Vec<PantsDecomposition>,
    moves: Vec<PathMove>,
}

pub(crate) fn check_parameters(n: usize, l: usize) -> Result<()> {
    check_disk(n)?;
    if l == 0 || !n.is_multiple_of(l) {
        return Err(Error::BadComponentCount { n, l });
    }
    Ok(())
}

/// Build and certify the path for `n` punctures and `l` link components.
pub fn build_path(n: usize, l: usize) -> Result<PantsPath> {
    build_path_with(n, l, CurveOrder::default(), Execution::Sequential)
}

pub fn build_path_with(n: usize, l: usize, order: CurveOrder, exec: Execution) -> Result<PantsPath> {
    check_parameters(n, l)?;
    let blocks = 2 * n - l;
    let mut steps = Vec::with_capacity(blocks * (n - 2) + 1);
    steps.push(standard_decomposition_with(1, n, order)?);
    let mut first_failure = None;
    'blocks: for i in 1..=blocks {
        for k in 1..=n - 2 {
            match interpolant_with(i, k, n, order) {
                Ok(p) => steps.push(p),
                Err(e) => {
                    first_failure = Some((steps.len(), e.to_string()));
                    break 'blocks;
                }
            }
        }
    }
    if let Some((step, reason)) = first_failure {
        return Err(Error::IllegalMove { step, reason });
    }
    let indices: Vec<usize> = (1..steps.len()).collect();
    let moves = exec.try_map(&indices, |&s| {
        is_a_move(&steps[s - 1], &steps[s])
            .map(|m| PathMove { step: s, out: m.out, inn: m.inn })
            .map_err(|reason| Error::IllegalMove { step: s, reason })
    })?;
    Ok(PantsPath { n, l, steps, moves })
}

impl PantsPath {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of moves, `(2n-l)(n-2)`.
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn steps(&self) -> &[PantsDecomposition] {
        &self.steps
    }

    pub fn moves(&self) -> &[PathMove] {
        &self.moves
    }

    pub fn first(&self) -> &PantsDecomposition {
        &self.steps[0]
    }

    pub fn last(&self) -> &PantsDecomposition {
        self.steps.last().expect("path has at least one decomposition")
    }

    /// Curve classes present in every decomposition along the path.
    pub fn persistent_classes(&self) -> BTreeSet<CurveClass> {
        let mut common = self.steps[0].classes();
        for p in &self.steps[1..] {
            let here: HashSet<CurveClass> = p.curves.iter().map(Curve::class).collect();
            common.retain(|c| here.contains(c));
        }
        common
    }

    /// The monodromy `z -> e^{-2 pi i l/n} z` moves each curve `l` punctures
    /// clockwise; the last decomposition must be the image of the first.
    pub fn endpoint_matches_monodromy(&self) -> bool {
        let image: BTreeSet<CurveClass> =
            self.first().curves.iter().map(|c| c.rotated(-(self.l as i64)).class()).collect();
        image == self.last().classes()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("path serializes")
    }
}

impl Serialize for PantsPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct MoveRecord {
            step: usize,
            out: String,
            #[serde(rename = "in")]
            inn: String,
        }
        let steps: Vec<Vec<String>> = self.steps.iter().map(PantsDecomposition::tokens).collect();
        let moves: Vec<MoveRecord> = self
            .moves
            .iter()
            .map(|m| MoveRecord { step: m.step, out: m.out.token(), inn: m.inn.token() })
            .collect();
        let mut s = serializer.serialize_struct("PantsPath", 4)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("l", &self.l)?;
        s.serialize_field("steps", &steps)?;
        s.serialize_field("moves", &moves)?;
        s.end()
    }
}
