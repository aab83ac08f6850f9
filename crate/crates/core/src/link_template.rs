//! Combinatorial model of the drilled mapping torus.
//!
//! The mapping torus of the rotation `z -> e^{-2 pi i l/n} z` is the exterior
//! of a closed `n`-braid plus the augmentation circle around all strands.
//! Every curve replaced along the pants path is drilled out as a loop sitting
//! in the fiber indexed by the curve's first index and encircling the curve's
//! punctures.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::disk_curves::{beta_curve, encircled_punctures, geometric_intersection, Curve};
use crate::error::{Error, Result};
use crate::pants_path::{build_path, check_parameters, PantsPath};

/// Full twists added to the gluing map by default (a 4 pi turn).
pub const DEFAULT_EXTRA_FULL_TWISTS: i64 = 2;

/// A drilled loop `L_{i,j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Loop {
    pub i: i64,
    pub j: usize,
    pub strands: Vec<usize>,
    /// Path step (1-based) at which the source curve was replaced.
    pub step: usize,
}

impl Loop {
    pub fn curve(&self, n: usize) -> Result<Curve> {
        beta_curve(self.i, self.j as i64, n)
    }

    pub fn label(&self) -> String {
        format!("b{}_{}", self.i, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkTemplate {
    pub n: usize,
    pub l: usize,
    /// Strands advanced per period by the monodromy.
    pub monodromy_shift: usize,
    pub extra_full_twists: i64,
    pub has_augmentation: bool,
    pub path_length: usize,
    pub loops: Vec<Loop>,
}

/// Template for `n` strands and `l` components with the default 4 pi twist.
pub fn build_template(n: usize, l: usize) -> Result<LinkTemplate> {
    build_template_with(n, l, DEFAULT_EXTRA_FULL_TWISTS)
}

pub fn build_template_with(n: usize, l: usize, extra_full_twists: i64) -> Result<LinkTemplate> {
    check_parameters(n, l)?;
    let path = build_path(n, l)?;
    Ok(template_from_path(&path, extra_full_twists))
}

pub fn template_from_path(path: &PantsPath, extra_full_twists: i64) -> LinkTemplate {
    let loops = path
        .moves()
        .iter()
        .map(|m| Loop {
            i: m.out.index(),
            j: m.out.width(),
            strands: encircled_punctures(&m.out),
            step: m.step,
        })
        .collect();
    LinkTemplate {
        n: path.n(),
        l: path.l(),
        monodromy_shift: path.l(),
        extra_full_twists,
        has_augmentation: true,
        path_length: path.len(),
        loops,
    }
}

/// Cycles of the strand permutation `k -> k - shift (mod n)`.
pub fn component_count(n: usize, shift: usize) -> usize {
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = (k + n - shift % n) % n;
        }
    }
    cycles
}

/// Loops grouped by fiber, widest first within each fiber.
///
/// Loops sharing a fiber come from one decomposition, so they must be
/// pairwise disjoint; a conflict means the path is broken.
pub fn loop_heights(t: &LinkTemplate) -> Result<BTreeMap<i64, Vec<&Loop>>> {
    let mut fibers: BTreeMap<i64, Vec<&Loop>> = BTreeMap::new();
    for lp in &t.loops {
        fibers.entry(lp.i).or_default().push(lp);
    }
    for (&fiber, loops) in fibers.iter_mut() {
        loops.sort_by(|a, b| b.j.cmp(&a.j).then(a.step.cmp(&b.step)));
        let curves: Vec<Curve> = loops.iter().map(|lp| lp.curve(t.n)).collect::<Result<_>>()?;
        for (a, c) in curves.iter().enumerate() {
            for d in &curves[a + 1..] {
                if geometric_intersection(c, d)? != 0 {
                    return Err(Error::FiberConflict {
                        fiber: fiber as usize,
                        first: c.to_string(),
                        second: d.to_string(),
                    });
                }
            }
        }
    }
    Ok(fibers)
}

impl LinkTemplate {
    /// Number of loops of each width.
    pub fn width_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for lp in &self.loops {
            *census.entry(lp.j).or_insert(0) += 1;
        }
        census
    }

    /// Components of the braid closure.
    pub fn components(&self) -> usize {
        component_count(self.n, self.monodromy_shift)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("template serializes")
    }
}
