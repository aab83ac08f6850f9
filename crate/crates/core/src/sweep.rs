//! Quantitative checks over ranges of parameters.

use serde::Serialize;

use crate::diagram::{braid_permutation, crossing_bound, crossing_census, cycle_labels, default_slopes, rotation};
use crate::disk_curves::{beta_curve, geometric_intersection, Curve};
use crate::error::Result;
use crate::exec::Execution;
use crate::geom_oracle::{count_intersections, realize, PolylineCurve};
use crate::link_template::{build_template, LinkTemplate};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub l: usize,
    pub path_length: usize,
    pub crossings: u64,
    pub bound: f64,
    pub margin: f64,
    pub components: usize,
    pub pass: bool,
}

/// `(n, l)` with `nmin <= n <= nmax`, `n >= 4`, `l | n`; restricted to one `l` if given.
pub fn parameter_pairs(nmin: usize, nmax: usize, only_l: Option<usize>) -> Vec<(usize, usize)> {
    (nmin.max(4)..=nmax)
        .flat_map(|n| (1..=n).filter(move |l| n % l == 0).map(move |l| (n, l)))
        .filter(|&(_, l)| only_l.is_none_or(|want| want == l))
        .collect()
}

fn closure_components(t: &LinkTemplate) -> usize {
    let power = t.extra_full_twists * t.n as i64 - t.l as i64;
    let labels = cycle_labels(&braid_permutation(t.n, &rotation(t.n, power)));
    labels.iter().max().map_or(0, |&m| m + 1)
}

pub fn sweep_row(n: usize, l: usize) -> Result<SweepRow> {
    let t = build_template(n, l)?;
    let f = default_slopes(&t);
    let crossings = crossing_census(&t, &f)?;
    let bound = crossing_bound(n);
    Ok(SweepRow {
        n,
        l,
        path_length: t.path_length,
        crossings,
        bound,
        margin: bound - crossings as f64,
        components: closure_components(&t),
        pass: (crossings as f64) < bound,
    })
}

/// One row per parameter pair, default slopes throughout.
pub fn sweep(nmin: usize, nmax: usize, only_l: Option<usize>, exec: Execution) -> Result<Vec<SweepRow>> {
    exec.try_map(&parameter_pairs(nmin, nmax, only_l), |&(n, l)| sweep_row(n, l))
}

/// Tab-separated table with a header line.
pub fn sweep_tsv(rows: &[SweepRow]) -> String {
    let mut out = String::from("n\tl\tm\tcrossings\tbound\tmargin\tcomponents\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{:.1}\t{:.1}\t{}\n",
            r.n, r.l, r.path_length, r.crossings, r.bound, r.margin, r.components
        ));
    }
    out
}

/// One representative per isotopy class of standard curve on `n` punctures.
pub fn curve_classes(n: usize) -> Vec<Curve> {
    (2..n as i64)
        .flat_map(|j| (1..=2 * n as i64).filter_map(move |i| beta_curve(i, j, n).ok()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub a: String,
    pub b: String,
    pub combinatorial: u32,
    pub geometric: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub n: usize,
    pub pairs: usize,
    pub mismatches: Vec<OracleMismatch>,
}

/// Compare [`geometric_intersection`] with polyline crossing counts over all
/// pairs of distinct curve classes on `n` punctures.
pub fn oracle_agreement(n: usize, exec: Execution) -> Result<OracleSummary> {
    let classes = curve_classes(n);
    let polys: Vec<PolylineCurve> = exec.try_map(&classes, realize)?;
    let pairs: Vec<(usize, usize)> =
        (0..classes.len()).flat_map(|a| (a + 1..classes.len()).map(move |b| (a, b))).collect();
    let results = exec.try_map(&pairs, |&(a, b)| {
        let combinatorial = geometric_intersection(&classes[a], &classes[b])?;
        let geometric = count_intersections(&polys[a], &polys[b])?;
        Ok((a, b, combinatorial, geometric))
    })?;
    let mismatches = results
        .into_iter()
        .filter(|&(_, _, c, g)| c as usize != g)
        .map(|(a, b, combinatorial, geometric)| OracleMismatch {
            a: classes[a].to_string(),
            b: classes[b].to_string(),
            combinatorial,
            geometric,
        })
        .collect();
    Ok(OracleSummary { n, pairs: pairs.len(), mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_respect_divisibility() {
        assert_eq!(parameter_pairs(4, 6, None), vec![(4, 1), (4, 2), (4, 4), (5, 1), (5, 5), (6, 1), (6, 2), (6, 3), (6, 6)]);
        assert_eq!(parameter_pairs(1, 8, Some(4)), vec![(4, 4), (8, 4)]);
    }

    #[test]
    fn class_counts() {
        for n in 4..=9 {
            assert_eq!(curve_classes(n).len(), n * (n - 2));
        }
    }

    #[test]
    fn small_sweep() {
        let rows = sweep(4, 6, Some(1), Execution::Sequential).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.pass && r.components == 1));
        assert_eq!(rows[2].path_length, 44);
        let tsv = sweep_tsv(&rows);
        assert_eq!(tsv.lines().count(), 4);
        assert!(tsv.starts_with("n\tl\tm\tcrossings"));
    }

    #[test]
    fn oracle_agrees_on_five_punctures() {
        let s = oracle_agreement(5, Execution::Parallel).unwrap();
        assert_eq!(s.pairs, 15 * 14 / 2);
        assert!(s.mismatches.is_empty(), "{:?}", s.mismatches);
    }
}
