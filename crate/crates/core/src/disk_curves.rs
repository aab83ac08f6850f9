//! The `n`-punctured disk and the standard curve family on it.
//!
//! Punctures `p_0 .. p_{n-1}` sit evenly on a circle inside a larger disk whose
//! boundary is `q`. The curve `b{i}_{j}` encircles the `j` cyclically
//! consecutive punctures `p_k` with `(i-(j-1))/2 <= k <= (i+(j-1))/2`, indices
//! taken mod `n`. Even `i` centers the run on `p_{i/2}`; odd `i` centers it
//! between two punctures. Curves are always drawn in the outward-bulging
//! standard position, so their pairwise intersections are determined by the
//! cyclic intervals alone.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Disk with `n` punctures on a circle and outer boundary `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PuncturedDisk {
    n: usize,
}

impl PuncturedDisk {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::DiskTooSmall { n });
        }
        Ok(PuncturedDisk { n })
    }

    pub fn punctures(&self) -> usize {
        self.n
    }

    /// Outer boundary plus one boundary per puncture.
    pub fn boundary_components(&self) -> usize {
        self.n + 1
    }

    /// Euler characteristic of the disk with `n` holes.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.n as i64
    }

    pub fn curve(&self, i: i64, j: i64) -> Result<Curve> {
        beta_curve(i, j, self.n)
    }
}

/// A standard curve `b{i}_{j}` on the `n`-punctured disk.
///
/// Only `(i, j, n)` is stored; the encircled punctures are always derived.
/// Two curves with equal `(i mod 2n, j)` are isotopic but are still distinct
/// values, which is what the path bookkeeping needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct Curve {
    i: i64,
    j: i64,
    n: usize,
}

#[derive(Deserialize)]
struct RawCurve {
    i: i64,
    j: i64,
    n: usize,
}

impl TryFrom<RawCurve> for Curve {
    type Error = Error;

    fn try_from(raw: RawCurve) -> Result<Self> {
        beta_curve(raw.i, raw.j, raw.n)
    }
}

/// Isotopy class of a standard curve: `(i mod 2n, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    pub index: usize,
    pub width: usize,
}

/// Construct `b{i}_{j}` on the `n`-punctured disk.
pub fn beta_curve(i: i64, j: i64, n: usize) -> Result<Curve> {
    if n < 4 {
        return Err(Error::DiskTooSmall { n });
    }
    let max_index = 4 * n;
    if i < 1 || i > max_index as i64 {
        return Err(Error::IndexOutOfRange { i, j, n, max: max_index });
    }
    if j < 2 || j > n as i64 - 1 {
        return Err(Error::WidthOutOfRange { i, j, n, max: n - 1 });
    }
    if (i - j).rem_euclid(2) == 0 {
        return Err(Error::ParityViolation { i, j });
    }
    Ok(Curve { i, j, n })
}

impl Curve {
    pub fn index(&self) -> i64 {
        self.i
    }

    pub fn width(&self) -> usize {
        self.j as usize
    }

    pub fn punctures(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> CurveClass {
        CurveClass {
            index: self.i.rem_euclid(2 * self.n as i64) as usize,
            width: self.j as usize,
        }
    }

    /// First puncture of the encircled run, reduced mod `n`.
    pub fn start(&self) -> usize {
        // i - (j - 1) is even by the parity constraint
        ((self.i - (self.j - 1)) / 2).rem_euclid(self.n as i64) as usize
    }

    /// Twice the (possibly half-integer) center of the run, unreduced.
    pub fn doubled_center(&self) -> i64 {
        self.i
    }

    /// Membership mask over the punctures `0..n`.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for k in encircled_punctures(self) {
            mask[k] = true;
        }
        mask
    }

    /// Same curve class rotated by `steps` punctures counter-clockwise.
    pub fn rotated(&self, steps: i64) -> Curve {
        let period = 2 * self.n as i64;
        let i = (self.i - 1 + 2 * steps).rem_euclid(period) + 1;
        Curve { i, j: self.j, n: self.n }
    }

    /// Text token `b{i}_{j}`.
    pub fn token(&self) -> String {
        self.to_string()
    }

    /// Inverse of [`Curve::token`] on a disk with `n` punctures.
    pub fn parse_token(token: &str, n: usize) -> Result<Curve> {
        let bad = || Error::InvalidDecomposition { reason: format!("bad curve token {token:?}") };
        let body = token.strip_prefix('b').ok_or_else(bad)?;
        let (i, j) = body.split_once('_').ok_or_else(bad)?;
        let i = i.parse().map_err(|_| bad())?;
        let j = j.parse().map_err(|_| bad())?;
        beta_curve(i, j, n)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}_{}", self.i, self.j)
    }
}

/// The `j` encircled puncture labels in cyclic order, starting from the
/// clockwise-most one.
pub fn encircled_punctures(c: &Curve) -> Vec<usize> {
    let start = c.start();
    (0..c.width()).map(|k| (start + k) % c.n).collect()
}

/// Minimal intersection number of two standard curves.
///
/// Equal, disjoint and nested runs give 0. Runs that properly overlap give
/// two crossings per maximal run of shared punctures; two cyclic intervals
/// share at most two runs, so the result is 0, 2 or 4.
pub fn geometric_intersection(c1: &Curve, c2: &Curve) -> Result<u32> {
    if c1.n != c2.n {
        return Err(Error::MismatchedDisk { left: c1.n, right: c2.n });
    }
    let a = c1.mask();
    let b = c2.mask();
    let n = c1.n;
    let shared = (0..n).filter(|&k| a[k] && b[k]).count();
    if shared == 0 || shared == c1.width() || shared == c2.width() {
        return Ok(0);
    }
    let runs = (0..n)
        .filter(|&k| a[k] && b[k] && !(a[(k + n - 1) % n] && b[(k + n - 1) % n]))
        .count() as u32;
    Ok(2 * runs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn curve(i: i64, j: i64, n: usize) -> Curve {
        beta_curve(i, j, n).unwrap()
    }

    #[test]
    fn even_index_is_centered_on_a_puncture() {
        let c = curve(2, 3, 6);
        assert_eq!(encircled_punctures(&c), vec![0, 1, 2]);
    }

    #[test]
    fn smallest_odd_index() {
        assert_eq!(encircled_punctures(&curve(1, 2, 6)), vec![0, 1]);
    }

    #[test]
    fn wraps_modulo_n() {
        // (11-3)/2 = 4 ..= (11+3)/2 = 7 -> 4, 5, 0, 1
        assert_eq!(encircled_punctures(&curve(11, 4, 6)), vec![4, 5, 0, 1]);
        // (7-1)/2 = 3 ..= 4 -> 3, 0
        assert_eq!(encircled_punctures(&curve(7, 2, 4)), vec![3, 0]);
    }

    #[test]
    fn period_is_two_n() {
        let a = curve(2, 3, 6);
        let b = curve(14, 3, 6);
        assert_eq!(encircled_punctures(&a), encircled_punctures(&b));
        assert_eq!(a.class(), b.class());
        assert_ne!(a, b);
    }

    #[test]
    fn validation_errors_are_distinct() {
        assert!(matches!(beta_curve(2, 2, 6), Err(Error::ParityViolation { .. })));
        assert!(matches!(beta_curve(2, 7, 6), Err(Error::WidthOutOfRange { .. })));
        assert!(matches!(beta_curve(1, 0, 6), Err(Error::WidthOutOfRange { .. })));
        assert!(matches!(beta_curve(0, 3, 6), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(beta_curve(26, 3, 6), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(beta_curve(2, 3, 3), Err(Error::DiskTooSmall { .. })));
        assert!(beta_curve(24, 5, 6).is_ok());
    }

    #[test]
    fn intersection_cases() {
        // {0,1} vs {3,4}
        assert_eq!(geometric_intersection(&curve(1, 2, 6), &curve(7, 2, 6)).unwrap(), 0);
        // {0,1,2} vs {1,2,3}
        assert_eq!(geometric_intersection(&curve(2, 3, 6), &curve(4, 3, 6)).unwrap(), 2);
        // {0,1} inside {5,0,1,2}
        assert_eq!(geometric_intersection(&curve(1, 2, 6), &curve(1, 4, 6)).unwrap(), 0);
        // {0,1,2,3} vs {3,4,5,0}: two shared runs
        assert_eq!(geometric_intersection(&curve(3, 4, 6), &curve(9, 4, 6)).unwrap(), 4);
        let c = curve(2, 3, 6);
        assert_eq!(geometric_intersection(&c, &c).unwrap(), 0);
        assert_eq!(
            geometric_intersection(&c, &curve(2, 3, 8)),
            Err(Error::MismatchedDisk { left: 6, right: 8 })
        );
    }

    #[test]
    fn token_round_trip() {
        let c = curve(11, 4, 6);
        assert_eq!(c.token(), "b11_4");
        assert_eq!(Curve::parse_token("b11_4", 6).unwrap(), c);
        assert!(Curve::parse_token("c11_4", 6).is_err());
        assert!(Curve::parse_token("b11_3", 6).is_err());
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"i":11,"j":4,"n":6}"#);
        let back: Curve = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Curve>(r#"{"i":11,"j":3,"n":6}"#).is_err());
    }

    fn any_curve() -> impl Strategy<Value = Curve> {
        (4usize..=12).prop_flat_map(|n| {
            (1i64..=(4 * n as i64), 2i64..=(n as i64 - 1)).prop_filter_map(
                "parity",
                move |(i, j)| beta_curve(i, j, n).ok(),
            )
        })
    }

    fn curve_pair() -> impl Strategy<Value = (Curve, Curve)> {
        (4usize..=12).prop_flat_map(|n| {
            let one = (1i64..=(4 * n as i64), 2i64..=(n as i64 - 1));
            (one.clone(), one).prop_filter_map("parity", move |((i1, j1), (i2, j2))| {
                Some((beta_curve(i1, j1, n).ok()?, beta_curve(i2, j2, n).ok()?))
            })
        })
    }

    proptest! {
        #[test]
        fn run_has_width_many_punctures(c in any_curve()) {
            let ps = encircled_punctures(&c);
            prop_assert_eq!(ps.len(), c.width());
            let mut sorted = ps.clone();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), c.width());
        }

        #[test]
        fn intersection_symmetric_and_rotation_invariant((a, b) in curve_pair(), steps in 0i64..12) {
            let ab = geometric_intersection(&a, &b).unwrap();
            prop_assert_eq!(ab, geometric_intersection(&b, &a).unwrap());
            prop_assert_eq!(geometric_intersection(&a, &a).unwrap(), 0);
            let ra = a.rotated(steps);
            let rb = b.rotated(steps);
            prop_assert_eq!(ab, geometric_intersection(&ra, &rb).unwrap());
        }
    }
}
