//! The integer decomposition property, checked up to a fixed dilation.
//!
//! `P` is IDP when every lattice point of `nP` is a sum of `n` lattice points
//! of `P`. A pair `(P, Q)` is IDP when the lattice points of `P + Q` are the
//! sums of lattice points of `P` and of `Q`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_geom::{IntPoint2, IntPoint3};
use crate::polytope::{minkowski_sum2, Body3, Polygon2};

pub const DEFAULT_MAX_N: i64 = 3;

/// Sumset sizes above this are refused rather than computed.
pub const MAX_SUMSET_WORK: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdpReport {
    pub checked_up_to: i64,
    pub verdict: Verdict,
    /// The smallest failing dilation and its lexicographically smallest
    /// lattice point that is not a sum of `n` lattice points of `P`.
    pub failure: Option<(i64, IntPoint3)>,
    /// Every non-decomposable lattice point at the failing dilation, sorted.
    pub witnesses: Vec<IntPoint3>,
}

fn guard(a: usize, b: usize) -> Result<()> {
    if a.saturating_mul(b) > MAX_SUMSET_WORK {
        return Err(Error::ResourceLimit(format!("sumset of {a} x {b} points")));
    }
    Ok(())
}

pub fn idp_check(p: &Body3, n_max: i64) -> Result<IdpReport> {
    if n_max < 2 {
        return Err(Error::InvalidInput(format!("n_max must be at least 2, got {n_max}")));
    }
    let s1 = p.lattice_points();
    let mut sn: HashSet<IntPoint3> = s1.iter().copied().collect();
    for n in 2..=n_max {
        guard(sn.len(), s1.len())?;
        sn = sn.iter().flat_map(|&a| s1.iter().map(move |&b| a + b)).collect();
        let target = p.dilated_lattice_points(n);
        if sn.len() > target.len() || sn.iter().any(|&x| !p.contains_dilated(x, n)) {
            return Err(Error::Internal(format!("sum of {n} lattice points escapes the dilation")));
        }
        // `target` is sorted, so the first miss is the smallest witness.
        let missing: Vec<IntPoint3> = target.into_iter().filter(|x| !sn.contains(x)).collect();
        if let Some(&w) = missing.first() {
            return Ok(IdpReport {
                checked_up_to: n_max,
                verdict: Verdict::Fail,
                failure: Some((n, w)),
                witnesses: missing,
            });
        }
    }
    Ok(IdpReport { checked_up_to: n_max, verdict: Verdict::Pass, failure: None, witnesses: Vec::new() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport<T> {
    pub verdict: Verdict,
    /// Smallest lattice point of `P + Q` that is not a sum.
    pub witness: Option<T>,
}

pub fn pair_idp_check(p: &Body3, q: &Body3) -> Result<PairReport<IntPoint3>> {
    let mut sum_vertices = Vec::new();
    for &a in p.vertices() {
        for &b in q.vertices() {
            sum_vertices.push(a + b);
        }
    }
    let sum = Body3::hull(&sum_vertices)?;
    let (lp, lq) = (p.lattice_points(), q.lattice_points());
    guard(lp.len(), lq.len())?;
    let sums: HashSet<IntPoint3> = lp.iter().flat_map(|&a| lq.iter().map(move |&b| a + b)).collect();
    let witness = sum.lattice_points().into_iter().find(|x| !sums.contains(x));
    Ok(PairReport { verdict: if witness.is_some() { Verdict::Fail } else { Verdict::Pass }, witness })
}

pub fn pair_idp_check2(p: &Polygon2, q: &Polygon2) -> Result<PairReport<IntPoint2>> {
    let (lp, lq) = (p.lattice_points(), q.lattice_points());
    guard(lp.len(), lq.len())?;
    let sums: HashSet<IntPoint2> = lp.iter().flat_map(|&a| lq.iter().map(move |&b| a + b)).collect();
    let witness = minkowski_sum2(p, q).lattice_points().into_iter().find(|x| !sums.contains(x));
    Ok(PairReport { verdict: if witness.is_some() { Verdict::Fail } else { Verdict::Pass }, witness })
}
