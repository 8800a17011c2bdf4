//! Brute-force sumsets of finite lattice sets and the decomposition-property
//! oracle. Nothing here assumes anything about triangulations or
//! unimodularity; it is the independent check every certificate is held to.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, LatticePoint, LatticePolytope};

/// Largest point set any intermediate sumset may hold.
pub const MAX_POINTSET: usize = 1_000_000;

/// Largest number of pairwise sums generated for a single sumset.
pub const MAX_PAIR_SUMS: u128 = 100_000_000;

/// A sorted, duplicate-free set of lattice points of one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl PointSet {
    pub fn new(dim: usize, mut points: Vec<LatticePoint>) -> Result<Self> {
        for p in &points {
            if p.dim() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        points.sort_unstable();
        points.dedup();
        guard_size(points.len())?;
        Ok(Self { dim, points })
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            points: Vec::new(),
        }
    }

    pub fn singleton(p: LatticePoint) -> Self {
        Self {
            dim: p.dim(),
            points: vec![p],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> {
        self.points.iter()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.dim == other.dim && self.points.iter().all(|p| other.contains(p))
    }

    /// Points of `self` that are not in `other`.
    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self
                .points
                .iter()
                .filter(|p| !other.contains(p))
                .cloned()
                .collect(),
        }
    }

    pub fn translate(&self, v: &LatticePoint) -> Result<PointSet> {
        let points = self
            .points
            .iter()
            .map(|p| p.checked_add(v))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(self.dim, points)
    }
}

fn guard_size(size: usize) -> Result<()> {
    if size > MAX_POINTSET {
        return Err(Error::Resource {
            what: "point set cardinality",
            size: size as u128,
            limit: MAX_POINTSET as u128,
        });
    }
    Ok(())
}

/// Minkowski sum `{s + t}` of two point sets.
pub fn sumset(s: &PointSet, t: &PointSet) -> Result<PointSet> {
    if s.dim != t.dim {
        return Err(Error::Dimension {
            expected: s.dim,
            found: t.dim,
        });
    }
    let pairs = s.len() as u128 * t.len() as u128;
    if pairs > MAX_PAIR_SUMS {
        return Err(Error::Resource {
            what: "pairwise sums",
            size: pairs,
            limit: MAX_PAIR_SUMS,
        });
    }
    let chunks: Vec<Vec<LatticePoint>> = s
        .points
        .par_iter()
        .map(|a| {
            let mut v: Vec<LatticePoint> = t
                .points
                .iter()
                .map(|b| a.checked_add(b))
                .collect::<Result<_>>()?;
            v.sort_unstable();
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let mut points: Vec<LatticePoint> = chunks.into_iter().flatten().collect();
    points.par_sort_unstable();
    points.dedup();
    guard_size(points.len())?;
    Ok(PointSet { dim: s.dim, points })
}

/// `hS = S + ... + S` (h summands), by repeated doubling.
pub fn hfold_sumset(s: &PointSet, h: u64) -> Result<PointSet> {
    if h == 0 {
        return Err(Error::InvalidArgument("h must be positive".into()));
    }
    let mut acc: Option<PointSet> = None;
    let mut power = s.clone();
    let mut k = h;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => power.clone(),
                Some(a) => sumset(&a, &power)?,
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        power = sumset(&power, &power)?;
    }
    Ok(acc.expect("h >= 1 sets at least one bit"))
}

/// Verdict on `h(P ∩ Z^n) = (hP) ∩ Z^n` for one `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdpReport {
    pub h: u64,
    pub holds: bool,
    /// Lattice points of `hP` that are not sums of `h` lattice points of `P`.
    pub witnesses: PointSet,
    /// `|h(P ∩ Z^n)|`
    pub sumset_size: usize,
    /// `|(hP) ∩ Z^n|`
    pub dilate_size: usize,
}

pub fn idp_check(p: &LatticePolytope, h: u64) -> Result<IdpReport> {
    if h == 0 {
        return Err(Error::InvalidArgument("h must be positive".into()));
    }
    let base = PointSet::new(p.dim(), geometry::lattice_points(p)?)?;
    idp_check_with_points(p, &base, h)
}

fn idp_check_with_points(p: &LatticePolytope, base: &PointSet, h: u64) -> Result<IdpReport> {
    let dilated = geometry::dilate(p, h)?;
    let rhs = PointSet::new(p.dim(), geometry::lattice_points(&dilated)?)?;
    let lhs = hfold_sumset(base, h)?;
    if !lhs.is_subset(&rhs) {
        let stray = lhs.difference(&rhs);
        return Err(Error::Internal(format!(
            "sumset escapes the dilate at h = {h}: {:?}",
            stray.points().first()
        )));
    }
    let witnesses = rhs.difference(&lhs);
    Ok(IdpReport {
        h,
        holds: witnesses.is_empty(),
        witnesses,
        sumset_size: lhs.len(),
        dilate_size: rhs.len(),
    })
}

/// Reports for `h = 1..=h_max`.
pub fn idp_scan(p: &LatticePolytope, h_max: u64) -> Result<Vec<IdpReport>> {
    if h_max == 0 {
        return Err(Error::InvalidArgument("h_max must be positive".into()));
    }
    let base = PointSet::new(p.dim(), geometry::lattice_points(p)?)?;
    (1..=h_max)
        .map(|h| idp_check_with_points(p, &base, h).map_err(|e| e.at_h(h)))
        .collect()
}

/// Exhaustive search for `h` points of `pool` (with repetition) summing to
/// `target`. Returns them in nondecreasing order.
pub fn find_summands(pool: &PointSet, h: u64, target: &LatticePoint) -> Result<Option<Vec<LatticePoint>>> {
    if target.dim() != pool.dim() {
        return Err(Error::Dimension {
            expected: pool.dim(),
            found: target.dim(),
        });
    }
    if h == 0 {
        return Err(Error::InvalidArgument("h must be positive".into()));
    }
    if pool.is_empty() {
        return Ok(None);
    }
    let n = pool.dim();
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for p in pool.iter() {
        for (i, &x) in p.coords().iter().enumerate() {
            lo[i] = lo[i].min(x);
            hi[i] = hi[i].max(x);
        }
    }
    let residual: Vec<i128> = target.coords().iter().map(|&x| x as i128).collect();
    let mut chosen = Vec::with_capacity(h as usize);
    let found = search(pool.points(), 0, h, residual, &lo, &hi, &mut chosen);
    Ok(found.then_some(chosen))
}

fn search(
    pool: &[LatticePoint],
    start: usize,
    remaining: u64,
    residual: Vec<i128>,
    lo: &[i64],
    hi: &[i64],
    chosen: &mut Vec<LatticePoint>,
) -> bool {
    if remaining == 0 {
        return residual.iter().all(|&r| r == 0);
    }
    let k = remaining as i128;
    let reachable = residual
        .iter()
        .enumerate()
        .all(|(i, &r)| r >= k * lo[i] as i128 && r <= k * hi[i] as i128);
    if !reachable {
        return false;
    }
    for idx in start..pool.len() {
        let p = &pool[idx];
        let next: Vec<i128> = residual
            .iter()
            .zip(p.coords())
            .map(|(r, &x)| r - x as i128)
            .collect();
        chosen.push(p.clone());
        if search(pool, idx, remaining - 1, next, lo, hi, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
