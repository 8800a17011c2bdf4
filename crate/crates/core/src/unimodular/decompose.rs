use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{lattice_index, CoverStatus, SimplicialCover};
use crate::error::{Error, Result};
use crate::geometry::{self, LatticePoint, LatticePolytope, LatticeSimplex, RatPoint};
use crate::linalg;

/// A lattice point of `h·Δ` written as a sum of `h` vertices of `Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub point: LatticePoint,
    pub h: u64,
    pub cell: LatticeSimplex,
    /// `(a_i, w_i)` for every vertex of `cell`, in vertex order.
    pub weights: Vec<(LatticePoint, u64)>,
    /// The `h` summands, sorted.
    pub parts: Vec<LatticePoint>,
}

impl Decomposition {
    /// Vertices with positive weight.
    pub fn support(&self) -> Vec<LatticePoint> {
        self.weights
            .iter()
            .filter(|(_, w)| *w > 0)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Checks every structural invariant: `h` parts, weights summing to `h`,
    /// exact recombination, and an affinely independent support.
    pub fn is_consistent(&self) -> bool {
        let total: u64 = self.weights.iter().map(|(_, w)| w).sum();
        if total != self.h || self.parts.len() as u64 != self.h {
            return false;
        }
        let Ok(sum) = sum_points(&self.parts, self.point.dim()) else {
            return false;
        };
        let support = self.support();
        sum == self.point
            && self.weights.iter().all(|(v, _)| self.cell.vertices().contains(v))
            && geometry::is_affinely_independent(&support).unwrap_or(false)
    }
}

fn sum_points(points: &[LatticePoint], dim: usize) -> Result<LatticePoint> {
    points
        .iter()
        .try_fold(LatticePoint::origin(dim), |acc, p| acc.checked_add(p))
}

/// Writes `p ∈ h·Δ ∩ Z^n` as `Σ w_i a_i` with `w_i ∈ N`, `Σ w_i = h`.
///
/// Since the `a_i - a_0` form a basis of `Z^n`, the integer solution of
/// `p - h·a_0 = Σ_{i≥1} w_i (a_i - a_0)` exists and equals the barycentric
/// coordinates of `p` scaled by `h`, hence is nonnegative.
pub fn decompose_in_simplex(s: &LatticeSimplex, p: &LatticePoint, h: u64) -> Result<Decomposition> {
    if h == 0 {
        return Err(Error::InvalidArgument("h must be positive".into()));
    }
    if p.dim() != s.dim() {
        return Err(Error::Dimension {
            expected: s.dim(),
            found: p.dim(),
        });
    }
    let index = lattice_index(s);
    if !index.is_unimodular() {
        return Err(Error::NotUnimodular {
            index: index.to_string(),
        });
    }
    let t = s.barycentric(&RatPoint::scaled_down(p, h))?;
    if !t.all_nonnegative() {
        return Err(Error::PointOutside);
    }

    let a0 = &s.vertices()[0];
    let hk = BigInt::from(h);
    let rhs: Vec<BigInt> = p
        .to_bigints()
        .into_iter()
        .zip(a0.to_bigints())
        .map(|(x, a)| x - &hk * a)
        .collect();
    let w = linalg::integral_solution(&s.difference_matrix(), &rhs)?
        .ok_or_else(|| Error::Internal("unimodular system without integer solution".into()))?;
    let w0 = &hk - w.iter().sum::<BigInt>();

    let mut weights = Vec::with_capacity(s.dim() + 1);
    for (v, wi) in s.vertices().iter().zip(std::iter::once(&w0).chain(&w)) {
        if wi.is_negative() {
            return Err(Error::Internal(format!("negative weight {wi} for {v}")));
        }
        let wi = wi.to_u64().ok_or(Error::Overflow)?;
        weights.push((v.clone(), wi));
    }
    let mut parts: Vec<LatticePoint> = weights
        .iter()
        .flat_map(|(v, w)| std::iter::repeat_n(v.clone(), *w as usize))
        .collect();
    parts.sort();

    let d = Decomposition {
        point: p.clone(),
        h,
        cell: s.clone(),
        weights,
        parts,
    };
    if sum_points(&d.parts, p.dim())? != *p {
        return Err(Error::Internal("decomposition does not recombine".into()));
    }
    Ok(d)
}

/// Writes `p ∈ hP ∩ Z^n` as a sum of `h` lattice points of `P`, using the
/// first cell of a certified unimodular cover that contains `p / h`.
pub fn decompose(
    polytope: &LatticePolytope,
    cover: &SimplicialCover,
    p: &LatticePoint,
    h: u64,
) -> Result<Decomposition> {
    if h == 0 {
        return Err(Error::InvalidArgument("h must be positive".into()));
    }
    if cover.status != CoverStatus::Certified {
        return Err(Error::Uncertified);
    }
    if cover.target != *polytope {
        return Err(Error::InvalidArgument(
            "cover was certified for a different polytope".into(),
        ));
    }
    let q = RatPoint::scaled_down(p, h);
    if !geometry::contains(polytope, &q)? {
        return Err(Error::PointOutside);
    }
    for cell in &cover.cells {
        if cell.contains(&q)? {
            return decompose_in_simplex(cell, p, h);
        }
    }
    Err(Error::NoCell)
}
