//! Unimodular simplices and what they buy: every lattice point of an
//! `h`-fold dilate of a unimodular cell is a sum of `h` of its vertices.
//!
//! A lattice simplex `conv{a_0, ..., a_n}` is unimodular when the differences
//! `a_i - a_0` generate `Z^n`, i.e. when `|det(a_1 - a_0, ..., a_n - a_0)| = 1`.

mod cover;
mod decompose;
mod ell;
mod triangulation;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::geometry::{self, LatticePoint, LatticeSimplex};
use crate::linalg::{self, IntMatrix};

pub use cover::{
    check_triangulation_geometry, normalized_volume, verify_cover, CoverDefect, CoverKind,
    CoverStatus, SimplicialCover,
};
pub use decompose::{decompose, decompose_in_simplex, Decomposition};
pub use ell::{find_ell, CertificateOutcome, EllReport, EllRow};
pub use triangulation::{
    attempt_order, find_unimodular_triangulation, placing_triangulation, TriangulationSearch,
};

/// Index of the group generated by `A - A` in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeIndex {
    Finite(BigInt),
    /// The points do not span `R^n` affinely, so the index is infinite.
    Degenerate,
}

impl LatticeIndex {
    pub fn is_unimodular(&self) -> bool {
        matches!(self, LatticeIndex::Finite(v) if v.is_one())
    }

    pub fn value(&self) -> Option<&BigInt> {
        match self {
            LatticeIndex::Finite(v) => Some(v),
            LatticeIndex::Degenerate => None,
        }
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(v) => write!(f, "{v}"),
            LatticeIndex::Degenerate => write!(f, "degenerate"),
        }
    }
}

pub fn lattice_index(s: &LatticeSimplex) -> LatticeIndex {
    LatticeIndex::Finite(s.normalized_volume())
}

/// Lattice index of an arbitrary list of `n + 1` points of `Z^n`.
pub fn lattice_index_of_points(points: &[LatticePoint]) -> Result<LatticeIndex> {
    let n = points.first().map_or(0, LatticePoint::dim);
    if points.len() != n + 1 || !geometry::is_affinely_independent(points)? {
        return Ok(LatticeIndex::Degenerate);
    }
    Ok(lattice_index(&LatticeSimplex::new(points.to_vec())?))
}

pub fn is_unimodular(s: &LatticeSimplex) -> bool {
    lattice_index(s).is_unimodular()
}

/// Hermite form of the difference matrix; its columns are a canonical basis
/// of the group generated by `A - A`, and its diagonal exposes the quotient.
pub fn difference_hnf(s: &LatticeSimplex) -> IntMatrix {
    linalg::hermite_normal_form(&s.difference_matrix()).0
}
