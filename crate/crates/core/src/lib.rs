//! Exact certification of the integer decomposition property
//! `h(P ∩ Z^n) = (hP) ∩ Z^n` for lattice polytopes.
//!
//! * [`linalg`]: Bareiss determinants, rational solves, Hermite normal form.
//! * [`geometry`]: lattice points, simplices, polytopes, exact membership,
//!   dilation and lattice-point enumeration.
//! * [`sumset`]: brute-force `h`-fold sumsets and the decomposition-property
//!   oracle.
//! * [`unimodular`]: lattice index, constructive decomposition inside
//!   unimodular simplices, triangulation search and certification, and the
//!   dilation search.
//! * [`cli`]: the `latticeforge` command-line front end.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod sumset;
pub mod unimodular;

pub use error::{Error, Result};
pub use geometry::{LatticePoint, LatticePolytope, LatticeSimplex, RatPoint};
pub use linalg::{IntMatrix, RatVector};
pub use sumset::{IdpReport, PointSet};
