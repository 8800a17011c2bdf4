use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::triangulation::{place_points, Cell};
use super::lattice_index;
use crate::error::Result;
use crate::geometry::{self, lp, LatticePolytope, LatticeSimplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverKind {
    /// Cells with pairwise disjoint interiors.
    Triangulation,
    /// Cells may overlap.
    GeneralCover,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CoverStatus {
    /// Exactly verified: unimodular cells inside the target, volumes add
    /// up, interiors pairwise disjoint.
    Certified,
    /// Cells are unimodular and inside the target; coverage itself was not
    /// verified.
    VerticesOnly,
    /// Not verified, or verification failed for the listed reasons.
    Uncertified { defects: Vec<CoverDefect> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "defect", rename_all = "kebab-case")]
pub enum CoverDefect {
    NoCells,
    DimensionMismatch { cell: usize },
    NotUnimodular { cell: usize, index: String },
    CellOutside { cell: usize },
    DegenerateTarget,
    /// Normalized volumes (`n!` times Euclidean volume).
    VolumeMismatch { cells: String, target: String },
    Overlap { first: usize, second: usize },
}

/// Simplices claimed to cover `target`.
#[derive(Clone, Debug)]
pub struct SimplicialCover {
    pub target: LatticePolytope,
    pub cells: Vec<LatticeSimplex>,
    pub kind: CoverKind,
    pub status: CoverStatus,
}

impl SimplicialCover {
    /// A cover that has not been verified yet.
    pub fn new(target: LatticePolytope, cells: Vec<LatticeSimplex>, kind: CoverKind) -> Self {
        Self {
            target,
            cells,
            kind,
            status: CoverStatus::Uncertified { defects: Vec::new() },
        }
    }

    /// Runs [`verify_cover`] and records the outcome.
    pub fn certify(mut self) -> Self {
        self.status = verify_cover(&self);
        self
    }

    pub fn is_certified(&self) -> bool {
        self.status == CoverStatus::Certified
    }

    pub fn all_unimodular(&self) -> bool {
        self.cells.iter().all(super::is_unimodular)
    }

    pub fn cells_volume(&self) -> BigInt {
        self.cells.iter().map(LatticeSimplex::normalized_volume).sum()
    }
}

pub fn verify_cover(c: &SimplicialCover) -> CoverStatus {
    let mut defects = Vec::new();
    for (i, cell) in c.cells.iter().enumerate() {
        if cell.dim() != c.target.dim() {
            continue;
        }
        let index = lattice_index(cell);
        if !index.is_unimodular() {
            defects.push(CoverDefect::NotUnimodular {
                cell: i,
                index: index.to_string(),
            });
        }
    }
    match c.kind {
        CoverKind::GeneralCover => {
            defects.extend(containment_defects(c));
            if defects.is_empty() {
                CoverStatus::VerticesOnly
            } else {
                CoverStatus::Uncertified { defects }
            }
        }
        CoverKind::Triangulation => {
            defects.extend(check_triangulation_geometry(c));
            if defects.is_empty() {
                CoverStatus::Certified
            } else {
                CoverStatus::Uncertified { defects }
            }
        }
    }
}

fn containment_defects(c: &SimplicialCover) -> Vec<CoverDefect> {
    let mut defects = Vec::new();
    if c.cells.is_empty() {
        defects.push(CoverDefect::NoCells);
    }
    for (i, cell) in c.cells.iter().enumerate() {
        if cell.dim() != c.target.dim() {
            defects.push(CoverDefect::DimensionMismatch { cell: i });
            continue;
        }
        let inside = cell
            .vertices()
            .iter()
            .all(|v| geometry::contains_lattice(&c.target, v).unwrap_or(false));
        if !inside {
            defects.push(CoverDefect::CellOutside { cell: i });
        }
    }
    defects
}

/// Triangulation checks without unimodularity: cells inside the target,
/// normalized volumes summing to the target's, pairwise disjoint interiors.
pub fn check_triangulation_geometry(c: &SimplicialCover) -> Vec<CoverDefect> {
    let mut defects = containment_defects(c);
    if !defects.is_empty() {
        return defects;
    }
    if !c.target.is_full_dimensional() {
        defects.push(CoverDefect::DegenerateTarget);
        return defects;
    }
    let target = match normalized_volume(&c.target) {
        Ok(v) => v,
        Err(_) => {
            defects.push(CoverDefect::DegenerateTarget);
            return defects;
        }
    };
    let total = c.cells_volume();
    if total != target {
        defects.push(CoverDefect::VolumeMismatch {
            cells: total.to_string(),
            target: target.to_string(),
        });
    }
    let cells: Vec<Cell> = c.cells.iter().cloned().map(Cell::new).collect();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if interiors_overlap(&cells[i], &cells[j]) {
                defects.push(CoverDefect::Overlap { first: i, second: j });
            }
        }
    }
    defects
}

/// `n!` times the Euclidean volume, via a placing triangulation of the
/// vertices; zero for lower-dimensional polytopes.
pub fn normalized_volume(p: &LatticePolytope) -> Result<BigInt> {
    if !p.is_full_dimensional() {
        return Ok(BigInt::zero());
    }
    let cells = place_points(&p.sorted_vertices())?;
    Ok(cells.iter().map(LatticeSimplex::normalized_volume).sum())
}

/// Do two full-dimensional simplices share an interior point?
pub(crate) fn interiors_overlap(a: &Cell, b: &Cell) -> bool {
    let (alo, ahi) = a.bounding_box();
    let (blo, bhi) = b.bounding_box();
    for i in 0..alo.len() {
        if ahi[i] <= blo[i] || bhi[i] <= alo[i] {
            return false;
        }
    }
    // A facet hyperplane of either cell with the other cell weakly beyond it.
    for (x, y) in [(a, b), (b, a)] {
        for f in x.forms() {
            if y.simplex().vertices().iter().all(|v| f.sign_at(v.coords()).is_le()) {
                return false;
            }
        }
    }
    // maximize ε s.t. every barycentric form of both cells is >= ε, ε <= 1.
    // Variables: x⁺ (n), x⁻ (n), ε, one slack per form, one slack for ε <= 1.
    let n = a.simplex().dim();
    let forms: Vec<_> = a.forms().iter().chain(b.forms()).collect();
    let m = forms.len();
    let vars = 2 * n + 1 + m + 1;
    let mut rows = Vec::with_capacity(m + 1);
    let mut rhs = Vec::with_capacity(m + 1);
    for (k, f) in forms.iter().enumerate() {
        let mut row = vec![BigRational::zero(); vars];
        for (i, c) in f.coeffs().iter().enumerate() {
            row[i] = BigRational::from_integer(c.clone());
            row[n + i] = -BigRational::from_integer(c.clone());
        }
        row[2 * n] = -BigRational::one();
        row[2 * n + 1 + k] = -BigRational::one();
        rows.push(row);
        rhs.push(-BigRational::from_integer(f.constant().clone()));
    }
    let mut cap = vec![BigRational::zero(); vars];
    cap[2 * n] = BigRational::one();
    cap[vars - 1] = BigRational::one();
    rows.push(cap);
    rhs.push(BigRational::one());
    let mut objective = vec![BigRational::zero(); vars];
    objective[2 * n] = BigRational::one();
    match lp::maximize(&rows, &rhs, &objective) {
        lp::LpOutcome::Optimal { value, .. } => value.is_positive(),
        _ => false,
    }
}
