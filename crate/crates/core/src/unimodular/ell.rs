use serde::{Deserialize, Serialize};

use super::find_unimodular_triangulation;
use crate::error::{Error, Result};
use crate::geometry::{self, LatticePolytope};
use crate::sumset::{idp_scan, IdpReport};

/// Outcome of the unimodular triangulation search on `ℓP`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CertificateOutcome {
    /// A certified unimodular triangulation: the property holds for every `h`.
    Certified { attempt: usize, cells: usize },
    /// No unimodular triangulation exists.
    ProvenNone,
    /// The search gave up; nothing is claimed.
    Unknown { attempts: usize },
}

impl CertificateOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, CertificateOutcome::Certified { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllRow {
    pub ell: u64,
    /// `|ℓP ∩ Z^n|`
    pub lattice_points: usize,
    pub certificate: CertificateOutcome,
    /// Oracle verdicts on `ℓP` for `h = 1..=h_max`.
    pub idp: Vec<IdpReport>,
    /// Whether the oracle found no witness for any `h ≤ h_max`.
    pub oracle_holds: bool,
    /// A certificate must never be contradicted by the oracle.
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllReport {
    /// Smallest `ℓ ≤ ell_max` whose dilate has a certified unimodular
    /// triangulation, so that `ℓP` has the property for every `h`.
    pub ell: Option<u64>,
    pub ell_max: u64,
    pub h_max: u64,
    pub attempts: usize,
    pub seed: u64,
    pub rows: Vec<EllRow>,
}

impl EllReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agrees)
    }

    pub fn row(&self, ell: u64) -> Option<&EllRow> {
        self.rows.iter().find(|r| r.ell == ell)
    }
}

/// For `ℓ = 1..=ell_max`, searches for a unimodular triangulation of `ℓP`
/// and runs the brute-force oracle on `ℓP` up to `h_max`.
///
/// Every row is computed, including those after the first certified `ℓ`,
/// so the two kinds of evidence can be compared throughout.
pub fn find_ell(
    p: &LatticePolytope,
    ell_max: u64,
    h_max: u64,
    attempts: usize,
    seed: u64,
) -> Result<EllReport> {
    if ell_max == 0 || h_max == 0 || attempts == 0 {
        return Err(Error::InvalidArgument(
            "ell_max, h_max and attempts must be positive".into(),
        ));
    }
    let mut rows = Vec::with_capacity(ell_max as usize);
    for ell in 1..=ell_max {
        let row = ell_row(p, ell, h_max, attempts, seed).map_err(|e| Error::AtEll {
            ell,
            source: Box::new(e),
        })?;
        rows.push(row);
    }
    let ell = rows
        .iter()
        .find(|r| r.certificate.is_certified())
        .map(|r| r.ell);
    Ok(EllReport {
        ell,
        ell_max,
        h_max,
        attempts,
        seed,
        rows,
    })
}

fn ell_row(p: &LatticePolytope, ell: u64, h_max: u64, attempts: usize, seed: u64) -> Result<EllRow> {
    let q = geometry::dilate(p, ell)?;
    let search = find_unimodular_triangulation(&q, attempts, seed)?;
    let certificate = match (&search.cover, search.attempt) {
        (Some(c), Some(a)) => CertificateOutcome::Certified {
            attempt: a,
            cells: c.cells.len(),
        },
        _ if search.proven_none => CertificateOutcome::ProvenNone,
        _ => CertificateOutcome::Unknown {
            attempts: search.attempts_made,
        },
    };
    let idp = idp_scan(&q, h_max)?;
    let oracle_holds = idp.iter().all(|r| r.holds);
    let lattice_points = idp.first().map_or(0, |r| r.dilate_size);
    // A certificate proves the property; a proof of nonexistence of a
    // unimodular triangulation proves nothing about the property itself.
    let agrees = !certificate.is_certified() || oracle_holds;
    Ok(EllRow {
        ell,
        lattice_points,
        certificate,
        idp,
        oracle_holds,
        agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{LatticePoint, LatticeSimplex};

    fn a2() -> LatticePolytope {
        let pt = |c: &[i64]| LatticePoint::new(c.to_vec());
        LatticePolytope::new(vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 2])])
            .unwrap()
    }

    #[test]
    fn standard_simplex_needs_no_dilation() {
        let p = LatticeSimplex::standard(3).unwrap().hull();
        let r = find_ell(&p, 2, 2, 4, 0).unwrap();
        assert_eq!(r.ell, Some(1));
        assert!(r.all_agree());
        assert_eq!(r.rows.len(), 2);
    }

    #[test]
    fn cube_needs_no_dilation() {
        let r = find_ell(&LatticePolytope::unit_cube(3).unwrap(), 1, 2, 4, 0).unwrap();
        assert_eq!(r.ell, Some(1));
        assert_eq!(
            r.rows[0].certificate,
            CertificateOutcome::Certified { attempt: 0, cells: 6 }
        );
    }

    #[test]
    fn a2_first_row_fails_at_h2() {
        let r = find_ell(&a2(), 1, 3, 8, 0).unwrap();
        let row = &r.rows[0];
        assert_eq!(row.certificate, CertificateOutcome::ProvenNone);
        assert!(row.idp[0].holds);
        assert!(!row.idp[1].holds);
        assert_eq!(row.idp[1].witnesses.points(), &[LatticePoint::new(vec![1, 1, 1])]);
        assert!(!row.oracle_holds);
        assert!(row.agrees);
        assert_eq!(row.lattice_points, 4);
    }

    #[test]
    fn zero_arguments_are_rejected() {
        let p = a2();
        assert!(find_ell(&p, 0, 1, 1, 0).is_err());
        assert!(find_ell(&p, 1, 0, 1, 0).is_err());
        assert!(find_ell(&p, 1, 1, 0, 0).is_err());
    }
}
