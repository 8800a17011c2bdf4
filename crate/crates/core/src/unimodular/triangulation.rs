use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CoverKind, SimplicialCover};
use crate::error::{Error, Result};
use crate::geometry::{self, AffineForm, LatticePoint, LatticePolytope, LatticeSimplex};

/// A simplex with its scaled barycentric forms cached.
#[derive(Clone, Debug)]
pub(crate) struct Cell {
    simplex: LatticeSimplex,
    forms: Vec<AffineForm>,
}

impl Cell {
    pub(crate) fn new(simplex: LatticeSimplex) -> Self {
        let forms = simplex.barycentric_forms();
        Self { simplex, forms }
    }

    pub(crate) fn simplex(&self) -> &LatticeSimplex {
        &self.simplex
    }

    /// `forms()[i]` vanishes on the facet opposite vertex `i`, positive inside.
    pub(crate) fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub(crate) fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let v = self.simplex.vertices();
        let mut lo = v[0].coords().to_vec();
        let mut hi = lo.clone();
        for p in &v[1..] {
            for (i, &x) in p.coords().iter().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        (lo, hi)
    }

    fn facet(&self, opposite: usize) -> Vec<LatticePoint> {
        self.simplex
            .vertices()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != opposite)
            .map(|(_, v)| v.clone())
            .collect()
    }

    fn cone(&self, opposite: usize, apex: &LatticePoint) -> Result<Cell> {
        let mut v = self.facet(opposite);
        v.push(apex.clone());
        Ok(Cell::new(LatticeSimplex::new(v)?))
    }
}

/// Triangulates the points in the given order.
///
/// The first affinely independent `n + 1` points form the initial cell.
/// Each later point outside the current hull is placed: it is coned over
/// every boundary facet it sees. A later point already inside the hull is
/// inserted by stellar subdivision of the cells containing it, so every
/// point ends up as a vertex.
pub(crate) fn place_points(points: &[LatticePoint]) -> Result<Vec<LatticeSimplex>> {
    let n = points.first().ok_or(Error::Empty)?.dim();
    let mut seed: Vec<LatticePoint> = vec![points[0].clone()];
    let mut used = vec![false; points.len()];
    used[0] = true;
    for (i, p) in points.iter().enumerate().skip(1) {
        if seed.len() == n + 1 {
            break;
        }
        seed.push(p.clone());
        if geometry::is_affinely_independent(&seed)? {
            used[i] = true;
        } else {
            seed.pop();
        }
    }
    if seed.len() < n + 1 {
        return Err(Error::Degenerate {
            affine_dim: seed.len() - 1,
            ambient_dim: n,
        });
    }

    let mut cells = vec![Cell::new(LatticeSimplex::new(seed)?)];
    for (i, p) in points.iter().enumerate() {
        if used[i] {
            continue;
        }
        let containing: Vec<usize> = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.forms.iter().all(|f| f.sign_at(p.coords()).is_ge()))
            .map(|(k, _)| k)
            .collect();
        if containing.is_empty() {
            let added = visible_cones(&cells, p)?;
            cells.extend(added);
        } else {
            let mut next = Vec::with_capacity(cells.len() + containing.len() * n);
            for (k, cell) in cells.into_iter().enumerate() {
                if !containing.contains(&k) {
                    next.push(cell);
                    continue;
                }
                for (j, f) in cell.forms.iter().enumerate() {
                    if f.sign_at(p.coords()).is_gt() {
                        next.push(cell.cone(j, p)?);
                    }
                }
            }
            cells = next;
        }
    }
    Ok(cells.into_iter().map(|c| c.simplex).collect())
}

/// Cones from `p` over the boundary facets that `p` lies strictly beyond.
fn visible_cones(cells: &[Cell], p: &LatticePoint) -> Result<Vec<Cell>> {
    let mut counts: HashMap<Vec<LatticePoint>, usize> = HashMap::new();
    for c in cells {
        for j in 0..c.forms.len() {
            let mut key = c.facet(j);
            key.sort();
            *counts.entry(key).or_default() += 1;
        }
    }
    let mut out = Vec::new();
    for c in cells {
        for (j, f) in c.forms.iter().enumerate() {
            if !f.sign_at(p.coords()).is_lt() {
                continue;
            }
            let mut key = c.facet(j);
            key.sort();
            if counts[&key] == 1 {
                out.push(c.cone(j, p)?);
            }
        }
    }
    Ok(out)
}

/// Placing triangulation of all lattice points of `P`, visited in `order`
/// (a permutation of indices into the lexicographically sorted lattice points).
pub fn placing_triangulation(p: &LatticePolytope, order: &[usize]) -> Result<SimplicialCover> {
    if !p.is_full_dimensional() {
        return Err(Error::Degenerate {
            affine_dim: p.affine_dim(),
            ambient_dim: p.dim(),
        });
    }
    let points = geometry::lattice_points(p)?;
    placing_from_points(p, &points, order)
}

fn placing_from_points(
    p: &LatticePolytope,
    points: &[LatticePoint],
    order: &[usize],
) -> Result<SimplicialCover> {
    let mut seen = vec![false; points.len()];
    if order.len() != points.len() {
        return Err(Error::InvalidArgument(format!(
            "order has {} entries for {} lattice points",
            order.len(),
            points.len()
        )));
    }
    for &i in order {
        if i >= points.len() || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidArgument("order is not a permutation".into()));
        }
    }
    let ordered: Vec<LatticePoint> = order.iter().map(|&i| points[i].clone()).collect();
    let cells = place_points(&ordered)?;
    Ok(SimplicialCover::new(p.clone(), cells, CoverKind::Triangulation))
}

/// Visiting order for attempt `attempt`: the identity first, then shuffles
/// drawn from a stream determined by `(seed, attempt)` alone.
pub fn attempt_order(len: usize, attempt: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    if attempt > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        order.shuffle(&mut rng);
    }
    order
}

#[derive(Clone, Debug)]
pub struct TriangulationSearch {
    /// A certified triangulation into unimodular cells, if one was found.
    pub cover: Option<SimplicialCover>,
    /// Index of the successful attempt.
    pub attempt: Option<usize>,
    pub attempts_made: usize,
    /// True when no unimodular triangulation exists at all: the lattice
    /// points are exactly the vertices of a single non-unimodular simplex,
    /// which is then the only triangulation.
    pub proven_none: bool,
}

/// Tries placing triangulations over `attempts` visiting orders and returns
/// the first one whose cells are all unimodular, certified.
///
/// A `None` cover is not a proof that no unimodular triangulation exists,
/// except when `proven_none` is set.
pub fn find_unimodular_triangulation(
    p: &LatticePolytope,
    attempts: usize,
    seed: u64,
) -> Result<TriangulationSearch> {
    if attempts == 0 {
        return Err(Error::InvalidArgument("attempts must be positive".into()));
    }
    if !p.is_full_dimensional() {
        return Err(Error::Degenerate {
            affine_dim: p.affine_dim(),
            ambient_dim: p.dim(),
        });
    }
    let points = geometry::lattice_points(p)?;
    let unique = points.len() == p.dim() + 1;
    let tries = if unique { 1 } else { attempts };
    for attempt in 0..tries {
        let order = attempt_order(points.len(), attempt, seed);
        let cover = placing_from_points(p, &points, &order)?;
        if !cover.all_unimodular() {
            continue;
        }
        let cover = cover.certify();
        if !cover.is_certified() {
            return Err(Error::Internal(format!(
                "placing triangulation failed certification: {:?}",
                cover.status
            )));
        }
        return Ok(TriangulationSearch {
            cover: Some(cover),
            attempt: Some(attempt),
            attempts_made: attempt + 1,
            proven_none: false,
        });
    }
    Ok(TriangulationSearch {
        cover: None,
        attempt: None,
        attempts_made: tries,
        proven_none: unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unimodular::{check_triangulation_geometry, is_unimodular, CoverStatus};
    use num_bigint::BigInt;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn identity(p: &LatticePolytope) -> Vec<usize> {
        (0..geometry::lattice_points(p).unwrap().len()).collect()
    }

    fn a2() -> LatticePolytope {
        LatticePolytope::new(vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 2])])
            .unwrap()
    }

    #[test]
    fn unit_square_lexicographic() {
        let sq = LatticePolytope::unit_cube(2).unwrap();
        let c = placing_triangulation(&sq, &identity(&sq)).unwrap();
        assert_eq!(c.cells.len(), 2);
        assert!(check_triangulation_geometry(&c).is_empty());
    }

    #[test]
    fn a2_is_its_own_triangulation() {
        let p = a2();
        let c = placing_triangulation(&p, &identity(&p)).unwrap();
        assert_eq!(c.cells.len(), 1);
        let mut v = c.cells[0].vertices().to_vec();
        v.sort();
        assert_eq!(v, p.sorted_vertices());
        assert!(check_triangulation_geometry(&c).is_empty());
    }

    #[test]
    fn unit_cube_lexicographic() {
        let cube = LatticePolytope::unit_cube(3).unwrap();
        let c = placing_triangulation(&cube, &identity(&cube)).unwrap();
        assert_eq!(c.cells.len(), 6);
        for cell in &c.cells {
            assert_eq!(cell.normalized_volume(), BigInt::from(1));
        }
        assert_eq!(c.cells_volume(), BigInt::from(6));
        assert!(check_triangulation_geometry(&c).is_empty());
    }

    #[test]
    fn shuffled_orders_are_valid_triangulations() {
        let p = geometry::dilate(&a2(), 2).unwrap();
        let n = geometry::lattice_points(&p).unwrap().len();
        for attempt in 0..6 {
            let c = placing_triangulation(&p, &attempt_order(n, attempt, 7)).unwrap();
            assert!(check_triangulation_geometry(&c).is_empty(), "attempt {attempt}");
            // Every lattice point is used.
            let mut used: Vec<LatticePoint> =
                c.cells.iter().flat_map(|s| s.vertices().to_vec()).collect();
            used.sort();
            used.dedup();
            assert_eq!(used.len(), n);
        }
    }

    #[test]
    fn interior_point_is_inserted_stellarly() {
        let tri = LatticePolytope::new(vec![pt(&[0, 0]), pt(&[3, 0]), pt(&[0, 3])]).unwrap();
        let pts = geometry::lattice_points(&tri).unwrap();
        // Visit the three corners first, then everything else.
        let corners: Vec<usize> = [pt(&[0, 0]), pt(&[3, 0]), pt(&[0, 3])]
            .iter()
            .map(|c| pts.iter().position(|p| p == c).unwrap())
            .collect();
        let mut order = corners.clone();
        order.extend((0..pts.len()).filter(|i| !corners.contains(i)));
        let c = placing_triangulation(&tri, &order).unwrap();
        assert_eq!(c.cells.len(), 9);
        assert!(c.cells.iter().all(is_unimodular));
        assert!(check_triangulation_geometry(&c).is_empty());
    }

    #[test]
    fn bad_orders_and_degenerate_input() {
        let sq = LatticePolytope::unit_cube(2).unwrap();
        assert!(placing_triangulation(&sq, &[0, 1, 2]).is_err());
        assert!(placing_triangulation(&sq, &[0, 1, 2, 2]).is_err());
        let seg = LatticePolytope::new(vec![pt(&[0, 0]), pt(&[2, 2])]).unwrap();
        assert!(matches!(
            placing_triangulation(&seg, &[0, 1, 2]),
            Err(Error::Degenerate { affine_dim: 1, ambient_dim: 2 })
        ));
        assert!(find_unimodular_triangulation(&seg, 3, 0).is_err());
    }

    #[test]
    fn search_examples() {
        let std3 = LatticeSimplex::standard(3).unwrap().hull();
        let s = find_unimodular_triangulation(&std3, 1, 0).unwrap();
        let cover = s.cover.unwrap();
        assert_eq!(cover.cells.len(), 1);
        assert_eq!(cover.status, CoverStatus::Certified);

        let sq = LatticePolytope::unit_cube(2).unwrap();
        let s = find_unimodular_triangulation(&sq, 1, 0).unwrap();
        let cover = s.cover.unwrap();
        assert_eq!(cover.cells.len(), 2);
        assert!(cover.all_unimodular());

        let s = find_unimodular_triangulation(&a2(), 10, 0).unwrap();
        assert!(s.cover.is_none());
        assert!(s.proven_none);
        assert_eq!(s.attempts_made, 1);
    }

    #[test]
    fn attempt_orders_are_reproducible() {
        assert_eq!(attempt_order(5, 0, 99), vec![0, 1, 2, 3, 4]);
        assert_eq!(attempt_order(20, 3, 1), attempt_order(20, 3, 1));
        assert_ne!(attempt_order(20, 3, 1), attempt_order(20, 4, 1));
    }
}
