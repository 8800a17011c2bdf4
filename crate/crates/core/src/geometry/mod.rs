//! Lattice points, simplices and polytopes.

pub mod halfspace;
pub mod lp;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, RatVector};

pub use halfspace::{AffineForm, HalfspaceSystem};

/// Largest ambient dimension accepted for polytopes.
pub const MAX_AMBIENT_DIM: usize = 8;

/// Largest integer bounding box scanned by [`lattice_points`].
pub const MAX_BOX_POINTS: u128 = 10_000_000;

/// A point of `Z^n`. Ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        Self(coords)
    }
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    /// The standard basis vector `e_{i+1}`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut c = vec![0; dim];
        c[i] = 1;
        Self(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(Self)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(Self)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(Self)
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }

    pub fn to_rational(&self) -> RatPoint {
        RatPoint(
            self.0
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }
}

/// A point of `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoint(Vec<BigRational>);

impl RatPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self(coords)
    }

    /// `p / h`, the point whose `h`-fold dilate is `p`.
    pub fn scaled_down(p: &LatticePoint, h: u64) -> Self {
        let d = BigInt::from(h);
        Self(
            p.coords()
                .iter()
                .map(|&x| BigRational::new(x.into(), d.clone()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn to_lattice(&self) -> Result<LatticePoint> {
        self.0
            .iter()
            .map(|x| {
                if !x.is_integer() {
                    return Err(Error::NotLattice);
                }
                i64::try_from(x.numer()).map_err(|_| Error::Overflow)
            })
            .collect::<Result<_>>()
            .map(LatticePoint)
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", RatVector::new(self.0.clone()))
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

fn uniform_dim(points: &[LatticePoint]) -> Result<usize> {
    let n = points.first().ok_or(Error::Empty)?.dim();
    for p in points {
        check_dim(n, p.dim())?;
    }
    Ok(n)
}

fn difference_rows(points: &[LatticePoint]) -> Vec<Vec<BigInt>> {
    let base = &points[0];
    points[1..]
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .zip(base.coords())
                .map(|(a, b)| BigInt::from(*a) - BigInt::from(*b))
                .collect()
        })
        .collect()
}

/// Dimension of the affine hull of a nonempty point list.
pub fn affine_dimension(points: &[LatticePoint]) -> Result<usize> {
    uniform_dim(points)?;
    Ok(linalg::rank(&difference_rows(points)))
}

pub fn is_affinely_independent(points: &[LatticePoint]) -> Result<bool> {
    let n = uniform_dim(points)?;
    if points.len() > n + 1 {
        return Ok(false);
    }
    Ok(affine_dimension(points)? == points.len() - 1)
}

/// The simplex spanned by `n + 1` affinely independent lattice points of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeSimplex {
    vertices: Vec<LatticePoint>,
}

impl LatticeSimplex {
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        let n = uniform_dim(&vertices)?;
        if n == 0 || n > MAX_AMBIENT_DIM {
            return Err(Error::TooLarge {
                what: "simplex dimension",
                limit: MAX_AMBIENT_DIM as u64,
            });
        }
        check_dim(n + 1, vertices.len())?;
        if !is_affinely_independent(&vertices)? {
            return Err(Error::AffinelyDependent);
        }
        Ok(Self { vertices })
    }

    /// The standard simplex `conv{0, e_1, ..., e_n}`.
    pub fn standard(n: usize) -> Result<Self> {
        let mut v = vec![LatticePoint::origin(n)];
        v.extend((0..n).map(|i| LatticePoint::unit(n, i)));
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// The `n x n` matrix whose columns are `a_i - a_0`.
    pub fn difference_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&difference_rows(&self.vertices))
            .expect("simplex dimension is within matrix limits")
    }

    /// Signed `det(a_1 - a_0, ..., a_n - a_0)`.
    pub fn signed_volume(&self) -> BigInt {
        linalg::determinant(&self.difference_matrix()).expect("difference matrix is square")
    }

    /// Normalized volume `n! vol`, equal to `|det|`.
    pub fn normalized_volume(&self) -> BigInt {
        self.signed_volume().abs()
    }

    pub fn hull(&self) -> LatticePolytope {
        LatticePolytope::from_vertices_unchecked(self.vertices.clone())
    }

    pub fn dilate(&self, h: u64) -> Result<Self> {
        let k = dilation_factor(h)?;
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.checked_scale(k))
            .collect::<Result<_>>()?;
        Ok(Self { vertices })
    }

    /// Barycentric coordinates `(t_0, ..., t_n)` of `q`.
    pub fn barycentric(&self, q: &RatPoint) -> Result<RatVector> {
        check_dim(self.dim(), q.dim())?;
        let d = self.difference_matrix();
        let base = &self.vertices[0];
        let rows: Vec<Vec<BigRational>> = (0..d.rows())
            .map(|i| {
                d.row(i)
                    .iter()
                    .cloned()
                    .map(BigRational::from_integer)
                    .chain(std::iter::once(
                        &q.coords()[i] - BigRational::from_integer(base.coords()[i].into()),
                    ))
                    .collect()
            })
            .collect();
        let rest = linalg::solve_augmented(rows)?;
        let t0 = BigRational::one() - rest.iter().sum::<BigRational>();
        let mut t = Vec::with_capacity(rest.len() + 1);
        t.push(t0);
        t.extend(rest);
        Ok(RatVector::new(t))
    }

    pub fn contains(&self, q: &RatPoint) -> Result<bool> {
        Ok(self.barycentric(q)?.all_nonnegative())
    }

    /// Integer affine forms `f_i` with `f_i(x) = |det| * t_i(x)`; `f_i`
    /// vanishes on the facet opposite `a_i` and is positive at `a_i`.
    pub fn barycentric_forms(&self) -> Vec<AffineForm> {
        let d = self.difference_matrix();
        let n = self.dim();
        let det = linalg::determinant(&d).expect("square");
        let abs_det = det.abs();
        // Rows of |det| * D^{-1}; integral because D^{-1} = adj(D) / det.
        let mut inv_rows: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n); n];
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            let col = linalg::solve_rational(&d, &e).expect("nonsingular");
            for (i, x) in col.iter().enumerate() {
                let scaled = x * BigRational::from_integer(abs_det.clone());
                debug_assert!(scaled.is_integer());
                inv_rows[i].push(scaled.to_integer());
            }
        }
        let base = self.vertices[0].to_bigints();
        let mut forms = Vec::with_capacity(n + 1);
        let mut sum_coeffs = vec![BigInt::zero(); n];
        let mut sum_const = BigInt::zero();
        for row in &inv_rows {
            let constant: BigInt = -row.iter().zip(&base).map(|(a, b)| a * b).sum::<BigInt>();
            for (s, a) in sum_coeffs.iter_mut().zip(row) {
                *s += a;
            }
            sum_const += &constant;
            forms.push(AffineForm::new(row.clone(), constant));
        }
        let first = AffineForm::new(
            sum_coeffs.into_iter().map(|x| -x).collect(),
            abs_det - sum_const,
        );
        forms.insert(0, first);
        forms
    }
}

fn dilation_factor(h: u64) -> Result<i64> {
    if h == 0 {
        return Err(Error::InvalidArgument("dilation factor must be positive".into()));
    }
    i64::try_from(h).map_err(|_| Error::Overflow)
}

/// Convex hull of finitely many lattice points, in V-representation.
#[derive(Clone)]
pub struct LatticePolytope {
    dim: usize,
    generators: Vec<LatticePoint>,
    vertices: Vec<LatticePoint>,
    halfspaces: OnceLock<Option<Arc<HalfspaceSystem>>>,
}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticePolytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices)
            .finish()
    }
}

/// Polytopes are equal when their vertex sets are.
impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.sorted_vertices() == other.sorted_vertices()
    }
}

impl Eq for LatticePolytope {}

impl LatticePolytope {
    /// Builds the hull of `generators`, extracting its vertices exactly.
    pub fn new(generators: Vec<LatticePoint>) -> Result<Self> {
        let dim = uniform_dim(&generators)?;
        if dim == 0 || dim > MAX_AMBIENT_DIM {
            return Err(Error::TooLarge {
                what: "ambient dimension",
                limit: MAX_AMBIENT_DIM as u64,
            });
        }
        let mut distinct: Vec<LatticePoint> = Vec::with_capacity(generators.len());
        for g in &generators {
            if !distinct.contains(g) {
                distinct.push(g.clone());
            }
        }
        let vertices = distinct
            .iter()
            .enumerate()
            .filter(|(i, g)| {
                let others: Vec<LatticePoint> = distinct
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j != i)
                    .map(|(_, p)| p.clone())
                    .collect();
                others.is_empty() || !hull_contains_lp(&others, &g.to_rational())
            })
            .map(|(_, g)| g.clone())
            .collect();
        Ok(Self {
            dim,
            generators,
            vertices,
            halfspaces: OnceLock::new(),
        })
    }

    /// Trusts that `vertices` are distinct extreme points.
    pub(crate) fn from_vertices_unchecked(vertices: Vec<LatticePoint>) -> Self {
        Self {
            dim: vertices[0].dim(),
            generators: vertices.clone(),
            vertices,
            halfspaces: OnceLock::new(),
        }
    }

    /// The unit cube `[0,1]^n`.
    pub fn unit_cube(n: usize) -> Result<Self> {
        let pts = (0..1u64 << n)
            .map(|bits| LatticePoint::new((0..n).map(|i| ((bits >> i) & 1) as i64).collect()))
            .collect();
        Self::new(pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn sorted_vertices(&self) -> Vec<LatticePoint> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    pub fn affine_dim(&self) -> usize {
        affine_dimension(&self.vertices).expect("vertices are nonempty and uniform")
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    /// Inequality description, computed once; `None` if elimination exceeded its budget.
    pub fn halfspaces(&self) -> Option<&HalfspaceSystem> {
        self.halfspaces
            .get_or_init(|| {
                HalfspaceSystem::from_vertices(&self.vertices, halfspace::DEFAULT_ELIMINATION_BUDGET)
                    .map(Arc::new)
            })
            .as_deref()
    }

    /// Integer bounding box `[lo, hi]` of the vertices.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for (i, &x) in v.coords().iter().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        (lo, hi)
    }

    pub fn translate(&self, v: &LatticePoint) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|p| p.checked_add(v))
            .collect::<Result<_>>()?;
        Ok(Self::from_vertices_unchecked(vertices))
    }
}

/// Is `q` a convex combination of `points`? Decided by exact LP feasibility.
pub fn hull_contains_lp(points: &[LatticePoint], q: &RatPoint) -> bool {
    let n = q.dim();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            points
                .iter()
                .map(|p| BigRational::from_integer(p.coords()[i].into()))
                .collect()
        })
        .collect();
    a.push(vec![BigRational::one(); points.len()]);
    let mut b: Vec<BigRational> = q.coords().to_vec();
    b.push(BigRational::one());
    lp::feasible_point(&a, &b).is_some()
}

/// Is `q` in `P`? Uses the Fourier–Motzkin description when available and
/// falls back to the exact simplex method otherwise.
pub fn contains(p: &LatticePolytope, q: &RatPoint) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    Ok(match p.halfspaces() {
        Some(sys) => sys.contains_rational(q.coords()),
        None => hull_contains_lp(p.vertices(), q),
    })
}

pub fn contains_lattice(p: &LatticePolytope, x: &LatticePoint) -> Result<bool> {
    check_dim(p.dim(), x.dim())?;
    Ok(match p.halfspaces() {
        Some(sys) => sys.contains_lattice(x.coords()),
        None => hull_contains_lp(p.vertices(), &x.to_rational()),
    })
}

pub fn dilate(p: &LatticePolytope, h: u64) -> Result<LatticePolytope> {
    let k = dilation_factor(h)?;
    if k == 1 {
        return Ok(p.clone());
    }
    let vertices = p
        .vertices
        .iter()
        .map(|v| v.checked_scale(k))
        .collect::<Result<_>>()?;
    Ok(LatticePolytope::from_vertices_unchecked(vertices))
}

/// All lattice points of `P` in lexicographic order, by scanning the
/// integer bounding box.
pub fn lattice_points(p: &LatticePolytope) -> Result<Vec<LatticePoint>> {
    let (lo, hi) = p.bounding_box();
    let mut size: u128 = 1;
    for (a, b) in lo.iter().zip(&hi) {
        size = size.saturating_mul((*b as i128 - *a as i128 + 1) as u128);
    }
    if size > MAX_BOX_POINTS {
        return Err(Error::Resource {
            what: "bounding box lattice points",
            size,
            limit: MAX_BOX_POINTS,
        });
    }
    let sys = p.halfspaces();
    let test = |x: &[i64]| match sys {
        Some(s) => s.contains_lattice(x),
        None => hull_contains_lp(p.vertices(), &LatticePoint::new(x.to_vec()).to_rational()),
    };

    // One slab per value of the first coordinate, scanned in parallel and
    // concatenated in order.
    let slabs: Vec<Vec<LatticePoint>> = (lo[0]..=hi[0])
        .into_par_iter()
        .map(|x0| {
            let mut out = Vec::new();
            let mut cur = lo.clone();
            cur[0] = x0;
            loop {
                if test(&cur) {
                    out.push(LatticePoint::new(cur.clone()));
                }
                // Odometer over coordinates 1..n, last coordinate fastest.
                let mut i = cur.len() - 1;
                loop {
                    if i == 0 {
                        return out;
                    }
                    if cur[i] < hi[i] {
                        cur[i] += 1;
                        break;
                    }
                    cur[i] = lo[i];
                    i -= 1;
                }
            }
        })
        .collect();
    Ok(slabs.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn a1() -> LatticeSimplex {
        LatticeSimplex::new(vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 2])])
            .unwrap()
    }

    fn a2() -> LatticeSimplex {
        LatticeSimplex::new(vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 2])])
            .unwrap()
    }

    fn square() -> LatticePolytope {
        LatticePolytope::unit_cube(2).unwrap()
    }

    #[test]
    fn affine_independence_examples() {
        assert!(is_affinely_independent(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap());
        assert!(!is_affinely_independent(&[pt(&[0, 0]), pt(&[1, 0]), pt(&[2, 0])]).unwrap());
        assert!(is_affinely_independent(a2().vertices()).unwrap());
        assert_eq!(
            is_affinely_independent(&[pt(&[0, 0]), pt(&[1, 0, 0])]),
            Err(Error::Dimension { expected: 2, found: 3 })
        );
        assert_eq!(is_affinely_independent(&[]), Err(Error::Empty));
    }

    #[test]
    fn simplex_rejects_dependent_points() {
        let err = LatticeSimplex::new(vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])]).unwrap_err();
        assert_eq!(err, Error::AffinelyDependent);
        assert!(LatticeSimplex::new(vec![pt(&[0, 0]), pt(&[1, 0])]).is_err());
    }

    #[test]
    fn barycentric_examples() {
        let s = a2();
        let t = s.barycentric(&s.vertices()[0].to_rational()).unwrap();
        assert_eq!(t.entries(), &[q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);

        let std2 = LatticeSimplex::standard(2).unwrap();
        let t = std2.barycentric(&RatPoint::new(vec![q(1, 3), q(1, 3)])).unwrap();
        assert_eq!(t.entries(), &[q(1, 3), q(1, 3), q(1, 3)]);

        let t = s.barycentric(&RatPoint::new(vec![q(1, 2), q(1, 2), q(1, 2)])).unwrap();
        assert_eq!(t.entries(), &[q(1, 4), q(1, 4), q(1, 4), q(1, 4)]);

        let t = std2.barycentric(&RatPoint::new(vec![q(2, 1), q(0, 1)])).unwrap();
        assert_eq!(t.entries(), &[q(-1, 1), q(2, 1), q(0, 1)]);
        assert!(s.barycentric(&RatPoint::new(vec![q(1, 1)])).is_err());
    }

    #[test]
    fn barycentric_forms_scale_coordinates() {
        for s in [a1(), a2(), LatticeSimplex::standard(3).unwrap()] {
            let forms = s.barycentric_forms();
            let det = BigRational::from_integer(s.normalized_volume());
            let x = pt(&[2, -1, 3]);
            let t = s.barycentric(&x.to_rational()).unwrap();
            for (f, ti) in forms.iter().zip(t.iter()) {
                assert_eq!(BigRational::from_integer(f.eval_lattice(x.coords())), ti * &det);
            }
        }
    }

    #[test]
    fn contains_examples() {
        let sq = square();
        for v in sq.vertices() {
            assert!(contains(&sq, &v.to_rational()).unwrap());
        }
        assert!(contains(&sq, &RatPoint::new(vec![q(1, 2), q(1, 2)])).unwrap());
        assert!(!contains(&sq, &RatPoint::new(vec![q(3, 2), q(1, 2)])).unwrap());
        assert!(contains(&sq, &RatPoint::new(vec![q(1, 1)])).is_err());
    }

    #[test]
    fn vertex_extraction_drops_interior_and_duplicate_generators() {
        let p = LatticePolytope::new(vec![
            pt(&[0, 0]),
            pt(&[2, 0]),
            pt(&[1, 0]),
            pt(&[1, 1]),
            pt(&[0, 2]),
            pt(&[0, 2]),
        ])
        .unwrap();
        assert_eq!(p.sorted_vertices(), vec![pt(&[0, 0]), pt(&[0, 2]), pt(&[2, 0])]);
        assert_eq!(p.generators().len(), 6);
    }

    #[test]
    fn dilate_examples() {
        let sq = square();
        assert_eq!(dilate(&sq, 1).unwrap(), sq);
        assert_eq!(
            dilate(&sq, 2).unwrap().sorted_vertices(),
            vec![pt(&[0, 0]), pt(&[0, 2]), pt(&[2, 0]), pt(&[2, 2])]
        );
        assert_eq!(
            dilate(&a2().hull(), 2).unwrap().sorted_vertices(),
            vec![pt(&[0, 0, 0]), pt(&[0, 2, 0]), pt(&[2, 0, 0]), pt(&[2, 2, 4])]
        );
        assert!(matches!(dilate(&sq, 0), Err(Error::InvalidArgument(_))));
        let big = LatticePolytope::new(vec![pt(&[i64::MAX / 2])]).unwrap();
        assert_eq!(dilate(&big, 3).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn lattice_point_examples() {
        assert_eq!(
            lattice_points(&a1().hull()).unwrap(),
            vec![pt(&[0, 0, 0]), pt(&[0, 0, 1]), pt(&[0, 0, 2]), pt(&[0, 1, 0]), pt(&[1, 0, 0])]
        );
        assert_eq!(
            lattice_points(&a2().hull()).unwrap(),
            vec![pt(&[0, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 0, 0]), pt(&[1, 1, 2])]
        );
        assert_eq!(
            lattice_points(&square()).unwrap(),
            vec![pt(&[0, 0]), pt(&[0, 1]), pt(&[1, 0]), pt(&[1, 1])]
        );
    }

    #[test]
    fn lattice_points_of_degenerate_polytope() {
        let seg = LatticePolytope::new(vec![pt(&[0, 0, 0]), pt(&[3, 3, 0])]).unwrap();
        assert!(!seg.is_full_dimensional());
        assert_eq!(seg.affine_dim(), 1);
        assert_eq!(
            lattice_points(&seg).unwrap(),
            (0..=3).map(|i| pt(&[i, i, 0])).collect::<Vec<_>>()
        );
    }

    #[test]
    fn enumeration_box_cap() {
        let big = LatticePolytope::new(vec![pt(&[0, 0, 0]), pt(&[1000, 1000, 1000])]).unwrap();
        assert!(matches!(lattice_points(&big), Err(Error::Resource { .. })));
    }

    #[test]
    fn dimension_cap() {
        assert!(matches!(
            LatticePolytope::new(vec![LatticePoint::origin(9)]),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn rat_point_to_lattice() {
        assert_eq!(RatPoint::new(vec![q(4, 2), q(-3, 1)]).to_lattice().unwrap(), pt(&[2, -3]));
        assert_eq!(RatPoint::new(vec![q(1, 2)]).to_lattice(), Err(Error::NotLattice));
        assert_eq!(RatPoint::scaled_down(&pt(&[1, 2]), 2).coords(), &[q(1, 2), q(1, 1)]);
    }
}
