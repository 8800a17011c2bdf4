//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`; there is no floating
//! point anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest row or column count accepted by [`IntMatrix`].
pub const MAX_MATRIX_DIM: usize = 16;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        f.debug_struct("IntMatrix").field("rows", &rows).finish()
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(format!(
            "matrix dimensions must be positive, got {rows}x{cols}"
        )));
    }
    if rows > MAX_MATRIX_DIM || cols > MAX_MATRIX_DIM {
        return Err(Error::TooLarge {
            what: "matrix dimension",
            limit: MAX_MATRIX_DIM as u64,
        });
    }
    Ok(())
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        check_dims(rows, cols)?;
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        Ok(m)
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self::new(r, c, data)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns<T: Into<BigInt> + Clone>(columns: &[Vec<T>]) -> Result<Self> {
        Ok(Self::from_rows(columns)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rank(&rows)
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }

    /// `col[dst] -= factor * col[src]`
    fn sub_column_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * &self.data[i * self.cols + src];
            self.data[i * self.cols + dst] -= delta;
        }
    }

    /// Replaces columns `(k, j)` by `(x*ck + y*cj, p*ck + q*cj)`.
    fn combine_columns(&mut self, k: usize, j: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
        for i in 0..self.rows {
            let ck = self.data[i * self.cols + k].clone();
            let cj = self.data[i * self.cols + j].clone();
            self.data[i * self.cols + k] = x * &ck + y * &cj;
            self.data[i * self.cols + j] = p * &ck + q * &cj;
        }
    }
}

/// Exact rational vector; `BigRational` keeps every entry in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatVector(Vec<BigRational>);

impl RatVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self(entries)
    }

    pub fn from_integers(entries: &[BigInt]) -> Self {
        Self(entries.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigRational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigRational> {
        self.0.iter()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.0.iter().map(|x| x.numer().clone()).collect())
    }

    pub fn sum(&self) -> BigRational {
        self.0.iter().sum()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }
}

impl std::ops::Index<usize> for RatVector {
    type Output = BigRational;

    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Sylvester's identity guarantees exact division.
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Solves `M x = b` exactly over the rationals.
pub fn solve_rational(m: &IntMatrix, b: &[BigInt]) -> Result<RatVector> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if b.len() != m.rows {
        return Err(Error::Dimension {
            expected: m.rows,
            found: b.len(),
        });
    }
    let rows: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .chain(std::iter::once(&b[i]))
                .cloned()
                .map(BigRational::from_integer)
                .collect()
        })
        .collect();
    solve_augmented(rows).map(RatVector)
}

/// Gauss-Jordan on a square augmented system `[A | b]`.
pub(crate) fn solve_augmented(mut a: Vec<Vec<BigRational>>) -> Result<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut().skip(col) {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Column-style Hermite normal form: returns `(H, U)` with `H = M * U`,
/// `U` unimodular and `H` in lower column echelon form.
///
/// Pivots are positive; entries to the left of a pivot in its row lie in
/// `[0, pivot)`; zero columns come last. The integer column lattice of `H`
/// equals that of `M`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols).expect("column count already validated");
    let mut k = 0;
    for i in 0..h.rows {
        if k == h.cols {
            break;
        }
        // Move a nonzero entry into the pivot column if the current one is zero.
        if h.get(i, k).is_zero() {
            if let Some(j) = (k + 1..h.cols).find(|&j| !h.get(i, j).is_zero()) {
                h.swap_columns(k, j);
                u.swap_columns(k, j);
            } else {
                continue;
            }
        }
        for j in k + 1..h.cols {
            if h.get(i, j).is_zero() {
                continue;
            }
            let a = h.get(i, k).clone();
            let b = h.get(i, j).clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let p = -(&b / &g);
            let q = &a / &g;
            h.combine_columns(k, j, &x, &y, &p, &q);
            u.combine_columns(k, j, &x, &y, &p, &q);
        }
        if h.get(i, k).is_negative() {
            h.negate_column(k);
            u.negate_column(k);
        }
        let pivot = h.get(i, k).clone();
        for j in 0..k {
            let f = h.get(i, j).div_floor(&pivot);
            h.sub_column_multiple(j, k, &f);
            u.sub_column_multiple(j, k, &f);
        }
        k += 1;
    }
    (h, u)
}

/// Integer solution of `M w = b`, if one exists.
///
/// Goes through the Hermite form rather than the rational solve: forward
/// substitution on `H = M U` and back-transformation `w = U y`.
pub fn integral_solution(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if b.len() != m.rows {
        return Err(Error::Dimension {
            expected: m.rows,
            found: b.len(),
        });
    }
    let (h, u) = hermite_normal_form(m);
    let n = m.rows;
    if (0..n).any(|i| h.get(i, i).is_zero()) {
        return Err(Error::Singular);
    }
    let mut y: Vec<BigInt> = Vec::with_capacity(n);
    for i in 0..n {
        let mut rhs = b[i].clone();
        for (j, yj) in y.iter().enumerate() {
            rhs -= h.get(i, j) * yj;
        }
        let (q, r) = rhs.div_rem(h.get(i, i));
        if !r.is_zero() {
            return Ok(None);
        }
        y.push(q);
    }
    u.mul_vec(&y).map(Some)
}

/// Rank over the rationals of an arbitrary list of equal-length rows.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[rank][col];
            for c in col..cols {
                let delta = &f * &a[rank][c];
                a[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}
