//! Inequality descriptions of lattice polytopes.
//!
//! The convex hull of vertices `v_1..v_m` is the projection onto `x` of
//! `{(x, λ) : Σ λ_j v_j = x, Σ λ_j = 1, λ >= 0}`. The equalities are solved
//! for as many `λ` as possible; the remaining free `λ` are removed by
//! Fourier–Motzkin elimination, pruned with Chernikov's rule. What is left
//! is an exact integer description `{x : E x + e = 0, A x + a >= 0}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LatticePoint;

/// Default cap on the number of intermediate inequalities during elimination.
pub const DEFAULT_ELIMINATION_BUDGET: usize = 20_000;

/// The integer affine function `coeffs·x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    coeffs: Vec<BigInt>,
    constant: BigInt,
    fast: Option<(Vec<i64>, i64)>,
}

impl AffineForm {
    pub fn new(coeffs: Vec<BigInt>, constant: BigInt) -> Self {
        let fast = coeffs
            .iter()
            .map(ToPrimitive::to_i64)
            .collect::<Option<Vec<_>>>()
            .zip(constant.to_i64());
        Self {
            coeffs,
            constant,
            fast,
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn eval_lattice(&self, x: &[i64]) -> BigInt {
        if let Some((c, k)) = &self.fast {
            let mut acc = *k as i128;
            let mut ok = true;
            for (a, b) in c.iter().zip(x) {
                match (*a as i128).checked_mul(*b as i128).and_then(|p| acc.checked_add(p)) {
                    Some(v) => acc = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return BigInt::from(acc);
            }
        }
        self.coeffs
            .iter()
            .zip(x)
            .map(|(a, &b)| a * b)
            .sum::<BigInt>()
            + &self.constant
    }

    /// Sign of the form at a lattice point, without allocating in the common case.
    pub fn sign_at(&self, x: &[i64]) -> std::cmp::Ordering {
        if let Some((c, k)) = &self.fast {
            let mut acc = *k as i128;
            let mut ok = true;
            for (a, b) in c.iter().zip(x) {
                match (*a as i128).checked_mul(*b as i128).and_then(|p| acc.checked_add(p)) {
                    Some(v) => acc = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return acc.cmp(&0);
            }
        }
        self.eval_lattice(x).cmp(&BigInt::zero())
    }

    pub fn eval_rational(&self, x: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(a, b)| b * a)
            .sum::<BigRational>()
            + BigRational::from_integer(self.constant.clone())
    }
}

/// `{x : every equality = 0, every inequality >= 0}`.
#[derive(Clone, Debug)]
pub struct HalfspaceSystem {
    dim: usize,
    equalities: Vec<AffineForm>,
    inequalities: Vec<AffineForm>,
}

impl HalfspaceSystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[AffineForm] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[AffineForm] {
        &self.inequalities
    }

    pub fn contains_lattice(&self, x: &[i64]) -> bool {
        self.equalities.iter().all(|f| f.sign_at(x).is_eq())
            && self.inequalities.iter().all(|f| f.sign_at(x).is_ge())
    }

    pub fn contains_rational(&self, x: &[BigRational]) -> bool {
        self.equalities.iter().all(|f| f.eval_rational(x).is_zero())
            && self
                .inequalities
                .iter()
                .all(|f| !f.eval_rational(x).is_negative())
    }

    /// Projects the hull of `vertices` by Fourier–Motzkin elimination.
    /// Returns `None` when the intermediate system outgrows `budget`.
    pub fn from_vertices(vertices: &[LatticePoint], budget: usize) -> Option<Self> {
        let m = vertices.len();
        let n = vertices.first()?.dim();

        // Rows over columns [λ_1..λ_m | x_1..x_n | 1], each meaning row = 0.
        let width = m + n + 1;
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut row = vec![BigRational::zero(); width];
            for (j, v) in vertices.iter().enumerate() {
                row[j] = BigRational::from_integer(v.coords()[i].into());
            }
            row[m + i] = -BigRational::one();
            rows.push(row);
        }
        let mut sum_row = vec![BigRational::zero(); width];
        for x in sum_row.iter_mut().take(m) {
            *x = BigRational::one();
        }
        sum_row[width - 1] = -BigRational::one();
        rows.push(sum_row);

        // Reduced row echelon form over the λ columns.
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for col in 0..m {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
            pivots.push((r, col));
            r += 1;
        }

        let equalities: Vec<AffineForm> = rows[r..]
            .iter()
            .filter_map(|row| {
                let ints = integerize(&row[m..]);
                (!ints.iter().all(Zero::is_zero)).then(|| split_form(ints))
            })
            .collect();
        let mut equalities = dedup_forms(equalities);
        // A nonzero constant with zero coefficients would mean an empty hull.
        equalities.retain(|f| !f.coeffs.iter().all(Zero::is_zero));

        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free: Vec<usize> = (0..m).filter(|c| !pivot_cols.contains(c)).collect();
        let k = free.len();

        // Inequalities over [free λ (k) | x (n) | 1], each meaning row >= 0.
        let mut system: Vec<Row> = Vec::with_capacity(m);
        for &(row_idx, col) in &pivots {
            // λ_col + Σ r_f λ_f + Σ r_x x + r_c = 0  ⇒  -(...) >= 0
            let row = &rows[row_idx];
            let mut lin: Vec<BigRational> = free.iter().map(|&f| -&row[f]).collect();
            lin.extend(row[m..].iter().map(|x| -x));
            system.push(Row {
                coeffs: integerize(&lin),
                history: History::single(col, m),
            });
        }
        for (idx, &f) in free.iter().enumerate() {
            let mut coeffs = vec![BigInt::zero(); k + n + 1];
            coeffs[idx] = BigInt::one();
            system.push(Row {
                coeffs,
                history: History::single(f, m),
            });
        }

        for (step, var) in (0..k).enumerate() {
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            let mut next = Vec::new();
            for row in system {
                match row.coeffs[var].sign() {
                    num_bigint::Sign::Plus => pos.push(row),
                    num_bigint::Sign::Minus => neg.push(row),
                    num_bigint::Sign::NoSign => next.push(row),
                }
            }
            let limit = step + 2;
            for p in &pos {
                for q in &neg {
                    let history = p.history.union(&q.history);
                    if history.count() > limit {
                        continue;
                    }
                    let a = &p.coeffs[var];
                    let b = -&q.coeffs[var];
                    let coeffs: Vec<BigInt> = p
                        .coeffs
                        .iter()
                        .zip(&q.coeffs)
                        .map(|(x, y)| x * &b + y * a)
                        .collect();
                    next.push(Row {
                        coeffs: normalize(coeffs),
                        history,
                    });
                    if next.len() > budget {
                        return None;
                    }
                }
            }
            system = dedup_rows(next);
        }

        let mut inequalities = Vec::new();
        for row in system {
            let rest = &row.coeffs[k..];
            if rest[..n].iter().all(Zero::is_zero) {
                // Constant rows; a negative one would mean an empty hull.
                debug_assert!(!rest[n].is_negative());
                continue;
            }
            inequalities.push(split_form(normalize(rest.to_vec())));
        }
        let inequalities = strongest_per_direction(inequalities);

        Some(Self {
            dim: n,
            equalities,
            inequalities,
        })
    }
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<BigInt>,
    history: History,
}

/// Which original constraints `λ_j >= 0` a derived row combines.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct History(Vec<u64>);

impl History {
    fn single(bit: usize, size: usize) -> Self {
        let mut words = vec![0u64; size.div_ceil(64)];
        words[bit / 64] |= 1 << (bit % 64);
        Self(words)
    }

    fn union(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn integerize(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    normalize(
        row.iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect(),
    )
}

/// Divides by the positive gcd of all entries.
fn normalize(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    row
}

fn split_form(mut row: Vec<BigInt>) -> AffineForm {
    let constant = row.pop().expect("rows carry a constant column");
    AffineForm::new(row, constant)
}

fn dedup_forms(forms: Vec<AffineForm>) -> Vec<AffineForm> {
    let mut out: Vec<AffineForm> = Vec::with_capacity(forms.len());
    for f in forms {
        let neg = AffineForm::new(
            f.coeffs.iter().map(|x| -x).collect(),
            -f.constant.clone(),
        );
        if !out.contains(&f) && !out.contains(&neg) {
            out.push(f);
        }
    }
    out
}

fn dedup_rows(rows: Vec<Row>) -> Vec<Row> {
    let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut out: Vec<Row> = Vec::with_capacity(rows.len());
    for row in rows {
        match seen.get(&row.coeffs) {
            Some(&i) => {
                if row.history.count() < out[i].history.count() {
                    out[i] = row;
                }
            }
            None => {
                seen.insert(row.coeffs.clone(), out.len());
                out.push(row);
            }
        }
    }
    out
}

/// Among inequalities with the same normal keeps the one with the smallest constant.
fn strongest_per_direction(forms: Vec<AffineForm>) -> Vec<AffineForm> {
    let mut best: HashMap<Vec<BigInt>, BigInt> = HashMap::new();
    let mut order: Vec<Vec<BigInt>> = Vec::new();
    for f in forms {
        match best.get_mut(&f.coeffs) {
            Some(c) => {
                if f.constant < *c {
                    *c = f.constant;
                }
            }
            None => {
                order.push(f.coeffs.clone());
                best.insert(f.coeffs, f.constant);
            }
        }
    }
    order
        .into_iter()
        .map(|coeffs| {
            let constant = best.remove(&coeffs).expect("inserted above");
            AffineForm::new(coeffs, constant)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|c| LatticePoint::new(c.to_vec())).collect()
    }

    #[test]
    fn unit_square_inequalities() {
        let sys = HalfspaceSystem::from_vertices(
            &pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]),
            DEFAULT_ELIMINATION_BUDGET,
        )
        .unwrap();
        assert!(sys.equalities().is_empty());
        for x in -1..=2 {
            for y in -1..=2 {
                let inside = (0..=1).contains(&x) && (0..=1).contains(&y);
                assert_eq!(sys.contains_lattice(&[x, y]), inside, "({x},{y})");
            }
        }
        let half = BigRational::new(1.into(), 2.into());
        assert!(sys.contains_rational(&[half.clone(), half.clone()]));
        assert!(!sys.contains_rational(&[BigRational::from_integer(1.into()) + &half, half]));
    }

    #[test]
    fn segment_in_the_plane_has_an_equality() {
        let sys = HalfspaceSystem::from_vertices(
            &pts(&[&[0, 0], &[2, 2]]),
            DEFAULT_ELIMINATION_BUDGET,
        )
        .unwrap();
        assert_eq!(sys.equalities().len(), 1);
        assert!(sys.contains_lattice(&[1, 1]));
        assert!(!sys.contains_lattice(&[1, 0]));
        assert!(!sys.contains_lattice(&[3, 3]));
    }

    #[test]
    fn single_point() {
        let sys =
            HalfspaceSystem::from_vertices(&pts(&[&[3, -1, 2]]), DEFAULT_ELIMINATION_BUDGET)
                .unwrap();
        assert!(sys.contains_lattice(&[3, -1, 2]));
        assert!(!sys.contains_lattice(&[3, -1, 3]));
    }

    #[test]
    fn tiny_budget_gives_up() {
        let cube: Vec<LatticePoint> = (0..8)
            .map(|b| LatticePoint::new(vec![b & 1, (b >> 1) & 1, (b >> 2) & 1]))
            .collect();
        assert!(HalfspaceSystem::from_vertices(&cube, 2).is_none());
        let sys = HalfspaceSystem::from_vertices(&cube, DEFAULT_ELIMINATION_BUDGET).unwrap();
        assert!(sys.contains_lattice(&[1, 0, 1]));
        assert!(!sys.contains_lattice(&[1, 0, 2]));
    }

    #[test]
    fn affine_form_overflow_falls_back_to_bigint() {
        let f = AffineForm::new(vec![BigInt::from(i64::MAX), BigInt::from(i64::MAX)], 0.into());
        let v = f.eval_lattice(&[i64::MAX, i64::MAX]);
        assert_eq!(v, BigInt::from(i64::MAX) * BigInt::from(i64::MAX) * 2);
        assert!(f.sign_at(&[i64::MAX, i64::MAX]).is_gt());
    }
}
