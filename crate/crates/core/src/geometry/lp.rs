//! Dense two-phase simplex over `BigRational` with Bland's rule.
//!
//! Problems are in equality standard form: maximize `c·y` subject to
//! `A y = b`, `y >= 0`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: BigRational,
        solution: Vec<BigRational>,
    },
}

struct Tableau {
    /// `rows x (vars + 1)`; last column is the right-hand side.
    t: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    vars: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.t[i][self.vars]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].recip();
        for x in self.t[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs Bland's-rule iterations for `maximize cost·y` over columns in
    /// `allowed`. Returns `false` when the objective is unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.t[i][j].is_zero() && !cost[b].is_zero() {
                        reduced -= &cost[b] * &self.t[i][j];
                    }
                }
                if reduced.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, BigRational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leaving {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<BigRational> {
        let mut y = vec![BigRational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                y[b] = self.rhs(i).clone();
            }
        }
        y
    }
}

pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert_eq!(b.len(), m);
    debug_assert!(a.iter().all(|r| r.len() == n));

    // Columns: n structural, m artificial, then rhs.
    let vars = n + m;
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<BigRational> = Vec::with_capacity(vars + 1);
        for x in &a[i] {
            row.push(if flip { -x } else { x.clone() });
        }
        for k in 0..m {
            row.push(if k == i { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(row);
    }
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        vars,
    };

    let mut phase1 = vec![BigRational::zero(); vars];
    for x in phase1.iter_mut().skip(n) {
        *x = -BigRational::one();
    }
    tab.optimize(&phase1, vars);
    if (0..m).any(|i| tab.basis[i] >= n && !tab.rhs(i).is_zero()) {
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, col);
                i += 1;
            } else {
                tab.t.remove(i);
                tab.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut cost = c.to_vec();
    cost.resize(vars, BigRational::zero());
    if !tab.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let solution = tab.solution(n);
    let value = solution.iter().zip(c).map(|(y, c)| y * c).sum();
    LpOutcome::Optimal { value, solution }
}

/// Some `y >= 0` with `A y = b`, if any.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.first().map_or(0, Vec::len);
    match maximize(a, b, &vec![BigRational::zero(); n]) {
        LpOutcome::Optimal { solution, .. } => Some(solution),
        _ => None,
    }
}
