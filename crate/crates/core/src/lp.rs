//! Exact two-phase simplex on a dense tableau with Bland's anti-cycling rule.
//!
//! Problems are in standard form: minimize `c·x` subject to `A x = b`, `x ≥ 0`.

use crate::linalg::{dot, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// `x` is a basic optimal solution.
    Optimal { x: Vector, value: Scalar },
    /// Farkas certificate `y`: `y·A_j ≤ 0` for every column `j` and `y·b > 0`.
    Infeasible { farkas: Vector },
    Unbounded,
}

struct Tableau {
    rows: Vec<Vector>,
    /// Reduced costs; the last entry is minus the objective value.
    z: Vector,
    basis: Vec<usize>,
    /// Number of structural (non-artificial) columns.
    n: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.rows.first().map_or(self.z.len() - 1, |r| r.len() - 1)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for x in self.rows[row].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = self.rows[row].clone();
        let eliminate = |target: &mut Vector| {
            let f = target[col].clone();
            if f.is_zero() {
                return;
            }
            for (t, p) in target.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *t -= &(&f * p);
                }
            }
        };
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i != row {
                eliminate(r);
            }
        }
        eliminate(&mut self.z);
        self.basis[row] = col;
    }

    /// Runs Bland's rule over columns `0..limit`. Returns `false` if unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(col) = (0..limit).find(|&j| self.z[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Scalar)> = None;
            for (i, r) in self.rows.iter().enumerate() {
                if !r[col].is_positive() {
                    continue;
                }
                let ratio = &r[rhs] / &r[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }
}

/// Minimizes `c·x` subject to `A x = b`, `x ≥ 0`, exactly.
pub fn minimize(a: &[Vector], b: &[Scalar], c: &[Scalar]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    debug_assert_eq!(b.len(), m);

    // Phase 1: rows flipped so that b ≥ 0, one artificial per row.
    let signs: Vec<bool> = b.iter().map(Scalar::is_negative).collect();
    let width = n + m + 1;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let mut r = Vec::with_capacity(width);
        for x in row {
            r.push(if signs[i] { -x } else { x.clone() });
        }
        for j in 0..m {
            r.push(if i == j { Scalar::one() } else { Scalar::zero() });
        }
        r.push(if signs[i] { -bi } else { bi.clone() });
        rows.push(r);
    }
    let mut z = vec![Scalar::zero(); width];
    for r in &rows {
        for j in 0..n {
            z[j] -= &r[j];
        }
        z[width - 1] -= &r[width - 1];
    }
    let mut t = Tableau { rows, z, basis: (n..n + m).collect(), n };
    let bounded = t.optimize(n + m);
    debug_assert!(bounded, "phase 1 is bounded below by zero");

    let phase1_value = -&t.z[width - 1];
    if phase1_value.is_positive() {
        // π_i = 1 − (reduced cost of artificial i); undo the row flips.
        let farkas = (0..m)
            .map(|i| {
                let pi = Scalar::one() - &t.z[n + i];
                if signs[i] {
                    -pi
                } else {
                    pi
                }
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Drive zero-level artificials out of the basis where possible; rows that
    // cannot be cleared are redundant and keep their artificial at zero.
    for i in 0..m {
        if t.basis[i] >= t.n {
            if let Some(j) = (0..t.n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            }
        }
    }

    // Phase 2.
    let mut z = vec![Scalar::zero(); width];
    z[..n].clone_from_slice(c);
    for (i, r) in t.rows.iter().enumerate() {
        let bj = t.basis[i];
        if bj >= n || c[bj].is_zero() {
            continue;
        }
        for j in 0..width {
            if !r[j].is_zero() {
                z[j] -= &(&c[bj] * &r[j]);
            }
        }
    }
    t.z = z;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Scalar::zero(); n];
    for (i, r) in t.rows.iter().enumerate() {
        if t.basis[i] < n {
            x[t.basis[i]] = r[width - 1].clone();
        }
    }
    let value = dot(c, &x);
    LpOutcome::Optimal { x, value }
}

/// Finds some `x ≥ 0` with `A x = b`, or a Farkas certificate.
pub fn feasible_point(a: &[Vector], b: &[Scalar], n: usize) -> LpOutcome {
    minimize(a, b, &vec![Scalar::zero(); n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn small_optimum() {
        // min -x0 - x1  s.t. x0 + 2 x1 + s0 = 4, 3 x0 + x1 + s1 = 6
        let a = vec![v(&[1, 2, 1, 0]), v(&[3, 1, 0, 1])];
        let out = minimize(&a, &v(&[4, 6]), &v(&[-1, -1, 0, 0]));
        let LpOutcome::Optimal { x, value } = out else { panic!("{out:?}") };
        assert_eq!(value, Scalar::new(-14, 5));
        assert_eq!(x[0], Scalar::new(8, 5));
        assert_eq!(x[1], Scalar::new(6, 5));
    }

    #[test]
    fn infeasible_has_farkas_certificate() {
        // x0 + x1 = 1 and x0 + x1 = 2
        let a = vec![v(&[1, 1]), v(&[1, 1])];
        let b = v(&[1, 2]);
        let LpOutcome::Infeasible { farkas } = feasible_point(&a, &b, 2) else { panic!() };
        for j in 0..2 {
            let col: Vec<Scalar> = a.iter().map(|r| r[j].clone()).collect();
            assert!(!dot(&farkas, &col).is_positive());
        }
        assert!(dot(&farkas, &b).is_positive());
    }

    #[test]
    fn negative_rhs_farkas_sign() {
        // -x0 = 3 has no nonnegative solution.
        let a = vec![v(&[-1]), v(&[0])];
        let b = v(&[3, 0]);
        let LpOutcome::Infeasible { farkas } = feasible_point(&a, &b, 1) else { panic!() };
        assert!(!(&farkas[0] * &Scalar::from_int(-1)).is_positive());
        assert!(dot(&farkas, &b).is_positive());
    }

    #[test]
    fn unbounded() {
        // min -x0 s.t. x0 - x1 = 0
        let a = vec![v(&[1, -1])];
        assert_eq!(minimize(&a, &v(&[0]), &v(&[-1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let a = vec![v(&[1, 1, 0]), v(&[2, 2, 0]), v(&[0, 1, 1])];
        let out = minimize(&a, &v(&[1, 2, 1]), &v(&[1, 0, 0]));
        let LpOutcome::Optimal { x, value } = out else { panic!() };
        assert_eq!(value, Scalar::zero());
        assert_eq!(x, v(&[0, 1, 0]));
    }
}
