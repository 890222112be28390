//! Small dense exact linear algebra over [`Scalar`].

use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Scalar], s: &Scalar) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Reduced row echelon form over the first `ncols` columns, in place. Rows may
/// carry extra (augmented) columns. Returns the pivot columns; pivot rows come
/// first.
pub fn rref(rows: &mut [Vector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if inv != Scalar::one() {
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if pv.is_zero() {
                    continue;
                }
                *x -= &(&f * pv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(vectors: &[Vector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut m = vectors.to_vec();
    rref(&mut m, first.len()).len()
}

/// Basis of `{x : row·x = 0 for every row}` in dimension `ncols`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -&row[f];
            }
            v
        })
        .collect()
}

/// Greedily selects indices of a maximal linearly independent subfamily,
/// scanning in order.
pub fn independent_subset(vectors: &[Vector]) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut basis: Vec<Vector> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank(&trial) == trial.len() {
            basis = trial;
            chosen.push(i);
        }
    }
    chosen
}

/// Scales a nonzero rational vector by a positive factor so that it becomes a
/// primitive integer vector.
pub fn primitive(v: &[Scalar]) -> Vector {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};

    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(&x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|n| Scalar::from_bigint(n / &g)).collect()
}

/// Solves `A x = b` for square invertible `A`; `None` when singular.
pub fn solve_square(a: &[Vector], b: &[Scalar]) -> Option<Vector> {
    let n = a.len();
    let mut aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[1, 0, 1])];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
    }

    #[test]
    fn primitive_clears_denominators() {
        let p = primitive(&[Scalar::new(1, 2), Scalar::new(-3, 4), Scalar::zero()]);
        assert_eq!(p, v(&[2, -3, 0]));
        assert_eq!(primitive(&v(&[4, 6])), v(&[2, 3]));
    }

    #[test]
    fn solve_square_system() {
        let a = vec![v(&[2, 1]), v(&[1, 3])];
        let x = solve_square(&a, &v(&[3, 5])).unwrap();
        assert_eq!(x, vec![Scalar::new(4, 5), Scalar::new(7, 5)]);
        assert!(solve_square(&[v(&[1, 2]), v(&[2, 4])], &v(&[1, 1])).is_none());
    }

    #[test]
    fn independent_subset_is_greedy() {
        let vs = vec![v(&[1, 1]), v(&[2, 2]), v(&[0, 1])];
        assert_eq!(independent_subset(&vs), vec![0, 2]);
    }
}
