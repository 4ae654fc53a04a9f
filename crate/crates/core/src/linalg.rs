//! Small dense exact linear algebra: row reduction, kernels and square solves.

use crate::scalar::ExactField;

/// Reduced row echelon form of `rows` (in place). Returns the pivot column of
/// each nonzero row, in row order. Pivots are chosen as the first nonzero entry
/// at or below the current row, so the result is deterministic.
pub(crate) fn rref<F: ExactField>(rows: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let t = rows[r][j].clone() * f.clone();
                    rows[i][j] = rows[i][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of the right kernel `{x : M x = 0}` of an `m x cols` matrix, one
/// vector per free column in increasing column order. Each basis vector has a
/// one in its own free column and zeros in the other free columns.
pub(crate) fn kernel_basis<F: ExactField>(matrix: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut rows: Vec<Vec<F>> = matrix.to_vec();
    let pivots = rref(&mut rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solves the square system `A x = b`; `None` when `A` is singular.
pub(crate) fn solve_square<F: ExactField>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
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
    use crate::Scalar;
    use num_traits::Zero;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = kernel_basis(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                assert!(crate::scalar::dot(row, v).is_zero());
            }
        }
    }

    #[test]
    fn square_solve_and_singular() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve_square(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![Scalar::from_frac(4, 5), Scalar::from_frac(7, 5)]);
        let s = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve_square(&s, &[q(1), q(1)]).is_none());
    }
}
