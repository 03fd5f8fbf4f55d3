//! Exact row reduction over the cyclotomic coefficient field.
//!
//! Pivoting is deterministic: columns are scanned left to right and the
//! first row with a nonzero entry wins, so the reduced echelon form of a
//! row space is unique and reproducible.

use crate::cyclotomic::CycNum;

/// Reduces `matrix` in place to reduced row echelon form (unit pivots,
/// zeros above and below). Returns the pivot column of each nonzero row;
/// zero rows sink to the bottom.
pub fn rref(matrix: &mut [Vec<CycNum>]) -> Vec<usize> {
    let nrows = matrix.len();
    let ncols = matrix.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let pivot_row = match (row..nrows).find(|&r| !matrix[r][col].is_zero()) {
            Some(r) => r,
            None => continue,
        };
        matrix.swap(row, pivot_row);
        let inv = matrix[row][col].inv().expect("pivot entry is nonzero");
        for c in col..ncols {
            matrix[row][c] = matrix[row][c].mul(&inv);
        }
        for r in 0..nrows {
            if r != row && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                for c in col..ncols {
                    let delta = factor.mul(&matrix[row][c]);
                    matrix[r][c] = matrix[r][c].sub(&delta);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// A basis of the right nullspace `{x : A·x = 0}`, one vector per free
/// column, in ascending free-column order.
pub fn nullspace(matrix: &[Vec<CycNum>], ncols: usize) -> Vec<Vec<CycNum>> {
    let mut work: Vec<Vec<CycNum>> = matrix.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![CycNum::zero(); ncols];
        v[fc] = CycNum::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = work[r][fc].neg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> CycNum {
        CycNum::from_integer(n)
    }

    fn row(vals: &[i64]) -> Vec<CycNum> {
        vals.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn rref_of_small_system() {
        let mut m = vec![row(&[2, 4, -2]), row(&[1, 2, 0])];
        let pivots = rref(&mut m);
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(m[0], row(&[1, 2, 0]));
        assert_eq!(m[1], row(&[0, 0, 1]));
    }

    #[test]
    fn rref_is_idempotent() {
        let mut m = vec![row(&[1, 3, 1]), row(&[2, 7, 3]), row(&[1, 5, 3])];
        rref(&mut m);
        let snapshot = m.clone();
        rref(&mut m);
        assert_eq!(m, snapshot);
    }

    #[test]
    fn rref_is_independent_of_row_order() {
        let rows = [row(&[0, 2, 4]), row(&[1, 1, 1]), row(&[3, 1, -1])];
        let mut a = vec![rows[0].clone(), rows[1].clone(), rows[2].clone()];
        let mut b = vec![rows[2].clone(), rows[0].clone(), rows[1].clone()];
        rref(&mut a);
        rref(&mut b);
        assert_eq!(a, b);
    }

    #[test]
    fn rref_handles_cyclotomic_entries() {
        let z3 = CycNum::root_of_unity(1, 3).unwrap();
        let mut m = vec![
            vec![z3.clone(), CycNum::one()],
            vec![CycNum::one(), z3.inv().unwrap()],
        ];
        // Second row is ζ3^{-1} times the first, so rank 1.
        let pivots = rref(&mut m);
        assert_eq!(pivots, vec![0]);
        assert_eq!(m[0][0], CycNum::one());
        assert_eq!(m[0][1], z3.inv().unwrap());
        assert!(m[1].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn nullspace_vectors_solve_the_system() {
        let m = vec![row(&[1, 1, 0, 2]), row(&[0, 1, 1, 1])];
        let ns = nullspace(&m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &m {
                let mut acc = CycNum::zero();
                for (a, x) in r.iter().zip(v) {
                    acc = acc.add(&a.mul(x));
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn full_rank_system_has_trivial_nullspace() {
        let m = vec![row(&[1, 0]), row(&[1, 1])];
        assert!(nullspace(&m, 2).is_empty());
    }
}
