//! Invertible linear variable substitutions.
//!
//! A [`LinearMap`] stores the substitution matrix of a group element acting
//! on polynomial variables: column `j` is the image of variable `j` as a
//! linear combination of variables. Substitution of polynomials under the
//! map is [`crate::poly::Poly::substitute_linear`].

use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::poly::{Poly, VarTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinearMapError {
    #[error("matrix must be {expected}x{expected} to act on {expected} variables")]
    BadShape { expected: usize },
    #[error("matrix is singular; group elements must be invertible")]
    Singular,
    #[error("matrix is incompatible with the conjugate-variable pairing")]
    ConjugationMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    table: Arc<VarTable>,
    /// `matrix[i][j]` is the coefficient of variable `i` in the image of
    /// variable `j`.
    matrix: Vec<Vec<CycNum>>,
}

impl LinearMap {
    /// Validates shape, invertibility, and compatibility with conjugation:
    /// substituting and then conjugating variables must agree with
    /// conjugating first and substituting the entry-wise conjugated matrix.
    pub fn new(table: &Arc<VarTable>, matrix: Vec<Vec<CycNum>>) -> Result<Self, LinearMapError> {
        let n = table.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(LinearMapError::BadShape { expected: n });
        }
        let map = LinearMap {
            table: table.clone(),
            matrix,
        };
        if map.det().is_zero() {
            return Err(LinearMapError::Singular);
        }
        let pi = table.conj_involution();
        for i in 0..n {
            for k in 0..n {
                if map.matrix[i][pi[k]] != map.matrix[pi[i]][k].conj() {
                    return Err(LinearMapError::ConjugationMismatch);
                }
            }
        }
        Ok(map)
    }

    pub fn identity(table: &Arc<VarTable>) -> Self {
        let n = table.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            CycNum::one()
                        } else {
                            CycNum::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        LinearMap {
            table: table.clone(),
            matrix,
        }
    }

    pub fn diagonal(table: &Arc<VarTable>, entries: Vec<CycNum>) -> Result<Self, LinearMapError> {
        let n = table.len();
        if entries.len() != n {
            return Err(LinearMapError::BadShape { expected: n });
        }
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            entries[i].clone()
                        } else {
                            CycNum::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(table, matrix)
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycNum {
        &self.matrix[i][j]
    }

    /// The image of variable `j` as a polynomial.
    pub fn image_of(&self, j: usize) -> Poly {
        let mut out = Poly::zero(&self.table);
        for i in 0..self.dim() {
            if !self.matrix[i][j].is_zero() {
                out = out.add(&Poly::variable(&self.table, i).scale(&self.matrix[i][j]));
            }
        }
        out
    }

    /// The map whose substitution equals substituting by `first` and then by
    /// `self`; as substitution matrices this is the product `self · first`.
    pub fn after(&self, first: &LinearMap) -> LinearMap {
        assert!(self.table == first.table, "mismatched variable table");
        let n = self.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = CycNum::zero();
                        for (k, row) in first.matrix.iter().enumerate() {
                            acc = acc.add(&self.matrix[i][k].mul(&row[j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        LinearMap {
            table: self.table.clone(),
            matrix,
        }
    }

    pub fn pow(&self, e: u32) -> LinearMap {
        let mut acc = Self::identity(&self.table);
        for _ in 0..e {
            acc = self.after(&acc);
        }
        acc
    }

    /// Exact determinant by Gaussian elimination over the coefficient field.
    pub fn det(&self) -> CycNum {
        let n = self.dim();
        let mut m: Vec<Vec<CycNum>> = self.matrix.clone();
        let mut det = CycNum::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
                Some(p) => p,
                None => return CycNum::zero(),
            };
            if pivot != col {
                m.swap(pivot, col);
                det = det.neg();
            }
            det = det.mul(&m[col][col]);
            let inv = m[col][col].inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].mul(&inv);
                for c in col..n {
                    let delta = factor.mul(&m[col][c]);
                    m[r][c] = m[r][c].sub(&delta);
                }
            }
        }
        det
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[i][j].is_zero()))
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    self.matrix[i][j].is_one()
                } else {
                    self.matrix[i][j].is_zero()
                }
            })
        })
    }
}
