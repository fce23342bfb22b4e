//! Dense matrices over an exact field: row reduction, rank, kernels and
//! inverses.

use std::fmt;

use thiserror::Error;

use crate::polyring::PolyMatrix;
use crate::scalars::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    Shape { left: (usize, usize), right: (usize, usize) },
    #[error("ragged rows: expected {expected} columns, row {row} has {found}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("entry belongs to a different field")]
    FieldMismatch,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: DenseMatrix,
    pub pivots: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged {
                    row: r,
                    expected: cols,
                    found: row.len(),
                });
            }
            if row.iter().any(|c| c.field() != field) {
                return Err(LinalgError::FieldMismatch);
            }
            data.extend(row);
        }
        Ok(DenseMatrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows, cols).expect("rectangular integer matrix")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn try_mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> DenseMatrix {
        let mut out = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                out.set(r, c, v.clone());
            }
        }
        out
    }

    /// Gauss-Jordan elimination. Pivots are taken as the first nonzero
    /// entry of each column in turn, scanning rows top to bottom.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&f * m.get(row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of the right kernel, one column per free variable.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, e.reduced.get(r, n + c).clone());
            }
        }
        Some(out)
    }

    /// Embeds the matrix as constant polynomials over `ring`.
    pub fn to_poly(&self, ring: &std::sync::Arc<crate::polyring::PolyRing>) -> PolyMatrix {
        let cols: Vec<Vec<_>> = (0..self.cols)
            .map(|c| {
                self.column(c)
                    .into_iter()
                    .map(|s| crate::polyring::Polynomial::constant(ring, s))
                    .collect()
            })
            .collect();
        PolyMatrix::from_columns(ring, self.rows, &cols)
    }
}

/// Evaluates every entry of a polynomial matrix at a point.
pub fn specialize(m: &PolyMatrix, point: &[Scalar]) -> DenseMatrix {
    let field = m.ring().field();
    let mut out = DenseMatrix::zeros(field, m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.set(r, c, m.get(r, c).evaluate(point));
        }
    }
    out
}

/// Cycles of `d_out` not in the image of `d_in`, as a basis of a complement
/// of the boundaries inside the cycles. `d_out: C -> C'` and `d_in: C'' -> C`.
pub fn homology_basis(d_out: &DenseMatrix, d_in: &DenseMatrix) -> Vec<Vec<Scalar>> {
    let field = d_out.field;
    let n = d_out.cols;
    let mut span: Vec<Vec<Scalar>> = (0..d_in.cols).map(|c| d_in.column(c)).collect();
    let mut rank = DenseMatrix::from_columns(field, n, &span).rank();
    let mut out = Vec::new();
    for z in d_out.kernel() {
        span.push(z.clone());
        let r = DenseMatrix::from_columns(field, n, &span).rank();
        if r > rank {
            rank = r;
            out.push(z);
        } else {
            span.pop();
        }
    }
    out
}

/// Coordinates of `v` along `basis` modulo the column span of `image`, or
/// `None` when `v` is not in `span(image) + span(basis)`.
pub fn coordinates_modulo(image: &DenseMatrix, basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    let field = image.field;
    let n = v.len();
    let mut cols: Vec<Vec<Scalar>> = basis.to_vec();
    cols.extend((0..image.cols).map(|c| image.column(c)));
    cols.push(v.to_vec());
    let m = DenseMatrix::from_columns(field, n, &cols);
    let last = cols.len() - 1;
    let k = m.kernel().into_iter().find(|k| !k[last].is_zero())?;
    let scale = -k[last].inv().expect("nonzero");
    Some(k[..basis.len()].iter().map(|x| x * &scale).collect())
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rank_and_kernel() {
        let m = DenseMatrix::from_i64(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            let col = DenseMatrix::from_columns(Q, 3, &[v]);
            assert!(m.try_mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = DenseMatrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.try_mul(&inv).unwrap(), DenseMatrix::identity(Q, 2));
        assert!(DenseMatrix::from_i64(Q, &[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn prime_field_rank_drops() {
        let f7 = FieldSpec::prime(7).unwrap();
        let m = DenseMatrix::from_i64(f7, &[&[1, 2], &[3, 13]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(DenseMatrix::from_i64(Q, &[&[1, 2], &[3, 13]]).rank(), 2);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-2i64..=2, 25)) {
            let data: Vec<Vec<Scalar>> = (0..rows)
                .map(|r| (0..cols).map(|c| Q.from_i64(seed[r * 5 + c])).collect())
                .collect();
            let m = DenseMatrix::from_rows(Q, data, cols).unwrap();
            prop_assert_eq!(m.rank() + m.kernel().len(), cols);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
