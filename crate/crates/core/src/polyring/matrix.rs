use std::fmt;
use std::sync::Arc;

use super::{parse_poly, PolyError, PolyRing, Polynomial, RingHom};

/// Dense row-major matrix of polynomials over one ambient ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>, cols: usize) -> Result<Self, PolyError> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(PolyError::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for p in row {
                if **p.ring() != **ring {
                    return Err(PolyError::RingMismatch);
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Parses a grid of polynomial strings. `cols` fixes the width so that
    /// matrices with zero rows keep their shape.
    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, grid: &[Vec<S>], cols: usize) -> Result<Self, PolyError> {
        let rows = grid
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(s.as_ref(), ring)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(ring, rows, cols)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn from_columns(ring: &Arc<PolyRing>, rows: usize, columns: &[Vec<Polynomial>]) -> Self {
        let mut m = Self::zero(ring, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, p) in col.iter().enumerate() {
                m.set(r, c, p.clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        if *self.ring != *other.ring {
            return Err(PolyError::RingMismatch);
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.shape() != other.shape() {
            return Err(PolyError::LengthMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(&self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Copies `block` into position `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> PolyMatrix {
        let mut b = PolyMatrix::zero(&self.ring, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                b.set(i, j, self.get(r, c).clone());
            }
        }
        b
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut m = PolyMatrix::zero(&self.ring, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn apply_hom(&self, hom: &RingHom) -> Result<PolyMatrix, PolyError> {
        let ring = hom.target().ambient().clone();
        let entries = self
            .entries
            .iter()
            .map(|p| hom.apply(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Entries as printed strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|p| p.to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
