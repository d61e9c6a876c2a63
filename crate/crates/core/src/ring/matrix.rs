use crate::error::{Error, Result};

use super::{Poly, Ring};

/// A `rows x cols` matrix over a ring, row-major. As a map it sends the
/// `j`-th basis vector of `R^cols` to column `j` in `R^rows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(PolyMatrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Poly>]) -> Result<PolyMatrix> {
        let mut m = PolyMatrix::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!("column {j} has length {}, expected {rows}", c.len())));
            }
            for (i, p) in c.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<Poly> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Poly> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zero(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, ring: &Ring, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = ring.add(&acc, &ring.poly().mul(a, b));
                    }
                }
                out.set(i, j, ring.reduce(&acc));
            }
        }
        Ok(out)
    }

    /// Image of a vector of `R^cols`.
    pub fn apply(&self, ring: &Ring, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                let acc = (0..self.cols).fold(Poly::zero(), |acc, k| {
                    ring.add(&acc, &ring.poly().mul(self.get(i, k), &v[k]))
                });
                ring.reduce(&acc)
            })
            .collect())
    }

    pub fn add(&self, ring: &Ring, other: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| ring.add(a, b)).collect(),
        })
    }

    pub fn map_entries<F: FnMut(&Poly) -> Poly>(&self, f: F) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn format(&self, ring: &Ring) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|p| ring.format(p)).collect::<Vec<_>>().join(", "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}
