use std::fmt;

use super::TropicalValue;
use crate::{Error, Result};

/// A dense `rows × cols` matrix over `T_min`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropicalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TropicalValue>,
}

impl TropicalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<TropicalValue>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "a tropical matrix needs at least one row and one column, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(TropicalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<TropicalValue>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::Shape(format!(
                "row {} has {} entries, expected {c}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Parses the compact text form `"1 4 1; -1 0 -2; 3 inf 2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .split(';')
            .map(|row| {
                row.split_whitespace()
                    .map(str::parse::<TropicalValue>)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn filled(rows: usize, cols: usize, value: TropicalValue) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    /// The min-tropical unit matrix: `0` on the diagonal, `∞` elsewhere.
    pub fn identity(k: usize) -> Result<Self> {
        let mut m = Self::filled(k, k, TropicalValue::Infinity)?;
        for i in 0..k {
            m.set(i, i, TropicalValue::zero());
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TropicalValue {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: TropicalValue) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[TropicalValue] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<TropicalValue> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<TropicalValue>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        TropicalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// The submatrix on the given (ordered) row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| {
                if i < self.rows && j < self.cols {
                    Ok(self.get(i, j).clone())
                } else {
                    Err(Error::Shape(format!("index ({},{}) out of range", i + 1, j + 1)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows.len(), cols.len(), entries)
    }

    /// Entrywise tropical sum `self ⊕ other`.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.oplus(b))
            .collect();
        Self::new(self.rows, self.cols, entries)
    }

    /// Tropical matrix product `self ⊙ other`.
    pub fn tmul(&self, other: &Self) -> Result<Self> {
        trop_mat_mul(self, other)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &TropicalValue)> {
        let cols = self.cols;
        self.entries
            .iter()
            .enumerate()
            .map(move |(idx, v)| (idx / cols, idx % cols, v))
    }
}

/// `(A ⊙ B)_ij = min_l (a_il + b_lj)`.
pub fn trop_mat_mul(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<TropicalMatrix> {
    if a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut entries = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut best = TropicalValue::Infinity;
            for l in 0..a.cols {
                let (x, y) = (a.get(i, l), b.get(l, j));
                if let (TropicalValue::Finite(x), TropicalValue::Finite(y)) = (x, y) {
                    let s = TropicalValue::Finite(x + y);
                    if s < best {
                        best = s;
                    }
                }
            }
            entries.push(best);
        }
    }
    TropicalMatrix::new(a.rows, b.cols, entries)
}

impl fmt::Display for TropicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            if i > 0 {
                f.write_str("; ")?;
            }
            f.write_str(&row.join(" "))?;
        }
        Ok(())
    }
}
