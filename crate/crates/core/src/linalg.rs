//! Exact dense linear algebra by fraction-free (Bareiss) elimination.
//!
//! Pivots are the first nonzero entry of each column, scanning rows top-down.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use crate::problem::{delta_matrix, HermiteData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: FieldConfig,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivot_cols: Vec<usize>,
    swaps: usize,
}

impl ExactMatrix {
    /// Row-major entries, all in `field`.
    pub fn new(field: FieldConfig, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(s) = data.iter().find(|s| s.field() != field) {
            return Err(Error::MixedFields(field, s.field()));
        }
        Ok(ExactMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: FieldConfig, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub(crate) fn from_rows_trusted(
        field: FieldConfig,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<Scalar>>,
    ) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: entries.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(field: FieldConfig, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldConfig, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> FieldConfig {
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

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn without_row(&self, r: usize) -> ExactMatrix {
        let rows: Vec<Vec<Scalar>> = (0..self.rows)
            .filter(|&i| i != r)
            .map(|i| self.row(i).to_vec())
            .collect();
        Self::from_rows_trusted(self.field, self.rows - 1, self.cols, rows)
    }

    /// Removes the given 0-based columns.
    pub fn without_cols(&self, drop: &[usize]) -> ExactMatrix {
        let keep: Vec<usize> = (0..self.cols).filter(|c| !drop.contains(c)).collect();
        let rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| keep.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        Self::from_rows_trusted(self.field, self.rows, keep.len(), rows)
    }

    pub fn without_col(&self, c: usize) -> ExactMatrix {
        self.without_cols(&[c])
    }

    /// Appends a row of matching length.
    pub fn with_row(&self, row: Vec<Scalar>) -> Result<ExactMatrix> {
        if row.len() != self.cols {
            return Err(Error::ShapeMismatch("row length differs from column count".into()));
        }
        let mut rows = self.to_rows();
        rows.push(row);
        Self::from_rows(self.field, rows)
    }

    pub fn mul_vec(&self, w: &[Scalar]) -> Result<Vec<Scalar>> {
        if w.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                w.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(w)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    fn echelon(&self) -> Echelon {
        let mut a = self.to_rows();
        let mut prev = self.field.one();
        let mut r = 0;
        let mut pivot_cols = Vec::new();
        let mut swaps = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let piv = a[r][c].clone();
            for i in r + 1..self.rows {
                let lead = a[i][c].clone();
                for jj in c + 1..self.cols {
                    let v = &(&piv * &a[i][jj]) - &(&lead * &a[r][jj]);
                    a[i][jj] = v.checked_div(&prev).expect("nonzero Bareiss pivot");
                }
                a[i][c] = self.field.zero();
            }
            prev = piv;
            pivot_cols.push(c);
            r += 1;
        }
        Echelon {
            rows: a,
            pivot_cols,
            swaps,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivot_cols.len()
    }

    /// Right null space basis. Each vector has first nonzero coordinate 1;
    /// free columns are taken in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !ech.pivot_cols.contains(c))
            .collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![self.field.zero(); self.cols];
                x[f] = self.field.one();
                for (r, &pc) in ech.pivot_cols.iter().enumerate().rev() {
                    let mut acc = self.field.zero();
                    for c in pc + 1..self.cols {
                        if !x[c].is_zero() {
                            acc = &acc + &(&ech.rows[r][c] * &x[c]);
                        }
                    }
                    x[pc] = (-acc)
                        .checked_div(&ech.rows[r][pc])
                        .expect("nonzero pivot");
                }
                normalize_first_nonzero(x)
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(self.field.one());
        }
        let ech = self.echelon();
        if ech.pivot_cols.len() < self.rows {
            return Ok(self.field.zero());
        }
        let d = ech.rows[self.rows - 1][self.cols - 1].clone();
        Ok(if ech.swaps % 2 == 1 { -d } else { d })
    }

    /// For an r x (r+1) matrix, entry i (1-based) is (-1)^i det(M without column i).
    /// One elimination: a kernel vector fixes the ratios, one determinant the scale.
    pub fn signed_minors(&self) -> Result<Vec<Scalar>> {
        if self.cols != self.rows + 1 {
            return Err(Error::ShapeMismatch(format!(
                "maximal minors need r x (r+1), got {}x{}",
                self.rows, self.cols
            )));
        }
        let basis = self.kernel_basis();
        if basis.len() != 1 {
            return Ok(vec![self.field.zero(); self.cols]);
        }
        let w = &basis[0];
        let i0 = w.iter().position(|s| !s.is_zero()).expect("nonzero kernel vector");
        let det = self.without_col(i0).determinant()?;
        let scale = if (i0 + 1) % 2 == 0 { det } else { -det };
        let scale = scale.checked_div(&w[i0])?;
        Ok(w.iter().map(|x| x * &scale).collect())
    }
}

fn normalize_first_nonzero(x: Vec<Scalar>) -> Vec<Scalar> {
    match x.iter().find(|s| !s.is_zero()) {
        None => x,
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            x.iter().map(|s| s * &inv).collect()
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(Scalar::to_string).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
            .collect();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// The signed maximal minors Δ_{t,1..n+1} of M_{t-1,n-t}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorVector {
    pub t: usize,
    pub values: Vec<Scalar>,
}

impl MinorVector {
    pub fn compute(data: &HermiteData, t: usize) -> Result<Self> {
        let values = delta_matrix(data, t)?.signed_minors()?;
        Ok(MinorVector { t, values })
    }

    /// Δ_{t,i} with 1-based `i`.
    pub fn get(&self, i: usize) -> &Scalar {
        &self.values[i - 1]
    }

    /// Δ_{t,t}.
    pub fn diagonal(&self) -> &Scalar {
        self.get(self.t)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldConfig = FieldConfig::Rationals;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            Q,
            rows.iter()
                .map(|r| r.iter().map(|&v| Q.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(ExactMatrix::identity(Q, 3).rank(), 3);
        assert_eq!(ExactMatrix::zeros(Q, 3, 4).rank(), 0);
        assert_eq!(m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]).rank(), 2);
    }

    #[test]
    fn kernels() {
        assert!(ExactMatrix::identity(Q, 4).kernel_basis().is_empty());
        assert_eq!(m(&[&[1, -1]]).kernel_basis(), vec![v(&[1, 1])]);
        let k = m(&[&[0, 1, 2], &[0, 2, 4]]).kernel_basis();
        let half = Q.parse("-1/2").unwrap();
        assert_eq!(k, vec![v(&[1, 0, 0]), vec![Q.zero(), Q.one(), half]]);
    }

    #[test]
    fn determinants() {
        assert_eq!(ExactMatrix::identity(Q, 5).determinant().unwrap(), Q.one());
        assert_eq!(m(&[&[1, 2], &[1, 2]]).determinant().unwrap(), Q.zero());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), Q.from_i64(-1));
        assert_eq!(
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).determinant().unwrap(),
            Q.from_i64(6)
        );
        assert!(m(&[&[1, 2]]).determinant().is_err());
    }

    #[test]
    fn one_by_two_minors() {
        // (-1)^1 * 2, (-1)^2 * 1
        let s = m(&[&[1, 2]]).signed_minors().unwrap();
        assert_eq!(s, v(&[-2, 1]));
        assert!(m(&[&[1, 2]]).mul_vec(&s).unwrap()[0].is_zero());
        assert!(matches!(
            m(&[&[1, 2], &[3, 4]]).signed_minors(),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn rank_deficient_minors_vanish() {
        let s = m(&[&[1, 2, 3], &[2, 4, 6]]).signed_minors().unwrap();
        assert!(s.iter().all(Scalar::is_zero));
    }

    #[test]
    fn display_aligns() {
        let text = m(&[&[1, -10], &[100, 2]]).to_string();
        assert_eq!(text, "[   1  -10 ]\n[ 100    2 ]\n");
    }
}
