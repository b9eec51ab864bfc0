//! Slow reference implementations, independent of the elimination in
//! `linalg`, used to cross-check it.

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use crate::linalg::ExactMatrix;

const MAX_COFACTOR: usize = 9;
const MAX_BRUTE_COLS: usize = 8;

/// Laplace expansion along the first row.
pub fn cofactor_determinant(m: &ExactMatrix) -> Result<Scalar> {
    if m.rows() != m.cols() {
        return Err(Error::ShapeMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() > MAX_COFACTOR {
        return Err(Error::TooLarge(m.rows()));
    }
    let rows = m.to_rows();
    let idx: Vec<usize> = (0..m.cols()).collect();
    Ok(laplace(m.field(), &rows, 0, &idx))
}

fn laplace(field: FieldConfig, rows: &[Vec<Scalar>], r: usize, cols: &[usize]) -> Scalar {
    if cols.is_empty() {
        return field.one();
    }
    let mut acc = field.zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &laplace(field, rows, r + 1, &rest);
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Largest r with a nonzero r x r minor.
pub fn minor_scan_rank(m: &ExactMatrix) -> Result<usize> {
    let top = m.rows().min(m.cols());
    if top > MAX_COFACTOR {
        return Err(Error::TooLarge(top));
    }
    let rows = m.to_rows();
    for r in (1..=top).rev() {
        for rs in combinations(m.rows(), r) {
            for cs in combinations(m.cols(), r) {
                let sub: Vec<Vec<Scalar>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
                    .collect();
                let idx: Vec<usize> = (0..r).collect();
                if !laplace(m.field(), &sub, 0, &idx).is_zero() {
                    return Ok(r);
                }
            }
        }
    }
    Ok(0)
}

/// Gauss-Jordan to reduced row echelon form, pivoting on the last nonzero
/// entry of each column; one basis vector per free column.
pub fn brute_force_kernel(m: &ExactMatrix) -> Result<Vec<Vec<Scalar>>> {
    if m.cols() > MAX_BRUTE_COLS {
        return Err(Error::TooLarge(m.cols()));
    }
    let field = m.field();
    let mut a = m.to_rows();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..m.rows()).rev().find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv()?;
        a[r] = a[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.rows() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                a[i] = a[i].iter().zip(&a[r]).map(|(x, y)| x - &(&f * y)).collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|c| !pivots.contains(c)) {
        let mut w = vec![field.zero(); m.cols()];
        w[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            w[pc] = -a[row][free].clone();
        }
        basis.push(w);
    }
    Ok(basis)
}

/// (-1)^i times the cofactor determinant with column i (1-based) removed.
pub fn naive_signed_minors(m: &ExactMatrix) -> Result<Vec<Scalar>> {
    if m.cols() != m.rows() + 1 {
        return Err(Error::ShapeMismatch(format!(
            "signed minors of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    (0..m.cols())
        .map(|c| {
            let d = cofactor_determinant(&m.without_col(c))?;
            Ok(if c % 2 == 0 { -d } else { d })
        })
        .collect()
}

/// Whether two sets of vectors in F^dim span the same subspace.
pub fn same_span(field: FieldConfig, dim: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<bool> {
    let rank_of = |vs: Vec<Vec<Scalar>>| -> Result<usize> {
        if vs.is_empty() {
            return Ok(0);
        }
        Ok(ExactMatrix::from_rows(field, vs)?.rank())
    };
    if a.iter().chain(b).any(|v| v.len() != dim) {
        return Err(Error::ShapeMismatch("vector length differs from dim".into()));
    }
    let ra = rank_of(a.to_vec())?;
    let rb = rank_of(b.to_vec())?;
    let rab = rank_of(a.iter().chain(b).cloned().collect())?;
    Ok(ra == rb && ra == rab)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldConfig = FieldConfig::Rationals;

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(Q, rows.iter().map(|r| r.iter().map(|&x| Q.from_i64(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn cofactor_three_by_three() {
        let m = mat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(cofactor_determinant(&m).unwrap(), Q.from_i64(6));
    }

    #[test]
    fn scan_rank_and_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(minor_scan_rank(&m).unwrap(), 1);
        let k = brute_force_kernel(&m).unwrap();
        assert_eq!(k.len(), 2);
        for w in &k {
            assert!(m.mul_vec(w).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn one_by_two_minors() {
        assert_eq!(naive_signed_minors(&mat(&[&[1, 2]])).unwrap(), vec![Q.from_i64(-2), Q.one()]);
    }

    #[test]
    fn spans() {
        let a = vec![vec![Q.one(), Q.zero()]];
        let b = vec![vec![Q.from_i64(3), Q.zero()]];
        let c = vec![vec![Q.zero(), Q.one()]];
        assert!(same_span(Q, 2, &a, &b).unwrap());
        assert!(!same_span(Q, 2, &a, &c).unwrap());
        assert!(same_span(Q, 2, &[], &[]).unwrap());
    }

    #[test]
    fn size_limits() {
        assert!(matches!(brute_force_kernel(&ExactMatrix::zeros(Q, 1, 9)), Err(Error::TooLarge(9))));
    }
}
