//! Interpolation data and the structured matrices built from it.
//!
//! Node indices are 0-based in the API. Column and node numbers that quote a
//! minor Δ_{t,i} or the rank classifier's column drops are 1-based, as noted
//! on each function.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{binomial, pochhammer, FieldConfig, Scalar};
use crate::linalg::ExactMatrix;
use crate::poly::{Degree, Poly};

/// Nodes u_i, Taylor data v_{i,j} (the j-th derivative target is j! v_{i,j})
/// and the numerator-degree parameter k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteData {
    field: FieldConfig,
    nodes: Vec<Scalar>,
    values: Vec<Vec<Scalar>>,
    multiplicities: Vec<usize>,
    k: usize,
}

impl HermiteData {
    /// Validates and builds the data. The multiplicity of node i is
    /// `values[i].len()`.
    pub fn new(
        field: FieldConfig,
        nodes: Vec<Scalar>,
        values: Vec<Vec<Scalar>>,
        k: usize,
    ) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidInput("at least one node is required".into()));
        }
        if nodes.len() != values.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} nodes but {} value lists",
                nodes.len(),
                values.len()
            )));
        }
        for (i, vs) in values.iter().enumerate() {
            if vs.is_empty() {
                return Err(Error::InvalidInput(format!("node {i} has no values")));
            }
        }
        for s in nodes.iter().chain(values.iter().flatten()) {
            if s.field() != field {
                return Err(Error::MixedFields(field, s.field()));
            }
        }
        for i in 0..nodes.len() {
            for j in 0..i {
                if nodes[i] == nodes[j] {
                    return Err(Error::DuplicateNodes(nodes[i].to_string()));
                }
            }
        }
        let multiplicities: Vec<usize> = values.iter().map(Vec::len).collect();
        let n: usize = multiplicities.iter().sum();
        if k < 1 || k > n {
            return Err(Error::InvalidInput(format!("k = {k} must lie in 1..={n}")));
        }
        field.check_multiplicities(&multiplicities)?;
        Ok(HermiteData {
            field,
            nodes,
            values,
            multiplicities,
            k,
        })
    }

    /// Same nodes and values with another k.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(self.field, self.nodes.clone(), self.values.clone(), k)
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn nodes(&self) -> &[Scalar] {
        &self.nodes
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> &Scalar {
        &self.values[i][j]
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of nodes l.
    pub fn l(&self) -> usize {
        self.nodes.len()
    }

    /// Total number of conditions n = sum n_i.
    pub fn n(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// m = min(k-1, n-k).
    pub fn m(&self) -> usize {
        (self.k - 1).min(self.n() - self.k)
    }
}

/// A pair (A, B) standing for A/B.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalSolution {
    #[serde(rename = "A")]
    pub numerator: Poly,
    #[serde(rename = "B")]
    pub denominator: Poly,
}

impl RationalSolution {
    pub fn new(numerator: Poly, denominator: Poly) -> Self {
        RationalSolution {
            numerator,
            denominator,
        }
    }

    /// A1 B2 - A2 B1 = 0.
    pub fn same_function(&self, other: &RationalSolution) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero() && self.denominator.is_zero()
    }
}

/// M_{alpha,beta}: n rows, alpha+1 columns for A and beta+1 for B.
pub fn build_matrix(data: &HermiteData, alpha: usize, beta: usize) -> ExactMatrix {
    block_matrix(data, alpha + 1, beta + 1)
}

/// The structured matrix with explicit column counts, either of which may be 0.
///
/// Row j of node i: A column l holds C(l,j) u_i^(l-j); B column l holds
/// -sum_{t<=j} C(l,t) v_{i,j-t} u_i^(l-t).
pub fn block_matrix(data: &HermiteData, a_cols: usize, b_cols: usize) -> ExactMatrix {
    let field = data.field();
    let mut rows = Vec::with_capacity(data.n());
    for (i, u) in data.nodes().iter().enumerate() {
        let powers: Vec<Scalar> = (0..a_cols.max(b_cols) + 1).map(|e| u.pow(e as u64)).collect();
        for j in 0..data.multiplicities()[i] {
            let mut row = Vec::with_capacity(a_cols + b_cols);
            for l in 0..a_cols {
                row.push(if l < j {
                    field.zero()
                } else {
                    &binomial(field, l as u64, j as u64) * &powers[l - j]
                });
            }
            for l in 0..b_cols {
                let mut acc = field.zero();
                for t in 0..=j.min(l) {
                    let term = &binomial(field, l as u64, t as u64) * data.value(i, j - t);
                    acc = &acc + &(&term * &powers[l - t]);
                }
                row.push(-acc);
            }
            rows.push(row);
        }
    }
    ExactMatrix::from_rows_trusted(field, data.n(), a_cols + b_cols, rows)
}

/// M_{t-1, n-t}, the n x (n+1) matrix whose signed maximal minors are Δ_{t,i}.
/// `t` ranges over 1..=n+1; t = n+1 has no B columns.
pub fn delta_matrix(data: &HermiteData, t: usize) -> Result<ExactMatrix> {
    let n = data.n();
    if t < 1 || t > n + 1 {
        return Err(Error::ShapeMismatch(format!("t = {t} outside 1..={}", n + 1)));
    }
    Ok(block_matrix(data, t, n + 1 - t))
}

/// Row index (0-based) of the last row of node `i`'s block (`i` 0-based).
fn last_row_of_block(data: &HermiteData, i: usize) -> usize {
    data.multiplicities()[..=i].iter().sum::<usize>() - 1
}

/// M^i_{alpha,beta}: build_matrix with the last row of node `i`'s block removed.
/// `i` is 1-based. `drop_cols`, when given, removes two more columns, 1-based.
pub fn build_submatrix_i(
    data: &HermiteData,
    alpha: usize,
    beta: usize,
    i: usize,
    drop_cols: Option<(usize, usize)>,
) -> Result<ExactMatrix> {
    if i < 1 || i > data.l() {
        return Err(Error::BadIndex {
            index: i,
            len: data.l(),
        });
    }
    let full = build_matrix(data, alpha, beta);
    let mut m = full.without_row(last_row_of_block(data, i - 1));
    if let Some((c1, c2)) = drop_cols {
        let cols = m.cols();
        for c in [c1, c2] {
            if c < 1 || c > cols {
                return Err(Error::ShapeMismatch(format!(
                    "column {c} outside 1..={cols}"
                )));
            }
        }
        if c1 == c2 {
            return Err(Error::ShapeMismatch(format!("column {c1} dropped twice")));
        }
        m = m.without_cols(&[c1 - 1, c2 - 1]);
    }
    Ok(m)
}

/// The matrix with explicit column counts and node `i`'s last row removed
/// (`i` 0-based). With counts (alpha, beta) this is M^i_{alpha-1,beta-1}.
pub fn reduced_block_matrix(
    data: &HermiteData,
    a_cols: usize,
    b_cols: usize,
    i: usize,
) -> Result<ExactMatrix> {
    if i >= data.l() {
        return Err(Error::BadIndex {
            index: i + 1,
            len: data.l(),
        });
    }
    Ok(block_matrix(data, a_cols, b_cols).without_row(last_row_of_block(data, i)))
}

/// Splits a column vector of an (a_cols + b_cols)-column matrix into (A, B).
pub fn split_vector(field: FieldConfig, w: &[Scalar], a_cols: usize) -> RationalSolution {
    RationalSolution::new(
        Poly::from_trusted(field, w[..a_cols].to_vec()),
        Poly::from_trusted(field, w[a_cols..].to_vec()),
    )
}

/// Coefficient vector (a_0..a_{a_cols-1}, b_0..b_{b_cols-1}).
pub fn pair_vector(sol: &RationalSolution, a_cols: usize, b_cols: usize) -> Result<Vec<Scalar>> {
    if !sol.numerator.degree().at_most(a_cols as i64 - 1)
        || !sol.denominator.degree().at_most(b_cols as i64 - 1)
    {
        return Err(Error::ShapeMismatch("pair exceeds the column counts".into()));
    }
    let mut w: Vec<Scalar> = (0..a_cols).map(|l| sol.numerator.coeff(l)).collect();
    w.extend((0..b_cols).map(|l| sol.denominator.coeff(l)));
    Ok(w)
}

/// A^(j)(u_i) - sum_t (j)_t v_{i,t} B^(j-t)(u_i), node blocks in order.
pub fn whip_residual(data: &HermiteData, sol: &RationalSolution) -> Vec<Scalar> {
    let field = data.field();
    let mut out = Vec::with_capacity(data.n());
    for (i, u) in data.nodes().iter().enumerate() {
        let ni = data.multiplicities()[i];
        let a_der: Vec<Scalar> = (0..ni).map(|j| sol.numerator.derivative(j).eval(u)).collect();
        let b_der: Vec<Scalar> = (0..ni).map(|j| sol.denominator.derivative(j).eval(u)).collect();
        for j in 0..ni {
            let mut acc = a_der[j].clone();
            for t in 0..=j {
                let coef = &pochhammer(field, j as u64, t as u64) * data.value(i, t);
                acc = &acc - &(&coef * &b_der[j - t]);
            }
            out.push(acc);
        }
    }
    out
}

/// Residual blocks grouped by node.
pub fn whip_residual_blocks(data: &HermiteData, sol: &RationalSolution) -> Vec<Vec<Scalar>> {
    let flat = whip_residual(data, sol);
    let mut out = Vec::with_capacity(data.l());
    let mut start = 0;
    for &ni in data.multiplicities() {
        out.push(flat[start..start + ni].to_vec());
        start += ni;
    }
    out
}

/// True when (A, B) meets the degree bounds, solves the weak problem and B
/// does not vanish at any node, so A/B interpolates the data.
pub fn rhip_check(data: &HermiteData, sol: &RationalSolution) -> bool {
    let k = data.k() as i64;
    let n = data.n() as i64;
    if !sol.numerator.degree().at_most(k - 1) || !sol.denominator.degree().at_most(n - k) {
        return false;
    }
    if sol.denominator.degree() == Degree::NegInfinity {
        return false;
    }
    whip_residual(data, sol).iter().all(Scalar::is_zero)
        && data
            .nodes()
            .iter()
            .all(|u| !sol.denominator.eval(u).is_zero())
}
