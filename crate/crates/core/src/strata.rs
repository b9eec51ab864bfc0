//! Stratum classification: the rank-only classifier and the chart
//! polynomials evaluated at the nodes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::MinorVector;
use crate::problem::{block_matrix, build_submatrix_i, reduced_block_matrix, HermiteData};
use crate::linalg::ExactMatrix;
use crate::solvers::{detect_defect, zero_numerator_denominator, Chart, MinorTable};

/// Values of the two chart polynomials at one node (0-based index).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeChartValues {
    pub node: usize,
    pub lower: Scalar,
    pub upper: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub defect: usize,
    /// Δ_{t,t} keyed by t. Empty for the rank-only classifier.
    pub diagonal_minors: BTreeMap<usize, Scalar>,
    /// `None` for the rank-only classifier.
    pub chart: Option<Chart>,
    pub unattainable: bool,
    pub witnesses: Vec<usize>,
    pub node_charts: Vec<NodeChartValues>,
}

/// How the per-node submatrix of the rank classifier is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubmatrixRule {
    /// Drop block i's last row and columns k-j and n-2j+1 (1-based) of
    /// M_{k-1-j,n-k-j}.
    ColumnDrop,
    /// Build M^i with both degree bounds lowered by one.
    LoweredDegrees,
}

pub fn classify_by_rank(data: &HermiteData) -> Result<StratumReport> {
    classify_by_rank_with(data, SubmatrixRule::ColumnDrop)
}

/// Rank-only classifier. Starting from j = m, step down while
/// M_{k-1-j,n-k-j} has full column rank; at the first j with a nontrivial
/// kernel, node i is a witness when its submatrix has a nontrivial kernel.
pub fn classify_by_rank_with(data: &HermiteData, rule: SubmatrixRule) -> Result<StratumReport> {
    let (n, k) = (data.n(), data.k());
    if let Some(report) = zero_numerator_by_rank(data)? {
        return Ok(report);
    }
    let mut j = data.m();
    loop {
        let (a_cols, b_cols) = (k - j, n + 1 - k - j);
        if block_matrix(data, a_cols, b_cols).rank() < a_cols + b_cols {
            break;
        }
        if j == 0 {
            return Err(Error::InternalInconsistency(
                "M_{k-1,n-k} has a trivial kernel".into(),
            ));
        }
        j -= 1;
    }
    let target = n - 2 * j - 1;
    let mut witnesses = Vec::new();
    for i in 0..data.l() {
        let sub = match rule {
            SubmatrixRule::ColumnDrop => build_submatrix_i(
                data,
                k - 1 - j,
                n - k - j,
                i + 1,
                Some((k - j, n - 2 * j + 1)),
            )?,
            SubmatrixRule::LoweredDegrees => reduced_block_matrix(data, k - j - 1, n - k - j, i)?,
        };
        if sub.rank() != target {
            witnesses.push(i);
        }
    }
    Ok(StratumReport {
        defect: j + 1,
        diagonal_minors: BTreeMap::new(),
        chart: None,
        unattainable: !witnesses.is_empty(),
        witnesses,
        node_charts: Vec::new(),
    })
}

/// Every kernel vector of M_{k-1,n-k} has A = 0 exactly when the B columns
/// are dependent. The kernel is then the null space of the B block, and B0
/// vanishes at node i exactly when block i of the B columns is nonzero.
fn zero_numerator_by_rank(data: &HermiteData) -> Result<Option<StratumReport>> {
    let b_cols = data.n() + 1 - data.k();
    let b_block = block_matrix(data, 0, b_cols);
    let rank = b_block.rank();
    if rank == b_cols {
        return Ok(None);
    }
    let mut witnesses = Vec::new();
    let mut offset = 0;
    for (i, &ni) in data.multiplicities().iter().enumerate() {
        let rows = (offset..offset + ni).map(|r| b_block.row(r).to_vec()).collect();
        if ExactMatrix::from_rows(data.field(), rows)?.rank() > 0 {
            witnesses.push(i);
        }
        offset += ni;
    }
    Ok(Some(StratumReport {
        defect: b_cols - rank,
        diagonal_minors: BTreeMap::new(),
        chart: None,
        unattainable: !witnesses.is_empty(),
        witnesses,
        node_charts: Vec::new(),
    }))
}

/// sum_{l=k-j+1}^{n-2j+2} Δ_{k-j+1,l+1} u^(l-k+j-1)
fn lower_chart_value(data: &HermiteData, mv: &MinorVector, j: usize, u: &Scalar) -> Scalar {
    let (k, n) = (data.k(), data.n());
    let mut acc = data.field().zero();
    for l in (k + 1 - j..=n + 2 - 2 * j).rev() {
        acc = &(&acc * u) + &mv.values[l];
    }
    acc
}

/// sum_{l=k+j-1}^{n} Δ_{k+j-1,l+1} u^(l-k-j+1)
fn upper_chart_value(data: &HermiteData, mv: &MinorVector, j: usize, u: &Scalar) -> Scalar {
    let (k, n) = (data.k(), data.n());
    let mut acc = data.field().zero();
    for l in (k + j - 1..=n).rev() {
        acc = &(&acc * u) + &mv.values[l];
    }
    acc
}

/// Detects the defect by the diagonal minors, evaluates both chart
/// polynomials at every node and reads the witnesses off the chart with a
/// nonzero certificate.
pub fn stratum_equations(data: &HermiteData) -> Result<StratumReport> {
    let (n, k, m) = (data.n(), data.k(), data.m());
    let mut table = MinorTable::new(data);
    let detected = detect_defect(&mut table)?;
    let zero_b0 = match detected {
        Some(_) => None,
        None => Some(zero_numerator_denominator(data).ok_or_else(|| {
            Error::InternalInconsistency("no chart certificate is nonzero for any defect".into())
        })?),
    };
    // charts are evaluated at m+1 when no certificate exists
    let (j, chart) = detected.unwrap_or((m + 1, Chart::ZeroNumerator));
    let mut diagonal_minors = BTreeMap::new();
    for t in (k - m).max(1)..=(k + m + 1).min(n + 1) {
        diagonal_minors.insert(t, table.diagonal(t)?);
    }
    let lower = table.vector(k + 1 - j)?.clone();
    let upper = table.vector(k + j - 1)?.clone();
    let node_charts: Vec<NodeChartValues> = data
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, u)| NodeChartValues {
            node: i,
            lower: lower_chart_value(data, &lower, j, u),
            upper: upper_chart_value(data, &upper, j, u),
        })
        .collect();
    let vanishing = |pick: fn(&NodeChartValues) -> &Scalar| -> Vec<usize> {
        node_charts
            .iter()
            .filter(|v| pick(v).is_zero())
            .map(|v| v.node)
            .collect()
    };
    let witnesses = match chart {
        Chart::Lower => vanishing(|v| &v.lower),
        Chart::Upper => vanishing(|v| &v.upper),
        Chart::ZeroNumerator => {
            let b0 = zero_b0.as_ref().expect("set when no chart is certified");
            data.nodes()
                .iter()
                .enumerate()
                .filter(|(_, u)| b0.eval(u).is_zero())
                .map(|(i, _)| i)
                .collect()
        }
        Chart::Both => {
            let lo = vanishing(|v| &v.lower);
            if lo != vanishing(|v| &v.upper) {
                return Err(Error::InternalInconsistency(
                    "the two charts disagree on the vanishing nodes".into(),
                ));
            }
            lo
        }
    };
    let defect = match &zero_b0 {
        Some(b0) => {
            let deg_b0 = b0.degree().finite().expect("nonzero product");
            n - k - deg_b0 + 1
        }
        None => j,
    };
    Ok(StratumReport {
        defect,
        diagonal_minors,
        chart: Some(chart),
        unattainable: !witnesses.is_empty(),
        witnesses,
        node_charts,
    })
}

/// Closed-form membership for shape (2,1), k = 2:
/// (v10 = v20 and v11 != 0) or (v11 = 0 and v10 != v20).
pub fn b1_closed_form(data: &HermiteData) -> Result<bool> {
    if data.multiplicities() != [2, 1] || data.k() != 2 {
        return Err(Error::ShapeMismatch(
            "closed form needs shape (2,1) and k = 2".into(),
        ));
    }
    let (v10, v11, v20) = (data.value(0, 0), data.value(0, 1), data.value(1, 0));
    Ok((v10 == v20 && !v11.is_zero()) || (v11.is_zero() && v10 != v20))
}

/// Whether the closed form agrees with the rank classifier.
pub fn b1_closed_form_check(data: &HermiteData) -> Result<bool> {
    Ok(b1_closed_form(data)? == classify_by_rank(data)?.unattainable)
}
