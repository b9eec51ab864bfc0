//! Three routes to the minimal solution and the solvability verdict: kernel
//! of the structured matrix, extended Euclid on (F, G), and signed minors.
//!
//! Witness lists hold 0-based node indices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::MinorVector;
use crate::poly::{
    eea, hermite_interpolant, monic_denominator, normalize_pair, product_f, Degree, Poly,
};
use crate::problem::{build_matrix, split_vector, whip_residual_blocks, HermiteData, RationalSolution};

/// The lowest-degree solution of the weak problem, unique up to a scalar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalSolution {
    #[serde(rename = "A0")]
    pub a0: Poly,
    #[serde(rename = "B0")]
    pub b0: Poly,
    pub deg_a: Degree,
    pub deg_b: Degree,
    pub s0: usize,
    pub kernel_dim: usize,
}

impl MinimalSolution {
    /// Normalizes (A monic, or B monic when A = 0) and computes s0.
    pub fn from_pair(data: &HermiteData, a: &Poly, b: &Poly) -> Result<Self> {
        let (a0, b0) = normalize_pair(a, b);
        let s0 = s0_of(data, &a0, &b0)?;
        Ok(MinimalSolution {
            deg_a: a0.degree(),
            deg_b: b0.degree(),
            a0,
            b0,
            s0,
            kernel_dim: s0 + 1,
        })
    }

    pub fn as_solution(&self) -> RationalSolution {
        RationalSolution::new(self.a0.clone(), self.b0.clone())
    }

    /// Nodes where B0 vanishes.
    pub fn witnesses(&self, data: &HermiteData) -> Vec<usize> {
        data.nodes()
            .iter()
            .enumerate()
            .filter(|(_, u)| self.b0.eval(u).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_coprime(&self) -> Result<bool> {
        Ok(self.a0.gcd(&self.b0)?.degree() == Degree::Finite(0))
    }
}

/// min(k-1-dA, n-k-dB), with the zero polynomial imposing no bound.
fn s0_of(data: &HermiteData, a: &Poly, b: &Poly) -> Result<usize> {
    let k = data.k() as i64;
    let n = data.n() as i64;
    let slack = |d: Degree, bound: i64| d.finite().map(|d| bound - d as i64);
    let s = match (slack(a.degree(), k - 1), slack(b.degree(), n - k)) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => {
            return Err(Error::InternalInconsistency("minimal pair is zero".into()))
        }
    };
    usize::try_from(s).map_err(|_| {
        Error::InternalInconsistency(format!("pair exceeds the degree bounds (s0 = {s})"))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Classification {
    /// `reduced` is set when the pair is in lowest terms with monic denominator.
    Solvable {
        solution: RationalSolution,
        reduced: bool,
    },
    Unattainable {
        stratum: usize,
        witnesses: Vec<usize>,
    },
}

impl Classification {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Classification::Solvable { .. })
    }

    pub fn solution(&self) -> Option<&RationalSolution> {
        match self {
            Classification::Solvable { solution, .. } => Some(solution),
            Classification::Unattainable { .. } => None,
        }
    }
}

fn classify_minimal(data: &HermiteData, min: &MinimalSolution, reduced_output: bool) -> Result<Classification> {
    if min.is_coprime()? {
        let solution = if reduced_output {
            let (a, b) = monic_denominator(&min.a0, &min.b0);
            RationalSolution::new(a, b)
        } else {
            min.as_solution()
        };
        Ok(Classification::Solvable {
            solution,
            reduced: reduced_output,
        })
    } else {
        let witnesses = min.witnesses(data);
        if witnesses.is_empty() {
            return Err(Error::InternalInconsistency(
                "common factor of the minimal pair has no root at a node".into(),
            ));
        }
        Ok(Classification::Unattainable {
            stratum: min.kernel_dim,
            witnesses,
        })
    }
}

/// Kernel route: take a kernel vector of M_{k-1,n-k}, cancel the gcd, and
/// rebuild the minimal pair by multiplying back prod (x-u_i)^(n_i-j_i) over
/// the nodes where the reduced pair first fails at derivative order j_i.
pub fn solve_kernel(data: &HermiteData) -> Result<(MinimalSolution, Classification)> {
    let field = data.field();
    let k = data.k();
    let n = data.n();
    let basis = build_matrix(data, k - 1, n - k).kernel_basis();
    let w = basis.first().ok_or_else(|| {
        Error::InternalInconsistency("structured matrix has a trivial kernel".into())
    })?;
    let pair = split_vector(field, w, k);
    if pair.denominator.is_zero() {
        return Err(Error::InternalInconsistency("kernel vector with B = 0".into()));
    }
    let g = pair.numerator.gcd(&pair.denominator)?;
    let a00 = pair.numerator.exact_div(&g)?.expect("gcd divides");
    let b00 = pair.denominator.exact_div(&g)?.expect("gcd divides");
    let reduced = RationalSolution::new(a00, b00);

    let mut cofactor = Poly::one(field);
    let mut failing = Vec::new();
    for (i, block) in whip_residual_blocks(data, &reduced).iter().enumerate() {
        if let Some(j) = block.iter().position(|r| !r.is_zero()) {
            let ni = data.multiplicities()[i];
            cofactor = &cofactor * &Poly::linear_root(&data.nodes()[i]).pow((ni - j) as u32);
            failing.push(i);
        }
    }
    let min = MinimalSolution::from_pair(
        data,
        &(&cofactor * &reduced.numerator),
        &(&cofactor * &reduced.denominator),
    )?;
    if min.kernel_dim != basis.len() {
        return Err(Error::InternalInconsistency(format!(
            "kernel has dimension {} but the minimal pair predicts {}",
            basis.len(),
            min.kernel_dim
        )));
    }
    let class = classify_minimal(data, &min, true)?;
    if let Classification::Unattainable { witnesses, .. } = &class {
        if *witnesses != failing {
            return Err(Error::InternalInconsistency(
                "witness nodes differ from the nodes where the reduced pair fails".into(),
            ));
        }
    }
    Ok((min, class))
}

/// Euclid route: first row of the EEA on (F, G) with deg R <= k-1.
pub fn solve_eea(data: &HermiteData) -> Result<Classification> {
    let field = data.field();
    let f = product_f(data);
    let g = hermite_interpolant(data)?;
    if g.is_zero() {
        return Ok(Classification::Solvable {
            solution: RationalSolution::new(Poly::zero(field), Poly::one(field)),
            reduced: true,
        });
    }
    let trace = eea(&f, &g)?;
    if trace.reduced_input {
        return Err(Error::InternalInconsistency(
            "Hermite interpolant degree reached deg F".into(),
        ));
    }
    let row = trace
        .cut_row(data.k() as i64 - 1)
        .ok_or_else(|| Error::InternalInconsistency("no EEA row below degree k".into()))?;
    let (r, t) = (&row.remainder, &row.bezout_t);
    if r.gcd(t)?.degree() == Degree::Finite(0) {
        return Ok(Classification::Solvable {
            solution: RationalSolution::new(r.clone(), t.clone()),
            reduced: false,
        });
    }
    let s0 = s0_of(data, r, t)?;
    let witnesses: Vec<usize> = data
        .nodes()
        .iter()
        .enumerate()
        .filter(|(_, u)| t.eval(u).is_zero())
        .map(|(i, _)| i)
        .collect();
    Ok(Classification::Unattainable {
        stratum: s0 + 1,
        witnesses,
    })
}

/// Which closed-form pair a nonzero certificate validates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// Δ_{k-j+1,k-j+1} != 0
    Lower,
    /// Δ_{k+j,k+j} != 0
    Upper,
    Both,
    /// No certificate in range: the minimal numerator is 0 and the kernel
    /// dimension exceeds m+1. The pair comes from the leading zeros of v.
    ZeroNumerator,
}

/// Memoized Δ vectors for one data set.
pub struct MinorTable<'a> {
    data: &'a HermiteData,
    cache: BTreeMap<usize, MinorVector>,
}

impl<'a> MinorTable<'a> {
    pub fn new(data: &'a HermiteData) -> Self {
        MinorTable {
            data,
            cache: BTreeMap::new(),
        }
    }

    pub fn vector(&mut self, t: usize) -> Result<&MinorVector> {
        if !self.cache.contains_key(&t) {
            let mv = MinorVector::compute(self.data, t)?;
            self.cache.insert(t, mv);
        }
        Ok(&self.cache[&t])
    }

    /// Δ_{t,t}.
    pub fn diagonal(&mut self, t: usize) -> Result<crate::field::Scalar> {
        Ok(self.vector(t)?.diagonal().clone())
    }
}

/// Pair read off the lower chart vector (t = k-j+1): A from entries 1..=k-j+1,
/// B from entries k-j+2..=n-2j+3 (1-based). Remaining entries must vanish.
pub fn lower_chart_pair(data: &HermiteData, mv: &MinorVector, j: usize) -> Result<RationalSolution> {
    let (k, n) = (data.k(), data.n());
    let field = data.field();
    let a: Vec<_> = mv.values[..=k - j].to_vec();
    let b: Vec<_> = mv.values[k - j + 1..=n + 2 - 2 * j].to_vec();
    if mv.values[n + 3 - 2 * j..].iter().any(|s| !s.is_zero()) {
        return Err(Error::InternalInconsistency(format!(
            "lower chart vector Δ_{} has nonzero entries past the pair",
            mv.t
        )));
    }
    Ok(RationalSolution::new(
        Poly::from_trusted(field, a),
        Poly::from_trusted(field, b),
    ))
}

/// Pair read off the upper chart vector (t = k+j-1): A from entries 1..=k-j+1,
/// B from entries k+j..=n+1 (1-based). Entries between must vanish.
pub fn upper_chart_pair(data: &HermiteData, mv: &MinorVector, j: usize) -> Result<RationalSolution> {
    let (k, n) = (data.k(), data.n());
    let field = data.field();
    let a: Vec<_> = mv.values[..=k - j].to_vec();
    let b: Vec<_> = mv.values[k + j - 1..=n].to_vec();
    if mv.values[k - j + 1..k + j - 1].iter().any(|s| !s.is_zero()) {
        return Err(Error::InternalInconsistency(format!(
            "upper chart vector Δ_{} has nonzero entries inside the gap",
            mv.t
        )));
    }
    Ok(RationalSolution::new(
        Poly::from_trusted(field, a),
        Poly::from_trusted(field, b),
    ))
}

/// Result of the minor route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorSolution {
    pub defect: usize,
    pub chart: Chart,
    pub lower_certificate: crate::field::Scalar,
    pub upper_certificate: crate::field::Scalar,
    /// Δ_{k-j+1,*} and Δ_{k+j-1,*} at the detected defect.
    pub lower_vector: MinorVector,
    pub upper_vector: MinorVector,
    pub minimal: MinimalSolution,
    pub classification: Classification,
}

/// B0 = prod (x-u_i)^(n_i-z_i), z_i the number of leading zeros of v_i, when
/// it fits deg B0 <= n-k. Exactly then (0, B0) solves the weak problem and
/// the minimal numerator is 0.
pub fn zero_numerator_denominator(data: &HermiteData) -> Option<Poly> {
    let field = data.field();
    let mut b0 = Poly::one(field);
    for (u, vs) in data.nodes().iter().zip(data.values()) {
        let z = vs.iter().take_while(|v| v.is_zero()).count();
        b0 = &b0 * &Poly::linear_root(u).pow((vs.len() - z) as u32);
    }
    b0.degree().at_most((data.n() - data.k()) as i64).then_some(b0)
}

/// Smallest j in 1..=m+1 with Δ_{k-j+2..k+j-1} diagonal minors zero and a
/// nonzero certificate Δ_{k-j+1,k-j+1} or Δ_{k+j,k+j}. `None` when no j
/// qualifies, which happens only when the minimal numerator is 0.
pub fn detect_defect(table: &mut MinorTable) -> Result<Option<(usize, Chart)>> {
    let data = table.data;
    let (k, m) = (data.k(), data.m());
    for j in 1..=m + 1 {
        let mut pattern = true;
        for t in k + 2 - j..=k + j - 1 {
            if !table.diagonal(t)?.is_zero() {
                pattern = false;
                break;
            }
        }
        if !pattern {
            continue;
        }
        let lower = !table.diagonal(k + 1 - j)?.is_zero();
        let upper = !table.diagonal(k + j)?.is_zero();
        let chart = match (lower, upper) {
            (true, true) => Chart::Both,
            (true, false) => Chart::Lower,
            (false, true) => Chart::Upper,
            (false, false) => continue,
        };
        return Ok(Some((j, chart)));
    }
    Ok(None)
}

pub fn solve_minors(data: &HermiteData) -> Result<MinorSolution> {
    let mut table = MinorTable::new(data);
    let Some((j, chart)) = detect_defect(&mut table)? else {
        return zero_numerator_minors(data, &mut table);
    };
    let k = data.k();
    let lower_vector = table.vector(k + 1 - j)?.clone();
    let upper_vector = table.vector(k + j - 1)?.clone();
    let pair = match chart {
        Chart::Lower | Chart::Both => lower_chart_pair(data, &lower_vector, j)?,
        Chart::Upper => upper_chart_pair(data, &upper_vector, j)?,
        Chart::ZeroNumerator => unreachable!("detect_defect certifies a chart"),
    };
    let minimal = MinimalSolution::from_pair(data, &pair.numerator, &pair.denominator)?;
    if minimal.kernel_dim != j {
        return Err(Error::InternalInconsistency(format!(
            "minor pair has kernel dimension {} at defect {j}",
            minimal.kernel_dim
        )));
    }
    let classification = match classify_minimal(data, &minimal, false)? {
        Classification::Solvable { .. } => Classification::Solvable {
            solution: pair,
            reduced: false,
        },
        other => other,
    };
    Ok(MinorSolution {
        defect: j,
        chart,
        lower_certificate: lower_vector.diagonal().clone(),
        upper_certificate: table.diagonal(k + j)?,
        lower_vector,
        upper_vector,
        minimal,
        classification,
    })
}

fn zero_numerator_minors(data: &HermiteData, table: &mut MinorTable) -> Result<MinorSolution> {
    let b0 = zero_numerator_denominator(data).ok_or_else(|| {
        Error::InternalInconsistency("no chart certificate is nonzero for any defect".into())
    })?;
    let (k, m) = (data.k(), data.m());
    let minimal = MinimalSolution::from_pair(data, &Poly::zero(data.field()), &b0)?;
    if minimal.kernel_dim <= m + 1 {
        return Err(Error::InternalInconsistency(format!(
            "no certificate although the kernel dimension {} is at most m+1",
            minimal.kernel_dim
        )));
    }
    let lower_vector = table.vector(k - m)?.clone();
    let upper_vector = table.vector(k + m)?.clone();
    Ok(MinorSolution {
        defect: minimal.kernel_dim,
        chart: Chart::ZeroNumerator,
        lower_certificate: lower_vector.diagonal().clone(),
        upper_certificate: table.diagonal(k + m + 1)?,
        lower_vector,
        upper_vector,
        classification: classify_minimal(data, &minimal, false)?,
        minimal,
    })
}

/// Witnesses of the minimal pair at defect j, with stratum index 2j-1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartCheck {
    pub stratum_index: usize,
    pub witnesses: Vec<usize>,
    pub unattainable: bool,
}

pub fn vanishing_chart_check(data: &HermiteData, minsol: &MinimalSolution, j: usize) -> ChartCheck {
    let witnesses = minsol.witnesses(data);
    ChartCheck {
        stratum_index: 2 * j - 1,
        unattainable: !witnesses.is_empty(),
        witnesses,
    }
}
