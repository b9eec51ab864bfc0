//! Random data, including points placed on a chosen stratum.
//!
//! Rationals are drawn as a/b with |a| <= 50 and 1 <= b <= 10. Prime-field
//! scalars are uniform residues.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use crate::poly::{Degree, Poly};
use crate::problem::HermiteData;
use crate::solvers::{solve_kernel, solve_minors, Classification};

const MAX_ATTEMPTS: usize = 500;

/// Independent stream for sample `index` of a run seeded with `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn random_scalar<R: Rng>(field: FieldConfig, rng: &mut R) -> Scalar {
    match field {
        FieldConfig::Rationals => {
            let a: i64 = rng.gen_range(-50..=50);
            let b: i64 = rng.gen_range(1..=10);
            field
                .from_ratio(&num_rational::BigRational::new(a.into(), b.into()))
                .expect("rationals accept any ratio")
        }
        FieldConfig::Prime(p) => field.from_bigint(&rng.gen_range(0..p).into()),
    }
}

pub fn random_nonzero_scalar<R: Rng>(field: FieldConfig, rng: &mut R) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// `l` pairwise distinct scalars.
pub fn random_nodes<R: Rng>(field: FieldConfig, l: usize, rng: &mut R) -> Result<Vec<Scalar>> {
    if let FieldConfig::Prime(p) = field {
        if (p as u128) < l as u128 {
            return Err(Error::InfeasibleRequest(format!("{l} distinct nodes in GF({p})")));
        }
    }
    let mut nodes: Vec<Scalar> = Vec::with_capacity(l);
    while nodes.len() < l {
        let u = random_scalar(field, rng);
        if !nodes.contains(&u) {
            nodes.push(u);
        }
    }
    Ok(nodes)
}

/// Polynomial of exact degree `d`.
pub fn random_poly<R: Rng>(field: FieldConfig, d: usize, rng: &mut R) -> Poly {
    let mut c: Vec<Scalar> = (0..d).map(|_| random_scalar(field, rng)).collect();
    c.push(random_nonzero_scalar(field, rng));
    Poly::new(field, c).expect("same field")
}

/// Data with independent random nodes and values.
pub fn random_data<R: Rng>(
    field: FieldConfig,
    shape: &[usize],
    k: usize,
    rng: &mut R,
) -> Result<HermiteData> {
    let nodes = random_nodes(field, shape.len(), rng)?;
    let values = shape
        .iter()
        .map(|&ni| (0..ni).map(|_| random_scalar(field, rng)).collect())
        .collect();
    HermiteData::new(field, nodes, values, k)
}

/// First `count` Taylor coefficients of a/b at u, by the recursion
/// c_t = (a_t - sum_{s=1..t} b_s c_{t-s}) / b_0.
pub fn taylor_of_ratio(a: &Poly, b: &Poly, u: &Scalar, count: usize) -> Result<Vec<Scalar>> {
    let ta = a.taylor_coeffs(u, count);
    let tb = b.taylor_coeffs(u, count);
    let b0_inv = tb[0].inv()?;
    let mut c: Vec<Scalar> = Vec::with_capacity(count);
    for t in 0..count {
        let mut acc = ta[t].clone();
        for s in 1..=t {
            acc = &acc - &(&tb[s] * &c[t - s]);
        }
        c.push(&acc * &b0_inv);
    }
    Ok(c)
}

/// What to sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub field: FieldConfig,
    pub shape: Vec<usize>,
    pub k: usize,
    /// Target kernel dimension j.
    pub defect: usize,
    pub force_unattainable: bool,
    /// Node (0-based) where the common root is placed; random when `None`.
    pub forced_node: Option<usize>,
    pub seed: u64,
}

/// Rationals, random forced node.
pub fn sample_stratum(
    shape: &[usize],
    k: usize,
    defect: usize,
    force_unattainable: bool,
    seed: u64,
) -> Result<HermiteData> {
    sample_with(&SampleSpec {
        field: FieldConfig::Rationals,
        shape: shape.to_vec(),
        k,
        defect,
        force_unattainable,
        forced_node: None,
        seed,
    })
}

fn coprime(a: &Poly, b: &Poly) -> Result<bool> {
    Ok(a.gcd(b)?.degree() == Degree::Finite(0))
}

/// Draws A of degree k-j and B of degree n-k-j+1 (or, when forcing, both
/// with a common root at one node) and sets v to the Taylor data of A/B.
pub fn sample_with(spec: &SampleSpec) -> Result<HermiteData> {
    let n: usize = spec.shape.iter().sum();
    let k = spec.k;
    if spec.shape.is_empty() || spec.shape.contains(&0) {
        return Err(Error::InvalidInput("shape entries must be positive".into()));
    }
    if k < 1 || k > n {
        return Err(Error::InvalidInput(format!("k = {k} must lie in 1..={n}")));
    }
    spec.field.check_multiplicities(&spec.shape)?;
    let m = (k - 1).min(n - k);
    let j = spec.defect;
    if j < 1 || j > m + 1 {
        return Err(Error::InfeasibleRequest(format!("defect {j} outside 1..={}", m + 1)));
    }
    if spec.force_unattainable && j > m {
        return Err(Error::InfeasibleRequest(format!(
            "no unattainable points of defect {j} when m = {m}"
        )));
    }
    if let Some(i) = spec.forced_node {
        if i >= spec.shape.len() {
            return Err(Error::BadIndex {
                index: i + 1,
                len: spec.shape.len(),
            });
        }
    }
    let mut rng = rng_for(spec.seed, 0);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(d) = attempt(spec, n, j, &mut rng)? {
            return Ok(d);
        }
    }
    Err(Error::InternalInconsistency(format!(
        "sampler missed the requested stratum {MAX_ATTEMPTS} times"
    )))
}

fn attempt(spec: &SampleSpec, n: usize, j: usize, rng: &mut ChaCha8Rng) -> Result<Option<HermiteData>> {
    let field = spec.field;
    let k = spec.k;
    let nodes = random_nodes(field, spec.shape.len(), rng)?;
    let (a, b) = if spec.force_unattainable {
        (random_poly(field, k - j - 1, rng), random_poly(field, n - k - j, rng))
    } else {
        (random_poly(field, k - j, rng), random_poly(field, n + 1 - k - j, rng))
    };
    if !coprime(&a, &b)? || nodes.iter().any(|u| b.eval(u).is_zero()) {
        return Ok(None);
    }
    let forced = if spec.force_unattainable {
        Some(spec.forced_node.unwrap_or_else(|| rng.gen_range(0..spec.shape.len())))
    } else {
        None
    };
    let mut values = Vec::with_capacity(nodes.len());
    for (i, u) in nodes.iter().enumerate() {
        let mut vs = taylor_of_ratio(&a, &b, u, spec.shape[i])?;
        if forced == Some(i) {
            let last = vs.len() - 1;
            vs[last] = &vs[last] + &random_nonzero_scalar(field, rng);
        }
        values.push(vs);
    }
    let data = HermiteData::new(field, nodes, values, k)?;
    let ok = match forced {
        Some(i) => matches!(
            solve_kernel(&data)?.1,
            Classification::Unattainable { stratum, ref witnesses } if stratum == j && *witnesses == [i]
        ),
        None => solve_minors(&data)?.defect == j,
    };
    Ok(ok.then_some(data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taylor_of_geometric_series() {
        let q = FieldConfig::Rationals;
        // 1/(1-x) at 0
        let c = taylor_of_ratio(&Poly::one(q), &Poly::from_i64s(q, &[1, -1]), &q.zero(), 4).unwrap();
        assert_eq!(c, vec![q.one(); 4]);
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = sample_stratum(&[2, 1], 2, 1, true, 7).unwrap();
        let b = sample_stratum(&[2, 1], 2, 1, true, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn forced_request_outside_range() {
        assert!(matches!(
            sample_stratum(&[2, 1], 2, 2, true, 1),
            Err(Error::InfeasibleRequest(_))
        ));
        assert!(matches!(
            sample_stratum(&[3], 1, 1, true, 1),
            Err(Error::InfeasibleRequest(_))
        ));
    }
}
