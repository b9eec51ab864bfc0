//! Randomized checking: identity suites, the Δ shift relation, reference
//! oracles and the stratum sampler.

pub mod catalog;
pub mod oracles;
pub mod sampler;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use crate::io::document_json;
use crate::linalg::MinorVector;
use crate::verify::catalog::Identity;
use crate::verify::sampler::{random_data, rng_for};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Identities as originally stated.
    Catalog,
    Corrected,
    /// Δ_{k-1,n+1} = ±Δ_{k,k} over several shapes and every k >= 2.
    DeltaShift,
    /// Must fail; exercises the failure path.
    SelfTest,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Catalog, Suite::Corrected, Suite::DeltaShift, Suite::SelfTest];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Catalog => "catalog",
            Suite::Corrected => "corrected",
            Suite::DeltaShift => "delta-shift",
            Suite::SelfTest => "self-test",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub sample: u64,
    /// The point as an input document.
    pub point: Value,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub statement: String,
    pub samples: u64,
    pub passes: u64,
    pub failures: Vec<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub field: String,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub all_passed: bool,
}

/// Failures kept per check; the rest are only counted.
const KEEP_FAILURES: usize = 5;

fn push_failure(report: &mut CheckReport, failure_count: &mut u64, cx: Counterexample) {
    *failure_count += 1;
    if report.failures.len() < KEEP_FAILURES {
        report.failures.push(cx);
    }
}

/// Evaluates both sides at `samples` random points of the identity's shape.
pub fn check_identity(id: &Identity, field: FieldConfig, samples: u64, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport {
        name: id.name.into(),
        statement: id.statement.into(),
        samples,
        passes: 0,
        failures: Vec::new(),
    };
    let mut failed = 0;
    for s in 0..samples {
        let data = random_data(field, id.shape, id.k, &mut rng_for(seed, s))?;
        let (lhs, rhs) = ((id.lhs)(&data)?, (id.rhs)(&data)?);
        if lhs == rhs {
            report.passes += 1;
        } else {
            push_failure(
                &mut report,
                &mut failed,
                Counterexample {
                    sample: s,
                    point: document_json(&data),
                    detail: format!("lhs = {lhs}, rhs = {rhs}"),
                },
            );
        }
    }
    Ok(report)
}

/// Shapes covered by the Δ shift check.
pub const DELTA_SHIFT_SHAPES: [&[usize]; 5] = [&[2, 1], &[3, 1], &[2, 2], &[5], &[1, 1, 1, 1]];

/// Checks Δ_{k-1,n+1} = s Δ_{k,k} with s = (-1)^(n+1+k) at random points.
pub fn check_delta_shift(
    shape: &[usize],
    k: usize,
    field: FieldConfig,
    samples: u64,
    seed: u64,
) -> Result<CheckReport> {
    let n: usize = shape.iter().sum();
    if k < 2 || k > n {
        return Err(Error::InvalidInput(format!("delta shift needs 2 <= k <= {n}")));
    }
    let sign_negative = (n + 1 + k) % 2 == 1;
    let mut report = CheckReport {
        name: format!("delta-shift{shape:?}-k{k}"),
        statement: format!(
            "Δ_{{{},{}}} = {}Δ_{{{k},{k}}}",
            k - 1,
            n + 1,
            if sign_negative { "-" } else { "" }
        ),
        samples,
        passes: 0,
        failures: Vec::new(),
    };
    let mut failed = 0;
    for s in 0..samples {
        let data = random_data(field, shape, k, &mut rng_for(seed, s))?;
        let lhs = MinorVector::compute(&data, k - 1)?.get(n + 1).clone();
        let diag: Scalar = MinorVector::compute(&data, k)?.diagonal().clone();
        let rhs = if sign_negative { -diag } else { diag };
        if lhs == rhs {
            report.passes += 1;
        } else {
            push_failure(
                &mut report,
                &mut failed,
                Counterexample {
                    sample: s,
                    point: document_json(&data),
                    detail: format!("lhs = {lhs}, rhs = {rhs}"),
                },
            );
        }
    }
    Ok(report)
}

/// Runs every check of `suite`.
pub fn run_suite(suite: Suite, field: FieldConfig, samples: u64, seed: u64) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let identities = match suite {
        Suite::Catalog => catalog::catalog(),
        Suite::Corrected => catalog::corrected(),
        Suite::SelfTest => catalog::self_test(),
        Suite::DeltaShift => Vec::new(),
    };
    for id in &identities {
        checks.push(check_identity(id, field, samples, seed)?);
    }
    if suite == Suite::DeltaShift {
        for shape in DELTA_SHIFT_SHAPES {
            let n: usize = shape.iter().sum();
            for k in 2..=n {
                checks.push(check_delta_shift(shape, k, field, samples, seed)?);
            }
        }
    }
    let all_passed = checks.iter().all(CheckReport::passed);
    Ok(VerifyReport {
        suite: suite.name().into(),
        field: field.to_string(),
        seed,
        checks,
        all_passed,
    })
}
