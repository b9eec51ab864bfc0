//! Closed-form identities for small shapes, checked at random points.
//!
//! U_i is node i and V_ij is v_{i,j}, both with 1-based i. The `catalog`
//! suite lists the identities as they were originally stated; three of them
//! do not hold under the sign convention of `linalg` and fail. The
//! `corrected` suite holds the repaired forms.

use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::MinorVector;
use crate::problem::HermiteData;

pub type Evaluator = fn(&HermiteData) -> Result<Scalar>;

#[derive(Clone, Copy)]
pub struct Identity {
    pub name: &'static str,
    pub statement: &'static str,
    pub shape: &'static [usize],
    pub k: usize,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Identity")
            .field("name", &self.name)
            .field("shape", &self.shape)
            .field("k", &self.k)
            .finish()
    }
}

fn u(d: &HermiteData, i: usize) -> Scalar {
    d.nodes()[i - 1].clone()
}

fn v(d: &HermiteData, i: usize, j: usize) -> Scalar {
    d.value(i - 1, j).clone()
}

fn c(d: &HermiteData, x: i64) -> Scalar {
    d.field().from_i64(x)
}

fn delta(d: &HermiteData, t: usize, i: usize) -> Result<Scalar> {
    Ok(MinorVector::compute(d, t)?.get(i).clone())
}

/// Δ_{t,i} + Δ_{t,i+1} * U_node
fn chart2(d: &HermiteData, t: usize, i: usize, node: usize) -> Result<Scalar> {
    let mv = MinorVector::compute(d, t)?;
    Ok(mv.get(i) + &(mv.get(i + 1) * &u(d, node)))
}

fn d22(d: &HermiteData) -> Result<Scalar> {
    delta(d, 2, 2)
}
fn d33(d: &HermiteData) -> Result<Scalar> {
    delta(d, 3, 3)
}
fn d34(d: &HermiteData) -> Result<Scalar> {
    delta(d, 3, 4)
}
fn d44(d: &HermiteData) -> Result<Scalar> {
    delta(d, 4, 4)
}
fn d11(d: &HermiteData) -> Result<Scalar> {
    delta(d, 1, 1)
}
fn chart23_u1(d: &HermiteData) -> Result<Scalar> {
    chart2(d, 2, 3, 1)
}
fn chart23_u2(d: &HermiteData) -> Result<Scalar> {
    chart2(d, 2, 3, 2)
}
fn chart45_u1(d: &HermiteData) -> Result<Scalar> {
    chart2(d, 4, 5, 1)
}

fn zero(d: &HermiteData) -> Result<Scalar> {
    Ok(d.field().zero())
}

fn rhs_d22(d: &HermiteData) -> Result<Scalar> {
    let (u1, u2, v10, v11, v20) = (u(d, 1), u(d, 2), v(d, 1, 0), v(d, 1, 1), v(d, 2, 0));
    Ok(&v10 * &v10 - &v10 * &v20 - &u1 * &v11 * &v20 + &u2 * &v11 * &v20)
}

fn rhs_d22_negated(d: &HermiteData) -> Result<Scalar> {
    Ok(-rhs_d22(d)?)
}

fn sq_diff(d: &HermiteData) -> Result<Scalar> {
    let w = u(d, 1) - u(d, 2);
    Ok(&w * &w)
}

fn rhs_chart_u1(d: &HermiteData) -> Result<Scalar> {
    Ok((v(d, 2, 0) - v(d, 1, 0)) * (u(d, 2) - u(d, 1)))
}

fn rhs_chart_u2(d: &HermiteData) -> Result<Scalar> {
    Ok(v(d, 1, 1) * sq_diff(d)?)
}

fn rhs_v13(d: &HermiteData) -> Result<Scalar> {
    Ok(v(d, 1, 3))
}

fn rhs_d33_expanded(d: &HermiteData) -> Result<Scalar> {
    let (u1, u2, v10, v11, v20) = (u(d, 1), u(d, 2), v(d, 1, 0), v(d, 1, 1), v(d, 2, 0));
    Ok(&u1 * &v11 - &u2 * &v11 - v10 + v20)
}

fn rhs_d11_expanded(d: &HermiteData) -> Result<Scalar> {
    let v10 = v(d, 1, 0);
    Ok(&v10 * &v10 * v(d, 2, 0) * sq_diff(d)?)
}

/// The twelve-term expansion for shape (5).
fn expansion5(d: &HermiteData) -> Result<Scalar> {
    let x = u(d, 1);
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    let p: Vec<Scalar> = (0..5).map(|j| v(d, 1, j)).collect();
    let terms: [(i64, &Scalar, Vec<&Scalar>); 12] = [
        (-1, &d.field().one(), vec![&p[1], &p[1], &p[1]]),
        (2, &d.field().one(), vec![&p[0], &p[1], &p[2]]),
        (1, &x2, vec![&p[1], &p[2], &p[2]]),
        (2, &x3, vec![&p[2], &p[2], &p[2]]),
        (-1, &d.field().one(), vec![&p[0], &p[0], &p[3]]),
        (-1, &x2, vec![&p[1], &p[1], &p[3]]),
        (-1, &x2, vec![&p[0], &p[2], &p[3]]),
        (-4, &x3, vec![&p[1], &p[2], &p[3]]),
        (2, &x3, vec![&p[0], &p[3], &p[3]]),
        (1, &x2, vec![&p[0], &p[1], &p[4]]),
        (2, &x3, vec![&p[1], &p[1], &p[4]]),
        (-2, &x3, vec![&p[0], &p[2], &p[4]]),
    ];
    let mut acc = d.field().zero();
    for (coef, power, factors) in terms.iter() {
        let mut t = c(d, *coef) * *power;
        for f in factors {
            t = t * *f;
        }
        acc = acc + t;
    }
    Ok(acc)
}

fn expansion5_negated(d: &HermiteData) -> Result<Scalar> {
    Ok(-expansion5(d)?)
}

const S21: &[usize] = &[2, 1];
const S5: &[usize] = &[5];

pub fn catalog() -> Vec<Identity> {
    vec![
        Identity {
            name: "shape21-delta22",
            statement: "Δ22 = V10^2 - V10 V20 - U1 V11 V20 + U2 V11 V20",
            shape: S21,
            k: 2,
            lhs: d22,
            rhs: rhs_d22,
        },
        Identity {
            name: "shape21-delta33",
            statement: "Δ33 = (U2 - U1)^2",
            shape: S21,
            k: 2,
            lhs: d33,
            rhs: sq_diff,
        },
        Identity {
            name: "shape21-delta44",
            statement: "Δ44 = (U1 - U2)^2",
            shape: S21,
            k: 2,
            lhs: d44,
            rhs: sq_diff,
        },
        Identity {
            name: "shape21-delta11",
            statement: "Δ11 = 0",
            shape: S21,
            k: 2,
            lhs: d11,
            rhs: zero,
        },
        Identity {
            name: "shape21-chart-u1",
            statement: "Δ23 + Δ24 U1 = (V20 - V10)(U2 - U1)",
            shape: S21,
            k: 2,
            lhs: chart23_u1,
            rhs: rhs_chart_u1,
        },
        Identity {
            name: "shape21-chart-u2",
            statement: "Δ23 + Δ24 U2 = V11 (U1 - U2)^2",
            shape: S21,
            k: 2,
            lhs: chart23_u2,
            rhs: rhs_chart_u2,
        },
        Identity {
            name: "shape5-delta45-chart",
            statement: "Δ45 + Δ46 U1 = V13",
            shape: S5,
            k: 3,
            lhs: chart45_u1,
            rhs: rhs_v13,
        },
        Identity {
            name: "shape5-delta23-chart",
            statement: "Δ23 + Δ24 U1 = twelve-term expansion",
            shape: S5,
            k: 3,
            lhs: chart23_u1,
            rhs: expansion5,
        },
    ]
}

pub fn corrected() -> Vec<Identity> {
    vec![
        Identity {
            name: "shape21-delta33-expanded",
            statement: "Δ33 = U1 V11 - U2 V11 - V10 + V20",
            shape: S21,
            k: 2,
            lhs: d33,
            rhs: rhs_d33_expanded,
        },
        Identity {
            name: "shape21-delta34",
            statement: "Δ34 = (U1 - U2)^2",
            shape: S21,
            k: 2,
            lhs: d34,
            rhs: sq_diff,
        },
        Identity {
            name: "shape21-delta11-expanded",
            statement: "Δ11 = V10^2 V20 (U1 - U2)^2",
            shape: S21,
            k: 2,
            lhs: d11,
            rhs: rhs_d11_expanded,
        },
        Identity {
            name: "shape5-delta23-chart-negated",
            statement: "Δ23 + Δ24 U1 = -(twelve-term expansion)",
            shape: S5,
            k: 3,
            lhs: chart23_u1,
            rhs: expansion5_negated,
        },
    ]
}

/// A deliberately wrong entry; checking it must report failures.
pub fn self_test() -> Vec<Identity> {
    vec![Identity {
        name: "shape21-delta22-sign-flipped",
        statement: "Δ22 = -(V10^2 - V10 V20 - U1 V11 V20 + U2 V11 V20)",
        shape: S21,
        k: 2,
        lhs: d22,
        rhs: rhs_d22_negated,
    }]
}
