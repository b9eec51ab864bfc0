//! Dense univariate polynomials over a [`Scalar`] field.
//!
//! Coefficients are stored constant term first with trailing zeros trimmed,
//! so the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{pochhammer, FieldConfig, Scalar};
use crate::problem::HermiteData;

/// Degree with a sentinel for the zero polynomial that sorts below every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `self <= bound`, where a negative bound only admits the zero polynomial.
    pub fn at_most(self, bound: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => (d as i64) <= bound,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::NegInfinity => s.serialize_none(),
            Degree::Finite(d) => s.serialize_u64(*d as u64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldConfig,
    coeffs: Vec<Scalar>,
}

impl Poly {
    /// Builds a polynomial from coefficients (constant term first). All
    /// coefficients must belong to `field`.
    pub fn new(field: FieldConfig, coeffs: Vec<Scalar>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::MixedFields(field, c.field()));
        }
        Ok(Self::from_trusted(field, coeffs))
    }

    pub(crate) fn from_trusted(field: FieldConfig, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: FieldConfig, coeffs: &[i64]) -> Self {
        Self::from_trusted(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: FieldConfig) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldConfig) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_trusted(c.field(), vec![c])
    }

    pub fn x(field: FieldConfig) -> Self {
        Self::from_trusted(field, vec![field.zero(), field.one()])
    }

    /// x - a
    pub fn linear_root(a: &Scalar) -> Self {
        let f = a.field();
        Self::from_trusted(f, vec![-a, f.one()])
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero past the degree.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Self::from_trusted(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x0: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x0) + c;
        }
        acc
    }

    /// j-th formal derivative.
    pub fn derivative(&self, j: usize) -> Poly {
        if j == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(j)
            .map(|(l, c)| c * &pochhammer(self.field, l as u64, j as u64))
            .collect();
        Self::from_trusted(self.field, coeffs)
    }

    /// The first `count` coefficients of p(x + u), i.e. p^(t)(u)/t!.
    pub fn taylor_coeffs(&self, u: &Scalar, count: usize) -> Vec<Scalar> {
        let mut work: Vec<Scalar> = self.coeffs.clone();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            if work.is_empty() {
                out.push(self.field.zero());
                continue;
            }
            // synthetic division by (x - u): remainder is the next coefficient
            let mut quotient = vec![self.field.zero(); work.len() - 1];
            let mut carry = self.field.zero();
            for i in (0..work.len()).rev() {
                let cur = &work[i] + &(&carry * u);
                if i > 0 {
                    quotient[i - 1] = cur.clone();
                }
                carry = cur;
            }
            out.push(carry);
            work = quotient;
        }
        out
    }

    /// Euclidean division: `self = q * d + r` with deg r < deg d.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if self.field != d.field {
            return Err(Error::MixedFields(self.field, d.field));
        }
        let lc_inv = d.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (s, dc) in d.coeffs.iter().enumerate() {
                    rem[i + s] = &rem[i + s] - &(&c * dc);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((
            Self::from_trusted(self.field, quot),
            Self::from_trusted(self.field, rem),
        ))
    }

    /// `Some(q)` when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(d)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic gcd; `BothZero` when both inputs vanish.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Descending powers, e.g. `x^2 - 3/2*x + 1`.
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.signum() == Some(-1);
            let mag = if negative { -c } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

fn zip_coeffs(a: &Poly, b: &Poly, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Poly {
    assert_eq!(a.field, b.field, "polynomials over different fields");
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|i| op(&a.coeff(i), &b.coeff(i))).collect();
    Poly::from_trusted(a.field, coeffs)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        zip_coeffs(self, rhs, |x, y| x + y)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        zip_coeffs(self, rhs, |x, y| x - y)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_trusted(self.field, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_trusted(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_poly_op {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_poly_op!(Add, add);
owned_poly_op!(Sub, sub);
owned_poly_op!(Mul, mul);

/// One row (i, Q_i, R_i, S_i, T_i) of the extended Euclidean table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EeaRow {
    pub index: usize,
    pub quotient: Poly,
    pub remainder: Poly,
    pub bezout_s: Poly,
    pub bezout_t: Poly,
}

/// Full history of an extended Euclidean run on (F, G).
///
/// Row 0 is (0, 0, F, 1, 0) and row 1 is (1, F quo G, G, 0, 1). Row i stores
/// Q_i = R_{i-1} quo R_i. The last row has zero remainder and zero quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EeaTrace {
    pub rows: Vec<EeaRow>,
    /// Set when deg G >= deg F and row 1 holds G mod F instead of G.
    pub reduced_input: bool,
}

impl EeaTrace {
    /// First row whose remainder has degree at most `bound`.
    pub fn cut_row(&self, bound: i64) -> Option<&EeaRow> {
        self.rows.iter().find(|r| r.remainder.degree().at_most(bound))
    }
}

pub fn eea(f: &Poly, g: &Poly) -> Result<EeaTrace> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.field != g.field {
        return Err(Error::MixedFields(f.field, g.field));
    }
    let field = f.field;
    let zero = Poly::zero(field);
    let one = Poly::one(field);
    let mut rows = vec![EeaRow {
        index: 0,
        quotient: zero.clone(),
        remainder: f.clone(),
        bezout_s: one.clone(),
        bezout_t: zero.clone(),
    }];
    let reduced_input = g.degree() >= f.degree();
    let row1 = if reduced_input {
        let (q, r) = g.div_rem(f)?;
        EeaRow {
            index: 1,
            quotient: zero.clone(),
            remainder: r,
            bezout_s: -&q,
            bezout_t: one,
        }
    } else {
        EeaRow {
            index: 1,
            quotient: zero.clone(),
            remainder: g.clone(),
            bezout_s: zero.clone(),
            bezout_t: one,
        }
    };
    rows.push(row1);
    loop {
        let i = rows.len() - 1;
        if rows[i].remainder.is_zero() {
            break;
        }
        let (q, r) = rows[i - 1].remainder.div_rem(&rows[i].remainder)?;
        let s = &rows[i - 1].bezout_s - &(&q * &rows[i].bezout_s);
        let t = &rows[i - 1].bezout_t - &(&q * &rows[i].bezout_t);
        rows[i].quotient = q;
        rows.push(EeaRow {
            index: i + 1,
            quotient: zero.clone(),
            remainder: r,
            bezout_s: s,
            bezout_t: t,
        });
    }
    Ok(EeaTrace {
        rows,
        reduced_input,
    })
}

/// F = prod (x - u_i)^{n_i}.
pub fn product_f(data: &HermiteData) -> Poly {
    let field = data.field();
    data.nodes()
        .iter()
        .zip(data.multiplicities())
        .fold(Poly::one(field), |acc, (u, &ni)| {
            &acc * &Poly::linear_root(u).pow(ni as u32)
        })
}

/// The unique G with deg G < n and G^(j)(u_i) = j! v_{i,j}, by Newton divided
/// differences over the node multiset. A run of j+1 equal nodes has divided
/// difference v_{i,j}.
pub fn hermite_interpolant(data: &HermiteData) -> Result<Poly> {
    let field = data.field();
    let mut z: Vec<(usize, &Scalar)> = Vec::with_capacity(data.n());
    for (i, u) in data.nodes().iter().enumerate() {
        for _ in 0..data.multiplicities()[i] {
            z.push((i, u));
        }
    }
    let n = z.len();
    let mut column: Vec<Scalar> = z.iter().map(|(i, _)| data.value(*i, 0).clone()).collect();
    let mut leading = vec![column[0].clone()];
    for d in 1..n {
        let mut next = Vec::with_capacity(n - d);
        for a in 0..n - d {
            let (ia, ua) = z[a];
            let (ib, ub) = z[a + d];
            if ia == ib {
                next.push(data.value(ia, d).clone());
            } else {
                let num = &column[a + 1] - &column[a];
                next.push(num.checked_div(&(ub - ua))?);
            }
        }
        leading.push(next[0].clone());
        column = next;
    }
    let mut g = Poly::zero(field);
    let mut basis = Poly::one(field);
    for (d, c) in leading.iter().enumerate() {
        g = &g + &basis.scale(c);
        basis = &basis * &Poly::linear_root(z[d].1);
    }
    Ok(g)
}

/// Normalizes a pair by the leading coefficient of `a`, or of `b` when `a = 0`.
pub(crate) fn normalize_pair(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let lead = a.leading().or_else(|| b.leading());
    match lead {
        None => (a.clone(), b.clone()),
        Some(lc) => {
            let inv = lc.inv().expect("nonzero leading coefficient");
            (a.scale(&inv), b.scale(&inv))
        }
    }
}

/// Normalizes a pair so that `b` is monic.
pub(crate) fn monic_denominator(a: &Poly, b: &Poly) -> (Poly, Poly) {
    match b.leading() {
        None => (a.clone(), b.clone()),
        Some(lc) => {
            let inv = lc.inv().expect("nonzero leading coefficient");
            (a.scale(&inv), b.scale(&inv))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldConfig = FieldConfig::Rationals;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(Q, c)
    }

    #[test]
    fn trimming_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Degree::Finite(1));
        assert_eq!(p(&[0, 0]).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert!(Degree::NegInfinity.at_most(-5));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(&[0, 0, 1]).derivative(1), p(&[0, 2]));
        assert_eq!(p(&[3, 1, 4]).derivative(0), p(&[3, 1, 4]));
        assert_eq!(p(&[0, 1, 0, 1]).derivative(2), p(&[0, 6]));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[-1, 0, 1]).eval(&Q.from_i64(2)), Q.from_i64(3));
        assert_eq!(Poly::zero(Q).eval(&Q.from_i64(7)), Q.zero());
        let f = &p(&[-1, 1]).pow(2) * &p(&[-2, 1]);
        assert_eq!(f.eval(&Q.one()), Q.zero());
    }

    #[test]
    fn gcd_examples() {
        let a = &p(&[-1, 1]) * &p(&[-2, 1]);
        assert_eq!(a.gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&Poly::zero(Q)).unwrap(), p(&[2, 4]).monic());
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 0, 1])).unwrap(), p(&[1]));
        assert_eq!(Poly::zero(Q).gcd(&Poly::zero(Q)), Err(Error::BothZero));
    }

    #[test]
    fn division() {
        let (q, r) = p(&[5, 0, 3, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(&(&q * &p(&[1, 1])) + &r, p(&[5, 0, 3, 1]));
        assert!(r.degree() < Degree::Finite(1));
        assert_eq!(p(&[1]).div_rem(&Poly::zero(Q)), Err(Error::DivisionByZero));
    }

    #[test]
    fn taylor_shift() {
        // (x+2)^2 + 1 = x^2 + 4x + 5
        let f = p(&[1, 0, 1]);
        let t = f.taylor_coeffs(&Q.from_i64(2), 4);
        assert_eq!(t, vec![Q.from_i64(5), Q.from_i64(4), Q.one(), Q.zero()]);
    }

    #[test]
    fn eea_exact_division() {
        let tr = eea(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap();
        let rems: Vec<Poly> = tr.rows.iter().map(|r| r.remainder.clone()).collect();
        assert_eq!(rems, vec![p(&[-1, 0, 1]), p(&[-1, 1]), Poly::zero(Q)]);
        let g = &tr.rows[1];
        assert_eq!(g.bezout_s, Poly::zero(Q));
        assert_eq!(g.bezout_t, p(&[1]));
        assert_eq!(g.quotient, p(&[1, 1]));

        let tr = eea(&p(&[0, 0, 0, 1]), &p(&[0, 1])).unwrap();
        let rems: Vec<Poly> = tr.rows.iter().map(|r| r.remainder.clone()).collect();
        assert_eq!(rems, vec![p(&[0, 0, 0, 1]), p(&[0, 1]), Poly::zero(Q)]);
    }

    #[test]
    fn eea_rejects_zero() {
        assert_eq!(eea(&Poly::zero(Q), &p(&[1])), Err(Error::ZeroInput));
        assert_eq!(eea(&p(&[1, 1]), &Poly::zero(Q)), Err(Error::ZeroInput));
    }

    #[test]
    fn eea_reduces_large_second_input() {
        let f = p(&[1, 0, 1]);
        let g = p(&[2, 1, 0, 1]);
        let tr = eea(&f, &g).unwrap();
        assert!(tr.reduced_input);
        for row in &tr.rows {
            assert_eq!(&(&row.bezout_s * &f) + &(&row.bezout_t * &g), row.remainder);
        }
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(p(&[1, -3, 1]).to_pretty(), "x^2 - 3*x + 1");
        assert_eq!(p(&[0, -1]).to_pretty(), "-x");
        assert_eq!(Poly::zero(Q).to_pretty(), "0");
        let half = Poly::new(Q, vec![Q.parse("-1/2").unwrap()]).unwrap();
        assert_eq!(half.to_pretty(), "-1/2");
    }
}
