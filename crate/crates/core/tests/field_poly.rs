mod common;

use common::{gf, small_data, Q};
use proptest::prelude::*;
use ratherm::field::{FieldConfig, Scalar};
use ratherm::poly::{eea, hermite_interpolant, product_f, Degree, Poly};

fn scalar(field: FieldConfig) -> impl Strategy<Value = Scalar> {
    (-1000i64..=1000, 1i64..=50).prop_map(move |(a, b)| {
        field.from_i64(a).checked_div(&field.from_i64(b)).unwrap_or_else(|_| field.from_i64(a))
    })
}

fn poly(field: FieldConfig, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-5i64..=5, 0..=max_deg + 1).prop_map(move |c| Poly::from_i64s(field, &c))
}

fn field_axioms(field: FieldConfig, a: &Scalar, b: &Scalar, c: &Scalar) -> Result<(), TestCaseError> {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a + &field.zero(), a.clone());
    prop_assert_eq!(a * &field.one(), a.clone());
    prop_assert!((a + &(-a)).is_zero());
    if !a.is_zero() {
        prop_assert!((a * &a.inv().unwrap()).is_one());
        prop_assert_eq!(&b.checked_div(a).unwrap() * a, b.clone());
    } else {
        prop_assert!(a.inv().is_err());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rational_field_axioms(a in scalar(Q), b in scalar(Q), c in scalar(Q)) {
        field_axioms(Q, &a, &b, &c)?;
    }

    #[test]
    fn prime_field_axioms(a in scalar(gf(101)), b in scalar(gf(101)), c in scalar(gf(101))) {
        field_axioms(gf(101), &a, &b, &c)?;
    }

    #[test]
    fn large_prime_field_axioms(
        a in scalar(gf(18_446_744_073_709_551_557)),
        b in scalar(gf(18_446_744_073_709_551_557)),
        c in scalar(gf(18_446_744_073_709_551_557)),
    ) {
        field_axioms(gf(18_446_744_073_709_551_557), &a, &b, &c)?;
    }

    #[test]
    fn division_with_remainder(f in poly(Q, 6), d in poly(Q, 4)) {
        prop_assume!(!d.is_zero());
        let (q, r) = f.div_rem(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, f);
        prop_assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_divides_both(f in poly(Q, 5), g in poly(Q, 5), h in poly(Q, 2)) {
        prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
        let (f, g) = (&f * &h, &g * &h);
        prop_assume!(!(f.is_zero() && g.is_zero()));
        let d = f.gcd(&g).unwrap();
        prop_assert!(d.leading().is_some_and(|c| c.is_one()));
        prop_assert!(f.exact_div(&d).unwrap().is_some());
        prop_assert!(g.exact_div(&d).unwrap().is_some());
        if !f.is_zero() && !g.is_zero() {
            prop_assert!(d.degree() >= h.degree());
        }
    }

    #[test]
    fn eea_rows_satisfy_bezout(f in poly(Q, 6), g in poly(Q, 5)) {
        prop_assume!(!f.is_zero() && !g.is_zero() && g.degree() < f.degree());
        let trace = eea(&f, &g).unwrap();
        prop_assert!(!trace.reduced_input);
        let mut last = Degree::Finite(usize::MAX);
        for row in &trace.rows {
            prop_assert_eq!(&(&row.bezout_s * &f) + &(&row.bezout_t * &g), row.remainder.clone());
            prop_assert!(row.remainder.degree() < last);
            last = row.remainder.degree();
        }
        let final_nonzero = trace.rows.iter().rev().find(|r| !r.remainder.is_zero()).unwrap();
        prop_assert_eq!(final_nonzero.remainder.monic(), f.gcd(&g).unwrap());
    }

    #[test]
    fn hermite_interpolant_matches_data(data in small_data(Q, 7)) {
        let h = hermite_interpolant(&data).unwrap();
        prop_assert!(h.degree() < product_f(&data).degree());
        for (u, vs) in data.nodes().iter().zip(data.values()) {
            prop_assert_eq!(&h.taylor_coeffs(u, vs.len()), vs);
        }
    }

    #[test]
    fn hermite_interpolant_matches_data_mod_p(data in small_data(gf(7), 6)) {
        let h = hermite_interpolant(&data).unwrap();
        for (u, vs) in data.nodes().iter().zip(data.values()) {
            prop_assert_eq!(&h.taylor_coeffs(u, vs.len()), vs);
        }
    }

    #[test]
    fn taylor_coefficients_reassemble(p in poly(Q, 6), u in -3i64..=3) {
        let u = Q.from_i64(u);
        let count = p.coeffs().len();
        let c = p.taylor_coeffs(&u, count);
        let shifted = Poly::linear_root(&u);
        let mut acc = Poly::zero(Q);
        for ct in c.iter().rev() {
            acc = &(&acc * &shifted) + &Poly::constant(ct.clone());
        }
        prop_assert_eq!(acc, p);
    }
}
