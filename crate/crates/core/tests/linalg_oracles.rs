mod common;

use common::{gf, small_data, Q};
use proptest::prelude::*;
use ratherm::field::FieldConfig;
use ratherm::linalg::ExactMatrix;
use ratherm::problem::{build_matrix, delta_matrix};
use ratherm::verify::oracles::{brute_force_kernel, cofactor_determinant, minor_scan_rank, naive_signed_minors, same_span};

fn matrix(field: FieldConfig, max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        // entries in -2..=2 with many zeros give plenty of rank deficiency
        prop::collection::vec(prop_oneof![3 => Just(0i64), 4 => -2i64..=2], r * c).prop_map(move |xs| {
            let rows = xs.chunks(c).map(|row| row.iter().map(|&x| field.from_i64(x)).collect()).collect();
            ExactMatrix::from_rows(field, rows).unwrap()
        })
    })
}

fn check_against_oracles(m: &ExactMatrix) -> Result<(), TestCaseError> {
    prop_assert_eq!(m.rank(), minor_scan_rank(m).unwrap());
    let basis = m.kernel_basis();
    prop_assert_eq!(basis.len() + m.rank(), m.cols());
    for w in &basis {
        prop_assert!(m.mul_vec(w).unwrap().iter().all(|x| x.is_zero()));
    }
    prop_assert!(same_span(m.field(), m.cols(), &basis, &brute_force_kernel(m).unwrap()).unwrap());
    if m.rows() == m.cols() {
        prop_assert_eq!(m.determinant().unwrap(), cofactor_determinant(m).unwrap());
    }
    if m.cols() == m.rows() + 1 {
        prop_assert_eq!(m.signed_minors().unwrap(), naive_signed_minors(m).unwrap());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn elimination_matches_oracles(m in matrix(Q, 6)) {
        check_against_oracles(&m)?;
    }

    #[test]
    fn elimination_matches_oracles_mod_p(m in matrix(gf(5), 6)) {
        check_against_oracles(&m)?;
    }

    #[test]
    fn square_and_wide_shapes(m in (1usize..=5).prop_flat_map(|r| {
        prop::collection::vec(-3i64..=3, r * (r + 1)).prop_map(move |xs| {
            let rows = xs.chunks(r + 1).map(|row| row.iter().map(|&x| Q.from_i64(x)).collect()).collect();
            ExactMatrix::from_rows(Q, rows).unwrap()
        })
    })) {
        check_against_oracles(&m)?;
        let sq = m.without_col(m.cols() - 1);
        check_against_oracles(&sq)?;
    }

    #[test]
    fn structured_matrices_match_oracles(data in small_data(Q, 6)) {
        let (k, n) = (data.k(), data.n());
        check_against_oracles(&build_matrix(&data, k - 1, n - k))?;
        for t in 1..=n + 1 {
            let d = delta_matrix(&data, t).unwrap();
            prop_assert_eq!(d.signed_minors().unwrap(), naive_signed_minors(&d).unwrap());
        }
    }

    #[test]
    fn signed_minors_span_the_kernel(m in matrix(Q, 5).prop_filter("wide by one", |m| m.cols() == m.rows() + 1)) {
        let minors = m.signed_minors().unwrap();
        prop_assert!(m.mul_vec(&minors).unwrap().iter().all(|x| x.is_zero()));
        let nonzero = minors.iter().any(|x| !x.is_zero());
        prop_assert_eq!(nonzero, m.rank() == m.rows());
    }
}
