use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use lahkit::riordan::{
    lah_inverse_matrix, lah_inverse_matrix_by_elimination, lah_matrix, lah_polynomial, verify_orthogonality,
    ExpRiordan,
};
use lahkit::sequences::l_totals;
use lahkit::series::ExactSeries;
use lahkit::sizeset::dsl_family;

const ORDER: usize = 8;

/// Integer coefficients keep every materialized entry integral.
fn integer_series(constant: i64, linear: Option<i64>) -> impl Strategy<Value = ExactSeries> {
    prop::collection::vec(-3i64..=3, ORDER + 1).prop_map(move |mut c| {
        c[0] = constant;
        if let Some(l) = linear {
            c[1] = l;
        }
        let coeffs = c.into_iter().map(|v| BigRational::from_integer(v.into())).collect();
        ExactSeries::from_coeffs(coeffs, ORDER)
    })
}

fn riordan_pair() -> impl Strategy<Value = ExpRiordan> {
    (integer_series(1, None), integer_series(0, Some(1)))
        .prop_map(|(g, f)| ExpRiordan::new(g, f).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_materializes_to_matrix_product(a in riordan_pair(), b in riordan_pair()) {
        let product = a.mul(&b).unwrap().to_matrix(ORDER).unwrap();
        let dense = a.to_matrix(ORDER).unwrap().mul(&b.to_matrix(ORDER).unwrap()).unwrap();
        prop_assert_eq!(product, dense);
    }

    #[test]
    fn inversion_routes_agree(a in riordan_pair()) {
        let by_series = a.inverse().unwrap().to_matrix(ORDER).unwrap();
        let by_elimination = a.to_matrix(ORDER).unwrap().inverse_unit_lower().unwrap();
        prop_assert_eq!(by_series, by_elimination);
    }
}

#[test]
fn orthogonality_across_the_family() {
    for set in dsl_family().into_iter().filter(|s| s.contains(1)) {
        for r in 0..=2 {
            let report = verify_orthogonality(&set, r, 10).unwrap();
            assert!(report.pass, "{report}");
            assert_eq!(lah_inverse_matrix(&set, r, 10).unwrap(), lah_inverse_matrix_by_elimination(&set, r, 10).unwrap());
        }
    }
}

#[test]
fn row_sums_and_polynomials() {
    for set in dsl_family().into_iter().filter(|s| s.contains(1)) {
        for r in 0..=2 {
            let matrix = lah_matrix(&set, r, 9).unwrap();
            assert_eq!(matrix.row_sums(), l_totals(&set, r, 9).unwrap());
            for n in 0..=9 {
                let p = lah_polynomial(n, &set, r).unwrap();
                assert_eq!(p.degree(), n);
                assert!(p.coeffs[n].is_one());
                assert!(p.coeffs.iter().all(|c| !c.is_negative()));
                assert_eq!(p.eval(&BigInt::one()), matrix.row_sums()[n]);
            }
        }
    }
}

#[test]
fn sets_without_one_have_no_inverse() {
    for set in dsl_family().into_iter().filter(|s| !s.contains(1)) {
        assert!(lah_inverse_matrix(&set, 1, 5).is_err());
        assert!(lah_inverse_matrix_by_elimination(&set, 1, 5).is_err());
        assert!(lah_matrix(&set, 1, 5).unwrap().get(0, 0).is_zero());
    }
}
