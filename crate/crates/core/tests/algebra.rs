mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use poincare::{determinant, smith_normal_form, IntegerMatrix};

fn matrix(max_dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

proptest! {
    #[test]
    fn snf_matches_oracle(m in matrix(6)) {
        let a = IntegerMatrix::from_i64(&m);
        let cert = smith_normal_form(&a);
        prop_assert!(cert.verify(&a));
        prop_assert_eq!(cert.invariant_factors(), common::snf_diagonal(&big(&m)));
        prop_assert_eq!(cert.rank(), common::rational_rank(&big(&m)));
    }

    #[test]
    fn invariant_factors_divide(m in matrix(6)) {
        let f = smith_normal_form(&IntegerMatrix::from_i64(&m)).invariant_factors();
        for w in f.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
        prop_assert!(f.iter().all(|x| x > &BigInt::from(0)));
    }

    #[test]
    fn determinant_is_product_of_factors(m in (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))) {
        let a = IntegerMatrix::from_i64(&m);
        let det = determinant(&a);
        let f = smith_normal_form(&a).invariant_factors();
        let product: BigInt = if f.len() == m.len() { f.iter().product() } else { BigInt::from(0) };
        prop_assert_eq!(det.magnitude(), product.magnitude());
    }
}

#[test]
fn oracle_self_check() {
    let m = big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    assert_eq!(common::snf_diagonal(&m), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    assert_eq!(common::rational_rank(&m), 3);
    assert_eq!(common::mod2_rank(&m), 0);
    assert_eq!(common::mod2_rank(&big(&[vec![1, 1], vec![1, 1]])), 1);
}
