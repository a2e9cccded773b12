mod common;

use common::scalar::{factor_suite, field_suite, random_ratfun};
use lda_core::scalar::{factor_ratfun, RatFun};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn field_checks_pass() {
    let failures = field_suite(2_000, 11);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn products_of_linear_forms_factor_back() {
    let failures = factor_suite(200, 12);
    assert!(failures.is_empty(), "{failures:#?}");
}

fn ratfun(seed: u64, nvars: usize) -> RatFun {
    random_ratfun(&mut ChaCha8Rng::seed_from_u64(seed), nvars)
}

proptest! {
    #[test]
    fn subtraction_inverts_addition(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..4) {
        let (a, b) = (ratfun(s1, n), ratfun(s2, n));
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn division_inverts_multiplication(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..4) {
        let (a, b) = (ratfun(s1, n), ratfun(s2, n));
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a * &b) / &b, a);
    }

    #[test]
    fn shift_is_a_ring_homomorphism(s1 in any::<u64>(), s2 in any::<u64>(), o in prop::collection::vec(-4i64..5, 2)) {
        let (a, b) = (ratfun(s1, 3), ratfun(s2, 3));
        prop_assert_eq!((&a * &b).shift(&o), &a.shift(&o) * &b.shift(&o));
        prop_assert_eq!((&a - &b).shift(&o), &a.shift(&o) - &b.shift(&o));
    }

    #[test]
    fn factored_form_expands_back(s in any::<u64>(), n in 1usize..4) {
        let a = ratfun(s, n);
        prop_assume!(!a.is_zero());
        prop_assert_eq!(factor_ratfun(&a).expand(n), a);
    }
}
