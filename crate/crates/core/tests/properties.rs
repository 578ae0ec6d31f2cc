//! Randomized identities of the cochain calculus: exact equality on seeded
//! instances with algebras of dimension at most 4 and degrees at most 3.

mod common;

use common::{config, CASES};
use proptest::prelude::*;

fn run(check: fn(u64) -> common::Check, seed: u64) -> Result<(), TestCaseError> {
    check(seed).map_err(|e| TestCaseError::fail(format!("seed {seed}: {e}")))
}

proptest! {
    #![proptest_config(config(CASES))]

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>()) {
        run(common::check_d_squared, seed)?;
    }

    #[test]
    fn covariant_square_is_curvature_wedge(seed in any::<u64>()) {
        run(common::check_covariant_square, seed)?;
    }

    #[test]
    fn bianchi_identity(seed in any::<u64>()) {
        run(common::check_bianchi, seed)?;
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>()) {
        run(common::check_leibniz, seed)?;
    }

    #[test]
    fn graded_commutativity(seed in any::<u64>()) {
        run(common::check_graded_commutativity, seed)?;
    }

    #[test]
    fn superbracket_is_a_lie_superalgebra(seed in any::<u64>()) {
        run(common::check_superalgebra, seed)?;
    }

    #[test]
    fn wedge_is_associative_for_end_pairings(seed in any::<u64>()) {
        run(common::check_associativity, seed)?;
    }

    #[test]
    fn twisted_complex_curvature(seed in any::<u64>()) {
        run(common::check_twisted, seed)?;
    }
}
