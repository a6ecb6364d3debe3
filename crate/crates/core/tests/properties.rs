//! Randomized invariants. The seed comes from `LINESING_SEED` and defaults to
//! a fixed value, so CI runs are reproducible.

mod common;

use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32) -> Config {
    let seed = std::env::var("LINESING_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed_1e55);
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

macro_rules! property {
    ($name:ident, $check:path, $cases:expr) => {
        proptest! {
            #![proptest_config(config($cases))]
            #[test]
            fn $name(seed in any::<u64>()) {
                let r = $check(seed);
                prop_assert!(r.is_ok(), "seed {seed}: {}", r.unwrap_err());
            }
        }
    };
}

property!(ring_laws_hold, ring_laws, 200);
property!(orders_are_multiplicative, order_multiplicativity, 300);
property!(derivations_obey_leibniz, leibniz, 200);
property!(euler_field_scales_homogeneous, euler_identity, 200);
property!(format_parses_back, parse_round_trip, 200);
property!(mora_certificates_verify, certificate_validity, 100);
property!(s_polynomials_reduce_to_zero, s_polynomials_reduce, 40);
property!(colon_is_sound, colon_soundness, 25);
property!(intersection_is_exact, intersection_correctness, 25);
property!(relative_dimension_never_drops, stabilization_monotone, 25);
property!(oracle_matches_vdim, oracle_vdim, 30);
property!(derlog_generators_are_tangent, derlog_identities, 20);
property!(g_squared_plus_h_is_primitive, primitive_from_g_squared, 30);
property!(delta_ignores_pair_rule, extraction_rule_independence, 40);
property!(e_k_is_linear_in_k, e_k_linear, 15);
property!(reports_are_coherent, report_coherence, 8);

proptest! {
    #![proptest_config(config(20))]
    #[test]
    fn engine_and_oracle_agree_on_membership(seed in any::<u64>()) {
        let r = oracle_membership(seed, 8);
        prop_assert!(r.is_ok(), "seed {seed}: {}", r.unwrap_err());
    }
}
