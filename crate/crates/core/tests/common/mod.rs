use proptest::test_runner::{Config, RngSeed};

/// Fixed seed, no persistence files: every run draws the same cases.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x00C0_CE27),
        failure_persistence: None,
        ..Config::default()
    }
}
