//! Fixtures shared by the benchmarks.

use probnull_core::posterior::{ErrorConfig, NullPrior, TypeIISpec};
use probnull_core::BetaParams;

/// High prior Beta(60,6) with α = 0.05 and a point Type II error of 0.9.
pub fn point_case() -> (NullPrior, ErrorConfig) {
    (
        NullPrior::new(BetaParams::new(60.0, 6.0).expect("valid shapes")),
        ErrorConfig::new(0.05, TypeIISpec::Point(0.9)).expect("valid alpha"),
    )
}

/// High prior Beta(60,6) with α = 0.005 and Type II error ~ Beta(2,20).
pub fn beta_case() -> (NullPrior, ErrorConfig) {
    (
        NullPrior::new(BetaParams::new(60.0, 6.0).expect("valid shapes")),
        ErrorConfig::new(
            0.005,
            TypeIISpec::Beta(BetaParams::new(2.0, 20.0).expect("valid shapes")),
        )
        .expect("valid alpha"),
    )
}
