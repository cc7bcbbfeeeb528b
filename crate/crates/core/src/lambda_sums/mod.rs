//! The limits `F_ℓ(λ_1,…,λ_ℓ; S)` and their oracles.
//!
//! * [`f_distinct`] and [`f_general`] evaluate the closed form, the latter
//!   for any root multiplicities.
//! * [`series_oracle`] sums the infinite lattice directly.
//! * [`finite_sum`] and [`linear_coefficient`] work with the finite-`n` sums
//!   the limit is defined from.
//! * [`conjecture_probe`] checks the closed form at ℓ = 5, 6 against the
//!   lattice sum.

mod closed_form;
mod finite;
mod probe;
mod series;
mod types;

pub use closed_form::{evaluate, f2_equal_reference, f3_triple_reference, f_distinct, f_general};
pub use finite::{finite_sum, finite_sum_direct, linear_coefficient, FiniteSumSpec, SlopeSpec};
pub use probe::{conjecture_probe, ProbeOutcome, ProbeReport, ProbeTrial};
pub use series::{
    series_oracle, series_oracle_with_budget, series_truncated, tail_bound, SeriesResult,
    DEFAULT_BUDGET,
};
pub use types::{
    LimitValue, RootMultiset, ShiftSpec, SumsError, CLUSTER_THRESHOLD, MAX_ELL, MIN_ELL,
    REALNESS_TOL,
};
