//! Limit sums of cyclic geometric lattice products.
//!
//! Moment calculations for estimators of the autoregressive model
//!
//! ```text
//! X_i = α_1 X_{i-1} + … + α_k X_{i-k} + ε_i
//! ```
//!
//! reduce to cyclic sums such as
//! `Σ_{i1,i2,i3 ≤ n} λ1^|i1-i2+s1| λ2^|i2-i3+s2| λ3^|i3-i1+s3|`,
//! whose part proportional to `n` is
//!
//! ```text
//! F_ℓ(λ; S) = Σ_i λ_i^(S+ℓ-1) Π_{j≠i} (1-λ_j²) / ((λ_i-λ_j)(1-λ_i λ_j)),   S = |Σ s_i|.
//! ```
//!
//! The crate evaluates `F_ℓ` ([`lambda_sums`]), including every repeated-root
//! case through confluent divided differences ([`numerics`]), and checks the
//! closed form against two independent oracles: the truncated infinite lattice
//! sum and the exact finite-`n` sum. The [`ar_model`] module grounds the roots
//! in actual AR(k) processes.

pub mod ar_model;
pub mod lambda_sums;
pub mod numerics;

pub use numerics::CNum;
