//! AR(k) toolkit: characteristic roots, serial correlations, seeded
//! simulation and the sums `Σ X_i` and `Σ X_i X_{i+j}`.

mod acf;
mod roots;
mod simulate;
mod stats;

pub use acf::{acf, AcfModel, Autocorrelation};
pub use roots::{char_roots, char_poly_residual, CharRoots};
pub use simulate::{
    acf_check, default_burn_in, deterministic_path, simulate, AcfCheck, LagCheck, SeriesSample,
};
pub use stats::{empirical_acf, parse_csv, sum_stats, to_csv};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArError {
    #[error("an AR model needs at least one coefficient")]
    Empty,
    #[error("the last coefficient is zero; the model has lower order")]
    ZeroLeading,
    #[error("non-finite model parameter")]
    NonFinite,
    #[error("noise standard deviation must be non-negative, got {0}")]
    BadSigma(f64),
    #[error("model is not stationary (largest root modulus {max_modulus})")]
    NotStationary { max_modulus: f64 },
    #[error("repeated characteristic roots; the geometric representation of the autocorrelation is unavailable")]
    AcfConfluent,
    #[error("root finding did not meet the residual bound (residual {residual:e})")]
    RootFinding { residual: f64 },
    #[error("singular linear system")]
    Singular,
    #[error("lag {lag} out of range for a series of length {n}")]
    BadLag { lag: usize, n: usize },
    #[error("sample is identically zero")]
    DegenerateSample,
    #[error("need at least one observation and one seed")]
    EmptySample,
    #[error("malformed CSV: {0}")]
    Csv(String),
}

/// `X_i = α_1 X_{i-1} + … + α_k X_{i-k} + ε_i`, `ε_i ~ N(0, σ²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArModel {
    alphas: Vec<f64>,
    sigma: f64,
}

impl ArModel {
    /// `sigma = 0` is accepted and gives the noiseless recursion.
    pub fn new(alphas: Vec<f64>, sigma: f64) -> Result<Self, ArError> {
        validate_alphas(&alphas)?;
        if !sigma.is_finite() {
            return Err(ArError::NonFinite);
        }
        if sigma < 0.0 {
            return Err(ArError::BadSigma(sigma));
        }
        Ok(Self { alphas, sigma })
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn order(&self) -> usize {
        self.alphas.len()
    }
}

pub(crate) fn validate_alphas(alphas: &[f64]) -> Result<(), ArError> {
    match alphas.last() {
        None => Err(ArError::Empty),
        Some(_) if alphas.iter().any(|a| !a.is_finite()) => Err(ArError::NonFinite),
        Some(0.0) => Err(ArError::ZeroLeading),
        Some(_) => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_validation() {
        assert!(ArModel::new(vec![0.5, -0.06], 1.0).is_ok());
        assert_eq!(ArModel::new(vec![], 1.0), Err(ArError::Empty));
        assert_eq!(ArModel::new(vec![0.5, 0.0], 1.0), Err(ArError::ZeroLeading));
        assert_eq!(ArModel::new(vec![0.5], -1.0), Err(ArError::BadSigma(-1.0)));
        assert_eq!(ArModel::new(vec![f64::NAN], 1.0), Err(ArError::NonFinite));
    }
}
