use super::{char_roots, ArError, CharRoots};
use crate::lambda_sums::CLUSTER_THRESHOLD;
use crate::numerics::{powu, relative_distance, CNum};
use nalgebra::{DMatrix, DVector};

/// `ρ_j = Σ_i A_i λ_i^|j|` over the characteristic roots.
#[derive(Debug, Clone, PartialEq)]
pub struct AcfModel {
    pub roots: Vec<CNum>,
    pub coeffs: Vec<CNum>,
}

impl AcfModel {
    pub fn rho(&self, lag: i64) -> CNum {
        let p = lag.unsigned_abs() as u32;
        self.roots
            .iter()
            .zip(&self.coeffs)
            .map(|(&l, &a)| a * powu(l, p))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Autocorrelation {
    pub roots: CharRoots,
    /// `ρ_0 … ρ_jmax` from the Yule–Walker system and the AR recursion.
    pub rho: Vec<f64>,
    /// The geometric representation; [`ArError::AcfConfluent`] for repeated roots.
    pub model: Result<AcfModel, ArError>,
}

/// `ρ_1 … ρ_{k-1}` from `ρ_j = Σ_i α_i ρ_|j-i|` with `ρ_0 = 1`.
fn yule_walker(alphas: &[f64]) -> Result<Vec<f64>, ArError> {
    let k = alphas.len();
    let mut rho = vec![1.0];
    if k == 1 {
        return Ok(rho);
    }
    let dim = k - 1;
    let mut m = DMatrix::<f64>::identity(dim, dim);
    let mut rhs = DVector::<f64>::zeros(dim);
    for j in 1..k {
        for (i, &a) in alphas.iter().enumerate() {
            let lag = (j as i64 - (i as i64 + 1)).unsigned_abs() as usize;
            if lag == 0 {
                rhs[j - 1] += a;
            } else {
                m[(j - 1, lag - 1)] -= a;
            }
        }
    }
    let sol = m.lu().solve(&rhs).ok_or(ArError::Singular)?;
    rho.extend(sol.iter());
    Ok(rho)
}

fn vandermonde(roots: &[CNum], rho: &[f64]) -> Result<AcfModel, ArError> {
    let k = roots.len();
    for a in 0..k {
        for b in a + 1..k {
            if relative_distance(roots[a], roots[b]) <= CLUSTER_THRESHOLD {
                return Err(ArError::AcfConfluent);
            }
        }
    }
    let v = DMatrix::<CNum>::from_fn(k, k, |j, i| powu(roots[i], j as u32));
    let rhs = DVector::<CNum>::from_fn(k, |j, _| CNum::new(rho[j], 0.0));
    let coeffs = v.lu().solve(&rhs).ok_or(ArError::Singular)?;
    Ok(AcfModel {
        roots: roots.to_vec(),
        coeffs: coeffs.iter().copied().collect(),
    })
}

/// Theoretical serial correlations of a stationary AR(k) model.
pub fn acf(alphas: &[f64], j_max: usize) -> Result<Autocorrelation, ArError> {
    let roots = char_roots(alphas)?;
    if !roots.stationary {
        return Err(ArError::NotStationary {
            max_modulus: roots.max_modulus(),
        });
    }
    let k = alphas.len();
    let mut rho = yule_walker(alphas)?;
    while rho.len() < (j_max + 1).max(k) {
        let j = rho.len();
        let next: f64 = alphas.iter().enumerate().map(|(i, a)| a * rho[j - i - 1]).sum();
        rho.push(next);
    }
    let model = vandermonde(&roots.roots, &rho[..k]);
    rho.truncate(j_max + 1);
    Ok(Autocorrelation { roots, rho, model })
}
