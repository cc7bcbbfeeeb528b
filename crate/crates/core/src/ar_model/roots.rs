use super::{validate_alphas, ArError};
use crate::numerics::CNum;

const MAX_ITERATIONS: usize = 2000;

/// Roots of `λ^k = α_1 λ^(k-1) + … + α_k`, with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct CharRoots {
    /// Sorted by decreasing modulus, then decreasing real and imaginary part.
    pub roots: Vec<CNum>,
    /// All roots strictly inside the unit circle.
    pub stationary: bool,
}

impl CharRoots {
    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Monic coefficients in descending powers: `[1, -α_1, …, -α_k]`.
fn monic(alphas: &[f64]) -> Vec<CNum> {
    std::iter::once(CNum::new(1.0, 0.0))
        .chain(alphas.iter().map(|&a| CNum::new(-a, 0.0)))
        .collect()
}

/// `p(z)` and `p'(z)` by Horner's scheme.
fn eval(coeffs: &[CNum], z: CNum) -> (CNum, CNum) {
    let mut p = CNum::default();
    let mut dp = CNum::default();
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `|λ^k - Σ α_i λ^(k-i)|`.
pub fn char_poly_residual(alphas: &[f64], z: CNum) -> f64 {
    eval(&monic(alphas), z).0.norm()
}

fn residual_bound(k: usize, z: CNum) -> f64 {
    1e-10 * (1.0 + z.norm()).powi(k as i32)
}

/// Aberth–Ehrlich simultaneous iteration.
fn aberth(coeffs: &[CNum]) -> Vec<CNum> {
    let k = coeffs.len() - 1;
    // Fujiwara bound on the root moduli
    let bound = coeffs[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c.norm().powf(1.0 / (i + 1) as f64))
        .fold(0.0, f64::max)
        * 2.0;
    let radius = (0.5 * bound).max(1e-3);
    let mut z: Vec<CNum> = (0..k)
        .map(|i| CNum::from_polar(radius, std::f64::consts::TAU * i as f64 / k as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut converged = true;
        for i in 0..k {
            let (p, dp) = eval(coeffs, z[i]);
            if p == CNum::default() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: CNum = (0..k)
                .filter(|&j| j != i)
                .map(|j| CNum::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (CNum::new(1.0, 0.0) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[i] -= step;
            if step.norm() > 4.0 * f64::EPSILON * z[i].norm().max(1e-300) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    z
}

/// Characteristic roots via Aberth iteration; `k = 1` reads the coefficient.
///
/// Roots whose imaginary part can be dropped without breaking the residual
/// bound are returned as real.
pub fn char_roots(alphas: &[f64]) -> Result<CharRoots, ArError> {
    validate_alphas(alphas)?;
    let k = alphas.len();
    let coeffs = monic(alphas);
    let mut roots = if k == 1 {
        vec![CNum::new(alphas[0], 0.0)]
    } else {
        aberth(&coeffs)
    };
    for z in roots.iter_mut() {
        if z.im != 0.0 && z.im.abs() <= 1e-7 * (1.0 + z.norm()) {
            let real = CNum::new(z.re, 0.0);
            if eval(&coeffs, real).0.norm() <= eval(&coeffs, *z).0.norm().max(1e-3 * residual_bound(k, real)) {
                *z = real;
            }
        }
    }
    let worst = roots
        .iter()
        .map(|&z| eval(&coeffs, z).0.norm() / residual_bound(k, z))
        .fold(0.0, f64::max);
    if worst > 1.0 {
        let residual = roots.iter().map(|&z| eval(&coeffs, z).0.norm()).fold(0.0, f64::max);
        return Err(ArError::RootFinding { residual });
    }
    roots.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });
    let stationary = roots.iter().all(|z| z.norm() < 1.0);
    Ok(CharRoots { roots, stationary })
}
