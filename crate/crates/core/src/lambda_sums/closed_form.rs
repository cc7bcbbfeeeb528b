//! Closed-form evaluation of `F_ℓ(λ; S)`.

use super::types::{check_roots, LimitValue, RootMultiset, SumsError};
use crate::numerics::{divided_difference_with_bound, powu, CNum, ComplexSum, Jet};

const ONE: CNum = CNum::new(1.0, 0.0);

fn rounding_bound(ell: usize, magnitude: f64) -> f64 {
    8.0 * ell as f64 * f64::EPSILON * magnitude
}

/// Sum over distinct roots of
/// `λ_i^(S+ℓ-1) Π_{j≠i} (1-λ_j²) / ((λ_i-λ_j)(1-λ_i λ_j))`.
///
/// Fails with [`SumsError::Collision`] if any entry is repeated.
pub fn f_distinct(roots: &RootMultiset, s: u32) -> Result<LimitValue, SumsError> {
    if !roots.is_distinct() {
        return Err(SumsError::Collision);
    }
    let lambdas = roots.expanded();
    let (value, magnitude) = distinct_terms(&lambdas, s);
    Ok(LimitValue::certify(
        value,
        rounding_bound(lambdas.len(), magnitude),
        roots.is_conjugate_closed(),
    ))
}

/// The distinct-root formula applied to a raw list, with no separation check.
/// Returns the value and the sum of term magnitudes.
pub(crate) fn distinct_terms(lambdas: &[CNum], s: u32) -> (CNum, f64) {
    let ell = lambdas.len();
    let power = s + ell as u32 - 1;
    let mut sum = ComplexSum::new();
    let mut magnitude = 0.0;
    for (i, &li) in lambdas.iter().enumerate() {
        let mut term = powu(li, power);
        for (j, &lj) in lambdas.iter().enumerate() {
            if j != i {
                term *= (ONE - lj * lj) / ((li - lj) * (ONE - li * lj));
            }
        }
        magnitude += term.norm();
        sum.add(term);
    }
    (sum.value(), magnitude)
}

/// Expansion of `G(x) = x^p Π_j ((1-λ_j²)/(1-x λ_j))^{m_j}` at `center`.
fn kernel_jet(entries: &[(CNum, usize)], power: u32, center: CNum, order: usize) -> Result<Jet, SumsError> {
    let x = Jet::variable(center, order);
    let one = Jet::one(center, order);
    let mut g = x.pow_int(power);
    for &(lj, mj) in entries {
        let den = one.sub(&x.scale(lj))?;
        let factor = Jet::constant(center, ONE - lj * lj, order).div(&den)?;
        g = g.mul(&factor.pow_int(mj as u32))?;
    }
    Ok(g)
}

/// Confluent limit of the closed form for any multiplicities.
///
/// Evaluates the Hermite divided difference of
/// `G(x) = x^(S+ℓ-1) Π_j (1-λ_j²)/(1-x λ_j)` over the root multiset. For
/// distinct roots the `j = i` factor of the product cancels and this is the
/// same sum as [`f_distinct`]; repeated roots pick up derivatives of `G`.
pub fn f_general(roots: &RootMultiset, s: u32) -> Result<LimitValue, SumsError> {
    let ell = roots.ell();
    let power = s + ell as u32 - 1;
    let entries = roots.entries();
    let jets = entries
        .iter()
        .map(|&(z, m)| kernel_jet(entries, power, z, m - 1))
        .collect::<Result<Vec<_>, _>>()?;
    let dd = divided_difference_with_bound(entries, &jets)?;
    Ok(LimitValue::certify(
        dd.value,
        rounding_bound(ell, dd.magnitude),
        roots.is_conjugate_closed(),
    ))
}

/// Routes to [`f_distinct`] when every root is simple, otherwise to [`f_general`].
pub fn evaluate(roots: &RootMultiset, s: u32) -> Result<LimitValue, SumsError> {
    if roots.is_distinct() {
        f_distinct(roots, s)
    } else {
        f_general(roots, s)
    }
}

/// Double-root closed form `λ^S (1 + S + (1-S) λ²) / (1 - λ²)`.
pub fn f2_equal_reference(lambda: CNum, s: u32) -> Result<CNum, SumsError> {
    check_roots(&[lambda])?;
    let sf = s as f64;
    let l2 = lambda * lambda;
    Ok(powu(lambda, s) * (1.0 + sf + (1.0 - sf) * l2) / (ONE - l2))
}

/// Triple-root closed form
/// `λ^S (2 + 3S + S² + 2(4-S²)λ² + (2-3S+S²)λ⁴) / (2 (1-λ²)²)`.
pub fn f3_triple_reference(lambda: CNum, s: u32) -> Result<CNum, SumsError> {
    check_roots(&[lambda])?;
    let sf = s as f64;
    let l2 = lambda * lambda;
    let num = (2.0 + 3.0 * sf + sf * sf) + 2.0 * (4.0 - sf * sf) * l2 + (2.0 - 3.0 * sf + sf * sf) * l2 * l2;
    let den = 2.0 * (ONE - l2) * (ONE - l2);
    Ok(num / den * powu(lambda, s))
}
