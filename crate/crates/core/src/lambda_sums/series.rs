//! Truncated infinite lattice sum
//! `Σ_{j ∈ Z^(ℓ-1)} Π_{m<ℓ} λ_m^|j_m| · λ_ℓ^|S - Σ j_m|`.
//!
//! The sum runs over the cube `max |j_m| ≤ J`. It is organized as a chain of
//! one-dimensional convolutions over partial sums `t = j_1 + … + j_m`, which
//! visits every lattice term of the cube exactly once in a fixed order with
//! compensated accumulation.
//!
//! Tail bound: with `r_m = |λ_m|`, every term satisfies
//! `|term| ≤ Π_{m<ℓ} r_m^|j_m|` because the last factor is at most one. Summing
//! that majorant over all of `Z^(ℓ-1)` gives `Π a_m` with
//! `a_m = (1+r_m)/(1-r_m)`, and over the cube gives `Π b_m` with
//! `b_m = (1 + r_m - 2 r_m^(J+1))/(1-r_m)`. The omitted terms are therefore
//! bounded by `Π a_m - Π b_m`. The root of largest modulus takes the free slot
//! so the dropped factor costs the least.

use super::types::{check_roots, values_conjugate_closed, LimitValue, SumsError, MIN_ELL};
use crate::numerics::{CNum, ComplexSum};
use rayon::prelude::*;

/// Default cap on multiply-accumulate operations per oracle call.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: LimitValue,
    /// Cube half-width `J`.
    pub truncation: usize,
    /// Multiply-accumulate operations spent.
    pub work: u64,
}

/// Slots ordered with the largest modulus last.
fn arrange(lambdas: &[CNum]) -> Vec<CNum> {
    let mut order: Vec<usize> = (0..lambdas.len()).collect();
    let free = (0..lambdas.len())
        .max_by(|&a, &b| lambdas[a].norm().total_cmp(&lambdas[b].norm()).then(b.cmp(&a)))
        .expect("non-empty");
    order.retain(|&i| i != free);
    order.push(free);
    order.into_iter().map(|i| lambdas[i]).collect()
}

/// Bound on the terms outside the cube of half-width `j_max`.
pub fn tail_bound(lambdas: &[CNum], j_max: usize) -> f64 {
    let arranged = arrange(lambdas);
    let summed = &arranged[..arranged.len() - 1];
    cube_tail(summed, j_max)
}

fn cube_tail(summed: &[CNum], j_max: usize) -> f64 {
    let radii: Vec<f64> = summed.iter().map(|z| z.norm()).collect();
    let full: Vec<f64> = radii.iter().map(|&r| (1.0 + r) / (1.0 - r)).collect();
    let gap: Vec<f64> = radii
        .iter()
        .map(|&r| 2.0 * r.powi((j_max + 1).min(i32::MAX as usize) as i32) / (1.0 - r))
        .collect();
    // Π a - Π b = Σ_k (Π_{m<k} b_m) (a_k - b_k) (Π_{m>k} a_m), free of cancellation.
    let mut total = 0.0;
    for k in 0..radii.len() {
        let before: f64 = (0..k).map(|m| full[m] - gap[m]).product();
        let after: f64 = (k + 1..radii.len()).map(|m| full[m]).product();
        total += before * gap[k] * after;
    }
    total
}

/// A priori rounding floor: the absolute term sum is at most `Π a_m`.
fn rounding_floor(summed: &[CNum]) -> f64 {
    let mass: f64 = summed.iter().map(|z| (1.0 + z.norm()) / (1.0 - z.norm())).product();
    4.0 * (summed.len() + 1) as f64 * f64::EPSILON * mass
}

fn work_for(dims: usize, j_max: usize) -> u64 {
    let j = j_max as u64;
    let width = 2 * j + 1;
    let mut work = 0u64;
    for m in 1..=dims as u64 {
        work = work.saturating_add((2 * (m - 1) * j + 1).saturating_mul(width));
    }
    work.saturating_add(2 * dims as u64 * j + 1)
}

fn powers(z: CNum, upto: usize) -> Vec<CNum> {
    let mut out = Vec::with_capacity(upto + 1);
    let mut acc = CNum::new(1.0, 0.0);
    for _ in 0..=upto {
        out.push(acc);
        acc *= z;
    }
    out
}

/// Cube-truncated lattice sum at a fixed half-width, with its tail bound.
pub fn series_truncated(lambdas: &[CNum], s: u32, j_max: usize) -> Result<(CNum, f64), SumsError> {
    if lambdas.len() < MIN_ELL {
        return Err(SumsError::Arity(lambdas.len()));
    }
    check_roots(lambdas)?;
    let arranged = arrange(lambdas);
    let (summed, free) = arranged.split_at(arranged.len() - 1);
    Ok((lattice_sum(summed, free[0], s, j_max), cube_tail(summed, j_max)))
}

fn lattice_sum(summed: &[CNum], free: CNum, s: u32, j_max: usize) -> CNum {
    let j = j_max as i64;
    // partial[t + offset] holds the sum over j_1..j_m with j_1+…+j_m = t
    let mut partial: Vec<CNum> = vec![CNum::new(1.0, 0.0)];
    let mut reach: i64 = 0;
    for &lambda in summed {
        let pw = powers(lambda, j_max);
        let next_reach = reach + j;
        let prev = &partial;
        let next: Vec<CNum> = (-next_reach..=next_reach)
            .into_par_iter()
            .map(|t| {
                let mut acc = ComplexSum::new();
                let lo = (-j).max(t - reach);
                let hi = j.min(t + reach);
                for step in lo..=hi {
                    let src = (t - step + reach) as usize;
                    acc.add(prev[src] * pw[step.unsigned_abs() as usize]);
                }
                acc.value()
            })
            .collect();
        partial = next;
        reach = next_reach;
    }
    let s = s as i64;
    let pw_free = powers(free, (s + reach) as usize);
    let mut total = ComplexSum::new();
    for (idx, &p) in partial.iter().enumerate() {
        let t = idx as i64 - reach;
        total.add(p * pw_free[(s - t).unsigned_abs() as usize]);
    }
    total.value()
}

/// Lattice sum to absolute accuracy `tol` under the default budget.
pub fn series_oracle(lambdas: &[CNum], s: u32, tol: f64) -> Result<SeriesResult, SumsError> {
    series_oracle_with_budget(lambdas, s, tol, DEFAULT_BUDGET)
}

/// Picks the smallest `J` whose tail bound plus rounding floor is below `tol`.
///
/// The returned `err_estimate` is that sum; the true infinite sum lies within
/// it. Fails with [`SumsError::BudgetExceeded`] when the required `J` costs
/// more than `budget` operations or when `tol` is below the rounding floor.
pub fn series_oracle_with_budget(
    lambdas: &[CNum],
    s: u32,
    tol: f64,
    budget: u64,
) -> Result<SeriesResult, SumsError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SumsError::BadTolerance);
    }
    if lambdas.len() < MIN_ELL {
        return Err(SumsError::Arity(lambdas.len()));
    }
    check_roots(lambdas)?;
    let arranged = arrange(lambdas);
    let (summed, free) = arranged.split_at(arranged.len() - 1);
    let dims = summed.len();
    let floor = rounding_floor(summed);
    let bound = |jm: usize| cube_tail(summed, jm) + floor;

    let largest_affordable = || {
        // work_for is monotone in J
        let (mut lo, mut hi) = (0usize, 1usize);
        while work_for(dims, hi) <= budget {
            lo = hi;
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if work_for(dims, mid) <= budget {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    if floor >= tol {
        return Err(SumsError::BudgetExceeded {
            budget,
            achievable: bound(largest_affordable()),
        });
    }

    // exponential search, then bisection on the monotone tail bound
    let mut hi = 1usize;
    while bound(hi) >= tol {
        if work_for(dims, hi) > budget {
            return Err(SumsError::BudgetExceeded {
                budget,
                achievable: bound(largest_affordable()),
            });
        }
        hi *= 2;
    }
    let mut lo = 0usize;
    if bound(0) < tol {
        hi = 0;
    }
    while hi > lo + 1 {
        let mid = lo + (hi - lo) / 2;
        if bound(mid) < tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let j_max = hi;
    let work = work_for(dims, j_max);
    if work > budget {
        return Err(SumsError::BudgetExceeded {
            budget,
            achievable: bound(largest_affordable()),
        });
    }
    let value = lattice_sum(summed, free[0], s, j_max);
    Ok(SeriesResult {
        value: LimitValue::certify(value, bound(j_max), values_conjugate_closed(lambdas)),
        truncation: j_max,
        work,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> CNum {
        CNum::new(re, 0.0)
    }

    /// Plain nested loops over the cube, no reorganization.
    fn brute(lambdas: &[CNum], s: i64, j_max: i64) -> CNum {
        let d = lambdas.len() - 1;
        let mut idx = vec![-j_max; d];
        let mut total = CNum::default();
        loop {
            let mut term = CNum::new(1.0, 0.0);
            for m in 0..d {
                term *= lambdas[m].powi(idx[m].abs() as i32);
            }
            let rest = s - idx.iter().sum::<i64>();
            term *= if rest == 0 { c(1.0) } else { lambdas[d].powi(rest.abs() as i32) };
            total += term;
            let mut m = 0;
            loop {
                if m == d {
                    return total;
                }
                idx[m] += 1;
                if idx[m] <= j_max {
                    break;
                }
                idx[m] = -j_max;
                m += 1;
            }
        }
    }

    #[test]
    fn matches_nested_loops_on_a_small_cube() {
        let lambdas = [c(0.4), CNum::new(-0.2, 0.3), c(0.6), c(0.1)];
        for s in 0..3 {
            let (fast, _) = series_truncated(&lambdas, s, 6).unwrap();
            let arranged = arrange(&lambdas);
            let slow = brute(&arranged, s as i64, 6);
            assert!((fast - slow).norm() < 1e-14, "s = {s}");
        }
    }

    #[test]
    fn two_roots_shift_one() {
        let r = series_oracle(&[c(0.5), c(0.3)], 1, 1e-12).unwrap();
        assert!((r.value.value - c(0.941_176_470_588_235_3)).norm() < 1e-12);
        assert!(r.value.err_estimate < 1e-12);
        assert!(r.value.is_real_certified);
    }

    #[test]
    fn zero_root_forces_its_index() {
        for j in 3..8 {
            let (v, _) = series_truncated(&[c(0.7), c(0.0)], 3, j).unwrap();
            assert!((v - c(0.343)).norm() < 1e-15);
        }
    }

    #[test]
    fn five_equal_roots() {
        // high-precision lattice sum: 1921/81
        let r = series_oracle(&[c(0.5); 5], 0, 1e-8).unwrap();
        assert!((r.value.value.re - 23.716_049_382_716_049).abs() < 1e-8);
    }

    #[test]
    fn doubling_the_cube_stays_within_the_bound() {
        let lambdas = [c(0.8), CNum::new(0.1, 0.5), CNum::new(0.1, -0.5)];
        for j in [5usize, 10, 20, 40] {
            let (a, bound) = series_truncated(&lambdas, 2, j).unwrap();
            let (b, _) = series_truncated(&lambdas, 2, 2 * j).unwrap();
            assert!((a - b).norm() <= bound, "J = {j}");
        }
    }

    #[test]
    fn budget_and_tolerance_errors() {
        let near_one = [c(0.999), c(0.998), c(0.997)];
        match series_oracle_with_budget(&near_one, 0, 1e-12, 10_000) {
            Err(SumsError::BudgetExceeded { budget, achievable }) => {
                assert_eq!(budget, 10_000);
                assert!(achievable > 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            series_oracle(&[c(0.5); 5], 0, 1e-16),
            Err(SumsError::BudgetExceeded { .. })
        ));
        assert_eq!(series_oracle(&[c(0.5), c(0.3)], 0, 0.0), Err(SumsError::BadTolerance));
        assert_eq!(series_oracle(&[c(0.5)], 0, 1e-8), Err(SumsError::Arity(1)));
    }

    #[test]
    fn repeated_runs_are_bit_identical() {
        let lambdas = [c(0.45), CNum::new(0.2, 0.3), CNum::new(0.2, -0.3), c(-0.4), c(0.1)];
        let a = series_oracle(&lambdas, 2, 1e-9).unwrap();
        let b = series_oracle(&lambdas, 2, 1e-9).unwrap();
        assert_eq!(a.value.value.re.to_bits(), b.value.value.re.to_bits());
        assert_eq!(a.value.value.im.to_bits(), b.value.value.im.to_bits());
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c1 = single.install(|| series_oracle(&lambdas, 2, 1e-9).unwrap());
        assert_eq!(a.value.value.re.to_bits(), c1.value.value.re.to_bits());
        assert_eq!(a.value.value.im.to_bits(), c1.value.value.im.to_bits());
    }
}
