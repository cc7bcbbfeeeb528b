//! Exact finite-`n` cyclic sums and extraction of their `n`-slope.

use super::types::{check_roots, LimitValue, SumsError, MIN_ELL, values_conjugate_closed};
use crate::numerics::{CNum, ComplexSum};
use rayon::prelude::*;

/// `Σ_{i_m ∈ [1, n + d_m]} Π_m λ_m^|i_m - i_{m+1} + s_m|` with `i_{ℓ+1} = i_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSumSpec {
    pub lambdas: Vec<CNum>,
    pub shifts: Vec<i64>,
    pub n: usize,
    /// Upper-limit adjustments `d_m ≤ 0`; empty means all zero.
    pub upper_adjust: Vec<i64>,
}

impl FiniteSumSpec {
    pub fn new(lambdas: Vec<CNum>, shifts: Vec<i64>, n: usize) -> Self {
        let ell = lambdas.len();
        Self {
            lambdas,
            shifts,
            n,
            upper_adjust: vec![0; ell],
        }
    }

    pub fn with_adjust(mut self, upper_adjust: Vec<i64>) -> Self {
        self.upper_adjust = upper_adjust;
        self
    }

    pub fn ell(&self) -> usize {
        self.lambdas.len()
    }

    fn adjust(&self) -> Vec<i64> {
        if self.upper_adjust.is_empty() {
            vec![0; self.ell()]
        } else {
            self.upper_adjust.clone()
        }
    }

    pub fn validate(&self) -> Result<(), SumsError> {
        let ell = self.ell();
        if ell < MIN_ELL {
            return Err(SumsError::Arity(ell));
        }
        check_roots(&self.lambdas)?;
        if self.shifts.len() != ell {
            return Err(SumsError::BadFiniteSpec(format!(
                "{} shifts for {ell} lambdas",
                self.shifts.len()
            )));
        }
        let adjust = self.adjust();
        if adjust.len() != ell {
            return Err(SumsError::BadFiniteSpec(format!(
                "{} adjustments for {ell} lambdas",
                adjust.len()
            )));
        }
        if self.n == 0 {
            return Err(SumsError::BadFiniteSpec("n must be at least 1".into()));
        }
        for &d in &adjust {
            if d > 0 || self.n as i64 + d < 1 {
                return Err(SumsError::BadFiniteSpec(format!(
                    "adjustment {d} invalid for n = {}",
                    self.n
                )));
            }
        }
        Ok(())
    }
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

struct Reduced<'a> {
    pw: Vec<Vec<CNum>>,
    shifts: &'a [i64],
    adjust: Vec<i64>,
    n: i64,
}

impl Reduced<'_> {
    /// Walks `j_{m+1}…j_{ℓ-1}` given the prefix sum `p = P_m`, running
    /// `hi_min = min_k (d_k + P_{k-1})` and `lo_max = max_k P_{k-1}` over
    /// `k ≤ m+1`.
    #[allow(clippy::too_many_arguments)]
    fn walk(&self, m: usize, p: i64, hi_min: i64, lo_max: i64, prod: CNum, acc: &mut ComplexSum, mag: &mut f64) {
        let ell = self.pw.len();
        if m == ell - 1 {
            let weight = self.n + hi_min - lo_max;
            if weight <= 0 {
                return;
            }
            let e = (self.shifts[ell - 1] - p).unsigned_abs() as usize;
            let term = prod * self.pw[ell - 1][e] * weight as f64;
            *mag += term.norm();
            acc.add(term);
            return;
        }
        let span = self.n - 1;
        for j in -span..=span {
            let np = p + j;
            // constraint k = m+2 uses P_{m+1} = np
            let nh = hi_min.min(self.adjust[m + 1] + np);
            let nl = lo_max.max(np);
            if self.n + nh - nl <= 0 {
                continue;
            }
            let e = (j + self.shifts[m]).unsigned_abs() as usize;
            self.walk(m + 1, np, nh, nl, prod * self.pw[m][e], acc, mag);
        }
    }
}

/// Evaluates through `j_m = i_m - i_{m+1}`. For fixed `j` the admissible
/// `i_1` form an interval, so `i_1` is replaced by its count and the cost is
/// `O((2n)^(ℓ-1))`. Returns the value and the sum of term magnitudes.
pub(crate) fn finite_sum_detailed(spec: &FiniteSumSpec) -> Result<(CNum, f64), SumsError> {
    spec.validate()?;
    let ell = spec.ell();
    let n = spec.n as i64;
    let max_shift = spec.shifts.iter().map(|s| s.unsigned_abs() as usize).max().unwrap_or(0);
    let reach = (ell - 1) * spec.n + max_shift;
    let reduced = Reduced {
        pw: spec.lambdas.iter().map(|&z| powers(z, reach)).collect(),
        shifts: &spec.shifts,
        adjust: spec.adjust(),
        n,
    };
    let first_hi = reduced.adjust[0];
    let partials: Vec<(ComplexSum, f64)> = (-(n - 1)..=(n - 1))
        .into_par_iter()
        .map(|j| {
            let mut acc = ComplexSum::new();
            let mut mag = 0.0;
            let hi = first_hi.min(reduced.adjust[1] + j);
            let lo = 0i64.max(j);
            if n + hi - lo > 0 {
                let e = (j + spec.shifts[0]).unsigned_abs() as usize;
                reduced.walk(1, j, hi, lo, reduced.pw[0][e], &mut acc, &mut mag);
            }
            (acc, mag)
        })
        .collect();
    let mut total = ComplexSum::new();
    let mut magnitude = 0.0;
    for (part, mag) in &partials {
        total.merge(part);
        magnitude += mag;
    }
    Ok((total.value(), magnitude))
}

pub fn finite_sum(spec: &FiniteSumSpec) -> Result<CNum, SumsError> {
    finite_sum_detailed(spec).map(|(v, _)| v)
}

/// Literal `O(n^ℓ)` enumeration over `i_1…i_ℓ`; the reference for
/// [`finite_sum`]. Meant for `n ≤ 12`.
pub fn finite_sum_direct(spec: &FiniteSumSpec) -> Result<CNum, SumsError> {
    spec.validate()?;
    let ell = spec.ell();
    let adjust = spec.adjust();
    let upper: Vec<i64> = adjust.iter().map(|d| spec.n as i64 + d).collect();
    let mut idx = vec![1i64; ell];
    let mut total = ComplexSum::new();
    loop {
        let mut term = CNum::new(1.0, 0.0);
        for m in 0..ell {
            let next = idx[(m + 1) % ell];
            let e = (idx[m] - next + spec.shifts[m]).unsigned_abs();
            if e > 0 {
                term *= spec.lambdas[m].powi(e as i32);
            }
        }
        total.add(term);
        let mut m = 0;
        loop {
            if m == ell {
                return Ok(total.value());
            }
            idx[m] += 1;
            if idx[m] <= upper[m] {
                break;
            }
            idx[m] = 1;
            m += 1;
        }
    }
}

/// Finite-sum template whose `n` is supplied by [`linear_coefficient`].
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeSpec {
    pub lambdas: Vec<CNum>,
    pub shifts: Vec<i64>,
    pub upper_adjust: Vec<i64>,
}

impl SlopeSpec {
    pub fn new(lambdas: Vec<CNum>, shifts: Vec<i64>) -> Self {
        let ell = lambdas.len();
        Self {
            lambdas,
            shifts,
            upper_adjust: vec![0; ell],
        }
    }

    pub fn with_adjust(mut self, upper_adjust: Vec<i64>) -> Self {
        self.upper_adjust = upper_adjust;
        self
    }

    fn at(&self, n: usize) -> FiniteSumSpec {
        FiniteSumSpec {
            lambdas: self.lambdas.clone(),
            shifts: self.shifts.clone(),
            n,
            upper_adjust: self.upper_adjust.clone(),
        }
    }
}

/// `Σ_{w ≥ w0} (2w+1)^dims (w + c0) r^w`, summed until the term ratio has
/// dropped below one and then closed with a geometric remainder.
fn weighted_tail(w0: usize, dims: u32, c0: f64, r: f64) -> f64 {
    if r == 0.0 {
        return if w0 == 0 { c0 } else { 0.0 };
    }
    let term = |w: usize| {
        let wf = w as f64;
        (2.0 * wf + 1.0).powi(dims as i32) * (wf + c0) * r.powf(wf)
    };
    let mut w = w0;
    let mut sum = 0.0;
    loop {
        let t = term(w);
        let wf = w as f64;
        let ratio = ((2.0 * wf + 3.0) / (2.0 * wf + 1.0)).powi(dims as i32) * ((wf + 1.0 + c0) / (wf + c0).max(1e-300)) * r;
        sum += t;
        // ratio is decreasing in w, so once below one it bounds every later ratio
        if ratio <= 0.5 * (1.0 + r) {
            return sum + term(w + 1) / (1.0 - ratio);
        }
        w += 1;
    }
}

/// `(T(2 n_base) - T(n_base)) / n_base` for the finite sum `T(n)`.
///
/// `T(n) = Σ_j c_j (n - g(j))_+` over the `j`-lattice, so the difference
/// cancels the constant part and leaves the slope plus the contribution of
/// lattice points with `g(j) > n_base`. With `w` the cyclic weight
/// `Σ |j_m + s_m|`, `|c_j| ≤ r^w` and `g(j) ≤ w + c0` where
/// `c0 = Σ|s_m| + max|d_m|`; at most `(2w+1)^(ℓ-1)` points share a weight.
/// `err_estimate` adds that residue bound to a rounding estimate.
pub fn linear_coefficient(template: &SlopeSpec, n_base: usize) -> Result<LimitValue, SumsError> {
    let r = template.lambdas.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let residual = r.powf(n_base as f64);
    if n_base == 0 || residual >= 1e-12 {
        return Err(SumsError::SlopeBaseTooSmall { n_base, residual });
    }
    let (t1, m1) = finite_sum_detailed(&template.at(n_base))?;
    let (t2, m2) = finite_sum_detailed(&template.at(2 * n_base))?;
    let nb = n_base as f64;
    let value = (t2 - t1) / nb;

    let ell = template.lambdas.len();
    let c0 = template.shifts.iter().map(|s| s.unsigned_abs()).sum::<u64>() as f64
        + template.upper_adjust.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0) as f64;
    let dims = (ell - 1) as u32;
    let start = |n: usize| (n as f64 - c0 + 1.0).max(0.0) as usize;
    let residue = (weighted_tail(start(n_base), dims, c0, r)
        + weighted_tail(start(2 * n_base), dims, c0, r))
        / nb;
    let rounding = 8.0 * ell as f64 * f64::EPSILON * (m1 + m2) / nb;
    Ok(LimitValue::certify(
        value,
        residue + rounding,
        values_conjugate_closed(&template.lambdas),
    ))
}
