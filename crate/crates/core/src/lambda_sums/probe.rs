//! Numerical check of the closed form beyond ℓ = 4.

use super::closed_form::evaluate;
use super::series::series_oracle_with_budget;
use super::types::{RootMultiset, SumsError};
use crate::numerics::CNum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Roots are drawn from the disk of this radius.
pub const PROBE_RADIUS: f64 = 0.5;
pub const PROBE_MAX_S: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeOutcome {
    Pass,
    Fail,
    /// The oracle could not reach the tolerance; never counted as a pass.
    Skip,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeTrial {
    pub roots: Vec<CNum>,
    pub s: u32,
    pub closed_form: CNum,
    pub oracle: Option<CNum>,
    pub oracle_err: Option<f64>,
    pub discrepancy: Option<f64>,
    pub outcome: ProbeOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub ell: usize,
    pub tol: f64,
    pub trials: Vec<ProbeTrial>,
}

impl ProbeReport {
    fn count(&self, outcome: ProbeOutcome) -> usize {
        self.trials.iter().filter(|t| t.outcome == outcome).count()
    }

    pub fn passed(&self) -> usize {
        self.count(ProbeOutcome::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(ProbeOutcome::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.count(ProbeOutcome::Skip)
    }

    pub fn max_discrepancy(&self) -> f64 {
        self.trials
            .iter()
            .filter_map(|t| t.discrepancy)
            .fold(0.0, f64::max)
    }

    /// True only when every trial passed.
    pub fn all_passed(&self) -> bool {
        !self.trials.is_empty() && self.passed() == self.trials.len()
    }
}

fn disk_point(rng: &mut ChaCha8Rng, radius: f64) -> CNum {
    let r = radius * rng.random::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    CNum::from_polar(r, theta)
}

/// ℓ roots of modulus at most [`PROBE_RADIUS`]: up to two conjugate pairs,
/// the rest real, and occasionally one slot duplicating another so the
/// confluent path is exercised too.
fn draw_roots(rng: &mut ChaCha8Rng, ell: usize) -> Vec<CNum> {
    let pairs = rng.random_range(0..=2usize.min(ell / 2));
    let mut roots = Vec::with_capacity(ell);
    for _ in 0..pairs {
        let z = disk_point(rng, PROBE_RADIUS);
        roots.push(z);
        roots.push(z.conj());
    }
    while roots.len() < ell {
        roots.push(CNum::new(rng.random_range(-PROBE_RADIUS..=PROBE_RADIUS), 0.0));
    }
    if rng.random_bool(0.25) {
        let real: Vec<usize> = (0..ell).filter(|&i| roots[i].im == 0.0).collect();
        if real.len() >= 2 {
            roots[real[1]] = roots[real[0]];
        }
    }
    roots
}

/// Draws `trials` random root sets and shifts `S ∈ 0..=4`, and compares the
/// closed form with the lattice sum computed to `tol`. A trial passes when
/// the discrepancy is at most `tol` plus the oracle's error bound.
pub fn conjecture_probe(
    ell: usize,
    trials: usize,
    seed: u64,
    tol: f64,
    budget: u64,
) -> Result<ProbeReport, SumsError> {
    if ell != 5 && ell != 6 {
        return Err(SumsError::ProbeArity(ell));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SumsError::BadTolerance);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let roots = draw_roots(&mut rng, ell);
        let s = rng.random_range(0..=PROBE_MAX_S);
        let multiset = RootMultiset::from_values(&roots)?;
        let closed = evaluate(&multiset, s)?;
        let trial = match series_oracle_with_budget(&roots, s, tol, budget) {
            Ok(series) => {
                let gap = (closed.value - series.value.value).norm();
                let ok = gap <= tol + series.value.err_estimate;
                ProbeTrial {
                    roots,
                    s,
                    closed_form: closed.value,
                    oracle: Some(series.value.value),
                    oracle_err: Some(series.value.err_estimate),
                    discrepancy: Some(gap),
                    outcome: if ok { ProbeOutcome::Pass } else { ProbeOutcome::Fail },
                }
            }
            Err(SumsError::BudgetExceeded { .. }) => ProbeTrial {
                roots,
                s,
                closed_form: closed.value,
                oracle: None,
                oracle_err: None,
                discrepancy: None,
                outcome: ProbeOutcome::Skip,
            },
            Err(e) => return Err(e),
        };
        out.push(trial);
    }
    Ok(ProbeReport { ell, tol, trials: out })
}
