use crate::numerics::{is_finite, relative_distance, CNum, NumericsError, COLLISION_THRESHOLD};
use thiserror::Error;

/// Relative separation below which two roots are treated as one repeated root.
pub const CLUSTER_THRESHOLD: f64 = COLLISION_THRESHOLD;

/// Smallest and largest supported number of root slots.
pub const MIN_ELL: usize = 2;
pub const MAX_ELL: usize = 6;

/// `|im| ≤ REALNESS_TOL · (1 + |value|)` is required to certify a real result.
pub const REALNESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SumsError {
    #[error("root {0} is not strictly inside the unit disk")]
    OutsideUnitDisk(CNum),
    #[error("non-finite root")]
    NonFinite,
    #[error("total multiplicity {0} is outside {MIN_ELL}..={MAX_ELL}")]
    Arity(usize),
    #[error("multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error("roots {0} and {1} are closer than the clustering threshold; merge them first")]
    Clustered(CNum, CNum),
    #[error("repeated roots require the confluent evaluator")]
    Collision,
    #[error("series oracle needs more than the budget of {budget} operations; best achievable bound is {achievable:e}")]
    BudgetExceeded { budget: u64, achievable: f64 },
    #[error("tolerance must be positive and finite")]
    BadTolerance,
    #[error("invalid finite sum specification: {0}")]
    BadFiniteSpec(String),
    #[error("n_base = {n_base} too small: max|λ|^n_base = {residual:e} is not below 1e-12")]
    SlopeBaseTooSmall { n_base: usize, residual: f64 },
    #[error("conjecture probe supports ell 5 or 6, got {0}")]
    ProbeArity(usize),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn check_root(z: CNum) -> Result<(), SumsError> {
    if !is_finite(z) {
        return Err(SumsError::NonFinite);
    }
    if z.norm() >= 1.0 {
        return Err(SumsError::OutsideUnitDisk(z));
    }
    Ok(())
}

pub(crate) fn check_roots(values: &[CNum]) -> Result<(), SumsError> {
    values.iter().try_for_each(|&z| check_root(z))
}

/// Distinct roots with multiplicities, all inside the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset {
    entries: Vec<(CNum, usize)>,
}

impl RootMultiset {
    /// Validates already-merged entries. Entries closer than
    /// [`CLUSTER_THRESHOLD`] are rejected; use [`RootMultiset::cluster`] to
    /// merge them.
    pub fn new(entries: Vec<(CNum, usize)>) -> Result<Self, SumsError> {
        let mut ell = 0;
        for &(z, m) in &entries {
            check_root(z)?;
            if m == 0 {
                return Err(SumsError::ZeroMultiplicity);
            }
            ell += m;
        }
        if !(MIN_ELL..=MAX_ELL).contains(&ell) {
            return Err(SumsError::Arity(ell));
        }
        for a in 0..entries.len() {
            for b in a + 1..entries.len() {
                if relative_distance(entries[a].0, entries[b].0) <= CLUSTER_THRESHOLD {
                    return Err(SumsError::Clustered(entries[a].0, entries[b].0));
                }
            }
        }
        Ok(Self { entries })
    }

    /// One entry per value, merging any that sit within the threshold.
    pub fn from_values(values: &[CNum]) -> Result<Self, SumsError> {
        Self::cluster(values.iter().map(|&z| (z, 1)).collect())
    }

    /// Merges entries closer than [`CLUSTER_THRESHOLD`] into one entry at their
    /// multiplicity-weighted mean, repeating until all entries are separated.
    pub fn cluster(entries: Vec<(CNum, usize)>) -> Result<Self, SumsError> {
        for &(z, m) in &entries {
            check_root(z)?;
            if m == 0 {
                return Err(SumsError::ZeroMultiplicity);
            }
        }
        let mut merged = entries;
        'outer: loop {
            for a in 0..merged.len() {
                for b in a + 1..merged.len() {
                    if relative_distance(merged[a].0, merged[b].0) <= CLUSTER_THRESHOLD {
                        let (za, ma) = merged[a];
                        let (zb, mb) = merged.remove(b);
                        let total = ma + mb;
                        let center = (za * ma as f64 + zb * mb as f64) / total as f64;
                        merged[a] = (center, total);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        Self::new(merged)
    }

    pub fn entries(&self) -> &[(CNum, usize)] {
        &self.entries
    }

    /// Total number of root slots ℓ.
    pub fn ell(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_distinct(&self) -> bool {
        self.entries.iter().all(|&(_, m)| m == 1)
    }

    /// Flat list of ℓ roots, repeated entries adjacent.
    pub fn expanded(&self) -> Vec<CNum> {
        self.entries
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
            .collect()
    }

    pub fn max_modulus(&self) -> f64 {
        self.entries.iter().map(|(z, _)| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_conjugate_closed(&self) -> bool {
        is_conjugate_closed(&self.entries)
    }
}

/// True when every entry has a partner (possibly itself) at its complex
/// conjugate with the same multiplicity.
pub(crate) fn is_conjugate_closed(entries: &[(CNum, usize)]) -> bool {
    let mut used = vec![false; entries.len()];
    for a in 0..entries.len() {
        if used[a] {
            continue;
        }
        let (z, m) = entries[a];
        if relative_distance(z.conj(), z) <= CLUSTER_THRESHOLD {
            used[a] = true;
            continue;
        }
        let partner = (0..entries.len()).find(|&b| {
            b != a
                && !used[b]
                && entries[b].1 == m
                && relative_distance(z.conj(), entries[b].0) <= CLUSTER_THRESHOLD
        });
        match partner {
            Some(b) => {
                used[a] = true;
                used[b] = true;
            }
            None => return false,
        }
    }
    true
}

pub(crate) fn values_conjugate_closed(values: &[CNum]) -> bool {
    let entries: Vec<(CNum, usize)> = values.iter().map(|&z| (z, 1)).collect();
    is_conjugate_closed(&entries)
}

/// Integer shifts `s_1…s_ℓ`; the limit depends on them only through `S = |Σ s_i|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSpec {
    shifts: Vec<i64>,
}

impl ShiftSpec {
    pub fn new(shifts: Vec<i64>) -> Self {
        Self { shifts }
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn aggregate(&self) -> u32 {
        let total: i64 = self.shifts.iter().sum();
        u32::try_from(total.unsigned_abs()).unwrap_or(u32::MAX)
    }
}

/// A complex limit value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitValue {
    pub value: CNum,
    pub err_estimate: f64,
    /// Set only when the inputs were conjugate-closed and the imaginary part
    /// is within the realness tolerance.
    pub is_real_certified: bool,
}

impl LimitValue {
    pub(crate) fn certify(value: CNum, err_estimate: f64, conjugate_closed: bool) -> Self {
        let is_real_certified =
            conjugate_closed && value.im.abs() <= REALNESS_TOL * (1.0 + value.norm());
        Self {
            value,
            err_estimate,
            is_real_certified,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> CNum {
        CNum::new(re, 0.0)
    }

    #[test]
    fn rejects_roots_on_or_outside_the_circle() {
        assert!(matches!(
            RootMultiset::from_values(&[c(0.5), c(1.0)]),
            Err(SumsError::OutsideUnitDisk(_))
        ));
        assert!(matches!(
            RootMultiset::from_values(&[c(0.5), CNum::new(0.8, 0.7)]),
            Err(SumsError::OutsideUnitDisk(_))
        ));
    }

    #[test]
    fn arity_limits() {
        assert_eq!(RootMultiset::from_values(&[c(0.5)]), Err(SumsError::Arity(1)));
        assert_eq!(RootMultiset::new(vec![(c(0.5), 7)]), Err(SumsError::Arity(7)));
        assert!(RootMultiset::new(vec![(c(0.5), 6)]).is_ok());
    }

    #[test]
    fn close_roots_are_merged() {
        let r = RootMultiset::from_values(&[c(0.4), c(0.4 + 1e-8), c(0.7)]).unwrap();
        assert_eq!(r.entries().len(), 2);
        assert_eq!(r.entries()[0].1, 2);
        assert_eq!(r.ell(), 3);
        assert!(!r.is_distinct());
        assert!(matches!(
            RootMultiset::new(vec![(c(0.4), 1), (c(0.4 + 1e-8), 1)]),
            Err(SumsError::Clustered(..))
        ));
    }

    #[test]
    fn conjugate_closure() {
        let z = CNum::new(0.3, 0.2);
        let closed = RootMultiset::from_values(&[z, z.conj(), c(0.1)]).unwrap();
        assert!(closed.is_conjugate_closed());
        let open = RootMultiset::from_values(&[z, c(0.1)]).unwrap();
        assert!(!open.is_conjugate_closed());
        let mismatched = RootMultiset::new(vec![(z, 2), (z.conj(), 1)]).unwrap();
        assert!(!mismatched.is_conjugate_closed());
    }

    #[test]
    fn aggregate_shift_is_absolute_sum() {
        assert_eq!(ShiftSpec::new(vec![2, -1]).aggregate(), 1);
        assert_eq!(ShiftSpec::new(vec![-2, -1, 0]).aggregate(), 3);
        assert_eq!(ShiftSpec::new(vec![]).aggregate(), 0);
    }
}
