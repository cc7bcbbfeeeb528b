use super::{acf, char_roots, empirical_acf, ArError, ArModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSample {
    pub values: Vec<f64>,
    pub seed: u64,
    pub burn_in: usize,
}

/// Steps needed for `max|λ|^burn_in < 1e-12`, and at least the model order.
pub fn default_burn_in(max_modulus: f64, order: usize) -> usize {
    if max_modulus <= 0.0 {
        return order;
    }
    let steps = (1e-12f64.ln() / max_modulus.ln()).ceil();
    (steps as usize).max(order)
}

/// Simulates from a zero state for `burn_in + n` steps and keeps the last `n`.
///
/// Noise is `σ · Z` with `Z` drawn by ziggurat sampling from a ChaCha8 stream
/// keyed by `seed`, so a given `(seed, n, burn_in)` always gives the same
/// series. `burn_in = None` uses [`default_burn_in`].
pub fn simulate(model: &ArModel, n: usize, burn_in: Option<usize>, seed: u64) -> Result<SeriesSample, ArError> {
    if n == 0 {
        return Err(ArError::EmptySample);
    }
    let roots = char_roots(model.alphas())?;
    if !roots.stationary {
        return Err(ArError::NotStationary {
            max_modulus: roots.max_modulus(),
        });
    }
    let burn_in = burn_in.unwrap_or_else(|| default_burn_in(roots.max_modulus(), model.order()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphas = model.alphas();
    let k = alphas.len();
    let total = burn_in + n;
    // history[t + k] = X_t, with k leading zeros for the initial state
    let mut history = vec![0.0; k + total];
    for t in 0..total {
        let z: f64 = StandardNormal.sample(&mut rng);
        let mut x = model.sigma() * z;
        for (i, a) in alphas.iter().enumerate() {
            x += a * history[t + k - 1 - i];
        }
        history[t + k] = x;
    }
    Ok(SeriesSample {
        values: history.split_off(k + burn_in),
        seed,
        burn_in,
    })
}

/// Noise-free recursion from `initial` (oldest first, `k` values) for `n`
/// further steps.
pub fn deterministic_path(model: &ArModel, initial: &[f64], n: usize) -> Vec<f64> {
    let alphas = model.alphas();
    let k = alphas.len();
    let mut history: Vec<f64> = initial.to_vec();
    if history.len() < k {
        let mut padded = vec![0.0; k - history.len()];
        padded.extend(history);
        history = padded;
    }
    let start = history.len();
    for t in start..start + n {
        let x: f64 = alphas.iter().enumerate().map(|(i, a)| a * history[t - 1 - i]).sum();
        history.push(x);
    }
    history.split_off(start)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagCheck {
    pub lag: usize,
    pub theoretical: f64,
    pub mean: f64,
    pub std_err: f64,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcfCheck {
    pub lags: Vec<LagCheck>,
}

impl AcfCheck {
    pub fn max_abs_z(&self) -> f64 {
        self.lags.iter().map(|l| l.z.abs()).fold(0.0, f64::max)
    }
}

/// Compares the empirical autocorrelation at lags `1..=j_max` with the
/// theoretical one, treating each seed's series as one batch: the standard
/// error is the sample deviation of the per-seed estimates over `√batches`.
pub fn acf_check(model: &ArModel, n: usize, seeds: &[u64], j_max: usize) -> Result<AcfCheck, ArError> {
    if seeds.len() < 2 || n == 0 {
        return Err(ArError::EmptySample);
    }
    if j_max >= n {
        return Err(ArError::BadLag { lag: j_max, n });
    }
    let theory = acf(model.alphas(), j_max)?;
    let batches: Vec<Vec<f64>> = seeds
        .par_iter()
        .map(|&seed| {
            let sample = simulate(model, n, None, seed)?;
            empirical_acf(&sample.values, j_max)
        })
        .collect::<Result<_, _>>()?;
    let count = batches.len() as f64;
    let lags = (1..=j_max)
        .map(|lag| {
            let mean = batches.iter().map(|b| b[lag]).sum::<f64>() / count;
            let var = batches.iter().map(|b| (b[lag] - mean).powi(2)).sum::<f64>() / (count - 1.0);
            let std_err = (var / count).sqrt();
            let theoretical = theory.rho[lag];
            let z = if std_err > 0.0 {
                (mean - theoretical) / std_err
            } else if mean == theoretical {
                0.0
            } else {
                f64::INFINITY
            };
            LagCheck { lag, theoretical, mean, std_err, z }
        })
        .collect();
    Ok(AcfCheck { lags })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_model_stays_at_zero() {
        let m = ArModel::new(vec![0.5, -0.06], 0.0).unwrap();
        let s = simulate(&m, 50, None, 9).unwrap();
        assert!(s.values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn same_seed_same_series() {
        let m = ArModel::new(vec![0.6], 1.0).unwrap();
        let a = simulate(&m, 1000, None, 3).unwrap();
        let b = simulate(&m, 1000, None, 3).unwrap();
        assert_eq!(a, b);
        let c = simulate(&m, 1000, None, 4).unwrap();
        assert_ne!(a.values, c.values);
    }

    #[test]
    fn burn_in_default() {
        let m = ArModel::new(vec![0.6], 1.0).unwrap();
        let s = simulate(&m, 10, None, 1).unwrap();
        assert_eq!(s.burn_in, 55);
        assert!(0.6f64.powi(s.burn_in as i32) < 1e-12);
        assert_eq!(default_burn_in(0.3, 4), 23);
    }

    #[test]
    fn markov_lag_one() {
        let m = ArModel::new(vec![0.6], 1.0).unwrap();
        let n = 100_000;
        let s = simulate(&m, n, None, 2024).unwrap();
        let r = empirical_acf(&s.values, 1).unwrap();
        let band = 3.0 * (1.0 - 0.36) / (n as f64).sqrt() * 2.0;
        assert!((r[1] - 0.6).abs() < band, "r1 = {}", r[1]);
    }

    #[test]
    fn non_stationary_simulation_fails() {
        let m = ArModel::new(vec![1.1], 1.0).unwrap();
        assert!(matches!(simulate(&m, 10, None, 0), Err(ArError::NotStationary { .. })));
    }

    #[test]
    fn deterministic_path_follows_the_recursion() {
        let m = ArModel::new(vec![0.6], 0.0).unwrap();
        let path = deterministic_path(&m, &[1.0], 5);
        for (j, x) in path.iter().enumerate() {
            assert!((x - 0.6f64.powi(j as i32 + 1)).abs() < 1e-15);
        }
    }
}
