use super::ArError;

/// `(Σ_{i=1}^n X_i, Σ_{i=1}^{n-j} X_i X_{i+j})`.
pub fn sum_stats(values: &[f64], lag: usize) -> Result<(f64, f64), ArError> {
    let n = values.len();
    if lag >= n {
        return Err(ArError::BadLag { lag, n });
    }
    let sum_x = values.iter().sum();
    let sum_xx = values.iter().zip(&values[lag..]).map(|(a, b)| a * b).sum();
    Ok((sum_x, sum_xx))
}

/// `r_j = Σ X_i X_{i+j} / Σ X_i²` for `j = 0..=j_max`.
///
/// No mean is subtracted: the process has mean zero, so this is the
/// known-mean estimator rather than the usual sample ACF.
pub fn empirical_acf(values: &[f64], j_max: usize) -> Result<Vec<f64>, ArError> {
    let n = values.len();
    if j_max >= n {
        return Err(ArError::BadLag { lag: j_max, n });
    }
    let (_, energy) = sum_stats(values, 0)?;
    if energy == 0.0 {
        return Err(ArError::DegenerateSample);
    }
    (0..=j_max)
        .map(|j| sum_stats(values, j).map(|(_, s)| s / energy))
        .collect()
}

/// CSV with header `x` and one value per line.
pub fn to_csv(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 22 + 2);
    out.push_str("x\n");
    for v in values {
        out.push_str(&format!("{v:?}\n"));
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<f64>, ArError> {
    let mut lines = text.lines();
    match lines.next().map(str::trim) {
        Some("x") => {}
        other => return Err(ArError::Csv(format!("expected header `x`, found {other:?}"))),
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.trim()
                .parse::<f64>()
                .map_err(|e| ArError::Csv(format!("{l:?}: {e}")))
        })
        .collect()
}
