//! Parsing of comma-separated numeric lists, including `a+bi` complex syntax.

use serialsum::CNum;

fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid number `{s}`"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite number `{s}`"))
    }
}

fn parse_imag_coefficient(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s),
    }
}

/// `0.3`, `-0.5`, `0.3+0.2i`, `0.3-0.2i`, `0.2i`, `1e-3-2e-4i`.
pub fn parse_complex(text: &str) -> Result<CNum, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty value".into());
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return parse_real(s).map(|re| CNum::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, parse_imag_coefficient(&body[k..])?),
        None => (0.0, parse_imag_coefficient(body)?),
    };
    Ok(CNum::new(re, im))
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim)
}

pub fn complex_list(text: &str) -> Result<Vec<CNum>, String> {
    split_list(text).map(parse_complex).collect()
}

pub fn real_list(text: &str) -> Result<Vec<f64>, String> {
    split_list(text).map(parse_real).collect()
}

pub fn int_list(text: &str) -> Result<Vec<i64>, String> {
    split_list(text)
        .map(|s| s.parse::<i64>().map_err(|_| format!("invalid integer `{s}`")))
        .collect()
}

pub fn usize_list(text: &str) -> Result<Vec<usize>, String> {
    split_list(text)
        .map(|s| s.parse::<usize>().map_err(|_| format!("invalid count `{s}`")))
        .collect()
}
