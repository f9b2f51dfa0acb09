//! Parsers for command-line values.

use num_complex::Complex64;

/// Comma-separated integers; `a..b` expands to the inclusive range.
pub fn parse_u64_list(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match tok.split_once("..") {
            Some((a, b)) => {
                let a: u64 = parse_u64(a)?;
                let b: u64 = parse_u64(b)?;
                if a > b {
                    return Err(format!("empty range `{tok}`"));
                }
                out.extend(a..=b);
            }
            None => out.push(parse_u64(tok)?),
        }
    }
    if out.is_empty() {
        return Err("list is empty".into());
    }
    Ok(out)
}

fn parse_u64(s: &str) -> Result<u64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a nonnegative integer"))
}

/// Strictly increasing valuation sequence such as `0,1,3`.
pub fn parse_u32_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("`{t}` is not a nonnegative integer")))
        .collect()
}

/// Comma-separated decimals.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_real)
        .collect::<Result<_, _>>()?;
    if v.is_empty() {
        return Err("list is empty".into());
    }
    Ok(v)
}

/// A decimal, `e` for Euler's number, or an exact ratio `p/q`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if s == "e" {
        return Ok(std::f64::consts::E);
    }
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
            a / b
        }
        None => s.parse().map_err(|_| format!("`{s}` is not a number"))?,
    };
    if !v.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(v)
}

/// `re,im` or `re+imi`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    if let Some((a, b)) = s.split_once(',') {
        return Ok(Complex64::new(parse_real(a)?, parse_real(b)?));
    }
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| format!("`{s}` is not a complex number"))
}
