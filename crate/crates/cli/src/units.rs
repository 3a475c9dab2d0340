//! Exact decimal scaling between SI values and unit-suffixed text.
//!
//! Scaling is done on the decimal string, never by multiplying floats, so a
//! value written as `110fF` and read back is the same `f64` as `110e-15`.

/// Dimension a suffix belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Resistance,
    Inductance,
    Capacitance,
    Frequency,
}

// Longest suffixes first so `fF` wins over `F` and `kohm` over `ohm`.
const SUFFIXES: &[(&str, Dim, i32)] = &[
    ("kohm", Dim::Resistance, 3),
    ("ohm", Dim::Resistance, 0),
    ("ghz", Dim::Frequency, 9),
    ("mhz", Dim::Frequency, 6),
    ("khz", Dim::Frequency, 3),
    ("hz", Dim::Frequency, 0),
    ("uh", Dim::Inductance, -6),
    ("nh", Dim::Inductance, -9),
    ("ph", Dim::Inductance, -12),
    ("h", Dim::Inductance, 0),
    ("nf", Dim::Capacitance, -9),
    ("pf", Dim::Capacitance, -12),
    ("ff", Dim::Capacitance, -15),
    ("f", Dim::Capacitance, 0),
];

/// Splits an optional unit suffix (case-insensitive) off a number.
pub fn split_unit(token: &str) -> (&str, Option<(Dim, i32)>) {
    let lower = token.to_ascii_lowercase();
    let mut sorted: Vec<_> = SUFFIXES.iter().collect();
    sorted.sort_by_key(|(s, _, _)| std::cmp::Reverse(s.len()));
    for (s, d, e) in sorted {
        if lower.len() > s.len() && lower.ends_with(s) {
            let num = &token[..token.len() - s.len()];
            // "1e" would otherwise be read as 1 with suffix "e...".
            if num.parse::<f64>().is_ok() {
                return (num, Some((*d, *e)));
            }
        }
    }
    (token, None)
}

/// `num × 10^exp10`, correctly rounded.
pub fn scale_decimal(num: &str, exp10: i32) -> Option<f64> {
    let v: f64 = num.parse().ok()?;
    if exp10 == 0 || v == 0.0 || !v.is_finite() {
        return Some(v);
    }
    let (mant, e) = match num.find(['e', 'E']) {
        Some(i) => (&num[..i], num[i + 1..].parse::<i32>().ok()?),
        None => (num, 0),
    };
    format!("{mant}e{}", e + exp10).parse().ok()
}

/// Parses `token` as a value of dimension `dim`; a bare number is taken in
/// base units times `10^default_exp`.
pub fn parse_value(token: &str, dim: Dim, default_exp: i32) -> Result<f64, String> {
    let (num, unit) = split_unit(token);
    let exp = match unit {
        Some((d, e)) if d == dim => e,
        Some(_) => return Err(format!("unit of `{token}` does not fit a {dim:?} value")),
        None => default_exp,
    };
    scale_decimal(num, exp).ok_or_else(|| format!("`{token}` is not a number"))
}

/// Shortest text for `v / 10^exp10` that reads back to exactly `v`.
pub fn format_scaled(v: f64, exp10: i32) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:e}");
    let (mant, e) = sci.split_once('e').expect("exponent form");
    let e: i32 = e.parse().expect("integer exponent");
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    // Value is 0.d1d2d3… × 10^point.
    let point = e - exp10 + 1;
    let n = digits.len() as i32;
    let body = if !(-6..=21).contains(&point) {
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{head}e{}", point - 1)
        } else {
            format!("{head}.{tail}e{}", point - 1)
        }
    } else if point <= 0 {
        format!("0.{}{digits}", "0".repeat((-point) as usize))
    } else if point >= n {
        format!("{digits}{}", "0".repeat((point - n) as usize))
    } else {
        let (a, b) = digits.split_at(point as usize);
        format!("{a}.{b}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
