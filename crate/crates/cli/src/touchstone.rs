//! Version-1 Touchstone files.
//!
//! Written as `# GHz S RI R <z>` (or `MA`), one row per frequency. Two-port
//! rows use the conventional S11 S21 S12 S22 order; all other port counts are
//! written row-major on a single row. Values carry 17 significant digits and
//! frequencies are scaled as decimal text, so write → read → write is
//! byte-identical.

use std::fmt::Write as _;

use num_complex::Complex64;
use qadpa_core::linalg::CMatrix;
use qadpa_core::rf::{Frequency, SParamBlock};

use crate::error::{CliError, CliResult};
use crate::units::{format_scaled, scale_decimal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DataFormat {
    #[default]
    Ri,
    Ma,
    Db,
}

/// Data entry order within a row.
fn order(n: usize) -> Vec<(usize, usize)> {
    if n == 2 {
        vec![(0, 0), (1, 0), (0, 1), (1, 1)]
    } else {
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    }
}

pub fn write_touchstone(s: &SParamBlock<f64>, format: DataFormat) -> CliResult<String> {
    let z = s
        .uniform_z_ref()
        .ok_or_else(|| CliError::Usage("Touchstone needs one reference impedance for all ports (see --zref)".into()))?;
    let tag = match format {
        DataFormat::Ri => "RI",
        DataFormat::Ma => "MA",
        DataFormat::Db => "DB",
    };
    let mut out = String::new();
    let _ = writeln!(out, "! {}-port S-parameters", s.ports());
    let _ = writeln!(out, "# GHz S {tag} R {}", format_scaled(z, 0));
    for (f, m) in s.iter() {
        out.push_str(&format_scaled(f.hz(), 9));
        for (i, j) in order(s.ports()) {
            let v = m[(i, j)];
            let (a, b) = match format {
                DataFormat::Ri => (v.re, v.im),
                DataFormat::Ma => (v.norm(), v.arg().to_degrees()),
                DataFormat::Db => (20.0 * v.norm().log10(), v.arg().to_degrees()),
            };
            let _ = write!(out, " {a:.16e} {b:.16e}");
        }
        out.push('\n');
    }
    Ok(out)
}

/// Reads a file written in any of the option-line formats. The port count
/// comes from `ports` when known (e.g. from an `.sNp` extension), otherwise
/// from the number of values on the first data row.
pub fn read_touchstone(text: &str, ports: Option<usize>) -> CliResult<SParamBlock<f64>> {
    let mut unit_exp = 9;
    let mut format = DataFormat::Ma;
    let mut z = 50.0;
    let mut seen_option = false;
    let mut n = ports;
    let mut pending: Vec<(usize, &str)> = Vec::new();
    let mut freqs: Vec<Frequency<f64>> = Vec::new();
    let mut data = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let body = raw.split('!').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(options) = body.strip_prefix('#') {
            if seen_option {
                return Err(CliError::parse(line, "second option line"));
            }
            if !freqs.is_empty() || !pending.is_empty() {
                return Err(CliError::parse(line, "option line after data"));
            }
            seen_option = true;
            (unit_exp, format, z) = parse_option_line(options, line)?;
            continue;
        }
        pending.extend(body.split_whitespace().map(|t| (line, t)));
        let needed = match n {
            Some(p) => 2 * p * p + 1,
            None => {
                let count = pending.len();
                let p = ((count.saturating_sub(1)) as f64 / 2.0).sqrt().round() as usize;
                if p == 0 || 2 * p * p + 1 != count {
                    return Err(CliError::parse(line, format!("{count} values do not form a square S-matrix row")));
                }
                n = Some(p);
                count
            }
        };
        if pending.len() < needed {
            continue;
        }
        if pending.len() > needed {
            return Err(CliError::parse(line, format!("expected {needed} values, found {}", pending.len())));
        }
        let p = n.expect("port count known");
        let (fl, ft) = pending[0];
        let hz = scale_decimal(ft, unit_exp).ok_or_else(|| CliError::parse(fl, format!("bad frequency `{ft}`")))?;
        let f = Frequency::new(hz).map_err(|e| CliError::parse(fl, e.to_string()))?;
        if let Some(prev) = freqs.last() {
            if f.hz() <= prev.hz() {
                return Err(CliError::parse(fl, "frequencies must be strictly increasing"));
            }
        }
        let mut m = CMatrix::zeros(p, p);
        for (k, (i, j)) in order(p).into_iter().enumerate() {
            let num = |(l, t): (usize, &str)| {
                t.parse::<f64>().map_err(|_| CliError::parse(l, format!("`{t}` is not a number")))
            };
            let a = num(pending[1 + 2 * k])?;
            let b = num(pending[2 + 2 * k])?;
            m[(i, j)] = match format {
                DataFormat::Ri => Complex64::new(a, b),
                DataFormat::Ma => Complex64::from_polar(a, b.to_radians()),
                DataFormat::Db => Complex64::from_polar(10f64.powf(a / 20.0), b.to_radians()),
            };
        }
        freqs.push(f);
        data.push(m);
        pending.clear();
    }
    if !pending.is_empty() {
        return Err(CliError::parse(last_line, "incomplete final data row"));
    }
    let p = n.ok_or_else(|| CliError::parse(last_line.max(1), "no data rows"))?;
    SParamBlock::new(freqs, data, vec![z; p]).map_err(CliError::from)
}

fn parse_option_line(rest: &str, line: usize) -> CliResult<(i32, DataFormat, f64)> {
    let mut unit = 9;
    let mut format = DataFormat::Ma;
    let mut z = 50.0;
    let mut toks = rest.split_whitespace();
    while let Some(t) = toks.next() {
        match t.to_ascii_uppercase().as_str() {
            "HZ" => unit = 0,
            "KHZ" => unit = 3,
            "MHZ" => unit = 6,
            "GHZ" => unit = 9,
            "S" => {}
            "Y" | "Z" | "H" | "G" => {
                return Err(CliError::parse(line, format!("only S-parameter files are supported, found `{t}`")))
            }
            "RI" => format = DataFormat::Ri,
            "MA" => format = DataFormat::Ma,
            "DB" => format = DataFormat::Db,
            "R" => {
                let v = toks.next().ok_or_else(|| CliError::parse(line, "`R` needs an impedance"))?;
                z = v
                    .parse()
                    .ok()
                    .filter(|z: &f64| *z > 0.0 && z.is_finite())
                    .ok_or_else(|| CliError::parse(line, format!("bad reference impedance `{v}`")))?;
            }
            _ => return Err(CliError::parse(line, format!("unknown option `{t}`"))),
        }
    }
    Ok((unit, format, z))
}

/// Port count from an `.sNp` file name.
pub fn ports_from_extension(path: &std::path::Path) -> Option<usize> {
    let ext = path.extension()?.to_str()?.to_ascii_lowercase();
    ext.strip_prefix('s')?.strip_suffix('p')?.parse().ok()
}
