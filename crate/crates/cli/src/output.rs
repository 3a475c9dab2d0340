//! CSV tables and atomic file output.

use std::io::Write;
use std::path::Path;

use qadpa_core::doherty::{ChainCurves, HarmonicReport};
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Writes `bytes` to a temporary file beside `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

fn table<R: Serialize>(rows: impl IntoIterator<Item = R>) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Serialize)]
struct CurveRow {
    pin_dbm: f64,
    pout_dbm: f64,
    gain_db: f64,
}

#[derive(Serialize)]
struct FullCurveRow {
    pin_dbm: f64,
    pout_dbm: f64,
    gain_db: f64,
    main_in_dbm: f64,
    aux_in_dbm: f64,
    main_out_dbm: f64,
    aux_out_dbm: f64,
}

/// `pin_dbm,pout_dbm,gain_db`, plus the per-path curves when `full`.
pub fn curves_csv(c: &ChainCurves<f64>, full: bool) -> CliResult<String> {
    let rows = 0..c.len();
    if full {
        table(rows.map(|i| FullCurveRow {
            pin_dbm: c.pin_dbm[i],
            pout_dbm: c.pout_dbm[i],
            gain_db: c.gain_db[i],
            main_in_dbm: c.main_in_dbm[i],
            aux_in_dbm: c.aux_in_dbm[i],
            main_out_dbm: c.main_out_dbm[i],
            aux_out_dbm: c.aux_out_dbm[i],
        }))
    } else {
        table(rows.map(|i| CurveRow { pin_dbm: c.pin_dbm[i], pout_dbm: c.pout_dbm[i], gain_db: c.gain_db[i] }))
    }
}

#[derive(Serialize)]
struct HarmonicRow<'a> {
    case: &'a str,
    fundamental_dbc: f64,
    h2_dbc: f64,
    h3_dbc: f64,
    h2_plus_h3_db: f64,
}

pub fn harmonics_csv(rows: &[(String, HarmonicReport<f64>)]) -> CliResult<String> {
    table(rows.iter().map(|(name, r)| HarmonicRow {
        case: name,
        fundamental_dbc: r.fundamental_dbc,
        h2_dbc: r.h2_dbc,
        h3_dbc: r.h3_dbc,
        h2_plus_h3_db: r.h2_plus_h3_db(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qadpa_core::doherty::{chain_response, DohertyChain};

    #[test]
    fn curve_header_and_line_endings() {
        let c = chain_response(&DohertyChain::golden(), &[-10.0, 0.0]).unwrap();
        let text = curves_csv(&c, false).unwrap();
        assert!(text.starts_with("pin_dbm,pout_dbm,gain_db\n-10.0,"));
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().count(), 3);
        let full = curves_csv(&c, true).unwrap();
        assert!(full.lines().next().unwrap().ends_with("main_out_dbm,aux_out_dbm"));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
    }
}
