use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{SweepResult, SweepRow};
use crate::error::{Error, Result};
use crate::measures::RenyiOrder;

pub const CSV_HEADER: &str = "xi,w_over_m,measure,renyi_order,value,oracle_value,oracle_std_error";

/// Scientific notation with 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.16e}")
}

fn format_order(n: RenyiOrder) -> String {
    match n {
        RenyiOrder::Finite(n) => format_float(n),
        RenyiOrder::Infinity => "inf".into(),
    }
}

fn write_row(out: &mut String, r: &SweepRow) {
    let opt = |x: Option<f64>| x.map(format_float).unwrap_or_default();
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{}",
        format_float(r.xi),
        format_float(r.w_over_m),
        r.measure.name(),
        r.renyi_order.map(format_order).unwrap_or_default(),
        format_float(r.value),
        opt(r.oracle_value),
        opt(r.oracle_std_error),
    );
}

pub fn to_csv_string(result: &SweepResult) -> String {
    let mut out = String::with_capacity(64 * (result.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &result.rows {
        write_row(&mut out, r);
    }
    out
}

pub fn write_csv(result: &SweepResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_csv_string(result)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
