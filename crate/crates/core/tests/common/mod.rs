#![allow(dead_code)]

use boostclock::measures::RenyiOrder;
use boostclock::sweep::{MeasureKind, SweepResult, SweepRow, CSV_HEADER};
use nalgebra::{Matrix4, SymmetricEigen, Vector4};

/// Log negativity of `sqrt(p+)|00> + sqrt(p-)|11>` from the spectrum of the
/// partially transposed 4x4 density matrix.
pub fn log_negativity_by_partial_transpose(p_plus: f64, p_minus: f64) -> f64 {
    let psi = Vector4::new(p_plus.sqrt(), 0.0, 0.0, p_minus.sqrt());
    let rho: Matrix4<f64> = psi * psi.transpose();
    // basis index = 2 * clock + system; transpose the system factor
    let mut pt = Matrix4::zeros();
    for (a, b, c, d) in index_quads() {
        pt[(2 * a + d, 2 * c + b)] = rho[(2 * a + b, 2 * c + d)];
    }
    let eig = SymmetricEigen::new(pt);
    let negativity: f64 = eig
        .eigenvalues
        .iter()
        .filter(|&&l| l < 0.0)
        .map(|l| -l)
        .sum();
    (2.0 * negativity + 1.0).log2()
}

fn index_quads() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..16).map(|k| (k >> 3 & 1, k >> 2 & 1, k >> 1 & 1, k & 1))
}

fn opt_f64(s: &str) -> Option<f64> {
    (!s.is_empty()).then(|| s.parse().unwrap())
}

/// Parses the sweep CSV format back into rows.
pub fn read_csv(text: &str) -> SweepResult {
    let mut lines = text.split_terminator('\n');
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows = lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 7, "{line}");
            SweepRow {
                xi: f[0].parse().unwrap(),
                w_over_m: f[1].parse().unwrap(),
                measure: f[2].parse::<MeasureKind>().unwrap(),
                renyi_order: (!f[3].is_empty()).then(|| f[3].parse::<RenyiOrder>().unwrap()),
                value: f[4].parse().unwrap(),
                oracle_value: opt_f64(f[5]),
                oracle_std_error: opt_f64(f[6]),
            }
        })
        .collect();
    SweepResult { rows }
}

/// Point lists of every `<polyline>` in an SVG document, in pixel coordinates.
pub fn polylines(svg: &str) -> Vec<Vec<(f64, f64)>> {
    svg.lines()
        .filter(|l| l.trim_start().starts_with("<polyline"))
        .map(|l| {
            let start = l.find("points=\"").unwrap() + 8;
            let end = start + l[start..].find('"').unwrap();
            l[start..end]
                .split_whitespace()
                .map(|p| {
                    let (x, y) = p.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect()
        })
        .collect()
}
