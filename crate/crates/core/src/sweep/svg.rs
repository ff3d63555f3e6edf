//! Minimal self-contained SVG line charts.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{MeasureKind, SweepResult};
use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Step from {1, 2, 5} x 10^k giving roughly `target` intervals over `span`.
fn nice_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let frac = raw / mag;
    let nice = if frac <= 1.0 {
        1.0
    } else if frac <= 2.0 {
        2.0
    } else if frac <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = nice_step(hi - lo, 5.0);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(x: f64) -> String {
    let s = format!("{:.6}", if x.abs() < 1e-12 { 0.0 } else { x });
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Range padded so flat curves still get a visible axis.
fn value_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        let pad = if lo.abs() > 1e-12 {
            0.05 * lo.abs()
        } else {
            0.5
        };
        return (lo - pad, hi + pad);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders one curve per `(w/m, Rényi order)` of `measure` against `xi`.
pub fn svg_string(result: &SweepResult, measure: MeasureKind) -> Result<String> {
    let curves = result.curves(measure);
    if curves.is_empty() {
        return Err(Error::MissingMeasure(measure.name().to_string()));
    }
    let series: Vec<_> = curves
        .iter()
        .map(|&(w, n)| ((w, n), result.series(measure, w, n)))
        .collect();

    let (x_lo, x_hi) = {
        let xs = series.iter().flat_map(|(_, s)| s.iter().map(|p| p.0));
        let (lo, hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x), hi.max(x))
        });
        if hi - lo < 1e-12 {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        }
    };
    let (y_lo, y_hi) = value_range(series.iter().flat_map(|(_, s)| s.iter().map(|p| p.1)));

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );

    for x in ticks(x_lo, x_hi) {
        let px = sx(x);
        let y0 = MARGIN_TOP + plot_h;
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 20.0,
            tick_label(x)
        );
    }
    for y in ticks(y_lo, y_hi) {
        let py = sy(y);
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{MARGIN_LEFT:.2}" y2="{py:.2}" stroke="black"/>"#,
            MARGIN_LEFT - 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 8.0,
            py + 4.0,
            tick_label(y)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">rapidity xi</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        out,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(measure.label())
    );

    for (i, ((w, n), pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
        let label = match n {
            Some(n) => format!("w/m = {w}, n = {n}"),
            None => format!("w/m = {w}"),
        };
        let ly = MARGIN_TOP + 15.0 + 18.0 * i as f64;
        let lx = WIDTH - MARGIN_RIGHT + 15.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 26.0,
            ly + 4.0,
            escape(&label)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render_svg(
    result: &SweepResult,
    measure: MeasureKind,
    path: impl AsRef<Path>,
) -> Result<()> {
    let svg = svg_string(result, measure)?;
    let path = path.as_ref();
    fs::write(path, svg).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::SweepRow;

    fn row(xi: f64, w: f64, value: f64) -> SweepRow {
        SweepRow {
            xi,
            w_over_m: w,
            measure: MeasureKind::Fidelity,
            renyi_order: None,
            value,
            oracle_value: None,
            oracle_std_error: None,
        }
    }

    #[test]
    fn one_curve_one_polyline() {
        let r = SweepResult::from_rows(vec![row(0.0, 1.0, 1.0), row(1.0, 1.0, 0.9)]);
        let svg = svg_string(&r, MeasureKind::Fidelity).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("href"));
    }

    #[test]
    fn missing_measure() {
        let r = SweepResult::from_rows(vec![row(0.0, 1.0, 1.0)]);
        assert!(matches!(
            svg_string(&r, MeasureKind::Entropy),
            Err(Error::MissingMeasure(_))
        ));
    }

    #[test]
    fn flat_and_single_point_curves_render() {
        let r = SweepResult::from_rows(vec![row(0.0, 1.0, 1.0)]);
        let svg = svg_string(&r, MeasureKind::Fidelity).unwrap();
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }

    #[test]
    fn tick_steps() {
        assert_eq!(nice_step(10.0, 5.0), 2.0);
        assert_eq!(nice_step(1.0, 5.0), 0.2);
        assert_eq!(ticks(0.0, 10.0), vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
        assert_eq!(tick_label(0.30000000000000004), "0.3");
        assert_eq!(tick_label(-0.0), "0");
    }
}
