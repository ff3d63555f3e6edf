//! Parameter sweeps over `(xi, w/m)` and their CSV/SVG output.

mod config;
mod csv;
mod svg;

use std::cmp::Ordering;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

pub use self::config::{parse_config, SweepConfig};
pub use self::csv::{format_float, to_csv_string, write_csv, CSV_HEADER};
pub use self::svg::{render_svg, svg_string};

use crate::error::{Error, Result};
use crate::kinematics::Rapidity;
use crate::measures::{
    self, bloch_oracle, bloch_z, overlap_oracle, schmidt_weights, BlochVector, Fidelity, RenyiOrder,
};
use crate::quadrature::{OracleSpec, QuadratureSpec};
use crate::wavepacket::WavepacketSpec;

/// A quantity that can be requested from a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MeasureKind {
    Fidelity,
    Entropy,
    MutualInfo,
    Quadratic,
    Renyi,
    LogNegativity,
    SpinMomentum,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 7] = [
        MeasureKind::Fidelity,
        MeasureKind::Entropy,
        MeasureKind::MutualInfo,
        MeasureKind::Quadratic,
        MeasureKind::Renyi,
        MeasureKind::LogNegativity,
        MeasureKind::SpinMomentum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Fidelity => "fidelity",
            MeasureKind::Entropy => "entropy",
            MeasureKind::MutualInfo => "mutual_info",
            MeasureKind::Quadratic => "quadratic",
            MeasureKind::Renyi => "renyi",
            MeasureKind::LogNegativity => "log_negativity",
            MeasureKind::SpinMomentum => "spin_momentum",
        }
    }

    /// Axis label used in plots.
    pub fn label(self) -> &'static str {
        match self {
            MeasureKind::Fidelity => "fidelity |<psi0|psi1>|",
            MeasureKind::Entropy => "entanglement entropy E(T,S) [bits]",
            MeasureKind::MutualInfo => "mutual information I(T,S) [bits]",
            MeasureKind::Quadratic => "quadratic entropy E2(T,S)",
            MeasureKind::Renyi => "Renyi entropy Hn(T,S) [bits]",
            MeasureKind::LogNegativity => "log negativity EN(T,S) [bits]",
            MeasureKind::SpinMomentum => "spin-momentum entropy S [bits]",
        }
    }

    fn needs_fidelity(self) -> bool {
        self != MeasureKind::SpinMomentum
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        MeasureKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown measure `{s}`")))
    }
}

/// Full description of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub xi_min: f64,
    pub xi_max: f64,
    pub xi_steps: usize,
    pub w_over_m_values: Vec<f64>,
    pub renyi_orders: Vec<RenyiOrder>,
    pub measures: Vec<MeasureKind>,
    pub quad: QuadratureSpec,
    pub oracle: Option<OracleSpec>,
    pub output_path: PathBuf,
    /// Plots to render after the sweep, one per measure.
    pub svg_outputs: Vec<(MeasureKind, PathBuf)>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            xi_min: 0.0,
            xi_max: 10.0,
            xi_steps: 101,
            w_over_m_values: vec![0.1, 1.0, 10.0],
            renyi_orders: vec![
                RenyiOrder::Finite(0.0),
                RenyiOrder::Finite(1.0),
                RenyiOrder::Finite(2.0),
                RenyiOrder::Infinity,
            ],
            measures: MeasureKind::ALL.to_vec(),
            quad: QuadratureSpec::default(),
            oracle: None,
            output_path: PathBuf::from("sweep.csv"),
            svg_outputs: Vec::new(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.xi_min.is_finite() && self.xi_min >= 0.0) {
            return Err(Error::invalid(
                "xi_min",
                self.xi_min,
                "must be finite and non-negative",
            ));
        }
        if !(self.xi_max.is_finite() && self.xi_max >= self.xi_min) {
            return Err(Error::invalid(
                "xi_max",
                self.xi_max,
                "must be finite and at least xi_min",
            ));
        }
        // a single step is allowed for a degenerate range, e.g. only xi = 0
        if self.xi_steps < 2 && !(self.xi_steps == 1 && self.xi_min == self.xi_max) {
            return Err(Error::invalid(
                "xi_steps",
                self.xi_steps as f64,
                "need at least 2 steps unless xi_min = xi_max",
            ));
        }
        if self.w_over_m_values.is_empty() {
            return Err(Error::Config("w_over_m list is empty".into()));
        }
        for &r in &self.w_over_m_values {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::invalid("w_over_m", r, "must be finite and positive"));
            }
        }
        if self.measures.is_empty() {
            return Err(Error::Config("measure list is empty".into()));
        }
        if self.measures.contains(&MeasureKind::Renyi) && self.renyi_orders.is_empty() {
            return Err(Error::Config(
                "renyi requested with an empty order list".into(),
            ));
        }
        self.quad.validate()?;
        if let Some(o) = &self.oracle {
            o.validate()?;
        }
        Ok(())
    }

    /// The rapidity grid, endpoints included.
    pub fn xi_grid(&self) -> Vec<f64> {
        if self.xi_steps <= 1 {
            return vec![self.xi_min];
        }
        let span = self.xi_max - self.xi_min;
        let last = (self.xi_steps - 1) as f64;
        (0..self.xi_steps)
            .map(|i| {
                if i + 1 == self.xi_steps {
                    self.xi_max
                } else {
                    self.xi_min + span * i as f64 / last
                }
            })
            .collect()
    }

    fn wants(&self, m: MeasureKind) -> bool {
        self.measures.contains(&m)
    }
}

/// One output line of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub xi: f64,
    pub w_over_m: f64,
    pub measure: MeasureKind,
    pub renyi_order: Option<RenyiOrder>,
    pub value: f64,
    pub oracle_value: Option<f64>,
    pub oracle_std_error: Option<f64>,
}

impl SweepRow {
    fn sort_key_cmp(&self, other: &Self) -> Ordering {
        let order = |r: &SweepRow| r.renyi_order.map_or(f64::NEG_INFINITY, RenyiOrder::as_f64);
        self.measure
            .cmp(&other.measure)
            .then(self.w_over_m.total_cmp(&other.w_over_m))
            .then(order(self).total_cmp(&order(other)))
            .then(self.xi.total_cmp(&other.xi))
    }
}

/// Rows sorted by `(measure, w/m, renyi order, xi)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn from_rows(mut rows: Vec<SweepRow>) -> Self {
        rows.sort_by(SweepRow::sort_key_cmp);
        Self { rows }
    }

    pub fn contains(&self, measure: MeasureKind) -> bool {
        self.rows.iter().any(|r| r.measure == measure)
    }

    /// `(xi, value)` pairs of one curve, in ascending `xi`.
    pub fn series(
        &self,
        measure: MeasureKind,
        w_over_m: f64,
        renyi_order: Option<RenyiOrder>,
    ) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| {
                r.measure == measure && r.w_over_m == w_over_m && r.renyi_order == renyi_order
            })
            .map(|r| (r.xi, r.value))
            .collect()
    }

    /// Looks up a single value.
    pub fn value_at(
        &self,
        measure: MeasureKind,
        w_over_m: f64,
        renyi_order: Option<RenyiOrder>,
        xi: f64,
    ) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| {
                r.measure == measure
                    && r.w_over_m == w_over_m
                    && r.renyi_order == renyi_order
                    && r.xi == xi
            })
            .map(|r| r.value)
    }

    /// Distinct `(w/m, renyi order)` curves present for `measure`, in row order.
    pub fn curves(&self, measure: MeasureKind) -> Vec<(f64, Option<RenyiOrder>)> {
        let mut out: Vec<(f64, Option<RenyiOrder>)> = Vec::new();
        for r in self.rows.iter().filter(|r| r.measure == measure) {
            if !out
                .iter()
                .any(|&(w, n)| w == r.w_over_m && n == r.renyi_order)
            {
                out.push((r.w_over_m, r.renyi_order));
            }
        }
        out
    }
}

/// Estimates from the Monte-Carlo oracle at one grid point.
struct OraclePoint {
    fidelity: Option<(f64, f64)>,
    n_z: Option<(f64, f64)>,
}

/// Maps an oracle estimate through `g`, with the standard error propagated
/// by a symmetric difference over `value ± std_error`.
fn propagate(value: f64, std_error: f64, g: impl Fn(f64) -> Result<f64>) -> Result<(f64, f64)> {
    let mid = g(value)?;
    let spread = (g(value + std_error)? - g(value - std_error)?).abs() * 0.5;
    Ok((mid, spread))
}

fn time_system_measure(m: MeasureKind, f: f64, order: Option<RenyiOrder>) -> Result<f64> {
    let fid = Fidelity::saturating(f);
    let w = schmidt_weights(fid);
    Ok(match m {
        MeasureKind::Fidelity => fid.value(),
        MeasureKind::Entropy => measures::entanglement_entropy(&w),
        MeasureKind::MutualInfo => measures::mutual_information(&w),
        MeasureKind::Quadratic => measures::quadratic_entropy(fid),
        MeasureKind::Renyi => {
            measures::renyi_entropy(&w, order.unwrap_or(RenyiOrder::Finite(1.0)))?
        }
        MeasureKind::LogNegativity => measures::log_negativity(&w),
        MeasureKind::SpinMomentum => unreachable!("not a time-system measure"),
    })
}

fn evaluate_point(spec: &SweepSpec, xi: f64, w_over_m: f64) -> Result<Vec<SweepRow>> {
    let packet = WavepacketSpec::from_ratio(w_over_m)?;
    let rapidity = Rapidity::new(xi)?;
    let needs_fidelity = spec.measures.iter().any(|m| m.needs_fidelity());
    let needs_bloch = spec.wants(MeasureKind::SpinMomentum);

    let fidelity = if needs_fidelity {
        Some(measures::fidelity(&packet, rapidity, &spec.quad)?)
    } else {
        None
    };
    let bloch = if needs_bloch {
        Some(bloch_z(&packet, rapidity, &spec.quad)?.vector)
    } else {
        None
    };

    let oracle = match &spec.oracle {
        None => None,
        Some(o) => Some(OraclePoint {
            fidelity: if needs_fidelity {
                let est = overlap_oracle(&packet, rapidity, o)?;
                Some((est.estimate.norm(), est.std_error))
            } else {
                None
            },
            n_z: if needs_bloch {
                let [pol, norm] = bloch_oracle(&packet, rapidity, o)?;
                let n_z = pol.estimate / norm.estimate;
                let se = pol.std_error.hypot(n_z * norm.std_error) / norm.estimate;
                Some((n_z, se))
            } else {
                None
            },
        }),
    };

    let mut rows = Vec::new();
    let mut push = |measure, renyi_order, value, oracle: Option<(f64, f64)>| {
        rows.push(SweepRow {
            xi,
            w_over_m,
            measure,
            renyi_order,
            value,
            oracle_value: oracle.map(|o| o.0),
            oracle_std_error: oracle.map(|o| o.1),
        })
    };

    for &m in &spec.measures {
        match m {
            MeasureKind::SpinMomentum => {
                let b = bloch.expect("bloch vector computed when requested");
                let value = measures::spin_momentum_entropy(&b);
                let o = match oracle.as_ref().and_then(|o| o.n_z) {
                    Some((n, se)) => Some(propagate(n, se, |n| {
                        Ok(measures::spin_momentum_entropy(&BlochVector {
                            n_z: n.clamp(-1.0, 1.0),
                        }))
                    })?),
                    None => None,
                };
                push(m, None, value, o);
            }
            MeasureKind::Fidelity => {
                let f = fidelity.expect("fidelity computed when requested").value();
                // the raw oracle estimate, unclamped
                push(m, None, f, oracle.as_ref().and_then(|o| o.fidelity));
            }
            MeasureKind::Renyi => {
                let f = fidelity.expect("fidelity computed when requested").value();
                for &n in &spec.renyi_orders {
                    let value = time_system_measure(m, f, Some(n))?;
                    let o = match oracle.as_ref().and_then(|o| o.fidelity) {
                        Some((fo, se)) => {
                            Some(propagate(fo, se, |x| time_system_measure(m, x, Some(n)))?)
                        }
                        None => None,
                    };
                    push(m, Some(n), value, o);
                }
            }
            _ => {
                let f = fidelity.expect("fidelity computed when requested").value();
                let value = time_system_measure(m, f, None)?;
                let o = match oracle.as_ref().and_then(|o| o.fidelity) {
                    Some((fo, se)) => Some(propagate(fo, se, |x| time_system_measure(m, x, None))?),
                    None => None,
                };
                push(m, None, value, o);
            }
        }
    }
    Ok(rows)
}

/// Evaluates every requested measure on the `(xi, w/m)` grid.
///
/// Grid points run in parallel; the rows are sorted afterwards, so the
/// result does not depend on scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let mut measures = spec.measures.clone();
    measures.sort();
    measures.dedup();
    let spec = SweepSpec {
        measures,
        ..spec.clone()
    };
    let points: Vec<(f64, f64)> = spec
        .w_over_m_values
        .iter()
        .flat_map(|&r| spec.xi_grid().into_iter().map(move |xi| (xi, r)))
        .collect();
    let rows: Vec<Vec<SweepRow>> = points
        .par_iter()
        .map(|&(xi, r)| {
            evaluate_point(&spec, xi, r).map_err(|e| Error::AtGridPoint {
                xi,
                w_over_m: r,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult::from_rows(rows.into_iter().flatten().collect()))
}
