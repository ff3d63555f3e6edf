use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use boostclock::sweep::{render_svg, run_sweep, write_csv, SweepConfig};
use clap::Parser;

/// Sweep boost rapidity and w/m, writing fidelity and entanglement measures as CSV.
///
/// Settings are applied in order: built-in defaults, then `--config`, then
/// the remaining flags.
#[derive(Debug, Parser)]
#[command(name = "boostclock", version)]
struct Args {
    /// Config file with `key = value` lines (keys are the flag names).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    xi_min: Option<String>,
    #[arg(long)]
    xi_max: Option<String>,
    #[arg(long)]
    xi_steps: Option<String>,
    /// Comma-separated list of w/m ratios.
    #[arg(long)]
    w_over_m: Option<String>,
    /// Comma-separated subset of fidelity, entropy, mutual_info, quadratic,
    /// renyi, log_negativity, spin_momentum.
    #[arg(long)]
    measures: Option<String>,
    /// Comma-separated Rényi orders; `inf` for the min-entropy.
    #[arg(long)]
    renyi_orders: Option<String>,
    /// Radial cut-off in units of the momentum spread.
    #[arg(long)]
    qmax_mult: Option<String>,
    /// Quadrature nodes as `nq,ntheta,nphi`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    rel_tol: Option<String>,
    /// Monte-Carlo oracle samples per grid point; 0 disables the oracle.
    #[arg(long)]
    oracle_samples: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<String>,
    /// Plot to write, as `measure:path`. Repeatable.
    #[arg(long)]
    svg: Vec<String>,
}

impl Args {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let single = [
            ("xi_min", &self.xi_min),
            ("xi_max", &self.xi_max),
            ("xi_steps", &self.xi_steps),
            ("w_over_m", &self.w_over_m),
            ("measures", &self.measures),
            ("renyi_orders", &self.renyi_orders),
            ("qmax_mult", &self.qmax_mult),
            ("grid", &self.grid),
            ("rel_tol", &self.rel_tol),
            ("oracle_samples", &self.oracle_samples),
            ("seed", &self.seed),
            ("out", &self.out),
        ];
        let mut out: Vec<_> = single
            .into_iter()
            .filter_map(|(k, v)| v.clone().map(|v| (k, v)))
            .collect();
        out.extend(self.svg.iter().map(|v| ("svg", v.clone())));
        out
    }
}

fn main() -> anyhow::Result<()> {
    let args = Args::parse();
    let mut config = SweepConfig::new();
    if let Some(path) = &args.config {
        config.load_file(path)?;
    }
    for (k, v) in args.overrides() {
        config
            .set(k, &v)
            .with_context(|| format!("--{}", k.replace('_', "-")))?;
    }
    let spec = config.build()?;

    let started = Instant::now();
    let result = run_sweep(&spec)?;
    write_csv(&result, &spec.output_path)?;
    for (measure, path) in &spec.svg_outputs {
        render_svg(&result, *measure, path)?;
    }
    eprintln!(
        "wrote {} rows to {} in {:.1?}",
        result.rows.len(),
        spec.output_path.display(),
        started.elapsed()
    );
    Ok(())
}
