//! Integration over momentum space in spherical coordinates.
//!
//! [`SphericalGrid`] is a fixed product rule: Gauss–Legendre in `q` on the
//! truncated interval `[0, q_max_multiple * w]`, Gauss–Legendre in `theta`,
//! and the uniform trapezoid rule in the periodic `phi`. The Monte-Carlo
//! routines are the independent cross-check.
//!
//! Both are deterministic: the grid reduction runs in parallel over radial
//! shells but sums the shells in a fixed order, and the Monte-Carlo sampler
//! splits the draws into fixed chunks, each with its own ChaCha stream.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kinematics::MomentumPoint;
use crate::wavepacket::PI_POW_3_2;

/// Node counts and truncation of the product rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub n_q: usize,
    pub n_theta: usize,
    pub n_phi: usize,
    /// Radial cut-off in units of the Gaussian width `w`.
    pub q_max_multiple: f64,
    /// Relative accuracy the grid is expected to reach on the fidelity.
    pub target_rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            n_q: 64,
            n_theta: 128,
            n_phi: 128,
            q_max_multiple: 8.0,
            target_rel_tol: 1e-6,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, n) in [
            ("n_q", self.n_q),
            ("n_theta", self.n_theta),
            ("n_phi", self.n_phi),
        ] {
            if n < 2 {
                return Err(Error::invalid(name, n as f64, "need at least 2 nodes"));
            }
        }
        if !(self.q_max_multiple.is_finite() && self.q_max_multiple >= 4.0) {
            return Err(Error::invalid(
                "q_max_multiple",
                self.q_max_multiple,
                "radial cut-off must be at least 4 widths",
            ));
        }
        if !(self.target_rel_tol.is_finite() && self.target_rel_tol > 0.0) {
            return Err(Error::invalid(
                "target_rel_tol",
                self.target_rel_tol,
                "must be positive",
            ));
        }
        Ok(())
    }

    /// Same truncation with every node count doubled.
    pub fn refined(&self) -> Self {
        Self {
            n_q: 2 * self.n_q,
            n_theta: 2 * self.n_theta,
            n_phi: 2 * self.n_phi,
            ..*self
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess for the i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped onto `[a, b]`.
fn mapped_rule(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    x.into_iter()
        .zip(w)
        .map(|(x, w)| (mid + half * x, half * w))
        .collect()
}

/// Precomputed product-rule nodes for one `(spec, w)` pair.
///
/// Weights include the spherical Jacobian `q^2 sin(theta)`.
#[derive(Debug, Clone)]
pub struct SphericalGrid {
    radial: Vec<(f64, f64)>,
    /// Unit-magnitude directions, theta-major, with their polar weights.
    directions: Vec<(MomentumPoint, f64)>,
    n_phi: usize,
    azimuth_weight: f64,
    q_max: f64,
}

impl SphericalGrid {
    pub fn new(spec: &QuadratureSpec, w: f64) -> Result<Self> {
        spec.validate()?;
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::invalid("w", w, "momentum spread must be positive"));
        }
        let q_max = spec.q_max_multiple * w;
        let radial = mapped_rule(spec.n_q, 0.0, q_max)
            .into_iter()
            .map(|(q, wt)| (q, wt * q * q))
            .collect();
        let h = TAU / spec.n_phi as f64;
        let mut directions = Vec::with_capacity(spec.n_theta * spec.n_phi);
        for (t, wt) in mapped_rule(spec.n_theta, 0.0, PI) {
            for k in 0..spec.n_phi {
                directions.push((MomentumPoint::new(1.0, t, k as f64 * h)?, wt * t.sin()));
            }
        }
        Ok(Self {
            radial,
            directions,
            n_phi: spec.n_phi,
            azimuth_weight: h,
            q_max,
        })
    }

    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    pub fn len(&self) -> usize {
        self.radial.len() * self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Integrates `N` real integrands in one pass over the grid.
    pub fn integrate_array<const N: usize, F>(&self, f: F) -> Result<[f64; N]>
    where
        F: Fn(&MomentumPoint) -> [f64; N] + Sync,
    {
        let shells: Vec<[f64; N]> = self
            .radial
            .par_iter()
            .map(|&(q, wq)| self.shell(q, wq, &f))
            .collect::<Result<_>>()?;
        let mut total = [0.0; N];
        for s in shells {
            for (t, v) in total.iter_mut().zip(s) {
                *t += v;
            }
        }
        Ok(total)
    }

    fn shell<const N: usize, F>(&self, q: f64, wq: f64, f: &F) -> Result<[f64; N]>
    where
        F: Fn(&MomentumPoint) -> [f64; N],
    {
        let mut shell = [0.0; N];
        for ring_nodes in self.directions.chunks(self.n_phi) {
            let wt = ring_nodes[0].1;
            let mut ring = [0.0; N];
            for (dir, _) in ring_nodes {
                let point = dir.with_q(q)?;
                let v = f(&point);
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::NonFiniteIntegrand { point });
                }
                for (r, x) in ring.iter_mut().zip(v) {
                    *r += x;
                }
            }
            for (s, r) in shell.iter_mut().zip(ring) {
                *s += wt * r;
            }
        }
        Ok(shell.map(|s| s * wq * self.azimuth_weight))
    }

    pub fn integrate<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(&MomentumPoint) -> Complex64 + Sync,
    {
        let [re, im] = self.integrate_array(|p| {
            let z = f(p);
            [z.re, z.im]
        })?;
        Ok(Complex64::new(re, im))
    }
}

/// `∫ f(q, theta, phi) q^2 sin(theta) dq dtheta dphi` over the ball of
/// radius `spec.q_max_multiple * w`.
pub fn integrate_spherical<F>(f: F, spec: &QuadratureSpec, w: f64) -> Result<Complex64>
where
    F: Fn(&MomentumPoint) -> Complex64 + Sync,
{
    SphericalGrid::new(spec, w)?.integrate(f)
}

/// Sample count and seed of the Monte-Carlo oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleSpec {
    pub n_samples: u64,
    pub rng_seed: u64,
}

impl OracleSpec {
    pub const MIN_SAMPLES: u64 = 10_000;

    pub fn new(n_samples: u64, rng_seed: u64) -> Result<Self> {
        let spec = Self {
            n_samples,
            rng_seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < Self::MIN_SAMPLES {
            return Err(Error::invalid(
                "n_samples",
                self.n_samples as f64,
                "the oracle needs at least 10^4 samples",
            ));
        }
        Ok(())
    }
}

/// Sampling density used by the Monte-Carlo oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampling {
    /// Draw momenta from `|a1(q)|^2 = exp(-q^2/w^2) / (pi^{3/2} w^3)`, i.e. each
    /// Cartesian component from a normal of variance `w^2/2`. Unbounded.
    Gaussian,
    /// Uniform in the ball of radius `q_max`.
    UniformBall { q_max: f64 },
}

impl Sampling {
    fn density(&self, w: f64, q: f64) -> f64 {
        match *self {
            Sampling::Gaussian => {
                let x = q / w;
                (-x * x).exp() / (PI_POW_3_2 * w * w * w)
            }
            Sampling::UniformBall { q_max } => 3.0 / (4.0 * PI * q_max.powi(3)),
        }
    }

    fn draw(&self, w: f64, rng: &mut ChaCha8Rng) -> Result<MomentumPoint> {
        match *self {
            Sampling::Gaussian => {
                let s = w * std::f64::consts::FRAC_1_SQRT_2;
                let x: f64 = rng.sample(StandardNormal);
                let y: f64 = rng.sample(StandardNormal);
                let z: f64 = rng.sample(StandardNormal);
                MomentumPoint::from_cartesian(s * x, s * y, s * z)
            }
            Sampling::UniformBall { q_max } => {
                let q = q_max * rng.random::<f64>().cbrt();
                let cos_t: f64 = rng.random_range(-1.0..=1.0);
                let phi = rng.random_range(0.0..TAU);
                MomentumPoint::new(q, cos_t.acos(), phi)
            }
        }
    }
}

/// Mean and standard error of one Monte-Carlo component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McComponent {
    pub estimate: f64,
    pub std_error: f64,
}

/// Complex Monte-Carlo estimate; `std_error` is the root of the summed
/// variances of the real and imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: Complex64,
    pub std_error: f64,
}

const MC_CHUNK: u64 = 1 << 14;

/// Monte-Carlo estimates of `N` integrals `∫ f_i d^3q` sharing one set of draws.
pub fn mc_integrate_array<const N: usize, F>(
    f: F,
    oracle: &OracleSpec,
    w: f64,
    sampling: Sampling,
) -> Result<[McComponent; N]>
where
    F: Fn(&MomentumPoint) -> [f64; N] + Sync,
{
    oracle.validate()?;
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::invalid("w", w, "momentum spread must be positive"));
    }
    if let Sampling::UniformBall { q_max } = sampling {
        if !(q_max.is_finite() && q_max > 0.0) {
            return Err(Error::invalid(
                "q_max",
                q_max,
                "ball radius must be positive",
            ));
        }
    }
    let n = oracle.n_samples;
    let chunks = n.div_ceil(MC_CHUNK);
    let partial: Vec<([f64; N], [f64; N])> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(oracle.rng_seed);
            rng.set_stream(c);
            let count = MC_CHUNK.min(n - c * MC_CHUNK);
            let mut sum = [0.0; N];
            let mut sum_sq = [0.0; N];
            for _ in 0..count {
                let point = sampling.draw(w, &mut rng)?;
                let rho = sampling.density(w, point.q());
                let v = f(&point);
                for i in 0..N {
                    let x = v[i] / rho;
                    if !x.is_finite() {
                        return Err(Error::NonFiniteIntegrand { point });
                    }
                    sum[i] += x;
                    sum_sq[i] += x * x;
                }
            }
            Ok((sum, sum_sq))
        })
        .collect::<Result<_>>()?;

    let mut sum = [0.0; N];
    let mut sum_sq = [0.0; N];
    for (s, s2) in partial {
        for i in 0..N {
            sum[i] += s[i];
            sum_sq[i] += s2[i];
        }
    }
    let nf = n as f64;
    Ok(std::array::from_fn(|i| {
        let mean = sum[i] / nf;
        let var = ((sum_sq[i] - nf * mean * mean) / (nf - 1.0)).max(0.0);
        McComponent {
            estimate: mean,
            std_error: (var / nf).sqrt(),
        }
    }))
}

/// Monte-Carlo estimate of `∫ f d^3q`.
pub fn mc_integrate<F>(f: F, oracle: &OracleSpec, w: f64, sampling: Sampling) -> Result<McEstimate>
where
    F: Fn(&MomentumPoint) -> Complex64 + Sync,
{
    let [re, im] = mc_integrate_array(
        |p| {
            let z = f(p);
            [z.re, z.im]
        },
        oracle,
        w,
        sampling,
    )?;
    Ok(McEstimate {
        estimate: Complex64::new(re.estimate, im.estimate),
        std_error: re.std_error.hypot(im.std_error),
    })
}
