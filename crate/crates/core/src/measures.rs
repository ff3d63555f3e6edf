//! Fidelity between the pre- and post-boost states and the entanglement
//! measures that follow from it.
//!
//! The clock-system state is a Schmidt-rank-2 pure state whose weights are
//! fixed by the fidelity alone, so every time-system measure here is a
//! closed-form function of one number. The spin-momentum entropy is the
//! exception and needs its own integral ([`bloch_z`]).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::{boosted_energy, rest_energy, wigner_matrix, MomentumPoint, Rapidity};
use crate::quadrature::{
    mc_integrate, mc_integrate_array, McComponent, McEstimate, OracleSpec, QuadratureSpec,
    Sampling, SphericalGrid,
};
use crate::wavepacket::{boosted_spinor_rescaled, gaussian_density, WavepacketSpec};

/// Raw fidelities in `(1, 1 + FIDELITY_CLAMP_MARGIN]` are rounded down to 1.
pub const FIDELITY_CLAMP_MARGIN: f64 = 1e-9;

/// Weights at or below this are exact zeros in `p log p`.
pub const ZERO_WEIGHT: f64 = 1e-300;

/// Orders within this distance of 1 use the von Neumann entropy.
pub const RENYI_UNIT_ORDER_TOL: f64 = 1e-9;

/// Allowed deviation of the boosted-state normalization integral from 1.
pub const BLOCH_NORM_TOL: f64 = 1e-6;

/// `|<psi0|psi1>|`, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Fidelity(f64);

impl Fidelity {
    pub const ONE: Fidelity = Fidelity(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || !(0.0..=1.0 + FIDELITY_CLAMP_MARGIN).contains(&value) {
            return Err(Error::FidelityOutOfRange(value));
        }
        Ok(Self(value.min(1.0)))
    }

    /// Clamps into `[0, 1]` unconditionally. Meant for noisy estimates such
    /// as the Monte-Carlo oracle.
    pub fn saturating(value: f64) -> Self {
        Self(if value.is_nan() {
            0.0
        } else {
            value.clamp(0.0, 1.0)
        })
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Eigenvalues `(1 ± F)/2` of either reduced state of the clock-system pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtWeights {
    pub p_plus: f64,
    pub p_minus: f64,
}

impl SchmidtWeights {
    fn iter(&self) -> impl Iterator<Item = f64> {
        [self.p_plus, self.p_minus].into_iter()
    }
}

pub fn schmidt_weights(f: Fidelity) -> SchmidtWeights {
    SchmidtWeights {
        p_plus: 0.5 * (1.0 + f.0),
        p_minus: 0.5 * (1.0 - f.0),
    }
}

/// `Tr rho_S^2`
pub fn purity(w: &SchmidtWeights) -> f64 {
    w.p_plus * w.p_plus + w.p_minus * w.p_minus
}

fn shannon_bits(p: impl Iterator<Item = f64>) -> f64 {
    let h: f64 = p.filter(|&p| p > ZERO_WEIGHT).map(|p| -p * p.log2()).sum();
    // -0.0 for a pure state
    h.max(0.0)
}

/// Von Neumann entropy of the reduced clock state, in bits.
pub fn entanglement_entropy(w: &SchmidtWeights) -> f64 {
    shannon_bits(w.iter())
}

/// Mutual information between clock and system; twice the entropy for a pure state.
pub fn mutual_information(w: &SchmidtWeights) -> f64 {
    2.0 * entanglement_entropy(w)
}

/// `1 - F^2`, equal to `2 (1 - Tr rho_S^2)`.
pub fn quadratic_entropy(f: Fidelity) -> f64 {
    1.0 - f.0 * f.0
}

/// Rényi order; `Infinity` selects the min-entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenyiOrder {
    Finite(f64),
    Infinity,
}

impl RenyiOrder {
    pub fn new(n: f64) -> Result<Self> {
        if n.is_nan() || n < 0.0 {
            return Err(Error::invalid("renyi order", n, "must be non-negative"));
        }
        Ok(if n.is_infinite() {
            RenyiOrder::Infinity
        } else {
            RenyiOrder::Finite(n)
        })
    }

    /// Sort key; infinity sorts last.
    pub fn as_f64(self) -> f64 {
        match self {
            RenyiOrder::Finite(n) => n,
            RenyiOrder::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenyiOrder::Finite(n) => write!(f, "{n}"),
            RenyiOrder::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for RenyiOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(RenyiOrder::Infinity);
        }
        let n: f64 = s
            .parse()
            .map_err(|_| Error::Config(format!("cannot parse Rényi order `{s}`")))?;
        RenyiOrder::new(n)
    }
}

/// Rényi entropy `log2(sum p_k^n) / (1 - n)` in bits, with the order-0, order-1
/// and infinite-order limits dispatched explicitly.
pub fn renyi_entropy(w: &SchmidtWeights, order: RenyiOrder) -> Result<f64> {
    let n = match order {
        RenyiOrder::Infinity => return Ok(min_entropy(w)),
        RenyiOrder::Finite(n) if n.is_nan() || n < 0.0 => {
            return Err(Error::invalid("renyi order", n, "must be non-negative"))
        }
        RenyiOrder::Finite(n) => n,
    };
    if n == 0.0 {
        let rank = w.iter().filter(|&p| p > ZERO_WEIGHT).count();
        return Ok((rank.max(1) as f64).log2());
    }
    if (n - 1.0).abs() <= RENYI_UNIT_ORDER_TOL {
        return Ok(entanglement_entropy(w));
    }
    // log2(p+^n + p-^n) = n log2 p+ + log2(1 + (p-/p+)^n), which neither
    // underflows for large n nor loses the small term
    let ratio = w.p_minus / w.p_plus;
    let log_sum = n * w.p_plus.log2() + (ratio.powf(n)).ln_1p() / std::f64::consts::LN_2;
    Ok((log_sum / (1.0 - n)).max(0.0))
}

/// `-log2(max p_k)`
pub fn min_entropy(w: &SchmidtWeights) -> f64 {
    (-w.p_plus.max(w.p_minus).log2()).max(0.0)
}

/// `log2(2 sqrt(p+ p-) + 1)`
pub fn log_negativity(w: &SchmidtWeights) -> f64 {
    (2.0 * (w.p_plus * w.p_minus).max(0.0).sqrt() + 1.0).log2()
}

/// Integrand of the overlap `<psi0|psi1>` at one rest-frame momentum:
/// `U_11(q) a1(q)^2`.
pub fn overlap_integrand(spec: &WavepacketSpec, point: &MomentumPoint, xi: Rapidity) -> Complex64 {
    let u = wigner_matrix(&spec.params, point, xi);
    u.u11 * gaussian_density(spec, point.q())
}

/// The complex overlap `<psi0|psi1>` on the quadrature grid.
pub fn overlap(spec: &WavepacketSpec, xi: Rapidity, quad: &QuadratureSpec) -> Result<Complex64> {
    let spec = spec.normalized();
    let grid = SphericalGrid::new(quad, spec.spread_w())?;
    grid.integrate(|p| overlap_integrand(&spec, p, xi))
}

fn fidelity_from_overlap(z: Complex64) -> Result<Fidelity> {
    if z.im.abs() >= 1e-8 * z.re.abs() + 1e-12 {
        return Err(Error::SymmetryViolation {
            real: z.re,
            imag: z.im,
        });
    }
    Fidelity::new(z.norm())
}

/// Fidelity between the wavepacket before and after a boost of rapidity `xi`.
///
/// At `xi = 0` the rotation is the identity and the result is exactly 1;
/// otherwise the overlap is integrated on the grid.
///
/// Fails if the imaginary part of the overlap is not negligible: the
/// `sin(phi)` part of the integrand is odd under `phi -> -phi` while `K` is
/// even, so a surviving imaginary part means a broken integrand.
pub fn fidelity(spec: &WavepacketSpec, xi: Rapidity, quad: &QuadratureSpec) -> Result<Fidelity> {
    quad.validate()?;
    if xi == Rapidity::ZERO {
        return Ok(Fidelity::ONE);
    }
    fidelity_from_overlap(overlap(spec, xi, quad)?)
}

/// Monte-Carlo estimate of the overlap, sampling momenta from `|a1|^2`.
pub fn overlap_oracle(
    spec: &WavepacketSpec,
    xi: Rapidity,
    oracle: &OracleSpec,
) -> Result<McEstimate> {
    let spec = spec.normalized();
    mc_integrate(
        |p| overlap_integrand(&spec, p, xi),
        oracle,
        spec.spread_w(),
        Sampling::Gaussian,
    )
}

/// Bloch vector of the reduced spin state after the boost; `n_x = n_y = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub n_z: f64,
}

/// [`bloch_z`] output together with the normalization integral it divided by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochResult {
    pub vector: BlochVector,
    pub normalization: f64,
}

/// `[(|b1|^2 - |b2|^2) E'/E, (|b1|^2 + |b2|^2) E'/E]` with `b` built from the
/// rescaled `K sqrt(E/E')`: the boosted-frame measure `d^3p` rewritten over
/// rest-frame momenta.
fn bloch_integrands(spec: &WavepacketSpec, point: &MomentumPoint, xi: Rapidity) -> [f64; 2] {
    let b = boosted_spinor_rescaled(spec, point, xi);
    let jacobian = boosted_energy(&spec.params, point, xi) / rest_energy(&spec.params, point.q());
    [b.polarization_z() * jacobian, b.norm_sqr() * jacobian]
}

fn bloch_from_integrals(polarization: f64, normalization: f64) -> Result<BlochResult> {
    let defect = (normalization - 1.0).abs();
    if defect.is_nan() || defect > BLOCH_NORM_TOL {
        return Err(Error::NormalizationFailure(normalization));
    }
    Ok(BlochResult {
        vector: BlochVector {
            n_z: (polarization / normalization).clamp(-1.0, 1.0),
        },
        normalization,
    })
}

/// z-component of the spin Bloch vector of the boosted state.
pub fn bloch_z(spec: &WavepacketSpec, xi: Rapidity, quad: &QuadratureSpec) -> Result<BlochResult> {
    let spec = spec.normalized();
    let grid = SphericalGrid::new(quad, spec.spread_w())?;
    let [pol, norm] = grid.integrate_array(|p| bloch_integrands(&spec, p, xi))?;
    bloch_from_integrals(pol, norm)
}

/// Monte-Carlo estimates of the polarization and normalization integrals.
pub fn bloch_oracle(
    spec: &WavepacketSpec,
    xi: Rapidity,
    oracle: &OracleSpec,
) -> Result<[McComponent; 2]> {
    let spec = spec.normalized();
    mc_integrate_array(
        |p| bloch_integrands(&spec, p, xi),
        oracle,
        spec.spread_w(),
        Sampling::Gaussian,
    )
}

/// Spin-momentum entanglement entropy from the Bloch vector, in bits.
pub fn spin_momentum_entropy(b: &BlochVector) -> f64 {
    let n = b.n_z.abs().min(1.0);
    shannon_bits([0.5 * (1.0 + n), 0.5 * (1.0 - n)].into_iter())
}

/// Every measure derived from one fidelity (and optionally one Bloch vector).
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSet {
    pub fidelity: Fidelity,
    pub entropy_bits: f64,
    pub mutual_info_bits: f64,
    pub quadratic: f64,
    pub renyi: Vec<(RenyiOrder, f64)>,
    pub log_negativity_bits: f64,
    pub spin_momentum_entropy_bits: Option<f64>,
}

impl MeasureSet {
    pub fn new(
        f: Fidelity,
        renyi_orders: &[RenyiOrder],
        bloch: Option<&BlochVector>,
    ) -> Result<Self> {
        let w = schmidt_weights(f);
        let entropy_bits = entanglement_entropy(&w);
        let renyi = renyi_orders
            .iter()
            .map(|&n| Ok((n, renyi_entropy(&w, n)?)))
            .collect::<Result<_>>()?;
        Ok(Self {
            fidelity: f,
            entropy_bits,
            mutual_info_bits: 2.0 * entropy_bits,
            quadratic: quadratic_entropy(f),
            renyi,
            log_negativity_bits: log_negativity(&w),
            spin_momentum_entropy_bits: bloch.map(spin_momentum_entropy),
        })
    }
}
