//! Gaussian spin-up wavepacket and its image under the Wigner rotation.

use num_complex::Complex64;

use crate::kinematics::{
    boosted_energy, rest_energy, wigner_matrix, MomentumPoint, PhysicalParams, Rapidity,
};

/// `pi^{3/2}`
pub(crate) const PI_POW_3_2: f64 = 5.568_327_996_831_708;

/// Two-component momentum-space spinor amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorAmplitude {
    pub up: Complex64,
    pub down: Complex64,
}

impl SpinorAmplitude {
    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    /// `|up|^2 - |down|^2`, the local spin polarization along z.
    pub fn polarization_z(&self) -> f64 {
        self.up.norm_sqr() - self.down.norm_sqr()
    }
}

/// The initial state: spin up along z with an isotropic Gaussian momentum
/// profile of width `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavepacketSpec {
    pub params: PhysicalParams,
}

impl WavepacketSpec {
    pub fn new(params: PhysicalParams) -> Self {
        Self { params }
    }

    pub fn from_ratio(w_over_m: f64) -> crate::Result<Self> {
        Ok(Self::new(PhysicalParams::from_ratio(w_over_m)?))
    }

    pub fn spread_w(&self) -> f64 {
        self.params.spread_w()
    }

    /// Unit-mass version of the same wavepacket.
    pub fn normalized(&self) -> Self {
        Self::new(self.params.normalized())
    }

    pub fn initial_spinor(&self, q: f64) -> SpinorAmplitude {
        SpinorAmplitude {
            up: gaussian_amplitude(self, q).into(),
            down: Complex64::new(0.0, 0.0),
        }
    }
}

/// `a1(q) = exp(-q^2 / 2w^2) / (pi^{3/4} w^{3/2})`, normalized so that
/// `∫ a1^2 d^3q = 1`.
pub fn gaussian_amplitude(spec: &WavepacketSpec, q: f64) -> f64 {
    gaussian_density(spec, q).sqrt()
}

/// `|a1(q)|^2`, which is also the probability density of the momentum.
pub fn gaussian_density(spec: &WavepacketSpec, q: f64) -> f64 {
    let w = spec.spread_w();
    let x = q / w;
    (-x * x).exp() / (PI_POW_3_2 * w * w * w)
}

/// State after the boost, `U(Λ, q) (a1(q), 0)`.
pub fn boosted_spinor(
    spec: &WavepacketSpec,
    point: &MomentumPoint,
    xi: Rapidity,
) -> SpinorAmplitude {
    let u = wigner_matrix(&spec.params, point, xi);
    let a = gaussian_amplitude(spec, point.q());
    // a2 = 0, so only the first column of U contributes
    SpinorAmplitude {
        up: u.u11 * a,
        down: u.u21 * a,
    }
}

/// Boosted spinor with `K` rescaled by `sqrt(E / E')`, the form that is
/// integrated over rest-frame momenta when the measure is `d^3p` in the
/// boosted frame.
pub fn boosted_spinor_rescaled(
    spec: &WavepacketSpec,
    point: &MomentumPoint,
    xi: Rapidity,
) -> SpinorAmplitude {
    let b = boosted_spinor(spec, point, xi);
    let e = rest_energy(&spec.params, point.q());
    let e_boost = boosted_energy(&spec.params, point, xi);
    let scale = (e / e_boost).sqrt();
    SpinorAmplitude {
        up: b.up * scale,
        down: b.down * scale,
    }
}
