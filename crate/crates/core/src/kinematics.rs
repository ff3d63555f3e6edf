//! Single-particle kinematics for a boost along +x and the momentum-dependent
//! Wigner rotation it induces on a spin-1/2 state.
//!
//! All energies, masses and momenta share one unit (natural units, c = 1).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Particle mass and Gaussian momentum spread.
///
/// Every observable depends on the pair only through `w/m`, so the
/// pipeline works with [`PhysicalParams::normalized`] internally.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    mass: f64,
    spread_w: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, spread_w: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::invalid("mass", mass, "must be finite and positive"));
        }
        if !(spread_w.is_finite() && spread_w > 0.0) {
            return Err(Error::invalid(
                "spread_w",
                spread_w,
                "must be finite and positive",
            ));
        }
        Ok(Self { mass, spread_w })
    }

    /// Unit mass with the given `w/m`.
    pub fn from_ratio(w_over_m: f64) -> Result<Self> {
        Self::new(1.0, w_over_m)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn spread_w(&self) -> f64 {
        self.spread_w
    }

    pub fn w_over_m(&self) -> f64 {
        self.spread_w / self.mass
    }

    /// The same physics expressed in units where the mass is 1.
    pub fn normalized(&self) -> Self {
        Self {
            mass: 1.0,
            spread_w: self.w_over_m(),
        }
    }
}

/// Boost rapidity `xi >= 0`; the velocity is `tanh(xi)`.
///
/// The hyperbolic functions of `xi` and `xi/2` are computed once here since
/// integrands evaluate them at every node.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rapidity {
    xi: f64,
    cosh: f64,
    sinh: f64,
    cosh_half: f64,
    sinh_half: f64,
}

impl Rapidity {
    pub const ZERO: Rapidity = Rapidity {
        xi: 0.0,
        cosh: 1.0,
        sinh: 0.0,
        cosh_half: 1.0,
        sinh_half: 0.0,
    };

    pub fn new(xi: f64) -> Result<Self> {
        if !(xi.is_finite() && xi >= 0.0) {
            return Err(Error::invalid(
                "xi",
                xi,
                "rapidity must be finite and non-negative",
            ));
        }
        let h = 0.5 * xi;
        Ok(Self {
            xi,
            cosh: xi.cosh(),
            sinh: xi.sinh(),
            cosh_half: h.cosh(),
            sinh_half: h.sinh(),
        })
    }

    pub fn value(self) -> f64 {
        self.xi
    }

    pub fn beta(self) -> f64 {
        self.xi.tanh()
    }

    /// `(cosh(xi/2), sinh(xi/2))`
    pub(crate) fn half_angle(self) -> (f64, f64) {
        (self.cosh_half, self.sinh_half)
    }
}

/// Rest-frame momentum in spherical coordinates, with the sines and cosines
/// of both angles cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint {
    q: f64,
    theta: f64,
    phi: f64,
    sin_theta: f64,
    cos_theta: f64,
    sin_phi: f64,
    cos_phi: f64,
}

impl MomentumPoint {
    pub fn new(q: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(q.is_finite() && q >= 0.0) {
            return Err(Error::invalid(
                "q",
                q,
                "momentum magnitude must be finite and non-negative",
            ));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::invalid(
                "theta",
                theta,
                "polar angle must lie in [0, pi]",
            ));
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::invalid("phi", phi, "azimuth must lie in [0, 2pi)"));
        }
        let (sin_theta, cos_theta) = theta.sin_cos();
        let (sin_phi, cos_phi) = phi.sin_cos();
        Ok(Self {
            q,
            theta,
            phi,
            sin_theta,
            cos_theta,
            sin_phi,
            cos_phi,
        })
    }

    /// Builds a point from Cartesian components.
    pub fn from_cartesian(px: f64, py: f64, pz: f64) -> Result<Self> {
        let q = (px * px + py * py + pz * pz).sqrt();
        if q == 0.0 {
            return Self::new(0.0, 0.0, 0.0);
        }
        let theta = (pz / q).clamp(-1.0, 1.0).acos();
        let mut phi = py.atan2(px);
        if phi < 0.0 {
            phi += TAU;
        }
        // atan2 can round up to exactly 2pi after the shift
        if phi >= TAU {
            phi = 0.0;
        }
        Self::new(q, theta, phi)
    }

    /// Same direction, different magnitude.
    pub fn with_q(&self, q: f64) -> Result<Self> {
        if !(q.is_finite() && q >= 0.0) {
            return Err(Error::invalid(
                "q",
                q,
                "momentum magnitude must be finite and non-negative",
            ));
        }
        Ok(Self { q, ..*self })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn cartesian(&self) -> [f64; 3] {
        let st = self.q * self.sin_theta;
        [
            st * self.cos_phi,
            st * self.sin_phi,
            self.q * self.cos_theta,
        ]
    }

    /// Component along the boost axis, `q sin(theta) cos(phi)`.
    pub fn along_boost(&self) -> f64 {
        self.q * self.sin_theta * self.cos_phi
    }
}

/// The 2x2 spin rotation `U(Λ, q)`, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerMatrix {
    pub u11: Complex64,
    pub u12: Complex64,
    pub u21: Complex64,
    pub u22: Complex64,
}

impl WignerMatrix {
    pub const IDENTITY: WignerMatrix = WignerMatrix {
        u11: Complex64::new(1.0, 0.0),
        u12: Complex64::new(0.0, 0.0),
        u21: Complex64::new(0.0, 0.0),
        u22: Complex64::new(1.0, 0.0),
    };

    pub fn apply(&self, up: Complex64, down: Complex64) -> (Complex64, Complex64) {
        (
            self.u11 * up + self.u12 * down,
            self.u21 * up + self.u22 * down,
        )
    }

    pub fn determinant(&self) -> Complex64 {
        self.u11 * self.u22 - self.u12 * self.u21
    }

    /// `max |(U†U − I)_ij|`
    pub fn unitarity_defect(&self) -> f64 {
        let g11 = self.u11.norm_sqr() + self.u21.norm_sqr() - 1.0;
        let g22 = self.u12.norm_sqr() + self.u22.norm_sqr() - 1.0;
        let g12 = self.u11.conj() * self.u12 + self.u21.conj() * self.u22;
        g11.abs().max(g22.abs()).max(g12.norm())
    }

    /// `max |U_ij − V_ij|`
    pub fn max_abs_diff(&self, other: &WignerMatrix) -> f64 {
        [
            self.u11 - other.u11,
            self.u12 - other.u12,
            self.u21 - other.u21,
            self.u22 - other.u22,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }
}

/// `E = sqrt(q^2 + m^2)`
pub fn rest_energy(params: &PhysicalParams, q: f64) -> f64 {
    (q * q + params.mass * params.mass).sqrt()
}

/// Energy in the boosted frame, `E' = E cosh xi + q sin(theta) cos(phi) sinh xi`.
pub fn boosted_energy(params: &PhysicalParams, point: &MomentumPoint, xi: Rapidity) -> f64 {
    let e = rest_energy(params, point.q);
    e * xi.cosh + point.along_boost() * xi.sinh
}

/// Normalization `K = 1 / sqrt((E + m)(E' + m))` of the Wigner rotation.
pub fn k_factor(params: &PhysicalParams, point: &MomentumPoint, xi: Rapidity) -> f64 {
    let m = params.mass;
    let e = rest_energy(params, point.q);
    let e_boost = boosted_energy(params, point, xi);
    1.0 / ((e + m) * (e_boost + m)).sqrt()
}

/// Wigner rotation for a boost of rapidity `xi` along +x acting on a particle
/// with rest-frame momentum `point`.
pub fn wigner_matrix(params: &PhysicalParams, point: &MomentumPoint, xi: Rapidity) -> WignerMatrix {
    let m = params.mass;
    let e = rest_energy(params, point.q);
    let e_boost = e * xi.cosh + point.along_boost() * xi.sinh;
    let k = 1.0 / ((e + m) * (e_boost + m)).sqrt();
    let (ch, sh) = xi.half_angle();
    let transverse = sh * point.q * point.sin_theta;
    let diag = ch * (e + m);
    let phase = Complex64::new(transverse * point.cos_phi, transverse * point.sin_phi);
    let flip = k * sh * point.q * point.cos_theta;
    WignerMatrix {
        u11: (Complex64::from(diag) + phase) * k,
        u12: Complex64::from(-flip),
        u21: Complex64::from(flip),
        u22: (Complex64::from(diag) + phase.conj()) * k,
    }
}

/// Largest spin-flip amplitude reachable in the infinite-rapidity limit for a
/// momentum of magnitude `q`, `(q/m) / (1 + sqrt(1 + (q/m)^2))`.
pub fn saturation_limit(q_over_m: f64) -> f64 {
    q_over_m / (1.0 + q_over_m.hypot(1.0))
}
