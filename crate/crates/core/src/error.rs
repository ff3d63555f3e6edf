use std::path::PathBuf;

use crate::kinematics::MomentumPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("integrand is not finite at q = {}, theta = {}, phi = {}", .point.q(), .point.theta(), .point.phi())]
    NonFiniteIntegrand { point: MomentumPoint },

    #[error("overlap integral has imaginary part {imag:e} against real part {real:e}; the integrand is not phi-symmetric")]
    SymmetryViolation { real: f64, imag: f64 },

    #[error("fidelity {0} lies outside [0, 1]")]
    FidelityOutOfRange(f64),

    #[error("boosted state normalization integral is {0}, expected 1")]
    NormalizationFailure(f64),

    #[error("measure `{0}` is not present in the sweep result")]
    MissingMeasure(String),

    #[error("config: {0}")]
    Config(String),

    #[error("at grid point xi = {xi}, w/m = {w_over_m}: {source}")]
    AtGridPoint {
        xi: f64,
        w_over_m: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}
