//! Python bindings: wavepacket kinematics, fidelity, entanglement measures and sweeps.

use boostclock::kinematics::{self, saturation_limit};
use boostclock::measures::{self, Fidelity, RenyiOrder};
use boostclock::sweep::{self, MeasureKind, SweepConfig};
use boostclock::{quadrature, wavepacket};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: boostclock::Error) -> PyErr {
    match e {
        boostclock::Error::InvalidParameter { .. } | boostclock::Error::Config(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn rapidity(xi: f64) -> PyResult<kinematics::Rapidity> {
    kinematics::Rapidity::new(xi).map_err(py_err)
}

fn renyi_order(n: f64) -> PyResult<RenyiOrder> {
    RenyiOrder::new(n).map_err(py_err)
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PhysicalParams(kinematics::PhysicalParams);

#[pymethods]
impl PhysicalParams {
    #[new]
    fn new(mass: f64, spread_w: f64) -> PyResult<Self> {
        kinematics::PhysicalParams::new(mass, spread_w)
            .map(Self)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_ratio(w_over_m: f64) -> PyResult<Self> {
        kinematics::PhysicalParams::from_ratio(w_over_m)
            .map(Self)
            .map_err(py_err)
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.0.mass()
    }

    #[getter]
    fn spread_w(&self) -> f64 {
        self.0.spread_w()
    }

    #[getter]
    fn w_over_m(&self) -> f64 {
        self.0.w_over_m()
    }

    fn __repr__(&self) -> String {
        format!(
            "PhysicalParams(mass={}, spread_w={})",
            self.0.mass(),
            self.0.spread_w()
        )
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone, Copy)]
struct MomentumPoint(kinematics::MomentumPoint);

#[pymethods]
impl MomentumPoint {
    #[new]
    fn new(q: f64, theta: f64, phi: f64) -> PyResult<Self> {
        kinematics::MomentumPoint::new(q, theta, phi)
            .map(Self)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_cartesian(px: f64, py: f64, pz: f64) -> PyResult<Self> {
        kinematics::MomentumPoint::from_cartesian(px, py, pz)
            .map(Self)
            .map_err(py_err)
    }

    #[getter]
    fn q(&self) -> f64 {
        self.0.q()
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta()
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.0.phi()
    }

    fn cartesian(&self) -> (f64, f64, f64) {
        let [x, y, z] = self.0.cartesian();
        (x, y, z)
    }
}

/// 2x2 Wigner rotation acting on the spin.
#[pyclass(frozen)]
struct WignerMatrix(kinematics::WignerMatrix);

#[pymethods]
impl WignerMatrix {
    /// Entries as nested lists of complex numbers.
    fn to_list(&self) -> Vec<Vec<Complex64>> {
        let u = &self.0;
        vec![vec![u.u11, u.u12], vec![u.u21, u.u22]]
    }

    fn determinant(&self) -> Complex64 {
        self.0.determinant()
    }

    fn unitarity_defect(&self) -> f64 {
        self.0.unitarity_defect()
    }

    fn apply(&self, up: Complex64, down: Complex64) -> (Complex64, Complex64) {
        self.0.apply(up, down)
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone, Copy)]
struct QuadratureSpec(quadrature::QuadratureSpec);

#[pymethods]
impl QuadratureSpec {
    #[new]
    #[pyo3(signature = (n_q=64, n_theta=128, n_phi=128, q_max_multiple=8.0, target_rel_tol=1e-6))]
    fn new(
        n_q: usize,
        n_theta: usize,
        n_phi: usize,
        q_max_multiple: f64,
        target_rel_tol: f64,
    ) -> PyResult<Self> {
        let spec = quadrature::QuadratureSpec {
            n_q,
            n_theta,
            n_phi,
            q_max_multiple,
            target_rel_tol,
        };
        spec.validate().map_err(py_err)?;
        Ok(Self(spec))
    }

    fn refined(&self) -> Self {
        Self(self.0.refined())
    }

    fn __repr__(&self) -> String {
        let s = &self.0;
        format!(
            "QuadratureSpec(n_q={}, n_theta={}, n_phi={}, q_max_multiple={}, target_rel_tol={})",
            s.n_q, s.n_theta, s.n_phi, s.q_max_multiple, s.target_rel_tol
        )
    }
}

fn quad_or_default(quad: Option<QuadratureSpec>) -> quadrature::QuadratureSpec {
    quad.map(|q| q.0).unwrap_or_default()
}

fn packet(w_over_m: f64) -> PyResult<wavepacket::WavepacketSpec> {
    wavepacket::WavepacketSpec::from_ratio(w_over_m).map_err(py_err)
}

#[pyfunction]
fn wigner_matrix(params: PhysicalParams, point: MomentumPoint, xi: f64) -> PyResult<WignerMatrix> {
    Ok(WignerMatrix(kinematics::wigner_matrix(
        &params.0,
        &point.0,
        rapidity(xi)?,
    )))
}

#[pyfunction]
fn boosted_energy(params: PhysicalParams, point: MomentumPoint, xi: f64) -> PyResult<f64> {
    Ok(kinematics::boosted_energy(
        &params.0,
        &point.0,
        rapidity(xi)?,
    ))
}

#[pyfunction(name = "saturation_limit")]
fn py_saturation_limit(q_over_m: f64) -> f64 {
    saturation_limit(q_over_m)
}

#[pyfunction]
fn gaussian_amplitude(w_over_m: f64, q: f64) -> PyResult<f64> {
    Ok(wavepacket::gaussian_amplitude(&packet(w_over_m)?, q))
}

/// `|<psi0|psi1>|` for the wavepacket with the given `w/m` boosted by `xi`.
#[pyfunction]
#[pyo3(signature = (w_over_m, xi, quad=None))]
fn fidelity(py: Python<'_>, w_over_m: f64, xi: f64, quad: Option<QuadratureSpec>) -> PyResult<f64> {
    let spec = packet(w_over_m)?;
    let xi = rapidity(xi)?;
    let quad = quad_or_default(quad);
    py.detach(|| measures::fidelity(&spec, xi, &quad))
        .map(Fidelity::value)
        .map_err(py_err)
}

/// Monte-Carlo estimate of the fidelity as `(value, std_error)`.
#[pyfunction]
#[pyo3(signature = (w_over_m, xi, n_samples=1_000_000, seed=0x5EED))]
fn fidelity_oracle(
    py: Python<'_>,
    w_over_m: f64,
    xi: f64,
    n_samples: u64,
    seed: u64,
) -> PyResult<(f64, f64)> {
    let spec = packet(w_over_m)?;
    let xi = rapidity(xi)?;
    let oracle = quadrature::OracleSpec::new(n_samples, seed).map_err(py_err)?;
    let mc = py
        .detach(|| measures::overlap_oracle(&spec, xi, &oracle))
        .map_err(py_err)?;
    Ok((mc.estimate.norm(), mc.std_error))
}

/// Bloch `n_z` of the boosted spin and the normalization it was divided by.
#[pyfunction]
#[pyo3(signature = (w_over_m, xi, quad=None))]
fn bloch_z(
    py: Python<'_>,
    w_over_m: f64,
    xi: f64,
    quad: Option<QuadratureSpec>,
) -> PyResult<(f64, f64)> {
    let spec = packet(w_over_m)?;
    let xi = rapidity(xi)?;
    let quad = quad_or_default(quad);
    let b = py
        .detach(|| measures::bloch_z(&spec, xi, &quad))
        .map_err(py_err)?;
    Ok((b.vector.n_z, b.normalization))
}

/// All time-system measures implied by a fidelity, as a dict.
///
/// Rényi entries are keyed `renyi_<n>`; pass `float("inf")` for the min-entropy.
#[pyfunction]
#[pyo3(signature = (fidelity, renyi_orders=vec![0.0, 1.0, 2.0, f64::INFINITY], n_z=None))]
fn measures_from_fidelity(
    py: Python<'_>,
    fidelity: f64,
    renyi_orders: Vec<f64>,
    n_z: Option<f64>,
) -> PyResult<Py<pyo3::types::PyDict>> {
    use pyo3::types::PyDict;
    let f = Fidelity::new(fidelity).map_err(py_err)?;
    let orders = renyi_orders
        .into_iter()
        .map(renyi_order)
        .collect::<PyResult<Vec<_>>>()?;
    let bloch = n_z.map(|n_z| measures::BlochVector { n_z });
    let set = measures::MeasureSet::new(f, &orders, bloch.as_ref()).map_err(py_err)?;

    let d = PyDict::new(py);
    d.set_item("fidelity", set.fidelity.value())?;
    d.set_item("entropy", set.entropy_bits)?;
    d.set_item("mutual_info", set.mutual_info_bits)?;
    d.set_item("quadratic", set.quadratic)?;
    d.set_item("log_negativity", set.log_negativity_bits)?;
    for (n, h) in set.renyi {
        d.set_item(format!("renyi_{n}"), h)?;
    }
    if let Some(s) = set.spin_momentum_entropy_bits {
        d.set_item("spin_momentum", s)?;
    }
    Ok(d.unbind())
}

#[pyfunction]
fn renyi_entropy(fidelity: f64, order: f64) -> PyResult<f64> {
    let w = measures::schmidt_weights(Fidelity::new(fidelity).map_err(py_err)?);
    measures::renyi_entropy(&w, renyi_order(order)?).map_err(py_err)
}

/// Result of a sweep: rows of `(xi, w_over_m, measure, renyi_order, value,
/// oracle_value, oracle_std_error)`.
#[pyclass(frozen)]
struct SweepResult(sweep::SweepResult);

type PyRow = (
    f64,
    f64,
    &'static str,
    Option<f64>,
    f64,
    Option<f64>,
    Option<f64>,
);

#[pymethods]
impl SweepResult {
    fn __len__(&self) -> usize {
        self.0.rows.len()
    }

    fn rows(&self) -> Vec<PyRow> {
        self.0
            .rows
            .iter()
            .map(|r| {
                (
                    r.xi,
                    r.w_over_m,
                    r.measure.name(),
                    r.renyi_order.map(RenyiOrder::as_f64),
                    r.value,
                    r.oracle_value,
                    r.oracle_std_error,
                )
            })
            .collect()
    }

    /// `(xi, value)` pairs of one curve.
    #[pyo3(signature = (measure, w_over_m, renyi_order=None))]
    fn series(
        &self,
        measure: &str,
        w_over_m: f64,
        renyi_order: Option<f64>,
    ) -> PyResult<Vec<(f64, f64)>> {
        let m: MeasureKind = measure.parse().map_err(py_err)?;
        let n = renyi_order.map(self::renyi_order).transpose()?;
        Ok(self.0.series(m, w_over_m, n))
    }

    fn to_csv(&self) -> String {
        sweep::to_csv_string(&self.0)
    }

    fn to_svg(&self, measure: &str) -> PyResult<String> {
        let m: MeasureKind = measure.parse().map_err(py_err)?;
        sweep::svg_string(&self.0, m).map_err(py_err)
    }
}

/// Run a sweep. Keyword arguments use the CLI/config keys, e.g.
/// `run_sweep(xi_max="2", xi_steps=5, w_over_m="0.1,1")`.
#[pyfunction]
#[pyo3(signature = (config=None, **settings))]
fn run_sweep(
    py: Python<'_>,
    config: Option<std::path::PathBuf>,
    settings: Option<&Bound<'_, pyo3::types::PyDict>>,
) -> PyResult<SweepResult> {
    let mut cfg = SweepConfig::new();
    if let Some(path) = config {
        cfg.load_file(path).map_err(py_err)?;
    }
    if let Some(kw) = settings {
        for (k, v) in kw.iter() {
            let key: String = k.extract()?;
            let value = v.str()?.to_string();
            cfg.set(&key, &value).map_err(py_err)?;
        }
    }
    let spec = cfg.build().map_err(py_err)?;
    let result = py.detach(|| sweep::run_sweep(&spec)).map_err(py_err)?;
    Ok(SweepResult(result))
}

#[pymodule]
fn boostclock_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PhysicalParams>()?;
    m.add_class::<MomentumPoint>()?;
    m.add_class::<WignerMatrix>()?;
    m.add_class::<QuadratureSpec>()?;
    m.add_class::<SweepResult>()?;
    m.add_function(wrap_pyfunction!(wigner_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(boosted_energy, m)?)?;
    m.add_function(wrap_pyfunction!(py_saturation_limit, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_amplitude, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(bloch_z, m)?)?;
    m.add_function(wrap_pyfunction!(measures_from_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(renyi_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    Ok(())
}
