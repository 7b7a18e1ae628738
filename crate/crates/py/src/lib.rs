//! Python bindings: `pyquantvol.Polytope` plus the free functions for
//! projective-space counts, Riemann-Roch, the volume bound, `m0` and
//! thresholds of local divisors. Exact rationals cross the boundary as
//! `fractions.Fraction`.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use quantvol::basisdiv::{self, LocalBasisDivisor, Threshold};
use quantvol::hilbert::{self, ehrhart_fit};
use quantvol::lattice::{self, EnumerationConfig, DEFAULT_POINT_BUDGET};
use quantvol::{jets, LatticePolytope};

fn value_error(e: quantvol::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, value: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((value.numer().clone(), value.denom().clone()))
}

/// Accepts `int`, `Fraction`, or anything else with integer `numerator`
/// and `denominator` attributes.
fn ratio(value: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    let numer: BigInt = value.getattr("numerator")?.extract()?;
    let denom: BigInt = value.getattr("denominator")?.extract()?;
    if denom == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

fn config(point_budget: Option<u64>) -> EnumerationConfig {
    EnumerationConfig {
        point_budget: point_budget.unwrap_or(DEFAULT_POINT_BUDGET),
    }
}

/// Full-dimensional lattice polytope, read as the anticanonical polytope
/// of a toric variety.
#[pyclass(
    name = "Polytope",
    module = "pyquantvol",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyPolytope {
    inner: LatticePolytope,
}

#[pymethods]
impl PyPolytope {
    /// Convex hull of integer points, all of the same length.
    #[new]
    fn new(points: Vec<Vec<i64>>) -> PyResult<Self> {
        let dim = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| PyValueError::new_err("no points"))?;
        let inner = LatticePolytope::from_points(dim, &points).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn projective_space(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be positive"));
        }
        Ok(Self {
            inner: LatticePolytope::projective_space(n),
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn vertices(&self) -> Vec<Vec<i64>> {
        self.inner.vertices().to_vec()
    }

    fn is_reflexive(&self) -> bool {
        self.inner.is_reflexive()
    }

    fn is_smooth(&self) -> PyResult<bool> {
        self.inner.is_smooth().map_err(value_error)
    }

    fn smooth_vertices(&self) -> Vec<usize> {
        self.inner.smooth_vertices()
    }

    fn is_projective_space(&self) -> bool {
        lattice::is_projective_space(&self.inner)
    }

    fn normalized_volume(&self) -> PyResult<u64> {
        lattice::normalized_volume(&self.inner).map_err(value_error)
    }

    fn dual(&self) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.dual().map_err(value_error)?,
        })
    }

    /// Number of lattice points of `m` times the polytope.
    #[pyo3(signature = (m, point_budget = None))]
    fn count_lattice_points(
        &self,
        py: Python<'_>,
        m: u64,
        point_budget: Option<u64>,
    ) -> PyResult<u64> {
        let cfg = config(point_budget);
        py.detach(|| lattice::count_lattice_points(&self.inner, m, &cfg))
            .map_err(value_error)
    }

    #[pyo3(signature = (m, point_budget = None))]
    fn count_interior_points(
        &self,
        py: Python<'_>,
        m: u64,
        point_budget: Option<u64>,
    ) -> PyResult<u64> {
        let cfg = config(point_budget);
        py.detach(|| lattice::count_interior_points(&self.inner, m, &cfg))
            .map_err(value_error)
    }

    /// Coefficients `a_0..a_n` of the Ehrhart polynomial, fitted from
    /// counts at `m = 0..=n+1`.
    fn ehrhart_coefficients<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let n = self.inner.dim();
        let cfg = EnumerationConfig::default();
        let samples = (0..=n as u64 + 1)
            .map(|m| lattice::count_lattice_points(&self.inner, m, &cfg).map(|c| (m, c)))
            .collect::<quantvol::Result<Vec<_>>>()
            .map_err(value_error)?;
        let fit = ehrhart_fit(&samples, n).map_err(value_error)?;
        fit.coeffs.iter().map(|c| fraction(py, c)).collect()
    }

    /// Fixed-point delta at the smooth vertex with index `vertex`.
    #[pyo3(signature = (m, vertex, point_budget = None))]
    fn delta<'py>(
        &self,
        py: Python<'py>,
        m: u64,
        vertex: usize,
        point_budget: Option<u64>,
    ) -> PyResult<Bound<'py, PyAny>> {
        if vertex >= self.inner.num_vertices() {
            return Err(PyValueError::new_err("vertex index out of range"));
        }
        let cfg = config(point_budget);
        let delta = py
            .detach(|| basisdiv::delta_mp_fixed_point(&self.inner, m, vertex, &cfg))
            .map_err(value_error)?;
        fraction(py, &delta)
    }

    /// `(vertex, delta, separates_jets)` for every smooth vertex.
    #[pyo3(signature = (m, point_budget = None))]
    fn vertex_deltas<'py>(
        &self,
        py: Python<'py>,
        m: u64,
        point_budget: Option<u64>,
    ) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        let cfg = config(point_budget);
        let deltas = py
            .detach(|| basisdiv::vertex_deltas(&self.inner, m, &cfg))
            .map_err(value_error)?;
        deltas
            .iter()
            .map(|d| {
                PyTuple::new(
                    py,
                    [
                        d.vertex.clone().into_pyobject(py)?.into_any(),
                        fraction(py, &d.delta)?,
                        d.separates_jets.into_pyobject(py)?.to_owned().into_any(),
                    ],
                )
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Polytope({:?})", self.inner.vertices())
    }
}

/// `h^0(P^n, -mK) = C(n + m(n+1), n)`.
#[pyfunction]
fn h0_pn(n: u64, m: u64) -> num_bigint::BigUint {
    hilbert::h0_pn(n, m)
}

#[pyfunction]
fn hrr_dim2(vol: u64, m: u64) -> BigInt {
    hilbert::hrr_dim2(vol, m)
}

#[pyfunction]
fn hrr_dim3(vol: u64, m: u64) -> PyResult<BigInt> {
    hilbert::hrr_dim3(vol, m).map_err(value_error)
}

#[pyfunction]
fn hrr_dim4(vol: u64, c1c2: i64, m: u64) -> PyResult<BigInt> {
    hilbert::hrr_dim4(vol, c1c2, m).map_err(value_error)
}

/// `"StrictlyBelow"`, `"Equality"` or `"Violation"` against `(n+1)^n`.
#[pyfunction]
fn fujita_check(volume: u64, n: u32) -> String {
    hilbert::fujita_check(volume, n).status.to_string()
}

/// Threshold for the generic coefficient bound `a`.
#[pyfunction]
fn compute_m0(n: usize, a: &Bound<'_, PyAny>) -> PyResult<u64> {
    hilbert::compute_m0(n, &ratio(a)?).map_err(value_error)
}

/// `dim` of polynomials of degree `< j` in `n` variables.
#[pyfunction]
fn jet_dim(n: u64, j: u64) -> PyResult<num_bigint::BigUint> {
    if j == 0 {
        return Err(PyValueError::new_err("j must be positive"));
    }
    Ok(jets::jet_dim(n, j))
}

/// `min 1/a_j` of a simple-normal-crossing divisor; `None` when every
/// coefficient is zero.
#[pyfunction]
fn lct_snc<'py>(
    py: Python<'py>,
    coefficients: Vec<Bound<'py, PyAny>>,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let coeffs = coefficients
        .iter()
        .map(ratio)
        .collect::<PyResult<Vec<_>>>()?;
    let divisor = LocalBasisDivisor::from_coefficients(coeffs).map_err(value_error)?;
    match basisdiv::lct_snc(&divisor) {
        Threshold::Finite(v) => Ok(Some(fraction(py, &v)?)),
        Threshold::Infinite => Ok(None),
    }
}

#[pymodule]
fn pyquantvol(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolytope>()?;
    m.add_function(wrap_pyfunction!(h0_pn, m)?)?;
    m.add_function(wrap_pyfunction!(hrr_dim2, m)?)?;
    m.add_function(wrap_pyfunction!(hrr_dim3, m)?)?;
    m.add_function(wrap_pyfunction!(hrr_dim4, m)?)?;
    m.add_function(wrap_pyfunction!(fujita_check, m)?)?;
    m.add_function(wrap_pyfunction!(compute_m0, m)?)?;
    m.add_function(wrap_pyfunction!(jet_dim, m)?)?;
    m.add_function(wrap_pyfunction!(lct_snc, m)?)?;
    Ok(())
}
