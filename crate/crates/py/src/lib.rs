//! Python bindings: Laurent polynomials, rational functions, graded series,
//! quivers with duality, and the DT pipelines.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use odt_core::dt::{self, LieType, LoopDuality};
use odt_core::hn::{self, OrdinaryRecursion, SigmaRecursion};
use odt_core::quiver::{self as qv, QuiverFile, Stability};
use odt_core::{DimVector, GradedSeries as CoreSeries, LaurentPoly as CorePoly, RationalFunc as CoreFunc};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn dim(v: Vec<i64>) -> PyResult<DimVector> {
    DimVector::new(v).map_err(err)
}

fn frac(x: &BigRational) -> (BigInt, BigInt) {
    (x.numer().clone(), x.denom().clone())
}

/// Laurent polynomial in `v = q^{1/2}` with rational coefficients.
#[pyclass(name = "LaurentPoly", module = "odt", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyLaurentPoly(CorePoly);

#[pymethods]
impl PyLaurentPoly {
    /// From `[(exponent, coefficient)]` with integer coefficients.
    #[new]
    fn new(terms: Vec<(i64, i64)>) -> Self {
        Self(CorePoly::from_int_terms(terms))
    }

    /// `[(exponent, numerator, denominator)]`.
    fn terms(&self) -> Vec<(i64, BigInt, BigInt)> {
        self.0
            .terms()
            .map(|(e, c)| {
                let (n, d) = frac(c);
                (e, n, d)
            })
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn q_string(&self) -> String {
        self.0.to_q_string()
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly({})", self.0)
    }
}

/// Reduced quotient of Laurent polynomials.
#[pyclass(name = "RationalFunc", module = "odt", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyRationalFunc(CoreFunc);

#[pymethods]
impl PyRationalFunc {
    #[new]
    fn new(num: &PyLaurentPoly, den: &PyLaurentPoly) -> PyResult<Self> {
        CoreFunc::new(num.0.clone(), den.0.clone()).map(Self).map_err(err)
    }

    #[getter]
    fn numer(&self) -> PyLaurentPoly {
        PyLaurentPoly(self.0.numer().clone())
    }

    #[getter]
    fn denom(&self) -> PyLaurentPoly {
        PyLaurentPoly(self.0.denom().clone())
    }

    /// Exact value at `q`, as `(numerator, denominator)`; `None` at a pole.
    fn eval_q(&self, q: i64) -> Option<(BigInt, BigInt)> {
        self.0.eval_q(&BigRational::from_integer(q.into())).as_ref().map(frac)
    }

    /// The Laurent polynomial it equals, or `None`.
    fn as_poly(&self) -> Option<PyLaurentPoly> {
        self.0.polynomiality_check().ok().map(PyLaurentPoly)
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunc({})", self.0)
    }
}

/// Truncated power series with rational-function coefficients.
#[pyclass(name = "GradedSeries", module = "odt", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGradedSeries(CoreSeries);

#[pymethods]
impl PyGradedSeries {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    #[getter]
    fn trunc(&self) -> i64 {
        self.0.trunc()
    }

    fn degrees(&self) -> Vec<Vec<i64>> {
        self.0.iter().map(|(d, _)| d.entries().to_vec()).collect()
    }

    fn coeff(&self, d: Vec<i64>) -> PyResult<PyRationalFunc> {
        Ok(PyRationalFunc(self.0.coeff(&dim(d)?)))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.mul(&other.0).map(Self).map_err(err)
    }

    fn log(&self) -> PyResult<Self> {
        self.0.log().map(Self).map_err(err)
    }

    fn exp(&self) -> PyResult<Self> {
        self.0.exp().map(Self).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Signed motivic DT invariants `Omega_{(d,k)}`.
#[pyclass(name = "DTInvariant", module = "odt", frozen)]
pub struct PyDTInvariant(dt::DTInvariant);

#[pymethods]
impl PyDTInvariant {
    /// `[(d, k, Omega_{(d,k)})]`.
    fn terms(&self) -> Vec<(Vec<i64>, i64, BigInt)> {
        self.0.terms().into_iter().map(|(d, k, c)| (d.entries().to_vec(), k, c)).collect()
    }

    fn poly(&self, d: Vec<i64>) -> PyResult<PyLaurentPoly> {
        Ok(PyLaurentPoly(self.0.poly(&dim(d)?)))
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }
}

/// Orientifold invariants of a loop quiver with one duality structure.
#[pyclass(name = "OrientifoldResult", module = "odt", frozen)]
pub struct PyOrientifoldResult(dt::OrientifoldDTResult);

#[pymethods]
impl PyOrientifoldResult {
    fn degrees(&self) -> Vec<i64> {
        self.0.omega.keys().copied().collect()
    }

    fn omega(&self, e: i64) -> PyLaurentPoly {
        PyLaurentPoly(self.0.omega.get(&e).cloned().unwrap_or_default())
    }

    /// `(-v)^{-E(e)} Omega_e`, a polynomial in `q`.
    fn normalized(&self, e: i64) -> PyLaurentPoly {
        PyLaurentPoly(self.0.normalized_at(e))
    }

    fn betti(&self, e: i64) -> Vec<BigInt> {
        self.0.betti(e)
    }

    fn property_violations(&self) -> Vec<String> {
        self.0.property_violations()
    }

    fn to_json(&self, betti: bool) -> String {
        self.0.to_json(betti).to_string()
    }
}

/// Quiver with involution, signs and a stability.
#[pyclass(name = "QuiverWithDuality", module = "odt", frozen)]
pub struct PyQuiverWithDuality {
    qd: qv::QuiverWithDuality,
    theta: Stability,
}

#[pymethods]
impl PyQuiverWithDuality {
    /// Parses the quiver JSON format; the duality is validated.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let loaded = QuiverFile::parse(text).map_err(err)?;
        let theta = loaded.stability();
        let qd = loaded.duality.ok_or_else(|| PyValueError::new_err("file has no duality structure"))?;
        if let Some(v) = qd.validate().first() {
            return Err(err(v));
        }
        Ok(Self { qd, theta })
    }

    #[staticmethod]
    fn a3() -> Self {
        Self {
            qd: qv::builtin_a3(),
            theta: Stability(vec![1, 0, -1]),
        }
    }

    #[staticmethod]
    fn loop_quiver(m: usize, s: i8, tau_plus: usize, tau_minus: usize) -> PyResult<Self> {
        Ok(Self {
            qd: qv::builtin_loop(m, s, tau_plus, tau_minus).map_err(err)?,
            theta: Stability::trivial(1),
        })
    }

    #[getter]
    fn theta(&self) -> Vec<i64> {
        self.theta.0.clone()
    }

    fn with_theta(&self, theta: Vec<i64>) -> PyResult<Self> {
        let theta = Stability(theta);
        theta.check_compatible(&self.qd).map_err(err)?;
        Ok(Self {
            qd: self.qd.clone(),
            theta,
        })
    }

    fn euler_form(&self, d: Vec<i64>, e: Vec<i64>) -> PyResult<i64> {
        Ok(self.qd.euler_form(&dim(d)?, &dim(e)?))
    }

    fn sigma_euler_form(&self, d: Vec<i64>) -> PyResult<i64> {
        Ok(self.qd.sigma_euler_form(&dim(d)?))
    }

    /// `[(type, codim)]` of the sigma-HN types of weight `e`.
    fn sigma_hn_types(&self, e: Vec<i64>) -> PyResult<Vec<(String, i64)>> {
        let e = self.qd.self_dual(dim(e)?).map_err(err)?;
        let types = hn::enumerate_sigma_hn_types(&self.qd, &self.theta, &e).map_err(err)?;
        Ok(types.iter().map(|t| (t.to_string(), hn::codim_sigma(&self.qd, t))).collect())
    }

    fn semistable(&self, d: Vec<i64>) -> PyResult<PyRationalFunc> {
        let mut rec = OrdinaryRecursion::new(self.qd.quiver().clone(), self.theta.clone());
        rec.semistable(&dim(d)?).map(PyRationalFunc).map_err(err)
    }

    fn sigma_semistable(&self, e: Vec<i64>) -> PyResult<PyRationalFunc> {
        let e = self.qd.self_dual(dim(e)?).map_err(err)?;
        let mut rec = SigmaRecursion::new(self.qd.clone(), self.theta.clone()).map_err(err)?;
        rec.semistable(&e).map(PyRationalFunc).map_err(err)
    }

    /// Brute-force count over `F_p` as `(numerator, denominator)`.
    fn oracle(&self, p: u64, d: Vec<i64>) -> PyResult<(BigInt, BigInt)> {
        let r = hn::ordinary_oracle(p, self.qd.quiver(), &self.theta, &dim(d)?).map_err(err)?;
        Ok(frac(&r))
    }

    fn sigma_oracle(&self, p: u64, e: Vec<i64>) -> PyResult<(BigInt, BigInt)> {
        let e = self.qd.self_dual(dim(e)?).map_err(err)?;
        let r = hn::sigma_oracle(p, &self.qd, &self.theta, &e).map_err(err)?;
        Ok(frac(&r))
    }
}

#[pyfunction]
fn loop_stack_series(m: usize, trunc: i64) -> PyGradedSeries {
    PyGradedSeries(dt::loop_stack_series(m, trunc))
}

#[pyfunction]
fn extract_dt_invariants(series: &PyGradedSeries) -> PyResult<PyDTInvariant> {
    dt::extract_dt_invariants(&series.0).map(PyDTInvariant).map_err(err)
}

#[pyfunction]
fn rebuild_series(inv: &PyDTInvariant, trunc: i64) -> PyResult<PyGradedSeries> {
    dt::rebuild_series(&inv.0, trunc).map(PyGradedSeries).map_err(err)
}

/// Orientifold invariants of `L_m` with duality `(s; tau_plus, tau_minus)`.
#[pyfunction]
#[pyo3(signature = (s, tau_plus, tau_minus, ximax, lie_type=None))]
fn orientifold_dt(
    s: i8,
    tau_plus: usize,
    tau_minus: usize,
    ximax: i64,
    lie_type: Option<&str>,
) -> PyResult<PyOrientifoldResult> {
    let tag = lie_type.map(str::parse::<LieType>).transpose().map_err(err)?;
    let ld = LoopDuality::new(s, tau_plus, tau_minus, tag).map_err(err)?;
    dt::orientifold_pipeline(&ld, ximax).map(PyOrientifoldResult).map_err(err)
}

/// Whether the B/C duality holds for `L_m` up to `2 emax + 1`.
#[pyfunction]
fn check_bc_duality(m: usize, emax: i64) -> PyResult<bool> {
    dt::check_bc_duality(m, emax).map(|r| r.holds()).map_err(err)
}

#[pymodule]
fn odt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLaurentPoly>()?;
    m.add_class::<PyRationalFunc>()?;
    m.add_class::<PyGradedSeries>()?;
    m.add_class::<PyDTInvariant>()?;
    m.add_class::<PyOrientifoldResult>()?;
    m.add_class::<PyQuiverWithDuality>()?;
    m.add_function(wrap_pyfunction!(loop_stack_series, m)?)?;
    m.add_function(wrap_pyfunction!(extract_dt_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(rebuild_series, m)?)?;
    m.add_function(wrap_pyfunction!(orientifold_dt, m)?)?;
    m.add_function(wrap_pyfunction!(check_bc_duality, m)?)?;
    Ok(())
}
