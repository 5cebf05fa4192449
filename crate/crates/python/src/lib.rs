//! Python bindings: Pauli operators, codes and the synthesis pipeline.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use qcenc::code::{parse_code, validate_code};
use qcenc::report::{run_pipeline, PipelineOptions};
use qcenc::synth::{build_commutativity_matrix, minimal_memory as min_mem};
use qcenc::{ConvolutionalCode, PauliOperator};

create_exception!(qcenc_py, QcencError, PyException);

fn err(e: qcenc::Error) -> PyErr {
    QcencError::new_err(e.to_string())
}

#[pyclass(name = "Pauli", frozen, eq, hash)]
#[derive(PartialEq, Eq, Hash)]
struct PyPauli(PauliOperator);

#[pymethods]
impl PyPauli {
    #[new]
    fn new(s: &str) -> PyResult<Self> {
        s.parse().map(PyPauli).map_err(err)
    }

    #[getter]
    fn width(&self) -> usize {
        self.0.width()
    }

    fn weight(&self) -> usize {
        self.0.weight()
    }

    fn commutes(&self, other: &PyPauli) -> PyResult<bool> {
        self.0.symplectic_product(&other.0).map(|b| !b).map_err(err)
    }

    fn __mul__(&self, other: &PyPauli) -> PyResult<PyPauli> {
        self.0.multiply(&other.0).map(PyPauli).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Pauli('{}')", self.0)
    }
}

#[pyclass(name = "Code", frozen)]
struct PyCode(ConvolutionalCode);

#[pymethods]
impl PyCode {
    /// Parses the `n=`/`k=`/`h ...` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_code(text).map(PyCode).map_err(err)
    }

    #[staticmethod]
    fn from_generators(n: usize, k: usize, generators: Vec<String>) -> PyResult<Self> {
        let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
        ConvolutionalCode::from_strs(n, k, &gens)
            .map(PyCode)
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.0.generators().iter().map(|g| g.to_string()).collect()
    }

    /// Violations as `(i, i', t)` tuples; empty for a valid code.
    fn validate(&self) -> Vec<(usize, usize, usize)> {
        validate_code(&self.0)
            .into_iter()
            .map(|v| (v.i, v.i_prime, v.t))
            .collect()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(n={}, k={}, generators={:?})",
            self.0.n(),
            self.0.k(),
            self.generators()
        )
    }
}

#[pyfunction]
fn commutativity_matrix(code: &PyCode) -> PyResult<Vec<Vec<u8>>> {
    Ok(build_commutativity_matrix(&code.0)
        .map_err(err)?
        .matrix
        .to_entries())
}

#[pyfunction]
fn minimal_memory(code: &PyCode) -> PyResult<usize> {
    min_mem(&build_commutativity_matrix(&code.0).map_err(err)?).map_err(err)
}

#[pyfunction]
fn shorten(code: &PyCode) -> PyResult<PyCode> {
    Ok(PyCode(
        qcenc::shorten::shorten(&code.0).map_err(err)?.output_code,
    ))
}

/// Runs the full pipeline and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (code, seed=None, skip_shorten=false, max_memory=qcenc::analysis::DEFAULT_MEMORY_BOUND))]
fn synthesize(
    code: &PyCode,
    seed: Option<u64>,
    skip_shorten: bool,
    max_memory: usize,
) -> PyResult<String> {
    let opts = PipelineOptions {
        seed,
        skip_shorten,
        max_memory,
        timing: false,
    };
    Ok(run_pipeline(&code.0, &opts).map_err(err)?.to_json())
}

#[pymodule]
fn qcenc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPauli>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(commutativity_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_memory, m)?)?;
    m.add_function(wrap_pyfunction!(shorten, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add("QcencError", m.py().get_type::<QcencError>())?;
    Ok(())
}
