//! Python bindings: a `Spec` class wrapping a loaded group specification,
//! plus the pattern and power-identity helpers. Python drives the same
//! exact-arithmetic pipeline as the CLI, in process.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use relinv_core::specfile::{load_spec, parse_spec, LoadedSpec};
use relinv_core::{
    certify, decompose, is_relative_invariant, main1_generators, main2_generators, reynolds,
    GeneratorSet,
};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A loaded group specification: variables, H-generators, the coset
/// representative, and the declared H-invariant basis.
#[pyclass]
struct Spec {
    inner: LoadedSpec,
}

impl Spec {
    fn parse(&self, expr: &str) -> PyResult<relinv_core::Poly> {
        relinv_core::parse_poly(expr, &self.inner.table).map_err(value_err)
    }

    fn generators(&self, method: &str) -> PyResult<GeneratorSet> {
        match method {
            "main1" => main1_generators(&self.inner.group, &self.inner.h_basis).map_err(value_err),
            "main2" => Ok(main2_generators(&self.inner.group, &self.inner.h_basis)),
            "auto" => {
                if self.inner.group.m() == 2 {
                    main1_generators(&self.inner.group, &self.inner.h_basis).map_err(value_err)
                } else {
                    Ok(main2_generators(&self.inner.group, &self.inner.h_basis))
                }
            }
            other => Err(PyValueError::new_err(format!(
                "unknown method {other:?}; expected \"auto\", \"main1\" or \"main2\""
            ))),
        }
    }
}

#[pymethods]
impl Spec {
    /// Load a spec from a JSON file path.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Spec {
            inner: load_spec(path).map_err(value_err)?,
        })
    }

    /// Parse a spec from JSON text.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Spec {
            inner: parse_spec(text).map_err(value_err)?,
        })
    }

    #[getter]
    fn m(&self) -> u64 {
        self.inner.group.m()
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        (0..self.inner.table.len())
            .map(|i| self.inner.table.name(i).to_string())
            .collect()
    }

    #[getter]
    fn h_basis(&self) -> Vec<String> {
        self.inner.h_basis.iter().map(|p| p.to_string()).collect()
    }

    /// Run the setup checks; returns {"ok", "checks", "warnings"}.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = self.inner.group.validate(&self.inner.h_basis);
        let out = PyDict::new(py);
        out.set_item("ok", report.passed())?;
        let checks: Vec<(String, bool)> = report
            .checks
            .iter()
            .map(|c| (c.description.clone(), c.passed))
            .collect();
        out.set_item("checks", checks)?;
        out.set_item("warnings", report.warnings.clone())?;
        Ok(out)
    }

    /// Apply the relative Reynolds projection R_j to an expression;
    /// returns the canonical text of the result.
    fn reynolds(&self, j: u64, expr: &str) -> PyResult<String> {
        let f = self.parse(expr)?;
        Ok(reynolds(&self.inner.group, j, &f)
            .map_err(value_err)?
            .to_string())
    }

    fn is_relative_invariant(&self, j: u64, expr: &str) -> PyResult<bool> {
        if j >= self.inner.group.m() {
            return Err(PyValueError::new_err(format!(
                "index j = {j} out of range; the group has index m = {}",
                self.inner.group.m()
            )));
        }
        Ok(is_relative_invariant(
            &self.inner.group,
            j,
            &self.parse(expr)?,
        ))
    }

    /// Split an H-invariant expression into its m relative components.
    fn decompose(&self, expr: &str) -> PyResult<Vec<String>> {
        let f = self.parse(expr)?;
        Ok(decompose(&self.inner.group, &f)
            .components()
            .iter()
            .map(|c| c.to_string())
            .collect())
    }

    /// The transferred generating set as (canonical text, provenance)
    /// pairs.
    #[pyo3(signature = (method = "auto"))]
    fn gamma_basis(&self, method: &str) -> PyResult<Vec<(String, String)>> {
        let set = self.generators(method)?;
        Ok(set
            .elements()
            .iter()
            .map(|g| (g.poly.to_string(), g.provenance.clone()))
            .collect())
    }

    /// Certify the generating set against brute-force invariants up to
    /// `degree`; returns {"pass", "rows", "witness", "report"}.
    #[pyo3(signature = (degree = 6, drop = None))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        degree: u32,
        drop: Option<Vec<String>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let mut set = self.generators("auto")?;
        for name in drop.unwrap_or_default() {
            if !set.remove_by_text(&name) {
                return Err(PyValueError::new_err(format!(
                    "drop {name:?} matched no generator"
                )));
            }
        }
        let report = certify(&self.inner.group, &set, degree).map_err(value_err)?;
        let out = PyDict::new(py);
        out.set_item("pass", report.pass)?;
        let rows: Vec<(u32, usize, usize, bool)> = report
            .rows
            .iter()
            .map(|r| (r.degree, r.dim_invariants, r.dim_span, r.ok))
            .collect();
        out.set_item("rows", rows)?;
        out.set_item(
            "witness",
            report.witness.as_ref().map(|(d, w)| (*d, w.to_string())),
        )?;
        out.set_item("report", report.to_string())?;
        Ok(out)
    }
}

/// Minimal valid exponent patterns for index `m` and `s` generators, as
/// nested lists `pattern[j-1][i-1]`.
#[pyfunction]
fn minimal_patterns(m: u64, s: usize) -> PyResult<Vec<Vec<Vec<u32>>>> {
    if m < 2 || s < 1 {
        return Err(PyValueError::new_err("need m >= 2 and s >= 1"));
    }
    Ok(relinv_core::minimal_patterns(m, s)
        .into_iter()
        .map(|p| {
            (1..=p.num_classes())
                .map(|j| (1..=p.num_generators()).map(|i| p.entry(j, i)).collect())
                .collect()
        })
        .collect())
}

/// The three power-combination polynomials in `a`, `b` for degree `t`, as
/// canonical texts `(power_sum, full_sum, difference_quotient)`.
#[pyfunction]
fn pair_power_polys(t: u32) -> (String, String, String) {
    let polys = relinv_core::pair_power_polys(t);
    (
        polys.power_sum.to_string(),
        polys.full_sum.to_string(),
        polys.difference_quotient.to_string(),
    )
}

#[pymodule]
fn relinv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Spec>()?;
    m.add_function(wrap_pyfunction!(minimal_patterns, m)?)?;
    m.add_function(wrap_pyfunction!(pair_power_polys, m)?)?;
    Ok(())
}
