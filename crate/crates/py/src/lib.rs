//! Python bindings: domains, schemes, lower bounds and certification.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use trishare_core::bound::{self, BoundSpec, OptimizeBudget, Preset, DEFAULT_SCHEDULE};
use trishare_core::certify::{self, CertifyError, SearchBudget};
use trishare_core::domain::{self, family_of_mask};
use trishare_core::info::{self, parse_pmf};
use trishare_core::scheme::{self, randomness_complexity};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn certify_error(e: CertifyError) -> PyErr {
    match e {
        CertifyError::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        other => value_error(other),
    }
}

/// A set of admissible secret triples.
#[pyclass(frozen)]
struct Domain(domain::Domain);

#[pymethods]
impl Domain {
    /// From bit strings such as `["000", "011"]`.
    #[new]
    fn new(members: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = members.iter().map(String::as_str).collect();
        domain::Domain::from_bitstrings(&refs).map(Domain).map_err(value_error)
    }

    /// From a bit mask over the cube, bit `4*x1 + 2*x2 + x3`.
    #[staticmethod]
    fn from_mask(mask: u8) -> PyResult<Self> {
        domain::Domain::from_mask(mask).map(Domain).map_err(value_error)
    }

    /// Parses the text domain format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        domain::parse_domain(text).map(Domain).map_err(value_error)
    }

    #[getter]
    fn members(&self) -> Vec<String> {
        self.0.members().iter().map(|x| self.0.format_secret(x)).collect()
    }

    #[getter]
    fn mask(&self) -> Option<u8> {
        self.0.binary_mask()
    }

    /// Smallest mask in the symmetry orbit.
    fn canonical_mask(&self) -> PyResult<u8> {
        domain::canonicalize(&self.0).map_err(value_error)
    }

    /// Family number of a binary domain.
    fn family(&self) -> PyResult<u8> {
        let mask = self.0.binary_mask().ok_or_else(|| value_error("domain is not binary"))?;
        family_of_mask(mask).map(|f| f.id).ok_or_else(|| value_error("empty domain"))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Domain({})", self.0)
    }
}

/// One symmetry orbit of binary domains.
#[pyclass(frozen, get_all)]
struct Family {
    id: u8,
    size: usize,
    representative: Vec<String>,
    rho_bits: Option<f64>,
}

#[pymethods]
impl Family {
    fn __repr__(&self) -> String {
        format!("Family(id={}, size={}, representative={:?})", self.id, self.size, self.representative)
    }
}

#[pyfunction]
fn families() -> Vec<Family> {
    domain::classify_all()
        .into_iter()
        .map(|f| Family {
            id: f.id,
            size: f.size(),
            representative: f.representative.members().iter().map(|x| f.representative.format_secret(x)).collect(),
            rho_bits: f.rho_bits,
        })
        .collect()
}

/// Outcome of exact correctness and privacy checks.
#[pyclass(frozen, get_all)]
struct Verification {
    passed: bool,
    correct: [bool; 3],
    private: [bool; 3],
    counterexample: Option<String>,
}

/// A dealer's encoding rule with its randomness distribution.
#[pyclass(frozen)]
struct Scheme(scheme::Scheme);

#[pymethods]
impl Scheme {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        scheme::parse_scheme(text).map(Scheme).map_err(value_error)
    }

    /// Published scheme `id` (1 to 5), on its own domain or a subset.
    #[staticmethod]
    #[pyo3(signature = (id, domain=None))]
    fn canonical(id: u8, domain: Option<&Domain>) -> PyResult<Self> {
        let d = match domain {
            Some(d) => d.0.clone(),
            None => scheme::validity_domain(id).map_err(value_error)?,
        };
        scheme::canonical_scheme(id, &d).map(Scheme).map_err(value_error)
    }

    /// The optimal scheme for a family's representative.
    #[staticmethod]
    fn for_family(family_id: u8) -> PyResult<Self> {
        scheme::assigned_scheme(family_id).map(|(_, s)| Scheme(s)).map_err(value_error)
    }

    #[getter]
    fn domain(&self) -> Domain {
        Domain(self.0.domain().clone())
    }

    /// log2 of the number of randomness values.
    #[getter]
    fn randomness_bits(&self) -> f64 {
        randomness_complexity(&self.0)
    }

    fn verify(&self) -> Verification {
        let r = scheme::verify(&self.0);
        Verification {
            passed: r.passed(),
            correct: r.correct,
            private: r.private,
            counterexample: r.counterexample.map(|c| c.describe(&self.0)),
        }
    }

    /// Share supports as text, one line per secret.
    fn support_structure(&self) -> PyResult<String> {
        certify::extract_structure(&self.0).map(|s| s.to_text()).map_err(certify_error)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }
}

fn parse_spec(spec: &str) -> PyResult<BoundSpec> {
    spec.parse().map_err(value_error)
}

fn distribution_preset(family_id: u8) -> PyResult<Option<bound::EpsilonFamily>> {
    match bound::preset_table2(family_id).map_err(value_error)? {
        Preset::Distributions(fam) => Ok(Some(fam)),
        Preset::Combinatorial => Ok(None),
    }
}

/// Bound value of a family's preset path at `eps`; `None` for families
/// whose bound is combinatorial.
#[pyfunction]
#[pyo3(signature = (family_id, eps=1e-6))]
fn preset_bound(family_id: u8, eps: f64) -> PyResult<Option<f64>> {
    let Some(fam) = distribution_preset(family_id)? else {
        return Ok(None);
    };
    let triple = fam.at_f64(eps).map_err(value_error)?;
    Ok(Some(bound::evaluate_bound(&fam.spec, &triple).map_err(value_error)?.value))
}

/// `(eps, value)` pairs along a family's preset path.
#[pyfunction]
#[pyo3(signature = (family_id, schedule=None))]
fn sweep(family_id: u8, schedule: Option<Vec<f64>>) -> PyResult<Vec<(f64, f64)>> {
    let fam = distribution_preset(family_id)?.ok_or_else(|| value_error("family has a combinatorial bound"))?;
    let schedule = schedule.unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
    let report = bound::epsilon_sweep(&fam, &fam.spec, &schedule).map_err(value_error)?;
    Ok(report.points.into_iter().map(|(e, v)| (e, v.value)).collect())
}

/// Best bound the optimizer finds on `domain`.
#[pyfunction]
#[pyo3(signature = (domain, spec="LB2", restarts=16, iterations=3000, seed=0))]
fn optimize(domain: &Domain, spec: &str, restarts: usize, iterations: usize, seed: u64) -> PyResult<f64> {
    let budget = OptimizeBudget { restarts, iterations, seed };
    let e = bound::optimize_bound(&domain.0, &parse_spec(spec)?, budget).map_err(value_error)?;
    Ok(e.value)
}

/// Result of a support-structure search at one cap.
#[pyclass(frozen, get_all)]
struct Feasibility {
    feasible: bool,
    cap: usize,
    nodes_explored: u64,
    witness: Option<String>,
}

/// Whether a support structure with sets of size at most `cap` exists.
/// Raises `RuntimeError` when the node budget runs out.
#[pyfunction]
#[pyo3(signature = (domain, cap, max_nodes=50_000_000, workers=1))]
fn search(py: Python<'_>, domain: &Domain, cap: usize, max_nodes: u64, workers: usize) -> PyResult<Feasibility> {
    let budget = SearchBudget { max_nodes, workers };
    let v = py.detach(|| certify::search(&domain.0, cap, budget)).map_err(certify_error)?;
    Ok(Feasibility {
        feasible: v.feasible,
        cap: v.cap,
        nodes_explored: v.nodes_explored,
        witness: v.witness.map(|w| w.to_text()),
    })
}

/// Certified lower bound on the randomness complexity, in bits.
#[pyfunction]
#[pyo3(signature = (domain, k_max=8, max_nodes=50_000_000))]
fn certified_lower_bound(py: Python<'_>, domain: &Domain, k_max: usize, max_nodes: u64) -> PyResult<f64> {
    let budget = SearchBudget { max_nodes, workers: 1 };
    let b = py.detach(|| certify::certified_lower_bound(&domain.0, k_max, budget)).map_err(certify_error)?;
    Ok(b.bits.value())
}

/// Entropy of the named axes of a pmf in the text format.
#[pyfunction]
fn entropy(pmf: &str, axes: Vec<String>) -> PyResult<f64> {
    let p = parse_pmf(pmf).map_err(value_error)?;
    let names: Vec<&str> = axes.iter().map(String::as_str).collect();
    info::entropy(&p, &p.axis_indices(&names).map_err(value_error)?).map_err(value_error)
}

/// Residual information between two named axes of a pmf in the text format.
#[pyfunction]
fn residual_information(pmf: &str, a: &str, b: &str) -> PyResult<f64> {
    let p = parse_pmf(pmf).map_err(value_error)?;
    let (a, b) = (p.axis_index(a).map_err(value_error)?, p.axis_index(b).map_err(value_error)?);
    info::residual_information(&p, &[a], &[b]).map_err(value_error)
}

#[pymodule]
fn trishare(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Domain>()?;
    m.add_class::<Family>()?;
    m.add_class::<Scheme>()?;
    m.add_class::<Verification>()?;
    m.add_class::<Feasibility>()?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(preset_bound, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(optimize, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(certified_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(residual_information, m)?)?;
    Ok(())
}
