//! Python bindings: `import pydensity`.
//!
//! Densities come back as `fractions.Fraction`, codes as Python ints, and
//! binary strings as `str` of `0`/`1`. Library errors raise `ValueError`.

use std::collections::{BTreeMap, BTreeSet};

use intrinsic_density::constructions as cons;
use intrinsic_density::samplers::coding;
use intrinsic_density::weakrep;
use intrinsic_density::{BitString, Density, Nat};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

const DEFAULT_HORIZON: u64 = intrinsic_density::density::DEFAULT_HORIZON;

fn err(e: intrinsic_density::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, d: &Density) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((*d.numer(), *d.denom()))
}

fn bits(s: &str) -> PyResult<BitString> {
    s.parse().map_err(err)
}

#[pyclass(name = "SetStream", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySetStream(intrinsic_density::SetStream);

#[pymethods]
impl PySetStream {
    /// `empty | full | evens | odds | seed:<u64>[:p=a/b] | list:.. | file:<path>`
    #[staticmethod]
    #[pyo3(signature = (spec, horizon = DEFAULT_HORIZON))]
    fn parse(spec: &str, horizon: u64) -> PyResult<Self> {
        intrinsic_density::SetStream::parse(spec, horizon)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (seed, num = 1, den = 2, horizon = DEFAULT_HORIZON))]
    fn seeded(seed: u64, num: u64, den: u64, horizon: u64) -> PyResult<Self> {
        intrinsic_density::SetStream::seeded(seed, num, den, horizon)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (members, horizon = DEFAULT_HORIZON))]
    fn from_members(members: Vec<u64>, horizon: u64) -> Self {
        Self(intrinsic_density::SetStream::from_members(members, horizon))
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label().to_string()
    }

    #[getter]
    fn horizon(&self) -> Nat {
        self.0.horizon().clone()
    }

    fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    fn __contains__(&self, x: Nat) -> PyResult<bool> {
        self.0.contains(&x).map_err(err)
    }

    fn bit(&self, i: u64) -> PyResult<bool> {
        self.0.bit(i).map_err(err)
    }

    fn prefix(&self, n: u64) -> PyResult<String> {
        self.0.prefix(n).map(|b| b.to_string()).map_err(err)
    }

    fn members_below(&self, n: u64) -> PyResult<Vec<u64>> {
        self.0.members_below(n).map_err(err)
    }

    /// Every member, for streams backed by a finite list; `None` otherwise.
    fn finite_members(&self) -> Option<Vec<Nat>> {
        self.0.finite_members().map(|m| m.into_iter().collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "SetStream({:?}, horizon={})",
            self.0.label(),
            self.0.horizon()
        )
    }
}

#[pyclass(name = "Sampler", frozen)]
struct PySampler(intrinsic_density::Sampler);

#[pymethods]
impl PySampler {
    /// `identity | double | shift:<k> | swapblocks:<k> | table:<path>`
    #[staticmethod]
    fn parse(spec: &str) -> PyResult<Self> {
        intrinsic_density::Sampler::parse(spec)
            .map(Self)
            .map_err(err)
    }

    /// A value table; a bijection of `[0, len)` is extended by the identity.
    #[staticmethod]
    fn table(values: Vec<Nat>) -> Self {
        Self(intrinsic_density::Sampler::table(values))
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label().to_string()
    }

    #[getter]
    fn kind(&self) -> String {
        format!("{:?}", self.0.kind()).to_lowercase()
    }

    #[getter]
    fn domain_bound(&self) -> u64 {
        self.0.domain_bound()
    }

    fn __call__(&self, x: u64) -> PyResult<Nat> {
        self.0.eval(x).map_err(err)
    }

    fn values(&self, n: u64) -> PyResult<Vec<Nat>> {
        self.0.values(n).map_err(err)
    }

    fn image_interval(&self, n: u64) -> PyResult<Vec<Nat>> {
        Ok(self.0.image_interval(n).map_err(err)?.into_iter().collect())
    }

    fn __repr__(&self) -> String {
        format!("Sampler({:?})", self.0.label())
    }
}

#[pyfunction]
fn partial_density<'py>(py: Python<'py>, s: &PySetStream, n: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        &intrinsic_density::partial_density(&s.0, n).map_err(err)?,
    )
}

#[pyfunction]
fn density_profile<'py>(
    py: Python<'py>,
    s: &PySetStream,
    checkpoints: Vec<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = intrinsic_density::density_profile(&s.0, &checkpoints).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("checkpoints", &p.checkpoints)?;
    let values = p
        .values
        .iter()
        .map(|v| fraction(py, v))
        .collect::<PyResult<Vec<_>>>()?;
    out.set_item("values", values)?;
    out.set_item("observed_sup", fraction(py, &p.observed_sup)?)?;
    out.set_item("observed_inf", fraction(py, &p.observed_inf)?)?;
    Ok(out)
}

#[pyfunction]
fn principal_function(s: &PySetStream, j: u64) -> PyResult<u64> {
    intrinsic_density::principal_function(&s.0, j).map_err(err)
}

#[pyfunction]
fn preimage_partial_density<'py>(
    py: Python<'py>,
    s: &PySetStream,
    sampler: &PySampler,
    n: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let d =
        intrinsic_density::samplers::preimage_partial_density(&s.0, &sampler.0, n).map_err(err)?;
    fraction(py, &d)
}

#[pyfunction]
fn cantor_pair(x: Nat, y: Nat) -> Nat {
    coding::cantor_pair(x, y)
}

#[pyfunction]
fn cantor_unpair(z: Nat) -> (Nat, Nat) {
    coding::cantor_unpair(&z)
}

#[pyfunction]
fn string_code(sigma: &str) -> PyResult<Nat> {
    Ok(coding::string_code(&bits(sigma)?))
}

#[pyfunction]
fn string_decode(code: Nat) -> String {
    coding::string_decode(&code).to_string()
}

#[pyfunction]
fn prefix_free_code(n: u64) -> PyResult<String> {
    weakrep::prefix_free_code(n)
        .map(|b| b.to_string())
        .map_err(err)
}

#[pyfunction]
fn fixed_width_code(n: u64, x: u64) -> PyResult<String> {
    weakrep::fixed_width_code(n, x)
        .map(|b| b.to_string())
        .map_err(err)
}

#[pyfunction]
fn prefix_set(a: &PySetStream) -> PyResult<PySetStream> {
    cons::prefix_set(&a.0).map(PySetStream).map_err(err)
}

#[pyfunction]
fn prefix_code_sampler(a: &PySetStream) -> PyResult<PySampler> {
    cons::prefix_code_sampler(&a.0).map(PySampler).map_err(err)
}

#[pyfunction]
fn introreduce(codes: Vec<Nat>) -> PyResult<String> {
    let codes: BTreeSet<Nat> = codes.into_iter().collect();
    cons::introreduce(&codes)
        .map(|b| b.to_string())
        .map_err(err)
}

/// Returns `(level_widths, candidates)`.
#[pyfunction]
#[pyo3(signature = (sampler, q, depth, full_height = 0))]
fn tree_decode(
    sampler: &PySampler,
    q: u64,
    depth: u64,
    full_height: u64,
) -> PyResult<(Vec<usize>, Vec<String>)> {
    let tree = cons::build_prefix_tree(&sampler.0, q, full_height, depth).map_err(err)?;
    let widths = tree.levels.iter().map(Vec::len).collect();
    let candidates = cons::extract_candidates(&tree)
        .iter()
        .map(ToString::to_string)
        .collect();
    Ok((widths, candidates))
}

/// The table of `g` on `[0, n_max!)`. Without `guesses` the true trace of `a` is used.
#[pyfunction]
#[pyo3(signature = (a, n_max, guesses = None))]
fn wct_injection(
    a: &PySetStream,
    n_max: u64,
    guesses: Option<BTreeMap<u64, String>>,
) -> PyResult<PySampler> {
    let h: BTreeMap<u64, BitString> = match guesses {
        Some(g) => g
            .into_iter()
            .map(|(n, s)| Ok((n, bits(&s)?)))
            .collect::<PyResult<_>>()?,
        None => (1..=n_max)
            .map(|n| cons::wct_target(&a.0, n).map(|t| (n, t)))
            .collect::<Result<_, _>>()
            .map_err(err)?,
    };
    let g = cons::build_wct_injection(&h, n_max).map_err(err)?;
    Ok(PySampler(g.sampler()))
}

#[pyfunction]
fn graph_set(f: Vec<u64>) -> PyResult<PySetStream> {
    cons::graph_set(&f, f.len() as u64)
        .map(PySetStream)
        .map_err(err)
}

#[pyfunction]
fn trace_from_sampler(sampler: &PySampler, q: u64, n: u64) -> PyResult<Vec<Nat>> {
    Ok(cons::trace_from_sampler(&sampler.0, q, n)
        .map_err(err)?
        .into_iter()
        .collect())
}

#[pyfunction]
fn hit_indices(sampler: &PySampler, f: Vec<u64>, q: u64) -> PyResult<Vec<u64>> {
    Ok(cons::hit_indices(&sampler.0, &f, q, f.len() as u64)
        .map_err(err)?
        .into_iter()
        .collect())
}

#[pyfunction]
fn psi_eval(members: Vec<Nat>, x: u64, budget: u64) -> Option<u64> {
    weakrep::psi_eval(&members.into_iter().collect(), x, budget)
}

/// Returns `(h(n), captured)`.
#[pyfunction]
fn dominating_adversary(f: Vec<Nat>, sampler: &PySampler, q: u64, n: u64) -> PyResult<(Nat, bool)> {
    let p = weakrep::dominating_adversary(&f, &sampler.0, q, n).map_err(err)?;
    Ok((p.bound, p.captured))
}

/// Maps each condition name to `None` (passed) or a witness description.
#[pyfunction]
fn validate_weakrep(
    triples: Vec<(u64, u64, u64)>,
    horizon: u64,
) -> BTreeMap<String, Option<String>> {
    let t = weakrep::WeakRepTable::new(
        triples
            .into_iter()
            .map(|(x, y, z)| weakrep::Triple::new(x, y, z)),
        horizon,
    );
    t.validate()
        .results
        .iter()
        .map(|r| {
            (
                r.bullet.to_string(),
                r.witness.as_ref().map(ToString::to_string),
            )
        })
        .collect()
}

#[pymodule]
fn pydensity(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySetStream>()?;
    m.add_class::<PySampler>()?;
    m.add_function(wrap_pyfunction!(partial_density, m)?)?;
    m.add_function(wrap_pyfunction!(density_profile, m)?)?;
    m.add_function(wrap_pyfunction!(principal_function, m)?)?;
    m.add_function(wrap_pyfunction!(preimage_partial_density, m)?)?;
    m.add_function(wrap_pyfunction!(cantor_pair, m)?)?;
    m.add_function(wrap_pyfunction!(cantor_unpair, m)?)?;
    m.add_function(wrap_pyfunction!(string_code, m)?)?;
    m.add_function(wrap_pyfunction!(string_decode, m)?)?;
    m.add_function(wrap_pyfunction!(prefix_free_code, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_width_code, m)?)?;
    m.add_function(wrap_pyfunction!(prefix_set, m)?)?;
    m.add_function(wrap_pyfunction!(prefix_code_sampler, m)?)?;
    m.add_function(wrap_pyfunction!(introreduce, m)?)?;
    m.add_function(wrap_pyfunction!(tree_decode, m)?)?;
    m.add_function(wrap_pyfunction!(wct_injection, m)?)?;
    m.add_function(wrap_pyfunction!(graph_set, m)?)?;
    m.add_function(wrap_pyfunction!(trace_from_sampler, m)?)?;
    m.add_function(wrap_pyfunction!(hit_indices, m)?)?;
    m.add_function(wrap_pyfunction!(psi_eval, m)?)?;
    m.add_function(wrap_pyfunction!(dominating_adversary, m)?)?;
    m.add_function(wrap_pyfunction!(validate_weakrep, m)?)?;
    Ok(())
}
