//! Python module `steinernet`: parse, solve, analyze, reduce and generate
//! directed Steiner network instances.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use steinernet::dsn::{minimize, validate};
use steinernet::format::{emit_dsn, parse_dsn, parse_psi, DsnFile};
use steinernet::generate::{framed_ladder_instance, grid_instance, ladder_instance, random_instance};
use steinernet::reduction::{decide_psi, reduce};
use steinernet::solvers::{solve_bnb, solve_dst, solve_exhaustive, SolveResult};
use steinernet::structure::{certify_treewidth_bound, LadderSpec};
use steinernet::{Error, SolutionSubgraph};

create_exception!(steinernet, SteinernetError, PyException);
create_exception!(steinernet, ParseError, SteinernetError);
create_exception!(steinernet, CapacityError, SteinernetError);
create_exception!(steinernet, DomainError, SteinernetError);

fn to_py(err: Error) -> PyErr {
    let msg = err.to_string();
    match err {
        Error::Parse { .. } => ParseError::new_err(msg),
        Error::Capacity { .. } => CapacityError::new_err(msg),
        Error::Domain(_) => DomainError::new_err(msg),
        _ => SteinernetError::new_err(msg),
    }
}

fn json_to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| SteinernetError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A DSN instance. Vertex ids are 0-based.
#[pyclass(name = "Instance", frozen, module = "steinernet")]
struct PyInstance {
    file: DsnFile,
}

fn result_dict<'py>(py: Python<'py>, res: &SolveResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("engine", res.engine.to_string())?;
    d.set_item("feasible", res.is_feasible())?;
    d.set_item("cost", res.cost().map(|c| c.to_string()))?;
    d.set_item("nodes", res.nodes)?;
    d.set_item(
        "arcs",
        res.solution().map(|s| s.arcs().into_iter().collect::<Vec<_>>()),
    )?;
    Ok(d)
}

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            file: parse_dsn(text).map_err(to_py)?,
        })
    }

    /// Canonical file text.
    fn emit(&self) -> String {
        emit_dsn(&self.file)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.file.instance.host().vertex_count()
    }

    #[getter]
    fn arc_count(&self) -> usize {
        self.file.instance.host().arc_count()
    }

    #[getter]
    fn requests(&self) -> Vec<(u32, u32)> {
        self.file.instance.requests().iter().copied().collect()
    }

    #[getter]
    fn terminals(&self) -> Vec<u32> {
        self.file.instance.terminals().iter().copied().collect()
    }

    fn meta(&self, key: &str) -> Option<String> {
        self.file.meta(key).map(str::to_string)
    }

    /// Solves exactly with `"bnb"`, `"exhaustive"` or `"dst"`.
    #[pyo3(signature = (engine = "bnb"))]
    fn solve<'py>(&self, py: Python<'py>, engine: &str) -> PyResult<Bound<'py, PyDict>> {
        let inst = &self.file.instance;
        let res = match engine {
            "bnb" => solve_bnb(inst),
            "exhaustive" => solve_exhaustive(inst),
            "dst" => solve_dst(inst),
            other => return Err(SteinernetError::new_err(format!("unknown engine {other:?}"))),
        }
        .map_err(to_py)?;
        result_dict(py, &res)
    }

    /// Runs the structural certification on an optimum (`solution="optimal"`)
    /// or on the minimized host (`solution="whole"`). Returns `None` when the
    /// instance is infeasible.
    #[pyo3(signature = (genus = None, solution = "optimal"))]
    fn analyze<'py>(&self, py: Python<'py>, genus: Option<u32>, solution: &str) -> PyResult<Option<Bound<'py, PyAny>>> {
        let inst = &self.file.instance;
        let genus = genus.or(self.file.genus()).unwrap_or(0);
        let sol = match solution {
            "optimal" => solve_bnb(inst).map_err(to_py)?.solution().cloned(),
            "whole" => {
                let whole = SolutionSubgraph::whole(inst.host());
                validate(inst, &whole).map_err(to_py)?.is_valid().then_some(whole)
            }
            other => return Err(SteinernetError::new_err(format!("unknown solution {other:?}"))),
        };
        let Some(sol) = sol else {
            return Ok(None);
        };
        let sol = minimize(inst, &sol).map_err(to_py)?;
        let cert = certify_treewidth_bound(inst, &sol, genus).map_err(to_py)?;
        json_to_py(py, &cert).map(Some)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(vertices={}, arcs={}, requests={})",
            self.vertex_count(),
            self.arc_count(),
            self.file.instance.request_count()
        )
    }
}

#[pyfunction]
fn parse(text: &str) -> PyResult<PyInstance> {
    PyInstance::parse(text)
}

#[pyfunction]
fn random(n: usize, m: usize, q: usize, p: usize, seed: u64) -> PyResult<PyInstance> {
    let inst = random_instance(n, m, q, p, seed).map_err(to_py)?;
    Ok(PyInstance {
        file: DsnFile::new(inst).with_meta("seed", seed),
    })
}

#[pyfunction]
#[pyo3(signature = (w, h, q = 3, seed = 0))]
fn grid(w: usize, h: usize, q: usize, seed: u64) -> PyResult<PyInstance> {
    let inst = grid_instance(w, h, q, seed).map_err(to_py)?;
    Ok(PyInstance {
        file: DsnFile::new(inst).with_meta("seed", seed).with_meta("genus", 0),
    })
}

/// `G_{n,I}` with 1-based identified positions.
#[pyfunction]
#[pyo3(signature = (n, identified = Vec::new(), framed = false))]
fn ladder(n: usize, identified: Vec<usize>, framed: bool) -> PyResult<PyInstance> {
    let spec = LadderSpec::new(n, identified).map_err(to_py)?;
    let inst = if framed { framed_ladder_instance(&spec) } else { ladder_instance(&spec) }.map_err(to_py)?;
    Ok(PyInstance {
        file: DsnFile::new(inst).with_meta("genus", 0),
    })
}

/// Builds the DSN instance of a PSI text; returns `(instance, threshold)`.
#[pyfunction]
fn reduce_psi(text: &str) -> PyResult<(PyInstance, usize)> {
    let psi = parse_psi(text).map_err(to_py)?;
    let out = reduce(&psi).map_err(to_py)?;
    let file = DsnFile::new(out.dsn).with_meta("threshold", out.threshold);
    Ok((PyInstance { file }, out.threshold))
}

/// Answers a PSI text through the reduction.
#[pyfunction]
fn decide<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let psi = parse_psi(text).map_err(to_py)?;
    let decision = decide_psi(&psi).map_err(to_py)?;
    json_to_py(py, &decision.summary())
}

#[pymodule(name = "steinernet")]
pub fn steinernet_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("SteinernetError", py.get_type::<SteinernetError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("CapacityError", py.get_type::<CapacityError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(random, m)?)?;
    m.add_function(wrap_pyfunction!(grid, m)?)?;
    m.add_function(wrap_pyfunction!(ladder, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_psi, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
