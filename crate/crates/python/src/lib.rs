use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use kangulate::io::{emit_svg, internal_faces_sorted, SvgStyle};
use kangulate::oracle::{brute_force_kangulation, SearchBudget};
use kangulate::verify::verify_edges;
use kangulate::{KangulateError, KangulateOutcome, Point, PointSet};

fn point_set(points: Vec<(i64, i64)>) -> PyResult<PointSet> {
    PointSet::new(points.into_iter().map(Point::from).collect()).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn check_k(k: usize) -> PyResult<()> {
    if k < 3 {
        return Err(PyValueError::new_err(format!("k must be at least 3, got {k}")));
    }
    Ok(())
}

/// Smallest number of interior points a k-angulation of n points needs.
#[pyfunction]
fn required_j(n: usize, k: usize) -> PyResult<usize> {
    check_k(k)?;
    Ok(kangulate::required_j(n, k))
}

/// Sign of the turn a -> b -> c: 1 counterclockwise, -1 clockwise, 0 collinear.
#[pyfunction]
fn orientation(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i8 {
    match kangulate::geom::orientation(a.into(), b.into(), c.into()) {
        kangulate::Orientation::CounterClockwise => 1,
        kangulate::Orientation::Clockwise => -1,
        kangulate::Orientation::Collinear => 0,
    }
}

/// Builds a k-angulation. Returns a dict with `feasible` and, when one
/// exists, `edges`, `internal_faces`, `outer_face` and `case`.
#[pyfunction]
#[pyo3(name = "kangulate")]
fn angulate<'py>(py: Python<'py>, points: Vec<(i64, i64)>, k: usize) -> PyResult<Bound<'py, PyDict>> {
    check_k(k)?;
    let ps = point_set(points)?;
    let outcome = kangulate::kangulate(&ps, k).map_err(|e| match e {
        KangulateError::Geom(_) | KangulateError::InvalidK(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    })?;
    let d = PyDict::new(py);
    d.set_item("k", k)?;
    d.set_item("n", ps.len())?;
    d.set_item("interior", ps.interior().len())?;
    match outcome {
        KangulateOutcome::Found(kg) => {
            let g = &kg.graph;
            d.set_item("feasible", true)?;
            d.set_item("j", kg.trace.j)?;
            d.set_item("case", kg.trace.case.to_string())?;
            d.set_item("edges", g.edges_iter().collect::<Vec<_>>())?;
            d.set_item("internal_faces", internal_faces_sorted(g))?;
            d.set_item("outer_face", g.outer_cycle())?;
            d.set_item("svg", emit_svg(g, SvgStyle::default()))?;
        }
        KangulateOutcome::Infeasible { j, .. } => {
            d.set_item("feasible", false)?;
            d.set_item("j", j)?;
        }
    }
    Ok(d)
}

/// Independent check of an edge list. Maps each check name to a bool, plus
/// `overall`.
#[pyfunction]
fn verify<'py>(
    py: Python<'py>,
    points: Vec<(i64, i64)>,
    edges: Vec<(usize, usize)>,
    k: usize,
) -> PyResult<Bound<'py, PyDict>> {
    check_k(k)?;
    let ps = point_set(points)?;
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= ps.len() || b >= ps.len()) {
        return Err(PyValueError::new_err(format!("edge ({a}, {b}) out of range")));
    }
    let report = verify_edges(&ps, &edges, ps.points(), k);
    let d = PyDict::new(py);
    for c in &report.checks {
        d.set_item(c.name.as_str(), c.passed)?;
    }
    d.set_item("overall", report.overall)?;
    Ok(d)
}

/// Exhaustive search on at most eight points: "found", "not_found" or
/// "exhausted".
#[pyfunction]
fn brute_force(points: Vec<(i64, i64)>, k: usize) -> PyResult<&'static str> {
    check_k(k)?;
    let ps = point_set(points)?;
    Ok(brute_force_kangulation(&ps, k, SearchBudget::default()).label())
}

#[pymodule]
fn kangulate_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(required_j, m)?)?;
    m.add_function(wrap_pyfunction!(orientation, m)?)?;
    m.add_function(wrap_pyfunction!(angulate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    Ok(())
}
