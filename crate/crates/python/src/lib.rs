//! Python bindings: `Network` for the bare graph and `AnnotatedNetwork` for
//! a graph with events related to it. Vertices are addressed by id or by
//! 1-based position.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use netintensity::autocorr::{
    self, DependenceType, LagMode, LocalStatistic,
};
use netintensity::io::{self, EdgeSource};
use netintensity::{Event, EventTable, GraphKind, HeatSpec, Mark, NetworkBuilder, VertexRef};

fn err(e: netintensity::Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn parse<T: std::str::FromStr<Err = netintensity::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

#[derive(FromPyObject)]
enum Vref {
    Name(String),
    Index(usize),
}

impl From<Vref> for VertexRef {
    fn from(v: Vref) -> Self {
        match v {
            Vref::Name(s) => VertexRef::Name(s),
            Vref::Index(i) => VertexRef::Index(i),
        }
    }
}

#[pyclass(name = "Network", module = "netintensity_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyNetwork {
    inner: netintensity::Network,
}

#[pymethods]
impl PyNetwork {
    /// Build from a dense 0/1 adjacency matrix and one (x, y) pair per vertex.
    #[new]
    #[pyo3(signature = (adjacency, coords, kind = "undirected", tau = 5.0, names = None))]
    fn new(
        adjacency: Vec<Vec<f64>>,
        coords: Vec<(f64, f64)>,
        kind: &str,
        tau: f64,
        names: Option<Vec<String>>,
    ) -> PyResult<Self> {
        let n = adjacency.len();
        let flat: Vec<f64> = adjacency.iter().flatten().copied().collect();
        let a = ndarray::Array2::from_shape_vec((n, if n == 0 { 0 } else { flat.len() / n }), flat)
            .map_err(|_| PyValueError::new_err("adjacency rows must all have the same length"))?;
        let coords: Vec<[f64; 2]> = coords.into_iter().map(|(x, y)| [x, y]).collect();
        let mut builder = NetworkBuilder::new(parse::<GraphKind>(kind)?).event_correction(tau);
        if let Some(names) = names {
            builder = builder.names(names);
        }
        Ok(Self { inner: builder.from_adjacency(a.view(), &coords).map_err(err)? })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().as_str()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn vertex_ids(&self) -> Vec<String> {
        self.inner.vertices().iter().map(|v| v.id.clone()).collect()
    }

    /// (tail id, head id, directed, length) per edge.
    #[getter]
    fn edges(&self) -> Vec<(String, String, bool, f64)> {
        let id = |v: usize| self.inner.vertex(v).id.clone();
        self.inner.edges().iter().map(|e| (id(e.tail), id(e.head), e.directed, e.length)).collect()
    }

    /// (total, in, out, undirected) degree of a vertex.
    fn degree(&self, vertex: Vref) -> PyResult<(usize, usize, usize, usize)> {
        let d = self.inner.degree(&vertex.into()).map_err(err)?;
        Ok((d.total, d.in_degree, d.out_degree, d.undirected))
    }

    /// Snap events to edges. `marks` entries are parsed as numbers when
    /// possible and kept as category labels otherwise.
    #[pyo3(signature = (events, marks = None, levels = None))]
    fn relate(
        &self,
        events: Vec<(f64, f64)>,
        marks: Option<Vec<Option<String>>>,
        levels: Option<Vec<String>>,
    ) -> PyResult<PyAnnotated> {
        let table = event_table(events, marks, levels)?;
        Ok(PyAnnotated { inner: netintensity::relate_events_to_network(self.inner.clone(), table) })
    }

    fn __repr__(&self) -> String {
        format!("Network({}, {} vertices, {} edges)", self.kind(), self.vertex_count(), self.edge_count())
    }
}

fn event_table(
    events: Vec<(f64, f64)>,
    marks: Option<Vec<Option<String>>>,
    levels: Option<Vec<String>>,
) -> PyResult<EventTable> {
    let events: Vec<Event> = match marks {
        None => events.into_iter().map(|(x, y)| Event::new(x, y)).collect(),
        Some(marks) if marks.len() == events.len() => events
            .into_iter()
            .zip(marks)
            .map(|((x, y), m)| Event { x, y, mark: m.as_deref().and_then(Mark::parse) })
            .collect(),
        Some(marks) => {
            return Err(PyValueError::new_err(format!("{} events but {} marks", events.len(), marks.len())));
        }
    };
    Ok(EventTable::new(events).with_levels(levels.unwrap_or_default()))
}

#[pyclass(name = "AnnotatedNetwork", module = "netintensity_py")]
struct PyAnnotated {
    inner: netintensity::AnnotatedNetwork,
}

#[pymethods]
impl PyAnnotated {
    #[getter]
    fn network(&self) -> PyNetwork {
        PyNetwork { inner: self.inner.network().clone() }
    }

    #[getter]
    fn event_count(&self) -> usize {
        self.inner.events().len()
    }

    /// Indices (0-based) of events that were not assigned to any edge.
    #[getter]
    fn unassigned(&self) -> Vec<usize> {
        self.inner.assignment().unassigned.iter().map(|u| u.event).collect()
    }

    fn node_intensity(&self) -> Vec<f64> {
        self.inner.node_intensity()
    }

    fn edge_attribute_names(&self) -> Vec<String> {
        self.inner.edge_attribute_names()
    }

    fn node_attribute_names(&self) -> Vec<String> {
        self.inner.node_attribute_names()
    }

    fn edge_attribute(&self, name: &str) -> PyResult<Vec<f64>> {
        self.inner
            .edge_attribute(name)
            .ok_or_else(|| err(netintensity::Error::UnknownAttribute(name.to_string())))
    }

    fn node_attribute(&self, name: &str) -> PyResult<Vec<f64>> {
        self.inner
            .node_attribute(name)
            .ok_or_else(|| err(netintensity::Error::UnknownAttribute(name.to_string())))
    }

    /// (vertex ids, total weight, algorithm) or None when unreachable.
    #[pyo3(signature = (source, target, weight = None))]
    fn shortest_path(&self, source: Vref, target: Vref, weight: Option<&str>) -> PyResult<Option<(Vec<String>, f64, String)>> {
        let found = netintensity::shortest_path(&self.inner, &source.into(), &target.into(), weight).map_err(err)?;
        Ok(found.map(|p| {
            let ids = p.vertex_ids(self.inner.network()).into_iter().map(String::from).collect();
            (ids, p.total_weight, p.algorithm.to_string())
        }))
    }

    #[pyo3(signature = (path, weight = None))]
    fn path_total_weight(&self, path: Vec<Vref>, weight: Option<&str>) -> PyResult<f64> {
        let path: Vec<VertexRef> = path.into_iter().map(Into::into).collect();
        netintensity::path_total_weight(&self.inner, &path, weight).map_err(err)
    }

    /// Lagged global dependence of the nodewise intensity, lags 0..=lag_max.
    #[pyo3(signature = (dep = "correlation", lag_max = 5, mode = "partial"))]
    fn general_correlation(&self, dep: &str, lag_max: usize, mode: &str) -> PyResult<Vec<f64>> {
        let dep = parse::<DependenceType>(dep)?;
        let mode = match mode {
            "partial" => LagMode::Partial,
            "cumulative" => LagMode::Cumulative,
            other => return Err(PyValueError::new_err(format!("unknown lag mode {other:?}"))),
        };
        let x = self.inner.node_intensity();
        autocorr::node_general_correlation(self.inner.network(), dep, lag_max, &x, mode).map_err(err)
    }

    /// Local Moran rows (Ii, E.Ii, Var.Ii, Z.Ii, p).
    fn local_moran(&self) -> PyResult<Vec<(f64, f64, f64, f64, f64)>> {
        let x = self.inner.node_intensity();
        let rows = autocorr::local_moran(self.inner.network(), &x).map_err(err)?;
        Ok(rows.iter().map(|r| (r.ii, r.e_ii, r.var_ii, r.z_ii, r.p)).collect())
    }

    /// Compute a local statistic and store it as a node attribute.
    fn local_correlation(&mut self, stat: &str) -> PyResult<Vec<f64>> {
        autocorr::node_local_correlation(&mut self.inner, parse::<LocalStatistic>(stat)?).map_err(err)
    }

    /// Conditional permutation moments (observed, mean, variance, p) per vertex.
    #[pyo3(signature = (stat = "moran", n_sim = 1000, seed = 1))]
    fn permutation(&self, stat: &str, n_sim: usize, seed: u64) -> PyResult<Vec<(f64, f64, f64, f64)>> {
        let x = self.inner.node_intensity();
        let sims = autocorr::permutation_oracle(self.inner.network(), &x, parse(stat)?, n_sim, seed).map_err(err)?;
        Ok(sims.iter().map(|m| (m.observed, m.mean, m.variance, m.p)).collect())
    }

    /// SVG heatmap as text.
    #[pyo3(signature = (heat = "none", show_events = false, alpha = 1.0, vertices = None))]
    fn render_heatmap(&self, heat: &str, show_events: bool, alpha: f64, vertices: Option<Vec<String>>) -> PyResult<String> {
        let spec = HeatSpec { heat_type: parse(heat)?, show_events, alpha, vertices, edges: None };
        netintensity::render_heatmap(&self.inner, &spec).map_err(err)
    }

    fn render_neighborhood(&self, vertex: Vref) -> PyResult<String> {
        netintensity::render_neighborhood(&self.inner, &vertex.into()).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        io::graph_to_string(&self.inner).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: io::graph_from_str(text).map_err(err)? })
    }

    fn export_attributes(&self, vertices_path: std::path::PathBuf, edges_path: std::path::PathBuf) -> PyResult<()> {
        io::export_attributes(&self.inner, &vertices_path, &edges_path).map_err(err)
    }

    fn __repr__(&self) -> String {
        let net = self.inner.network();
        format!(
            "AnnotatedNetwork({}, {} vertices, {} edges, {} events)",
            net.kind(),
            net.vertex_count(),
            net.edge_count(),
            self.inner.events().len()
        )
    }
}

/// Read node, edge (or adjacency) and event tables and relate the events.
#[pyfunction]
#[pyo3(signature = (nodes, edges = None, adjacency = None, events = None, kind = "undirected", tau = 5.0))]
fn read_inputs(
    nodes: std::path::PathBuf,
    edges: Option<std::path::PathBuf>,
    adjacency: Option<std::path::PathBuf>,
    events: Option<std::path::PathBuf>,
    kind: &str,
    tau: f64,
) -> PyResult<PyAnnotated> {
    let source = match (&edges, &adjacency) {
        (Some(p), None) => EdgeSource::EdgeList(p),
        (None, Some(p)) => EdgeSource::Adjacency(p),
        _ => return Err(PyValueError::new_err("pass exactly one of edges= or adjacency=")),
    };
    let (net, table) = io::read_inputs(&nodes, source, events.as_deref(), parse(kind)?, tau).map_err(err)?;
    Ok(PyAnnotated { inner: netintensity::relate_events_to_network(net, table) })
}

#[pymodule]
fn netintensity_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNetwork>()?;
    m.add_class::<PyAnnotated>()?;
    m.add_function(wrap_pyfunction!(read_inputs, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
