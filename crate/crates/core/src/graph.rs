//! Spatial graph model.
//!
//! A [`Network`] is built from a binary adjacency matrix plus one planar
//! coordinate per vertex. Every edge is a straight chord between its endpoint
//! coordinates and carries its Euclidean length as the canonical weight.
//!
//! Adjacency conventions per [`GraphKind`]:
//!
//! * `Undirected`: the matrix must be symmetric; each pair `a_ij = a_ji = 1`
//!   becomes one undirected edge.
//! * `Directed`: every nonzero `a_ij` is an arc `i -> j`.
//! * `Mixed`: symmetric nonzero pairs are one undirected edge, asymmetric
//!   nonzero entries are arcs.
//!
//! Edges are stored in row-major order of the adjacency matrix.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use ndarray::{Array2, ArrayView2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::events::EventTable;

/// Default maximal event-to-edge distance, in coordinate units.
pub const DEFAULT_EVENT_CORRECTION: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    #[default]
    Undirected,
    Directed,
    Mixed,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Undirected => "undirected",
            GraphKind::Directed => "directed",
            GraphKind::Mixed => "mixed",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "undirected" => Ok(GraphKind::Undirected),
            "directed" => Ok(GraphKind::Directed),
            "mixed" => Ok(GraphKind::Mixed),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub directed: bool,
    pub length: f64,
}

impl Edge {
    pub fn touches(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }

    /// Whether the edge can be walked from `from` to `to`.
    pub fn traversable(&self, from: usize, to: usize) -> bool {
        (self.tail == from && self.head == to) || (!self.directed && self.tail == to && self.head == from)
    }
}

/// A vertex addressed either by its id or by its 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexRef {
    Name(String),
    Index(usize),
}

impl From<&str> for VertexRef {
    fn from(s: &str) -> Self {
        VertexRef::Name(s.to_string())
    }
}

impl From<String> for VertexRef {
    fn from(s: String) -> Self {
        VertexRef::Name(s)
    }
}

impl From<&String> for VertexRef {
    fn from(s: &String) -> Self {
        VertexRef::Name(s.clone())
    }
}

impl From<usize> for VertexRef {
    fn from(i: usize) -> Self {
        VertexRef::Index(i)
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRef::Name(s) => write!(f, "{s:?}"),
            VertexRef::Index(i) => write!(f, "#{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Degree {
    /// All incident edges regardless of type.
    pub total: usize,
    pub undirected: usize,
    pub in_degree: usize,
    pub out_degree: usize,
}

/// Immutable spatial graph.
#[derive(Debug, Clone)]
pub struct Network {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    kind: GraphKind,
    event_correction: f64,
    lookup: HashMap<String, usize>,
    incident: Vec<Vec<usize>>,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.event_correction.to_bits() == other.event_correction.to_bits()
            && self.vertices == other.vertices
            && self.edges == other.edges
    }
}

pub(crate) fn euclidean(a: [f64; 2], b: [f64; 2]) -> f64 {
    (b[0] - a[0]).hypot(b[1] - a[1])
}

/// Builds networks from adjacency matrices or edge lists.
#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    kind: GraphKind,
    event_correction: f64,
    names: Option<Vec<String>>,
    coerce_binary: bool,
}

impl Default for NetworkBuilder {
    fn default() -> Self {
        Self::new(GraphKind::Undirected)
    }
}

impl NetworkBuilder {
    pub fn new(kind: GraphKind) -> Self {
        Self {
            kind,
            event_correction: DEFAULT_EVENT_CORRECTION,
            names: None,
            coerce_binary: false,
        }
    }

    pub fn event_correction(mut self, tau: f64) -> Self {
        self.event_correction = tau;
        self
    }

    /// Vertex ids in matrix row order. Defaults to `V1..Vn`.
    pub fn names(mut self, names: Vec<String>) -> Self {
        self.names = Some(names);
        self
    }

    /// Map every nonzero adjacency entry to 1 instead of rejecting it.
    pub fn coerce_binary(mut self, yes: bool) -> Self {
        self.coerce_binary = yes;
        self
    }

    pub fn from_adjacency(&self, adjacency: ArrayView2<'_, f64>, coords: &[[f64; 2]]) -> Result<Network> {
        let (rows, cols) = adjacency.dim();
        if rows != cols {
            return Err(Error::NonSquareAdjacency { rows, cols });
        }
        let n = rows;
        if coords.len() != n {
            return Err(Error::DimensionMismatch { matrix: n, coords: coords.len() });
        }
        let mut binary = Array2::<bool>::from_elem((n, n), false);
        for ((i, j), &value) in adjacency.indexed_iter() {
            binary[[i, j]] = if value == 0.0 {
                false
            } else if value == 1.0 || (self.coerce_binary && value.is_finite()) {
                true
            } else {
                return Err(Error::NonBinaryEntry { row: i + 1, col: j + 1, value });
            };
        }
        let mut edges = Vec::new();
        match self.kind {
            GraphKind::Undirected => {
                for i in 0..n {
                    for j in 0..n {
                        if binary[[i, j]] != binary[[j, i]] {
                            let (row, col) = (i.min(j) + 1, i.max(j) + 1);
                            return Err(Error::AsymmetricUndirected { row, col });
                        }
                        if j >= i && binary[[i, j]] {
                            edges.push((i, j, false));
                        }
                    }
                }
            }
            GraphKind::Directed => {
                for ((i, j), &set) in binary.indexed_iter() {
                    if set {
                        edges.push((i, j, true));
                    }
                }
            }
            GraphKind::Mixed => {
                for ((i, j), &set) in binary.indexed_iter() {
                    if !set {
                        continue;
                    }
                    if binary[[j, i]] {
                        if i <= j {
                            edges.push((i, j, false));
                        }
                    } else {
                        edges.push((i, j, true));
                    }
                }
            }
        }
        let vertices = self.vertices(coords)?;
        Network::from_parts(vertices, edges, self.kind, self.event_correction)
    }

    /// Build from `(tail, head, directed)` triples over 0-based vertex indices.
    ///
    /// Rows are folded into an adjacency matrix first: a row with
    /// `directed = Some(false)` sets both `a_ij` and `a_ji`, `Some(true)` sets
    /// only `a_ij`, and `None` follows the graph kind (undirected for
    /// `Undirected`, an arc otherwise).
    pub fn from_edge_list(&self, coords: &[[f64; 2]], rows: &[(usize, usize, Option<bool>)]) -> Result<Network> {
        let n = coords.len();
        let mut adjacency = Array2::<f64>::zeros((n, n));
        for &(tail, head, directed) in rows {
            for v in [tail, head] {
                if v >= n {
                    return Err(Error::UnknownVertex(format!("#{}", v + 1)));
                }
            }
            let undirected = match directed {
                Some(d) => !d,
                None => self.kind == GraphKind::Undirected,
            };
            adjacency[[tail, head]] = 1.0;
            if undirected {
                adjacency[[head, tail]] = 1.0;
            }
        }
        self.from_adjacency(adjacency.view(), coords)
    }

    fn vertices(&self, coords: &[[f64; 2]]) -> Result<Vec<Vertex>> {
        if let Some(names) = &self.names {
            if names.len() != coords.len() {
                return Err(Error::DimensionMismatch { matrix: coords.len(), coords: names.len() });
            }
        }
        Ok(coords
            .iter()
            .enumerate()
            .map(|(i, c)| Vertex {
                id: match &self.names {
                    Some(names) => names[i].clone(),
                    None => format!("V{}", i + 1),
                },
                x: c[0],
                y: c[1],
            })
            .collect())
    }
}

/// Build a network from a binary adjacency matrix and `n` coordinates.
pub fn build_network(
    adjacency: ArrayView2<'_, f64>,
    coords: &[[f64; 2]],
    kind: GraphKind,
    event_correction: f64,
) -> Result<Network> {
    NetworkBuilder::new(kind)
        .event_correction(event_correction)
        .from_adjacency(adjacency, coords)
}

impl Network {
    /// Validated constructor from vertices and `(tail, head, directed)` edges.
    /// Edge lengths are computed from the vertex coordinates.
    pub fn from_parts(
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize, bool)>,
        kind: GraphKind,
        event_correction: f64,
    ) -> Result<Network> {
        if !event_correction.is_finite() || event_correction < 0.0 {
            return Err(Error::InvalidEventCorrection(event_correction));
        }
        let mut lookup = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !v.x.is_finite() || !v.y.is_finite() {
                return Err(Error::NonFiniteCoordinate { what: format!("vertex {}", v.id) });
            }
            if lookup.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        let n = vertices.len();
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        let mut built = Vec::with_capacity(edges.len());
        let mut incident = vec![Vec::new(); n];
        for (tail, head, directed) in edges {
            for v in [tail, head] {
                if v >= n {
                    return Err(Error::UnknownVertex(format!("#{}", v + 1)));
                }
            }
            match (kind, directed) {
                (GraphKind::Undirected, true) => {
                    return Err(Error::KindMismatch { kind: "undirected", what: "an arc".into() })
                }
                (GraphKind::Directed, false) => {
                    return Err(Error::KindMismatch { kind: "directed", what: "an undirected edge".into() })
                }
                _ => {}
            }
            let key = if directed { (tail, head, true) } else { (tail.min(head), tail.max(head), false) };
            let clash = !seen.insert(key)
                || (directed && seen.contains(&(tail.min(head), tail.max(head), false)))
                || (!directed && (seen.contains(&(tail, head, true)) || seen.contains(&(head, tail, true))));
            if clash {
                return Err(Error::DuplicateEdge(vertices[tail].id.clone(), vertices[head].id.clone()));
            }
            let length = euclidean([vertices[tail].x, vertices[tail].y], [vertices[head].x, vertices[head].y]);
            if length <= 0.0 {
                return Err(Error::ZeroLengthEdge {
                    tail: vertices[tail].id.clone(),
                    head: vertices[head].id.clone(),
                });
            }
            let idx = built.len();
            incident[tail].push(idx);
            if head != tail {
                incident[head].push(idx);
            }
            built.push(Edge { tail, head, directed, length });
        }
        Ok(Network {
            vertices,
            edges: built,
            kind,
            event_correction,
            lookup,
            incident,
        })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn event_correction(&self) -> f64 {
        self.event_correction
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn coord(&self, i: usize) -> [f64; 2] {
        let v = &self.vertices[i];
        [v.x, v.y]
    }

    /// Edge indices incident to vertex `v`, in edge order.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.lookup.get(id).copied()
    }

    /// Resolve a vertex reference to its 0-based index.
    pub fn resolve(&self, vertex: &VertexRef) -> Result<usize> {
        match vertex {
            VertexRef::Name(name) => self
                .index_of(name)
                .ok_or_else(|| Error::UnknownVertex(name.clone())),
            VertexRef::Index(i) if (1..=self.vertex_count()).contains(i) => Ok(i - 1),
            VertexRef::Index(_) => Err(Error::UnknownVertex(vertex.to_string())),
        }
    }

    /// Resolve a textual token: a vertex id first, then a 1-based index.
    pub fn resolve_token(&self, token: &str) -> Result<usize> {
        let token = token.trim();
        if let Some(i) = self.index_of(token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(i) => self.resolve(&VertexRef::Index(i)),
            Err(_) => Err(Error::UnknownVertex(token.to_string())),
        }
    }

    /// Index of the edge walkable from `from` to `to`, if any.
    pub fn find_edge(&self, from: usize, to: usize) -> Option<usize> {
        self.incident[from]
            .iter()
            .copied()
            .find(|&e| self.edges[e].traversable(from, to))
    }

    /// Binary adjacency matrix under the conventions of the graph kind.
    pub fn adjacency_matrix(&self) -> Array2<f64> {
        let n = self.vertex_count();
        let mut a = Array2::zeros((n, n));
        for e in &self.edges {
            a[[e.tail, e.head]] = 1.0;
            if !e.directed {
                a[[e.head, e.tail]] = 1.0;
            }
        }
        a
    }

    pub fn coords(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(|v| [v.x, v.y]).collect()
    }

    /// Pairwise Euclidean distances between vertex coordinates.
    pub fn node_distance_matrix(&self) -> Array2<f64> {
        let n = self.vertex_count();
        let mut d = Array2::zeros((n, n));
        for i in 0..n {
            for j in (i + 1)..n {
                let dist = euclidean(self.coord(i), self.coord(j));
                d[[i, j]] = dist;
                d[[j, i]] = dist;
            }
        }
        d
    }

    pub fn degree(&self, vertex: &VertexRef) -> Result<Degree> {
        let v = self.resolve(vertex)?;
        Ok(self.degree_of(v))
    }

    pub fn degree_of(&self, v: usize) -> Degree {
        let mut d = Degree::default();
        for &e in &self.incident[v] {
            let edge = &self.edges[e];
            d.total += 1;
            if !edge.directed {
                d.undirected += 1;
            } else if edge.tail == v {
                d.out_degree += 1;
            } else {
                d.in_degree += 1;
            }
        }
        d
    }

    /// Neighbours over the undirected skeleton, ascending and deduplicated.
    pub fn skeleton_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.incident[v].iter().map(|&e| self.edges[e].other(v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Sub-network induced by the vertices inside the closed rectangle, and
    /// the events inside it. Kind and event correction are retained.
    pub fn apply_window(
        &self,
        events: &EventTable,
        x_range: (f64, f64),
        y_range: (f64, f64),
    ) -> Result<(Network, EventTable)> {
        for (lo, hi) in [x_range, y_range] {
            if !(lo <= hi) {
                return Err(Error::InvalidArgument(format!("window range ({lo}, {hi}) has lo > hi")));
            }
        }
        let inside = |x: f64, y: f64| x >= x_range.0 && x <= x_range.1 && y >= y_range.0 && y <= y_range.1;
        let mut remap = vec![None; self.vertex_count()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if inside(v.x, v.y) {
                remap[i] = Some(vertices.len());
                vertices.push(v.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| Some((remap[e.tail]?, remap[e.head]?, e.directed)))
            .collect();
        let net = Network::from_parts(vertices, edges, self.kind, self.event_correction)?;
        let events = events.filter(|ev| inside(ev.x, ev.y));
        Ok((net, events))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn table1_coords() -> Vec<[f64; 2]> {
        vec![[0.0, 0.0], [1.0, 1.0], [2.0, 0.0], [3.0, 0.0], [4.0, 1.0], [4.0, -1.0]]
    }

    fn edge_set(net: &Network) -> Vec<(usize, usize, bool)> {
        net.edges().iter().map(|e| (e.tail + 1, e.head + 1, e.directed)).collect()
    }

    #[test]
    fn table1_undirected() {
        let a = array![
            [0., 1., 1., 0., 0., 0.],
            [1., 0., 1., 0., 0., 0.],
            [1., 1., 0., 1., 0., 0.],
            [0., 0., 1., 0., 1., 1.],
            [0., 0., 0., 1., 0., 0.],
            [0., 0., 0., 1., 0., 0.]
        ];
        let net = build_network(a.view(), &table1_coords(), GraphKind::Undirected, 5.0).unwrap();
        assert_eq!(net.vertex_count(), 6);
        assert_eq!(
            edge_set(&net),
            vec![(1, 2, false), (1, 3, false), (2, 3, false), (3, 4, false), (4, 5, false), (4, 6, false)]
        );
        assert_eq!(net.vertex(0).id, "V1");
    }

    #[test]
    fn table1_directed_degrees() {
        let a = array![
            [0., 1., 0., 0., 0., 0.],
            [0., 0., 1., 0., 0., 0.],
            [1., 0., 0., 0., 0., 0.],
            [0., 0., 1., 0., 0., 1.],
            [0., 0., 0., 1., 0., 0.],
            [0., 0., 0., 0., 0., 0.]
        ];
        let net = build_network(a.view(), &table1_coords(), GraphKind::Directed, 5.0).unwrap();
        assert_eq!(net.edge_count(), 6);
        let d = net.degree(&"V4".into()).unwrap();
        assert_eq!((d.out_degree, d.in_degree, d.total), (2, 1, 3));
    }

    #[test]
    fn table1_mixed() {
        let a = array![
            [0., 1., 0., 0., 0., 0.],
            [0., 0., 1., 0., 0., 0.],
            [1., 0., 0., 1., 0., 0.],
            [0., 0., 1., 0., 0., 1.],
            [0., 0., 0., 1., 0., 0.],
            [0., 0., 0., 1., 0., 0.]
        ];
        let net = build_network(a.view(), &table1_coords(), GraphKind::Mixed, 5.0).unwrap();
        let mut arcs: Vec<_> = edge_set(&net).into_iter().filter(|e| e.2).map(|e| (e.0, e.1)).collect();
        let mut lines: Vec<_> = edge_set(&net).into_iter().filter(|e| !e.2).map(|e| (e.0, e.1)).collect();
        arcs.sort();
        lines.sort();
        assert_eq!(arcs, vec![(1, 2), (2, 3), (3, 1), (5, 4)]);
        assert_eq!(lines, vec![(3, 4), (4, 6)]);
    }

    #[test]
    fn empty_adjacency_gives_isolated_vertices() {
        let net = build_network(Array2::zeros((2, 2)).view(), &[[0.0, 0.0], [1.0, 0.0]], GraphKind::Undirected, 5.0)
            .unwrap();
        assert_eq!((net.vertex_count(), net.edge_count()), (2, 0));
        assert_eq!(net.degree_of(0).total, 0);
    }

    #[test]
    fn rejects_bad_matrices() {
        let coords = [[0.0, 0.0], [1.0, 0.0]];
        let err = build_network(Array2::zeros((2, 3)).view(), &coords, GraphKind::Undirected, 5.0).unwrap_err();
        assert!(matches!(err, Error::NonSquareAdjacency { .. }));
        let err = build_network(Array2::zeros((3, 3)).view(), &coords, GraphKind::Undirected, 5.0).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        let err = build_network(array![[0., 2.], [2., 0.]].view(), &coords, GraphKind::Undirected, 5.0).unwrap_err();
        assert!(matches!(err, Error::NonBinaryEntry { row: 1, col: 2, .. }));
        let err = build_network(array![[0., 1.], [0., 0.]].view(), &coords, GraphKind::Undirected, 5.0).unwrap_err();
        assert!(matches!(err, Error::AsymmetricUndirected { .. }));
        let err = build_network(
            array![[0., 1.], [1., 0.]].view(),
            &[[1.0, 1.0], [1.0, 1.0]],
            GraphKind::Undirected,
            5.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ZeroLengthEdge { .. }));
    }

    #[test]
    fn coercion_flag_binarizes() {
        let net = NetworkBuilder::new(GraphKind::Undirected)
            .coerce_binary(true)
            .from_adjacency(array![[0., 3.5], [3.5, 0.]].view(), &[[0.0, 0.0], [1.0, 0.0]])
            .unwrap();
        assert_eq!(net.edge_count(), 1);
    }

    #[test]
    fn distance_matrix() {
        let net = build_network(Array2::zeros((2, 2)).view(), &[[0.0, 0.0], [3.0, 4.0]], GraphKind::Undirected, 5.0)
            .unwrap();
        assert_eq!(net.node_distance_matrix(), array![[0.0, 5.0], [5.0, 0.0]]);
        let single = build_network(Array2::zeros((1, 1)).view(), &[[2.0, 2.0]], GraphKind::Undirected, 5.0).unwrap();
        assert_eq!(single.node_distance_matrix(), array![[0.0]]);
        let tri = build_network(
            Array2::zeros((3, 3)).view(),
            &[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
            GraphKind::Undirected,
            5.0,
        )
        .unwrap();
        let d = tri.node_distance_matrix();
        assert_eq!(d[[0, 1]], 1.0);
        assert_eq!(d[[0, 2]], 1.0);
        assert_eq!(d[[1, 2]], 2f64.sqrt());
    }

    #[test]
    fn resolve_by_name_and_index() {
        let net = build_network(Array2::zeros((3, 3)).view(), &[[0., 0.], [1., 0.], [2., 0.]], GraphKind::Undirected, 5.0)
            .unwrap();
        assert_eq!(net.resolve(&"V2".into()).unwrap(), 1);
        assert_eq!(net.resolve(&VertexRef::Index(3)).unwrap(), 2);
        assert_eq!(net.resolve_token("2").unwrap(), 1);
        assert!(net.resolve(&VertexRef::Index(0)).is_err());
        assert!(net.resolve(&"V9".into()).is_err());
        assert!(net.degree(&"nope".into()).is_err());
    }

    #[test]
    fn window_edge_cases() {
        let coords = [[0., 0.], [1., 0.], [5., 5.]];
        let a = array![[0., 1., 1.], [1., 0., 0.], [1., 0., 0.]];
        let net = build_network(a.view(), &coords, GraphKind::Undirected, 5.0).unwrap();
        let events = EventTable::from_coords(&[[0.5, 0.0], [4.0, 4.0]]);
        let (sub, ev) = net.apply_window(&events, (0.0, 1.0), (0.0, 0.0)).unwrap();
        assert_eq!((sub.vertex_count(), sub.edge_count(), ev.len()), (2, 1, 1));
        assert_eq!(sub.vertex(1).id, "V2");
        let (sub, ev) = net.apply_window(&events, (10.0, 11.0), (10.0, 11.0)).unwrap();
        assert_eq!((sub.vertex_count(), sub.edge_count(), ev.len()), (0, 0, 0));
        assert!(net.apply_window(&events, (1.0, 0.0), (0.0, 1.0)).is_err());
    }
}
