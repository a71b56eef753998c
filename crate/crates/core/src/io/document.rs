//! JSON graph document.
//!
//! ```text
//! {
//!   "format": "netintensity-graph",
//!   "version": 1,
//!   "kind": "undirected" | "directed" | "mixed",
//!   "event_correction": <number>,
//!   "vertices": [{"id", "x", "y"}],
//!   "edges": [{"tail", "head", "directed", "length", "n_events", "intensity",
//!              "mark_mean"?, "marks": {<level>: <proportion>}, "events": [<event index>]}],
//!   "events": {"mark_name", "levels", "records": [{"x", "y", "mark"?}]},
//!   "unassigned": [{"event", "distance"}],
//!   "node_stats": {<intensity column>: [<number>]},
//!   "node_columns": {<name>: [<number> | null]}
//! }
//! ```
//!
//! Non-finite numbers are written as `null` (NaN) or the strings `"inf"` and
//! `"-inf"`. Numbers use shortest round-trip formatting, so reading a
//! document and writing it again gives the same bytes.

use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::events::{Event, EventTable};
use crate::graph::{GraphKind, Network, Vertex};
use crate::intensity::{AnnotatedNetwork, EdgeStats, NodeStats};
use crate::snap::{Assignment, Unassigned};

pub const FORMAT_NAME: &str = "netintensity-graph";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Real(f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            v if v.is_nan() => s.serialize_none(),
            f64::INFINITY => s.serialize_str("inf"),
            f64::NEG_INFINITY => s.serialize_str("-inf"),
            v => s.serialize_f64(v),
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
            Null(()),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Real(v)),
            Raw::Null(()) => Ok(Real(f64::NAN)),
            Raw::Text(t) => match t.as_str() {
                "inf" => Ok(Real(f64::INFINITY)),
                "-inf" => Ok(Real(f64::NEG_INFINITY)),
                _ => Err(serde::de::Error::custom(format!("unexpected number {t:?}"))),
            },
        }
    }
}

fn reals(v: &[f64]) -> Vec<Real> {
    v.iter().copied().map(Real).collect()
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: String,
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    tail: String,
    head: String,
    directed: bool,
    length: f64,
    n_events: usize,
    intensity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mark_mean: Option<f64>,
    #[serde(default)]
    marks: IndexMap<String, f64>,
    #[serde(default)]
    events: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct EventsDoc {
    mark_name: Option<String>,
    levels: Vec<String>,
    records: Vec<Event>,
}

#[derive(Serialize, Deserialize)]
struct UnassignedDoc {
    event: usize,
    distance: Real,
}

#[derive(Serialize, Deserialize)]
struct GraphDocument {
    format: String,
    version: u32,
    kind: GraphKind,
    event_correction: f64,
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
    events: EventsDoc,
    #[serde(default)]
    unassigned: Vec<UnassignedDoc>,
    node_stats: IndexMap<String, Vec<f64>>,
    #[serde(default)]
    node_columns: IndexMap<String, Vec<Real>>,
}

fn to_document(g: &AnnotatedNetwork) -> GraphDocument {
    let net = g.network();
    let id = |i: usize| net.vertex(i).id.clone();
    GraphDocument {
        format: FORMAT_NAME.into(),
        version: FORMAT_VERSION,
        kind: net.kind(),
        event_correction: net.event_correction(),
        vertices: net.vertices().iter().map(|v| VertexDoc { id: v.id.clone(), x: v.x, y: v.y }).collect(),
        edges: net
            .edges()
            .iter()
            .zip(g.edge_stats())
            .zip(&g.assignment().edge_events)
            .map(|((e, s), assigned)| EdgeDoc {
                tail: id(e.tail),
                head: id(e.head),
                directed: e.directed,
                length: e.length,
                n_events: s.n_events,
                intensity: s.intensity,
                mark_mean: s.mark_mean,
                marks: s.mark_proportions.clone(),
                events: assigned.clone(),
            })
            .collect(),
        events: EventsDoc {
            mark_name: g.events().mark_name().map(str::to_string),
            levels: g.events().levels().to_vec(),
            records: g.events().events().to_vec(),
        },
        unassigned: g
            .assignment()
            .unassigned
            .iter()
            .map(|u| UnassignedDoc { event: u.event, distance: Real(u.distance) })
            .collect(),
        node_stats: NodeStats::column_names(net.kind())
            .iter()
            .map(|&c| (c.to_string(), g.node_stats().iter().map(|s| s.get(c).unwrap_or(0.0)).collect()))
            .collect(),
        node_columns: g.node_columns().iter().map(|(k, v)| (k.clone(), reals(v))).collect(),
    }
}

fn node_stats(kind: GraphKind, columns: &IndexMap<String, Vec<f64>>, n: usize) -> Result<Vec<NodeStats>> {
    let col = |name: &str| -> Result<&Vec<f64>> {
        let c = columns.get(name).ok_or_else(|| Error::Document(format!("missing node column {name:?}")))?;
        if c.len() != n {
            return Err(Error::Document(format!("node column {name:?} has {} entries, expected {n}", c.len())));
        }
        Ok(c)
    };
    if columns.len() != NodeStats::column_names(kind).len() {
        return Err(Error::Document(format!("unexpected node stat columns for a {kind} graph")));
    }
    Ok(match kind {
        GraphKind::Undirected => col("intensity")?.iter().map(|&intensity| NodeStats::Undirected { intensity }).collect(),
        GraphKind::Directed => {
            let (i, o) = (col("intensity_in")?, col("intensity_out")?);
            (0..n).map(|v| NodeStats::Directed { intensity_in: i[v], intensity_out: o[v] }).collect()
        }
        GraphKind::Mixed => {
            let (u, i, o, a) =
                (col("intensity_und")?, col("intensity_in")?, col("intensity_out")?, col("intensity_all")?);
            (0..n)
                .map(|v| NodeStats::Mixed {
                    intensity_und: u[v],
                    intensity_in: i[v],
                    intensity_out: o[v],
                    intensity_all: a[v],
                })
                .collect()
        }
    })
}

fn from_document(doc: GraphDocument) -> Result<AnnotatedNetwork> {
    if doc.format != FORMAT_NAME {
        return Err(Error::Document(format!("format is {:?}, expected {FORMAT_NAME:?}", doc.format)));
    }
    if doc.version != FORMAT_VERSION {
        return Err(Error::Document(format!("unsupported version {}", doc.version)));
    }
    let vertices: Vec<Vertex> = doc.vertices.into_iter().map(|v| Vertex { id: v.id, x: v.x, y: v.y }).collect();
    let index: std::collections::HashMap<&str, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
    let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()));
    let parts = doc
        .edges
        .iter()
        .map(|e| Ok((lookup(&e.tail)?, lookup(&e.head)?, e.directed)))
        .collect::<Result<Vec<_>>>()?;
    let net = Network::from_parts(vertices.clone(), parts, doc.kind, doc.event_correction)?;
    let mut events = EventTable::new(doc.events.records).with_levels(doc.events.levels);
    if let Some(name) = doc.events.mark_name {
        events = events.with_mark_name(name);
    }
    let n_events = events.len();
    let mut edge_stats = Vec::with_capacity(doc.edges.len());
    let mut edge_events = Vec::with_capacity(doc.edges.len());
    for (stored, built) in doc.edges.into_iter().zip(net.edges()) {
        if stored.length.to_bits() != built.length.to_bits() {
            return Err(Error::Document(format!(
                "edge {} -> {} has length {} but its endpoints are {} apart",
                stored.tail, stored.head, stored.length, built.length
            )));
        }
        if stored.events.len() != stored.n_events || stored.events.iter().any(|&e| e >= n_events) {
            return Err(Error::Document(format!("edge {} -> {} has an inconsistent event list", stored.tail, stored.head)));
        }
        edge_stats.push(EdgeStats {
            n_events: stored.n_events,
            intensity: stored.intensity,
            mark_mean: stored.mark_mean,
            mark_proportions: stored.marks,
        });
        edge_events.push(stored.events);
    }
    let n = net.vertex_count();
    let node_stats = node_stats(net.kind(), &doc.node_stats, n)?;
    let mut node_columns = IndexMap::new();
    for (name, values) in doc.node_columns {
        if values.len() != n {
            return Err(Error::Document(format!("node column {name:?} has {} entries, expected {n}", values.len())));
        }
        node_columns.insert(name, values.into_iter().map(|r| r.0).collect());
    }
    Ok(AnnotatedNetwork {
        network: net,
        events,
        assignment: Assignment {
            edge_events,
            unassigned: doc
                .unassigned
                .into_iter()
                .map(|u| Unassigned { event: u.event, distance: u.distance.0 })
                .collect(),
        },
        edge_stats,
        node_stats,
        node_columns,
    })
}

pub fn graph_to_string(g: &AnnotatedNetwork) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&to_document(g))?;
    s.push('\n');
    Ok(s)
}

pub fn graph_from_str(s: &str) -> Result<AnnotatedNetwork> {
    from_document(serde_json::from_str(s)?)
}

pub fn export_graph(g: &AnnotatedNetwork, path: &Path) -> Result<()> {
    fs::write(path, graph_to_string(g)?)?;
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<AnnotatedNetwork> {
    graph_from_str(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::events::Mark;
    use crate::graph::build_network;
    use crate::intensity::relate_events_to_network;
    use ndarray::array;

    fn sample(kind: GraphKind) -> AnnotatedNetwork {
        let a = array![[0., 1., 0.], [1., 0., 1.], [0., 0., 0.]];
        let a = if kind == GraphKind::Undirected { array![[0., 1., 0.], [1., 0., 1.], [0., 1., 0.]] } else { a };
        let net = build_network(a.view(), &[[0.1, 0.2], [3.3, 0.7], [4.0, 5.9]], kind, 5.0).unwrap();
        let events = EventTable::new(vec![
            Event::marked(1.0, 0.5, Mark::Category("robbery".into())),
            Event::marked(3.5, 3.0, Mark::Numeric(2.5)),
            Event::new(100.0, 100.0),
        ])
        .with_levels(["assault"])
        .with_mark_name("crime");
        let mut g = relate_events_to_network(net, events);
        g.set_node_column("geary", vec![f64::NAN, 0.1 + 0.2, 1.0 / 3.0]).unwrap();
        g
    }

    #[test]
    fn round_trip_is_exact_and_canonical() {
        for kind in [GraphKind::Undirected, GraphKind::Directed, GraphKind::Mixed] {
            let g = sample(kind);
            let s = graph_to_string(&g).unwrap();
            let back = graph_from_str(&s).unwrap();
            assert_eq!(graph_to_string(&back).unwrap(), s);
            assert_eq!(back.network(), g.network());
            assert_eq!(back.events(), g.events());
            assert_eq!(back.edge_stats(), g.edge_stats());
            assert_eq!(back.node_stats(), g.node_stats());
            assert_eq!(back.assignment(), g.assignment());
            let (a, b) = (&back.node_columns()["geary"], &g.node_columns()["geary"]);
            assert!(a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    }

    #[test]
    fn rejects_foreign_documents() {
        let s = graph_to_string(&sample(GraphKind::Undirected)).unwrap();
        assert!(matches!(graph_from_str(&s.replace(FORMAT_NAME, "other")), Err(Error::Document(_))));
        assert!(graph_from_str("{}").is_err());
    }

    #[test]
    fn empty_network_round_trips() {
        let net = build_network(ndarray::Array2::zeros((0, 0)).view(), &[], GraphKind::Undirected, 5.0).unwrap();
        let g = relate_events_to_network(net, EventTable::default());
        let s = graph_to_string(&g).unwrap();
        assert_eq!(graph_to_string(&graph_from_str(&s).unwrap()).unwrap(), s);
    }
}
