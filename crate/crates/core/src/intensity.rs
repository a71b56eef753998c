//! Edgewise and nodewise network intensities and per-edge mark summaries.
//!
//! The edgewise intensity is the number of events snapped to an edge divided
//! by its length. Nodewise intensities average edgewise intensities over a
//! set of incident edges that depends on the graph kind:
//!
//! | kind       | columns                                                     |
//! |------------|-------------------------------------------------------------|
//! | undirected | `intensity` (all incident edges)                            |
//! | directed   | `intensity_in` (arcs into), `intensity_out` (arcs out of)   |
//! | mixed      | `intensity_und`, `intensity_in`, `intensity_out`, `intensity_all` |
//!
//! An empty incident set averages to 0.

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::events::{EventTable, Mark};
use crate::graph::{GraphKind, Network, VertexRef};
use crate::snap::{assign_events, Assignment};

pub fn edge_intensity(n_events: usize, length: f64) -> Result<f64> {
    if !(length > 0.0) {
        return Err(Error::NonPositiveLength(length));
    }
    Ok(n_events as f64 / length)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NodeStats {
    Undirected {
        intensity: f64,
    },
    Directed {
        intensity_in: f64,
        intensity_out: f64,
    },
    Mixed {
        intensity_und: f64,
        intensity_in: f64,
        intensity_out: f64,
        intensity_all: f64,
    },
}

impl NodeStats {
    pub fn column_names(kind: GraphKind) -> &'static [&'static str] {
        match kind {
            GraphKind::Undirected => &["intensity"],
            GraphKind::Directed => &["intensity_in", "intensity_out"],
            GraphKind::Mixed => &["intensity_und", "intensity_in", "intensity_out", "intensity_all"],
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match *self {
            NodeStats::Undirected { intensity } => vec![intensity],
            NodeStats::Directed { intensity_in, intensity_out } => vec![intensity_in, intensity_out],
            NodeStats::Mixed { intensity_und, intensity_in, intensity_out, intensity_all } => {
                vec![intensity_und, intensity_in, intensity_out, intensity_all]
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        match (*self, name) {
            (NodeStats::Undirected { intensity }, "intensity") => Some(intensity),
            (NodeStats::Directed { intensity_in, .. }, "intensity_in")
            | (NodeStats::Mixed { intensity_in, .. }, "intensity_in") => Some(intensity_in),
            (NodeStats::Directed { intensity_out, .. }, "intensity_out")
            | (NodeStats::Mixed { intensity_out, .. }, "intensity_out") => Some(intensity_out),
            (NodeStats::Mixed { intensity_und, .. }, "intensity_und") => Some(intensity_und),
            (NodeStats::Mixed { intensity_all, .. }, "intensity_all") => Some(intensity_all),
            _ => None,
        }
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

pub fn mean_node_intensity(net: &Network, vertex: &VertexRef, edge_intensities: &[f64]) -> Result<NodeStats> {
    let v = net.resolve(vertex)?;
    if edge_intensities.len() != net.edge_count() {
        return Err(Error::LengthMismatch { expected: net.edge_count(), got: edge_intensities.len() });
    }
    Ok(node_stats_at(net, v, edge_intensities))
}

fn node_stats_at(net: &Network, v: usize, edge_intensities: &[f64]) -> NodeStats {
    let incident = net.incident_edges(v);
    let over = |pred: &dyn Fn(usize) -> bool| {
        mean(incident.iter().copied().filter(|&e| pred(e)).map(|e| edge_intensities[e]))
    };
    let edges = net.edges();
    let arc_in = |e: usize| edges[e].directed && edges[e].head == v;
    let arc_out = |e: usize| edges[e].directed && edges[e].tail == v;
    match net.kind() {
        GraphKind::Undirected => NodeStats::Undirected { intensity: over(&|_| true) },
        GraphKind::Directed => NodeStats::Directed {
            intensity_in: over(&arc_in),
            intensity_out: over(&arc_out),
        },
        GraphKind::Mixed => NodeStats::Mixed {
            intensity_und: over(&|e| !edges[e].directed),
            intensity_in: over(&arc_in),
            intensity_out: over(&arc_out),
            intensity_all: over(&|_| true),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MarkSummary {
    /// Mean over numerically marked events; 0 when there are none.
    pub mean: f64,
    /// Level frequency over categorically marked events, one entry per level.
    pub proportions: IndexMap<String, f64>,
}

/// Summarize the marks of the events on one edge against the dataset levels.
pub fn mark_summary<'a>(marks: impl IntoIterator<Item = &'a Mark>, levels: &[String]) -> MarkSummary {
    let mut sum = 0.0;
    let mut numeric = 0usize;
    let mut categorical = 0usize;
    let mut counts: IndexMap<String, usize> = levels.iter().map(|l| (l.clone(), 0)).collect();
    for mark in marks {
        match mark {
            Mark::Numeric(v) => {
                sum += v;
                numeric += 1;
            }
            Mark::Category(c) => {
                categorical += 1;
                *counts.entry(c.clone()).or_insert(0) += 1;
            }
        }
    }
    MarkSummary {
        mean: if numeric == 0 { 0.0 } else { sum / numeric as f64 },
        proportions: counts
            .into_iter()
            .map(|(l, c)| (l, if categorical == 0 { 0.0 } else { c as f64 / categorical as f64 }))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeStats {
    pub n_events: usize,
    pub intensity: f64,
    /// Present when the dataset has numeric marks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mark_mean: Option<f64>,
    #[serde(default)]
    pub mark_proportions: IndexMap<String, f64>,
}

/// A network with events related to it: every edge carries [`EdgeStats`],
/// every vertex [`NodeStats`], plus any extra node columns such as local
/// autocorrelation statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedNetwork {
    pub(crate) network: Network,
    pub(crate) events: EventTable,
    pub(crate) assignment: Assignment,
    pub(crate) edge_stats: Vec<EdgeStats>,
    pub(crate) node_stats: Vec<NodeStats>,
    pub(crate) node_columns: IndexMap<String, Vec<f64>>,
}

/// Snap events with the network's event correction, then compute edge
/// intensities, node intensities and mark summaries.
pub fn relate_events_to_network(net: Network, events: EventTable) -> AnnotatedNetwork {
    let assignment = assign_events(&net, &events, net.event_correction());
    let numeric = events.has_numeric_marks();
    let edge_stats: Vec<EdgeStats> = net
        .edges()
        .par_iter()
        .zip(assignment.edge_events.par_iter())
        .map(|(edge, assigned)| {
            let n_events = assigned.len();
            let summary = mark_summary(
                assigned.iter().filter_map(|&i| events.events()[i].mark.as_ref()),
                events.levels(),
            );
            EdgeStats {
                n_events,
                intensity: n_events as f64 / edge.length,
                mark_mean: numeric.then_some(summary.mean),
                mark_proportions: summary.proportions,
            }
        })
        .collect();
    let intensities: Vec<f64> = edge_stats.iter().map(|s| s.intensity).collect();
    let node_stats = (0..net.vertex_count())
        .into_par_iter()
        .map(|v| node_stats_at(&net, v, &intensities))
        .collect();
    AnnotatedNetwork {
        network: net,
        events,
        assignment,
        edge_stats,
        node_stats,
        node_columns: IndexMap::new(),
    }
}

impl AnnotatedNetwork {
    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn events(&self) -> &EventTable {
        &self.events
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn edge_stats(&self) -> &[EdgeStats] {
        &self.edge_stats
    }

    pub fn node_stats(&self) -> &[NodeStats] {
        &self.node_stats
    }

    pub fn node_columns(&self) -> &IndexMap<String, Vec<f64>> {
        &self.node_columns
    }

    /// Recompute everything from the stored network and events.
    pub fn relate_again(&self) -> AnnotatedNetwork {
        relate_events_to_network(self.network.clone(), self.events.clone())
    }

    /// Name of the numeric mark-mean edge column, if the dataset has numeric marks.
    pub fn mark_mean_column(&self) -> Option<String> {
        if !self.events.has_numeric_marks() {
            return None;
        }
        let base = self.events.mark_name().unwrap_or("mark").to_string();
        if self.events.levels().contains(&base) || ["weight", "n_events", "intensity"].contains(&base.as_str()) {
            Some(format!("{base}_mean"))
        } else {
            Some(base)
        }
    }

    pub fn edge_attribute_names(&self) -> Vec<String> {
        let mut names: Vec<String> = ["weight", "n_events", "intensity"].iter().map(|s| s.to_string()).collect();
        names.extend(self.mark_mean_column());
        names.extend(self.events.levels().iter().cloned());
        names
    }

    /// Edge column by name: `weight` (length), `n_events`, `intensity`, the
    /// numeric mark mean, or a category level proportion.
    pub fn edge_attribute(&self, name: &str) -> Option<Vec<f64>> {
        match name {
            "weight" | "length" => Some(self.network.edges().iter().map(|e| e.length).collect()),
            "n_events" => Some(self.edge_stats.iter().map(|s| s.n_events as f64).collect()),
            "intensity" => Some(self.edge_stats.iter().map(|s| s.intensity).collect()),
            _ if self.mark_mean_column().as_deref() == Some(name) => {
                Some(self.edge_stats.iter().map(|s| s.mark_mean.unwrap_or(0.0)).collect())
            }
            _ if self.events.levels().iter().any(|l| l == name) => Some(
                self.edge_stats
                    .iter()
                    .map(|s| s.mark_proportions.get(name).copied().unwrap_or(0.0))
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn node_attribute_names(&self) -> Vec<String> {
        let mut names: Vec<String> =
            NodeStats::column_names(self.network.kind()).iter().map(|s| s.to_string()).collect();
        names.extend(self.node_columns.keys().cloned());
        names
    }

    pub fn node_attribute(&self, name: &str) -> Option<Vec<f64>> {
        if NodeStats::column_names(self.network.kind()).contains(&name) {
            return Some(self.node_stats.iter().map(|s| s.get(name).unwrap_or(0.0)).collect());
        }
        self.node_columns.get(name).cloned()
    }

    /// The headline nodewise intensity: `intensity`, `intensity_in` (directed)
    /// or `intensity_all` (mixed).
    pub fn primary_intensity_column(&self) -> &'static str {
        match self.network.kind() {
            GraphKind::Undirected => "intensity",
            GraphKind::Directed => "intensity_in",
            GraphKind::Mixed => "intensity_all",
        }
    }

    pub fn node_intensity(&self) -> Vec<f64> {
        self.node_attribute(self.primary_intensity_column()).unwrap_or_default()
    }

    /// Attach or replace a per-vertex column.
    pub fn set_node_column(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        let name = name.into();
        if values.len() != self.network.vertex_count() {
            return Err(Error::LengthMismatch { expected: self.network.vertex_count(), got: values.len() });
        }
        if NodeStats::column_names(self.network.kind()).contains(&name.as_str()) {
            return Err(Error::InvalidArgument(format!("{name} is a reserved intensity column")));
        }
        self.node_columns.insert(name, values);
        Ok(())
    }
}
