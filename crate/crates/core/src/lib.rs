//! Event intensities on planar networks and their spatial dependence.
//!
//! A [`Network`] holds vertex coordinates and edges; events are snapped to
//! their nearest edge and summarized per edge and per vertex by
//! [`relate_events_to_network`]. Paths, lagged and local autocorrelation,
//! tabular and JSON I/O, and SVG rendering build on the annotated network.

pub mod autocorr;
pub mod error;
pub mod events;
pub mod graph;
pub mod intensity;
pub mod io;
pub mod paths;
pub mod render;
pub mod snap;

pub use error::{Error, Result};
pub use events::{Event, EventTable, Mark};
pub use graph::{build_network, Degree, Edge, GraphKind, Network, NetworkBuilder, Vertex, VertexRef};
pub use intensity::{relate_events_to_network, AnnotatedNetwork, EdgeStats, NodeStats};
pub use render::{render_heatmap, render_neighborhood, render_path, HeatSpec, HeatType};
pub use paths::{path_total_weight, shortest_path, Algorithm, PathResult};
pub use snap::{assign_events, Assignment};
