//! Delimited-text ingest and export, and the JSON graph document.
//!
//! Input tables are comma separated with an optional header row:
//!
//! * nodes: `id,x,y` (or just `x,y`, ids then default to `V1..Vn`)
//! * edges: `from,to[,directed]` with vertex ids, or a dense adjacency matrix
//! * events: `x,y[,mark]`; the mark header names the mark
//!
//! Numbers are written with the shortest representation that parses back to
//! the same `f64`, so ingest and export round-trip exactly.

mod document;
mod tables;

pub use document::{export_graph, graph_to_string, graph_from_str, read_graph, FORMAT_NAME, FORMAT_VERSION};
pub use tables::{
    export_attributes, read_adjacency, read_edge_list, read_events, read_inputs, read_nodes, write_edges,
    write_local_moran, write_vertices, EdgeListRow, EdgeSource, NodeTable,
};

pub(crate) fn format_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        v.to_string()
    }
}
