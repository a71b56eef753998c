use std::collections::HashMap;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};
use ndarray::Array2;

use super::format_f64;
use crate::autocorr::LocalMoranRow;
use crate::error::{Error, Result};
use crate::events::{Event, EventTable, Mark};
use crate::graph::{GraphKind, Network, NetworkBuilder};
use crate::intensity::AnnotatedNetwork;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodeTable {
    /// `None` when the file has no id column.
    pub ids: Option<Vec<String>>,
    pub coords: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeListRow {
    pub from: String,
    pub to: String,
    pub directed: Option<bool>,
}

#[derive(Debug, Clone, Copy)]
pub enum EdgeSource<'a> {
    EdgeList(&'a Path),
    Adjacency(&'a Path),
}

fn records(path: &Path) -> Result<Vec<StringRecord>> {
    let mut reader = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            other => Error::Parse { path: path.into(), line: 0, message: format!("{other:?}") },
        })?;
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse {
            path: path.into(),
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        out.push(rec);
    }
    Ok(out)
}

fn line(rec: &StringRecord) -> u64 {
    rec.position().map_or(0, |p| p.line())
}

fn parse_error(path: &Path, rec: &StringRecord, message: impl Into<String>) -> Error {
    Error::Parse { path: PathBuf::from(path), line: line(rec), message: message.into() }
}

fn number(path: &Path, rec: &StringRecord, col: usize, what: &str) -> Result<f64> {
    let raw = rec.get(col).unwrap_or("");
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(parse_error(path, rec, format!("{what} {raw:?} is not a finite number"))),
    }
}

fn is_number(field: Option<&str>) -> bool {
    field.is_some_and(|f| f.parse::<f64>().is_ok())
}

/// Read `id,x,y` or `x,y` rows. Columns past the third are ignored, so an
/// exported vertex table reads back as a node table.
pub fn read_nodes(path: &Path) -> Result<NodeTable> {
    let mut rows = records(path)?;
    if let Some(first) = rows.first() {
        let coord_col = if first.len() >= 3 { 1 } else { 0 };
        if !is_number(first.get(coord_col)) {
            rows.remove(0);
        }
    }
    let width = rows.first().map_or(3, StringRecord::len);
    if width < 2 {
        return Err(parse_error(path, &rows[0], "node rows need x and y columns"));
    }
    let with_ids = width >= 3;
    let mut table = NodeTable { ids: with_ids.then(Vec::new), coords: Vec::with_capacity(rows.len()) };
    for rec in &rows {
        if rec.len() != width {
            return Err(parse_error(path, rec, format!("expected {width} columns, found {}", rec.len())));
        }
        let off = usize::from(with_ids);
        table.coords.push([number(path, rec, off, "x")?, number(path, rec, off + 1, "y")?]);
        if let Some(ids) = table.ids.as_mut() {
            ids.push(rec[0].to_string());
        }
    }
    Ok(table)
}

fn parse_bool(raw: &str) -> Option<bool> {
    match raw.to_ascii_lowercase().as_str() {
        "true" | "t" | "1" | "yes" => Some(true),
        "false" | "f" | "0" | "no" => Some(false),
        _ => None,
    }
}

/// Read `from,to[,directed]` rows of vertex ids. A header is recognized by
/// a first field of `from`, `tail` or `source`; with a header, the
/// `directed` column is found by name and other columns are ignored.
pub fn read_edge_list(path: &Path) -> Result<Vec<EdgeListRow>> {
    let mut rows = records(path)?;
    let mut directed_col = Some(2);
    if let Some(first) = rows.first() {
        let head = first.get(0).unwrap_or("").to_ascii_lowercase();
        if ["from", "tail", "source"].contains(&head.as_str()) {
            directed_col = first.iter().position(|f| f.eq_ignore_ascii_case("directed"));
            rows.remove(0);
        }
    }
    rows.iter()
        .map(|rec| {
            if rec.len() < 2 {
                return Err(parse_error(path, rec, "edge rows need from and to columns"));
            }
            let directed = match directed_col.and_then(|c| rec.get(c)) {
                None | Some("") => None,
                Some(raw) => Some(
                    parse_bool(raw).ok_or_else(|| parse_error(path, rec, format!("directed flag {raw:?} is not boolean")))?,
                ),
            };
            Ok(EdgeListRow { from: rec[0].to_string(), to: rec[1].to_string(), directed })
        })
        .collect()
}

/// Read a dense matrix. A non-numeric first row is a header and a
/// non-numeric first column holds row names; both are dropped.
pub fn read_adjacency(path: &Path) -> Result<Array2<f64>> {
    let mut rows = records(path)?;
    if let Some(first) = rows.first() {
        if first.iter().skip(1).any(|f| f.parse::<f64>().is_err()) || (first.len() == 1 && !is_number(first.get(0))) {
            rows.remove(0);
        }
    }
    let skip = usize::from(rows.first().is_some_and(|r| !is_number(r.get(0))));
    let n = rows.len();
    let mut a = Array2::zeros((n, n));
    for (i, rec) in rows.iter().enumerate() {
        if rec.len() - skip != n {
            return Err(Error::NonSquareAdjacency { rows: n, cols: rec.len() - skip });
        }
        for j in 0..n {
            a[[i, j]] = number(path, rec, j + skip, "adjacency entry")?;
        }
    }
    Ok(a)
}

/// Read `x,y[,mark]` rows. A header-only or empty file is an empty table.
pub fn read_events(path: &Path) -> Result<EventTable> {
    let mut rows = records(path)?;
    let mut mark_name = None;
    if let Some(first) = rows.first() {
        if !is_number(first.get(0)) {
            mark_name = first.get(2).filter(|s| !s.is_empty()).map(str::to_string);
            rows.remove(0);
        }
    }
    let mut events = Vec::with_capacity(rows.len());
    for rec in &rows {
        if !(2..=3).contains(&rec.len()) {
            return Err(parse_error(path, rec, format!("expected 2 or 3 columns, found {}", rec.len())));
        }
        let mut ev = Event::new(number(path, rec, 0, "x")?, number(path, rec, 1, "y")?);
        ev.mark = rec.get(2).and_then(Mark::parse);
        events.push(ev);
    }
    let table = EventTable::new(events);
    Ok(match mark_name {
        Some(name) => table.with_mark_name(name),
        None => table,
    })
}

/// Read the input trio and build the network.
pub fn read_inputs(
    nodes: &Path,
    edges: EdgeSource<'_>,
    events: Option<&Path>,
    kind: GraphKind,
    event_correction: f64,
) -> Result<(Network, EventTable)> {
    let table = read_nodes(nodes)?;
    let mut builder = NetworkBuilder::new(kind).event_correction(event_correction);
    if let Some(ids) = &table.ids {
        builder = builder.names(ids.clone());
    }
    let net = match edges {
        EdgeSource::Adjacency(path) => builder.from_adjacency(read_adjacency(path)?.view(), &table.coords)?,
        EdgeSource::EdgeList(path) => {
            let ids: Vec<String> = match &table.ids {
                Some(ids) => ids.clone(),
                None => (1..=table.coords.len()).map(|i| format!("V{i}")).collect(),
            };
            let lookup: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
            let index = |id: &str| lookup.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()));
            let rows = read_edge_list(path)?
                .iter()
                .map(|r| Ok((index(&r.from)?, index(&r.to)?, r.directed)))
                .collect::<Result<Vec<_>>>()?;
            builder.from_edge_list(&table.coords, &rows)?
        }
    };
    let events = match events {
        Some(path) => read_events(path)?,
        None => EventTable::default(),
    };
    Ok((net, events))
}

fn writer(path: &Path) -> Result<csv::Writer<File>> {
    Ok(WriterBuilder::new().from_path(path)?)
}

pub fn write_vertices(g: &AnnotatedNetwork, out: impl Write) -> Result<()> {
    let net = g.network();
    let names = g.node_attribute_names();
    let columns: Vec<Vec<f64>> = names.iter().map(|n| g.node_attribute(n).unwrap_or_default()).collect();
    let mut w = WriterBuilder::new().from_writer(out);
    let mut header = vec!["name".to_string(), "xcoord".into(), "ycoord".into()];
    header.extend(names.iter().cloned());
    w.write_record(&header)?;
    for (i, v) in net.vertices().iter().enumerate() {
        let mut row = vec![v.id.clone(), format_f64(v.x), format_f64(v.y)];
        row.extend(columns.iter().map(|c| format_f64(c[i])));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_edges(g: &AnnotatedNetwork, out: impl Write) -> Result<()> {
    let net = g.network();
    let names = g.edge_attribute_names();
    let columns: Vec<Vec<f64>> = names.iter().map(|n| g.edge_attribute(n).unwrap_or_default()).collect();
    let mut w = WriterBuilder::new().from_writer(out);
    let mut header = vec!["from".to_string(), "to".into()];
    header.extend(names.iter().cloned());
    w.write_record(&header)?;
    for (i, e) in net.edges().iter().enumerate() {
        let mut row = vec![net.vertex(e.tail).id.clone(), net.vertex(e.head).id.clone()];
        row.extend(names.iter().zip(&columns).map(|(name, c)| {
            if name == "n_events" {
                g.edge_stats()[i].n_events.to_string()
            } else {
                format_f64(c[i])
            }
        }));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Write the vertex and edge attribute tables.
pub fn export_attributes(g: &AnnotatedNetwork, vertices_out: &Path, edges_out: &Path) -> Result<()> {
    write_vertices(g, File::create(vertices_out)?)?;
    write_edges(g, File::create(edges_out)?)
}

/// Write the local Moran table, one row per vertex.
pub fn write_local_moran(net: &Network, rows: &[LocalMoranRow], path: &Path) -> Result<()> {
    if rows.len() != net.vertex_count() {
        return Err(Error::LengthMismatch { expected: net.vertex_count(), got: rows.len() });
    }
    let mut w = writer(path)?;
    w.write_record(["name", "Ii", "E.Ii", "Var.Ii", "Z.Ii", "Pr(z != E(Ii))"])?;
    for (v, r) in net.vertices().iter().zip(rows) {
        w.write_record([
            v.id.clone(),
            format_f64(r.ii),
            format_f64(r.e_ii),
            format_f64(r.var_ii),
            format_f64(r.z_ii),
            format_f64(r.p),
        ])?;
    }
    w.flush()?;
    Ok(())
}
