//! SVG figures of annotated networks.
//!
//! Coordinates are drawn to scale (one unit is the same length along both
//! axes) with tick-labelled axes and a background grid. Heat values map onto
//! a three-stop ramp, low `#2c7bb6`, middle `#ffffbf`, high `#d7191c`,
//! linearly over the finite range of the selected values; a degenerate range
//! gives the middle colour. Every coloured element carries its value in a
//! `data-heat` attribute.
//!
//! Element classes: `line.edge`, `circle.vertex`, `rect.event` (heatmap and
//! path event squares) and `circle.event` (neighbourhood event circles).

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::autocorr::{node_local_correlation, LocalStatistic};
use crate::error::{Error, Result};
use crate::graph::VertexRef;
use crate::intensity::AnnotatedNetwork;
use crate::paths::PathResult;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 640.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 110.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 50.0;

pub const RAMP: [[u8; 3]; 3] = [[0x2c, 0x7b, 0xb6], [0xff, 0xff, 0xbf], [0xd7, 0x19, 0x1c]];
const EDGE_GRAY: &str = "#b0b0b0";
const VERTEX_BLACK: &str = "#000000";
const EVENT_ORANGE: &str = "#ff8c00";
const PATH_GREEN: &str = "#1a9641";
const NEIGHBOR_RED: &str = "#e31a1c";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeatType {
    None,
    VertexIntensity,
    EdgeIntensity,
    Moran,
    Geary,
    Getis,
    /// An edge attribute (mark level or numeric mark mean) or node column.
    Column(String),
}

impl FromStr for HeatType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "" => return Err(Error::UnknownHeatType(s.to_string())),
            "none" => HeatType::None,
            "v_intensity" => HeatType::VertexIntensity,
            "e_intensity" => HeatType::EdgeIntensity,
            "moran" => HeatType::Moran,
            "geary" => HeatType::Geary,
            "getis" => HeatType::Getis,
            other => HeatType::Column(other.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatSpec {
    pub heat_type: HeatType,
    pub show_events: bool,
    /// Event marker opacity in `(0, 1]`.
    pub alpha: f64,
    /// Restrict colouring to these vertex ids.
    pub vertices: Option<Vec<String>>,
    /// Restrict colouring to these `(from, to)` edges.
    pub edges: Option<Vec<(String, String)>>,
}

impl Default for HeatSpec {
    fn default() -> Self {
        Self { heat_type: HeatType::None, show_events: false, alpha: 1.0, vertices: None, edges: None }
    }
}

impl HeatSpec {
    pub fn new(heat_type: HeatType) -> Self {
        Self { heat_type, ..Self::default() }
    }
}

/// Colour for `v` on the ramp over `[lo, hi]`.
pub fn ramp_color(v: f64, lo: f64, hi: f64) -> String {
    let t = if hi > lo { ((v - lo) / (hi - lo)).clamp(0.0, 1.0) } else { 0.5 };
    let (a, b, u) = if t <= 0.5 { (RAMP[0], RAMP[1], t * 2.0) } else { (RAMP[1], RAMP[2], t * 2.0 - 1.0) };
    let mix = |k: usize| (a[k] as f64 + (b[k] as f64 - a[k] as f64) * u).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(0), mix(1), mix(2))
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Maps data coordinates into the plot area, preserving aspect ratio.
struct Frame {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    scale: f64,
    left: f64,
    bottom: f64,
}

impl Frame {
    fn new(points: impl Iterator<Item = [f64; 2]>) -> Self {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for [x, y] in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
        }
        // pad degenerate extents so a single point sits mid-plot
        let pad = ((x1 - x0).max(y1 - y0) * 0.02).max(if x1 - x0 == 0.0 && y1 - y0 == 0.0 { 1.0 } else { 0.0 });
        let (x0, x1, y0, y1) = (x0 - pad, x1 + pad, y0 - pad, y1 + pad);
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let scale = (plot_w / (x1 - x0)).min(plot_h / (y1 - y0));
        Self { x0, y0, x1, y1, scale, left: MARGIN_LEFT, bottom: HEIGHT - MARGIN_BOTTOM }
    }

    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x0) * self.scale
    }

    fn py(&self, y: f64) -> f64 {
        self.bottom - (y - self.y0) * self.scale
    }
}

fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) {
        return vec![lo];
    }
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| span / s <= target as f64).unwrap_or(10.0 * mag);
    let mut ticks = Vec::new();
    let mut t = (lo / step).ceil() * step;
    while t <= hi + step * 1e-9 {
        ticks.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
        t += step;
    }
    ticks
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

struct Canvas {
    frame: Frame,
    body: String,
    title: String,
}

impl Canvas {
    fn new(frame: Frame, title: &str) -> Self {
        Self { frame, body: String::new(), title: title.to_string() }
    }

    fn axes(&mut self) {
        let f = &self.frame;
        let (right, top) = (f.px(f.x1), f.py(f.y1));
        let mut s = String::from("<g class=\"axes\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\">\n");
        for t in nice_ticks(f.x0, f.x1, 6) {
            let x = f.px(t);
            let _ = writeln!(
                s,
                "<line class=\"grid\" x1=\"{x:.2}\" y1=\"{top:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#eeeeee\"/>",
                f.bottom
            );
            let _ = writeln!(s, "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>", f.bottom + 16.0, fmt_num(t));
        }
        for t in nice_ticks(f.y0, f.y1, 6) {
            let y = f.py(t);
            let _ = writeln!(
                s,
                "<line class=\"grid\" x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{right:.2}\" y2=\"{y:.2}\" stroke=\"#eeeeee\"/>",
                f.left
            );
            let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>", f.left - 6.0, y + 4.0, fmt_num(t));
        }
        let _ = writeln!(
            s,
            "<line class=\"axis\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{right:.2}\" y2=\"{:.2}\" stroke=\"#444444\"/>",
            f.left, f.bottom, f.bottom
        );
        let _ = writeln!(
            s,
            "<line class=\"axis\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{top:.2}\" stroke=\"#444444\"/>",
            f.left, f.bottom, f.left
        );
        s.push_str("</g>\n");
        self.body.push_str(&s);
    }

    fn legend(&mut self, label: &str, lo: f64, hi: f64) {
        let x = WIDTH - MARGIN_RIGHT + 30.0;
        let (top, h) = (MARGIN_TOP + 20.0, 200.0);
        let mut s = String::from("<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n");
        let _ = writeln!(s, "<text x=\"{x:.2}\" y=\"{:.2}\">{}</text>", top - 8.0, escape(label));
        let fill = if hi > lo { "url(#heat-ramp)".to_string() } else { ramp_color(lo, lo, hi) };
        let _ = writeln!(
            s,
            "<rect class=\"legend-ramp\" x=\"{x:.2}\" y=\"{top:.2}\" width=\"16\" height=\"{h:.2}\" fill=\"{fill}\" stroke=\"#444444\"/>"
        );
        let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>", x + 20.0, top + 10.0, fmt_num(hi));
        if hi > lo {
            let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>", x + 20.0, top + h, fmt_num(lo));
        }
        s.push_str("</g>\n");
        self.body.push_str(&s);
    }

    fn finish(self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        out.push_str("<defs>\n<linearGradient id=\"heat-ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">\n");
        for (i, c) in RAMP.iter().enumerate() {
            let _ = writeln!(
                out,
                "<stop offset=\"{}\" stop-color=\"#{:02x}{:02x}{:02x}\"/>",
                i as f64 / 2.0,
                c[0],
                c[1],
                c[2]
            );
        }
        out.push_str("</linearGradient>\n</defs>\n");
        let _ = writeln!(out, "<rect class=\"background\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>");
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

struct Style {
    color: String,
    heat: Option<f64>,
    class: &'static str,
    width: f64,
}

fn edge_line(s: &mut String, g: &AnnotatedNetwork, f: &Frame, e: usize, style: &Style) {
    let net = g.network();
    let edge = net.edge(e);
    let ([x1, y1], [x2, y2]) = (net.coord(edge.tail), net.coord(edge.head));
    let _ = write!(
        s,
        "<line class=\"{}\" data-from=\"{}\" data-to=\"{}\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"{}\" stroke-width=\"{}\"",
        style.class,
        escape(&net.vertex(edge.tail).id),
        escape(&net.vertex(edge.head).id),
        f.px(x1),
        f.py(y1),
        f.px(x2),
        f.py(y2),
        style.color,
        style.width
    );
    if edge.directed {
        s.push_str(" data-directed=\"true\"");
    }
    if let Some(h) = style.heat {
        let _ = write!(s, " data-heat=\"{h}\"");
    }
    s.push_str("/>\n");
}

fn vertex_dot(s: &mut String, g: &AnnotatedNetwork, f: &Frame, v: usize, style: &Style) {
    let vx = g.network().vertex(v);
    let _ = write!(
        s,
        "<circle class=\"{}\" data-id=\"{}\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"{}\" fill=\"{}\"",
        style.class,
        escape(&vx.id),
        f.px(vx.x),
        f.py(vx.y),
        style.width,
        style.color
    );
    if let Some(h) = style.heat {
        let _ = write!(s, " data-heat=\"{h}\"");
    }
    s.push_str(" stroke=\"#333333\" stroke-width=\"0.5\"/>\n");
}

fn event_squares(s: &mut String, g: &AnnotatedNetwork, f: &Frame, alpha: f64) {
    s.push_str("<g class=\"events\">\n");
    for ev in g.events().events() {
        let _ = writeln!(
            s,
            "<rect class=\"event\" x=\"{:.3}\" y=\"{:.3}\" width=\"6\" height=\"6\" fill=\"{EVENT_ORANGE}\" fill-opacity=\"{alpha}\"/>",
            f.px(ev.x) - 3.0,
            f.py(ev.y) - 3.0
        );
    }
    s.push_str("</g>\n");
}

fn all_points(g: &AnnotatedNetwork, events: bool) -> Vec<[f64; 2]> {
    let mut pts = g.network().coords();
    if events {
        pts.extend(g.events().events().iter().map(|e| [e.x, e.y]));
    }
    pts
}

fn finite_range(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values.filter(|v| v.is_finite()).fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

enum Heat {
    None,
    Vertex(String, Vec<f64>),
    Edge(String, Vec<f64>),
}

fn resolve_heat(g: &AnnotatedNetwork, heat: &HeatType) -> Result<Heat> {
    let local = |stat: LocalStatistic| -> Result<Heat> {
        let name = stat.column_name();
        let values = match g.node_attribute(name) {
            Some(v) => v,
            None => {
                let mut scratch = g.clone();
                node_local_correlation(&mut scratch, stat)?
            }
        };
        Ok(Heat::Vertex(name.to_string(), values))
    };
    match heat {
        HeatType::None => Ok(Heat::None),
        HeatType::VertexIntensity => Ok(Heat::Vertex("intensity".into(), g.node_intensity())),
        HeatType::EdgeIntensity => Ok(Heat::Edge("intensity".into(), g.edge_attribute("intensity").unwrap_or_default())),
        HeatType::Moran => local(LocalStatistic::Moran),
        HeatType::Geary => local(LocalStatistic::Geary),
        HeatType::Getis => local(LocalStatistic::Getis),
        HeatType::Column(name) => {
            if let Some(v) = g.edge_attribute(name) {
                Ok(Heat::Edge(name.clone(), v))
            } else if let Some(v) = g.node_attribute(name) {
                Ok(Heat::Vertex(name.clone(), v))
            } else {
                Err(Error::UnknownHeatType(name.clone()))
            }
        }
    }
}

/// Heatmap of a vertex or edge attribute over the network.
pub fn render_heatmap(g: &AnnotatedNetwork, spec: &HeatSpec) -> Result<String> {
    if !(spec.alpha > 0.0 && spec.alpha <= 1.0) {
        return Err(Error::InvalidArgument(format!("alpha must lie in (0, 1], got {}", spec.alpha)));
    }
    let net = g.network();
    let vertex_sel: Option<HashSet<usize>> = spec
        .vertices
        .as_ref()
        .map(|ids| ids.iter().map(|id| net.resolve(&VertexRef::from(id))).collect::<Result<_>>())
        .transpose()?;
    let edge_sel: Option<HashSet<usize>> = spec
        .edges
        .as_ref()
        .map(|pairs| {
            pairs
                .iter()
                .map(|(a, b)| {
                    let (u, v) = (net.resolve(&VertexRef::from(a))?, net.resolve(&VertexRef::from(b))?);
                    net.find_edge(u, v)
                        .or_else(|| net.find_edge(v, u))
                        .ok_or_else(|| Error::BrokenPath { from: a.clone(), to: b.clone() })
                })
                .collect::<Result<_>>()
        })
        .transpose()?;
    let heat = resolve_heat(g, &spec.heat_type)?;
    let vertex_on = |v: usize| vertex_sel.as_ref().is_none_or(|s| s.contains(&v));
    let edge_on = |e: usize| match (&edge_sel, &vertex_sel) {
        (Some(s), _) => s.contains(&e),
        (None, Some(vs)) => vs.contains(&net.edge(e).tail) && vs.contains(&net.edge(e).head),
        (None, None) => true,
    };

    let frame = Frame::new(all_points(g, spec.show_events).into_iter());
    let title = match &heat {
        Heat::None => "network".to_string(),
        Heat::Vertex(n, _) | Heat::Edge(n, _) => format!("heatmap: {n}"),
    };
    let mut canvas = Canvas::new(frame, &title);
    canvas.axes();
    let f = &canvas.frame;
    let mut s = String::new();

    let range = match &heat {
        Heat::None => None,
        Heat::Vertex(_, v) => finite_range((0..net.vertex_count()).filter(|&i| vertex_on(i)).map(|i| v[i])),
        Heat::Edge(_, v) => finite_range((0..net.edge_count()).filter(|&i| edge_on(i)).map(|i| v[i])),
    };
    let colored = |value: f64| -> Option<(String, f64)> {
        let (lo, hi) = range?;
        value.is_finite().then(|| (ramp_color(value, lo, hi), value))
    };

    s.push_str("<g class=\"edges\">\n");
    for e in 0..net.edge_count() {
        let hit = match &heat {
            Heat::Edge(_, v) if edge_on(e) => colored(v[e]),
            _ => None,
        };
        let style = match hit {
            Some((color, h)) => Style { color, heat: Some(h), class: "edge", width: 3.0 },
            None => Style { color: EDGE_GRAY.into(), heat: None, class: "edge", width: 1.5 },
        };
        edge_line(&mut s, g, f, e, &style);
    }
    s.push_str("</g>\n<g class=\"vertices\">\n");
    for v in 0..net.vertex_count() {
        let hit = match &heat {
            Heat::Vertex(_, vals) if vertex_on(v) => colored(vals[v]),
            _ => None,
        };
        let style = match hit {
            Some((color, h)) => Style { color, heat: Some(h), class: "vertex", width: 5.0 },
            None => Style { color: VERTEX_BLACK.into(), heat: None, class: "vertex", width: 2.0 },
        };
        vertex_dot(&mut s, g, f, v, &style);
    }
    s.push_str("</g>\n");
    if spec.show_events {
        event_squares(&mut s, g, f, spec.alpha);
    }
    canvas.body.push_str(&s);
    if let (Some((lo, hi)), Heat::Vertex(name, _) | Heat::Edge(name, _)) = (range, &heat) {
        canvas.legend(name, lo, hi);
    }
    Ok(canvas.finish())
}

/// First-order neighbourhood of a vertex with the events on its incident
/// edges drawn as red circles.
pub fn render_neighborhood(g: &AnnotatedNetwork, vertex: &VertexRef) -> Result<String> {
    let net = g.network();
    let v = net.resolve(vertex)?;
    let incident = net.incident_edges(v);
    let neighbors = net.skeleton_neighbors(v);
    let events: Vec<usize> = incident.iter().flat_map(|&e| g.assignment().edge_events[e].iter().copied()).collect();
    let mut pts: Vec<[f64; 2]> = std::iter::once(v).chain(neighbors.iter().copied()).map(|u| net.coord(u)).collect();
    pts.extend(events.iter().map(|&i| {
        let ev = &g.events().events()[i];
        [ev.x, ev.y]
    }));
    let mut canvas = Canvas::new(Frame::new(pts.into_iter()), &format!("neighbourhood of {}", net.vertex(v).id));
    canvas.axes();
    let f = &canvas.frame;
    let mut s = String::from("<g class=\"edges\">\n");
    for &e in incident {
        edge_line(&mut s, g, f, e, &Style { color: "#555555".into(), heat: None, class: "edge", width: 2.0 });
    }
    s.push_str("</g>\n<g class=\"vertices\">\n");
    vertex_dot(&mut s, g, f, v, &Style { color: VERTEX_BLACK.into(), heat: None, class: "vertex focus", width: 5.0 });
    for &u in &neighbors {
        vertex_dot(&mut s, g, f, u, &Style { color: "#777777".into(), heat: None, class: "vertex", width: 3.5 });
    }
    s.push_str("</g>\n<g class=\"events\">\n");
    for &i in &events {
        let ev = &g.events().events()[i];
        let _ = writeln!(
            s,
            "<circle class=\"event\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"6\" fill=\"none\" stroke=\"{NEIGHBOR_RED}\" stroke-width=\"1.5\"/>",
            f.px(ev.x),
            f.py(ev.y)
        );
    }
    s.push_str("</g>\n");
    canvas.body.push_str(&s);
    Ok(canvas.finish())
}

/// The network with the edges of `path` drawn in green.
pub fn render_path(g: &AnnotatedNetwork, path: &PathResult, show_events: bool) -> Result<String> {
    let net = g.network();
    if path.vertices.is_empty() {
        return Err(Error::EmptyPath);
    }
    if let Some(&bad) = path.vertices.iter().find(|&&v| v >= net.vertex_count()) {
        return Err(Error::UnknownVertex(format!("#{}", bad + 1)));
    }
    let mut on_path = HashSet::new();
    for w in path.vertices.windows(2) {
        let e = net.find_edge(w[0], w[1]).ok_or_else(|| Error::BrokenPath {
            from: net.vertex(w[0]).id.clone(),
            to: net.vertex(w[1]).id.clone(),
        })?;
        on_path.insert(e);
    }
    let path_vertices: HashSet<usize> = path.vertices.iter().copied().collect();
    let mut canvas = Canvas::new(Frame::new(all_points(g, show_events).into_iter()), "path");
    canvas.axes();
    let f = &canvas.frame;
    let mut s = String::from("<g class=\"edges\">\n");
    for e in 0..net.edge_count() {
        let style = if on_path.contains(&e) {
            Style { color: PATH_GREEN.into(), heat: None, class: "edge path", width: 3.5 }
        } else {
            Style { color: EDGE_GRAY.into(), heat: None, class: "edge", width: 1.5 }
        };
        edge_line(&mut s, g, f, e, &style);
    }
    s.push_str("</g>\n<g class=\"vertices\">\n");
    for v in 0..net.vertex_count() {
        let style = if path_vertices.contains(&v) {
            Style { color: PATH_GREEN.into(), heat: None, class: "vertex path", width: 4.0 }
        } else {
            Style { color: VERTEX_BLACK.into(), heat: None, class: "vertex", width: 2.0 }
        };
        vertex_dot(&mut s, g, f, v, &style);
    }
    s.push_str("</g>\n");
    if show_events {
        event_squares(&mut s, g, f, 1.0);
    }
    canvas.body.push_str(&s);
    Ok(canvas.finish())
}
