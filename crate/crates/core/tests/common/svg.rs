//! A small structural schema for the SVG subset the renderer emits.

use std::collections::BTreeSet;

const SVG_NS: &str = "http://www.w3.org/2000/svg";

#[derive(Debug, Default)]
pub struct SvgSummary {
    pub edges: usize,
    pub vertices: usize,
    pub event_squares: usize,
    pub event_circles: usize,
    pub heated_vertices: BTreeSet<String>,
    pub heated_edges: usize,
    pub path_edges: usize,
}

fn numeric(node: roxmltree::Node, attr: &str) -> Result<f64, String> {
    let raw = node.attribute(attr).ok_or_else(|| format!("<{}> lacks {attr}", node.tag_name().name()))?;
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("<{}> {attr}={raw:?} is not a finite number", node.tag_name().name())),
    }
}

fn paint(node: roxmltree::Node, attr: &str) -> Result<(), String> {
    let Some(v) = node.attribute(attr) else { return Ok(()) };
    let hex = v.len() == 7 && v.starts_with('#') && v[1..].chars().all(|c| c.is_ascii_hexdigit());
    if hex || v == "none" || (v.starts_with("url(#") && v.ends_with(')')) {
        Ok(())
    } else {
        Err(format!("bad paint {attr}={v:?}"))
    }
}

fn classes<'a>(node: &roxmltree::Node<'a, 'a>) -> Vec<&'a str> {
    node.attribute("class").map(|c| c.split_whitespace().collect()).unwrap_or_default()
}

/// Parse and validate; returns element counts.
pub fn check(text: &str) -> Result<SvgSummary, String> {
    let doc = roxmltree::Document::parse(text).map_err(|e| e.to_string())?;
    let root = doc.root_element();
    if root.tag_name().name() != "svg" || root.tag_name().namespace() != Some(SVG_NS) {
        return Err("root is not an svg element".into());
    }
    for a in ["width", "height"] {
        if numeric(root, a)? <= 0.0 {
            return Err(format!("svg {a} must be positive"));
        }
    }
    let vb: Vec<f64> = root
        .attribute("viewBox")
        .ok_or("missing viewBox")?
        .split_whitespace()
        .map(|s| s.parse().map_err(|_| "bad viewBox".to_string()))
        .collect::<Result<_, _>>()?;
    if vb.len() != 4 || vb[2] <= 0.0 || vb[3] <= 0.0 {
        return Err("bad viewBox".into());
    }
    let mut ids = BTreeSet::new();
    let mut out = SvgSummary::default();
    for node in root.descendants().filter(|n| n.is_element()) {
        if node.tag_name().namespace() != Some(SVG_NS) {
            return Err(format!("<{}> outside the svg namespace", node.tag_name().name()));
        }
        if let Some(id) = node.attribute("id") {
            if !ids.insert(id.to_string()) {
                return Err(format!("duplicate id {id}"));
            }
        }
        paint(node, "fill")?;
        paint(node, "stroke")?;
        paint(node, "stop-color")?;
        for a in ["fill-opacity", "stroke-width"] {
            if node.has_attribute(a) {
                numeric(node, a)?;
            }
        }
        if let Some(op) = node.attribute("fill-opacity") {
            let op: f64 = op.parse().unwrap();
            if !(0.0..=1.0).contains(&op) {
                return Err(format!("fill-opacity {op} out of range"));
            }
        }
        let cls = classes(&node);
        match node.tag_name().name() {
            "svg" | "g" | "title" | "defs" | "text" => {}
            "linearGradient" => {
                if node.attribute("id").is_none() {
                    return Err("gradient without id".into());
                }
            }
            "stop" => {
                let o = numeric(node, "offset")?;
                if !(0.0..=1.0).contains(&o) {
                    return Err("stop offset out of range".into());
                }
            }
            "line" => {
                for a in ["x1", "y1", "x2", "y2"] {
                    numeric(node, a)?;
                }
                if cls.contains(&"edge") {
                    out.edges += 1;
                    if node.has_attribute("data-heat") {
                        out.heated_edges += 1;
                    }
                    if cls.contains(&"path") {
                        out.path_edges += 1;
                    }
                }
            }
            "circle" => {
                numeric(node, "cx")?;
                numeric(node, "cy")?;
                if numeric(node, "r")? <= 0.0 {
                    return Err("circle radius must be positive".into());
                }
                if cls.contains(&"vertex") {
                    out.vertices += 1;
                    if node.has_attribute("data-heat") {
                        out.heated_vertices.insert(node.attribute("data-id").unwrap_or_default().to_string());
                    }
                } else if cls.contains(&"event") {
                    out.event_circles += 1;
                }
            }
            "rect" => {
                for a in ["width", "height"] {
                    if numeric(node, a)? < 0.0 {
                        return Err("negative rect size".into());
                    }
                }
                for a in ["x", "y"] {
                    if node.has_attribute(a) {
                        numeric(node, a)?;
                    }
                }
                if cls.contains(&"event") {
                    out.event_squares += 1;
                }
            }
            other => return Err(format!("unexpected element <{other}>")),
        }
    }
    for node in root.descendants().filter(|n| n.is_element()) {
        for a in ["fill", "stroke"] {
            if let Some(url) = node.attribute(a).and_then(|v| v.strip_prefix("url(#")) {
                if !ids.contains(url.trim_end_matches(')')) {
                    return Err(format!("dangling reference {url}"));
                }
            }
        }
    }
    Ok(out)
}
