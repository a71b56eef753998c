//! Shortest paths with automatic algorithm selection, and path weights.
//!
//! Selection: no weight gives breadth-first search; a weight with no
//! negative value gives Dijkstra; any negative value gives Johnson on
//! networks with more than 100 vertices and Bellman-Ford otherwise.
//!
//! Arcs are walked tail to head only; undirected edges both ways. Among
//! equal-cost alternatives the result is deterministic: neighbours are
//! relaxed in ascending vertex index and only strict improvements replace
//! a predecessor.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Network, VertexRef};
use crate::intensity::AnnotatedNetwork;

/// Anything that exposes a network and named per-edge attributes.
pub trait EdgeAttributes {
    fn network(&self) -> &Network;
    fn edge_attribute(&self, name: &str) -> Option<Vec<f64>>;
}

impl EdgeAttributes for Network {
    fn network(&self) -> &Network {
        self
    }

    fn edge_attribute(&self, name: &str) -> Option<Vec<f64>> {
        matches!(name, "weight" | "length").then(|| self.edges().iter().map(|e| e.length).collect())
    }
}

impl EdgeAttributes for AnnotatedNetwork {
    fn network(&self) -> &Network {
        AnnotatedNetwork::network(self)
    }

    fn edge_attribute(&self, name: &str) -> Option<Vec<f64>> {
        AnnotatedNetwork::edge_attribute(self, name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    BreadthFirst,
    Dijkstra,
    BellmanFord,
    Johnson,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::BreadthFirst => "breadth-first",
            Algorithm::Dijkstra => "dijkstra",
            Algorithm::BellmanFord => "bellman-ford",
            Algorithm::Johnson => "johnson",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    /// 0-based vertex indices from origin to destination.
    pub vertices: Vec<usize>,
    /// Edges traversed (unweighted) or the sum of the weight along the path.
    pub total_weight: f64,
    pub algorithm: Algorithm,
}

impl PathResult {
    pub fn vertex_ids<'a>(&self, net: &'a Network) -> Vec<&'a str> {
        self.vertices.iter().map(|&v| net.vertex(v).id.as_str()).collect()
    }
}

/// Pick the algorithm for `n` vertices and optional weights.
pub fn select_for(n: usize, weights: Option<&[f64]>) -> Algorithm {
    match weights {
        None => Algorithm::BreadthFirst,
        Some(w) if w.iter().all(|&x| x >= 0.0) => Algorithm::Dijkstra,
        Some(_) if n > 100 => Algorithm::Johnson,
        Some(_) => Algorithm::BellmanFord,
    }
}

fn weights_for<G: EdgeAttributes + ?Sized>(g: &G, weight: Option<&str>) -> Result<Option<Vec<f64>>> {
    weight
        .map(|name| g.edge_attribute(name).ok_or_else(|| Error::UnknownAttribute(name.to_string())))
        .transpose()
}

pub fn select_algorithm<G: EdgeAttributes + ?Sized>(g: &G, weight: Option<&str>) -> Result<Algorithm> {
    let w = weights_for(g, weight)?;
    Ok(select_for(g.network().vertex_count(), w.as_deref()))
}

/// Shortest path from `from` to `to`. `Ok(None)` when `to` is unreachable.
pub fn shortest_path<G: EdgeAttributes + ?Sized>(
    g: &G,
    from: &VertexRef,
    to: &VertexRef,
    weight: Option<&str>,
) -> Result<Option<PathResult>> {
    let net = g.network();
    let (s, t) = (net.resolve(from)?, net.resolve(to)?);
    let w = weights_for(g, weight)?;
    let algorithm = select_for(net.vertex_count(), w.as_deref());
    shortest_path_using(net, s, t, w.as_deref(), algorithm)
}

/// Shortest path between 0-based vertices with an explicit algorithm.
pub fn shortest_path_using(
    net: &Network,
    source: usize,
    target: usize,
    weights: Option<&[f64]>,
    algorithm: Algorithm,
) -> Result<Option<PathResult>> {
    let n = net.vertex_count();
    for v in [source, target] {
        if v >= n {
            return Err(Error::UnknownVertex(format!("#{}", v + 1)));
        }
    }
    if let Some(w) = weights {
        check_weights(net, w)?;
    }
    let adjacency = Adjacency::new(net);
    let pred = match (algorithm, weights) {
        (Algorithm::BreadthFirst, _) | (_, None) => adjacency.bfs(source),
        (Algorithm::Dijkstra, Some(w)) => {
            if w.iter().any(|&x| x < 0.0) {
                return Err(Error::InvalidArgument("dijkstra requires non-negative weights".into()));
            }
            adjacency.dijkstra(source, w, None).1
        }
        (Algorithm::BellmanFord, Some(w)) => adjacency.bellman_ford(net, source, w)?.1,
        (Algorithm::Johnson, Some(w)) => {
            let h = adjacency.potentials(net, w)?;
            adjacency.dijkstra(source, w, Some(&h)).1
        }
    };
    let Some(vertices) = trace(&pred, source, target) else {
        return Ok(None);
    };
    let total_weight = match (algorithm, weights) {
        (Algorithm::BreadthFirst, _) | (_, None) => (vertices.len() - 1) as f64,
        (_, Some(w)) => sum_along(net, &vertices, Some(w))?,
    };
    Ok(Some(PathResult { vertices, total_weight, algorithm }))
}

/// Total weight of a user path: edge count when unweighted, weight sum otherwise.
pub fn path_total_weight<G: EdgeAttributes + ?Sized>(g: &G, path: &[VertexRef], weight: Option<&str>) -> Result<f64> {
    let net = g.network();
    let vertices = path.iter().map(|v| net.resolve(v)).collect::<Result<Vec<_>>>()?;
    let w = weights_for(g, weight)?;
    sum_along(net, &vertices, w.as_deref())
}

fn sum_along(net: &Network, vertices: &[usize], weights: Option<&[f64]>) -> Result<f64> {
    if vertices.is_empty() {
        return Err(Error::EmptyPath);
    }
    let mut total = 0.0;
    for pair in vertices.windows(2) {
        let e = net.find_edge(pair[0], pair[1]).ok_or_else(|| Error::BrokenPath {
            from: net.vertex(pair[0]).id.clone(),
            to: net.vertex(pair[1]).id.clone(),
        })?;
        total += weights.map_or(1.0, |w| w[e]);
    }
    Ok(total)
}

fn check_weights(net: &Network, w: &[f64]) -> Result<()> {
    if w.len() != net.edge_count() {
        return Err(Error::LengthMismatch { expected: net.edge_count(), got: w.len() });
    }
    for (e, edge) in net.edges().iter().enumerate() {
        if w[e].is_nan() {
            return Err(Error::InvalidArgument(format!("weight of edge {} is NaN", e + 1)));
        }
        if !edge.directed && w[e] < 0.0 {
            return Err(Error::NegativeUndirectedWeight(
                net.vertex(edge.tail).id.clone(),
                net.vertex(edge.head).id.clone(),
            ));
        }
    }
    Ok(())
}

fn trace(pred: &[Option<usize>], source: usize, target: usize) -> Option<Vec<usize>> {
    if source != target && pred[target].is_none() {
        return None;
    }
    let mut path = vec![target];
    let mut cur = target;
    while cur != source {
        cur = pred[cur]?;
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    cost: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (cost, vertex)
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Out-adjacency: `(neighbour, edge, reversed)` sorted by neighbour then edge.
struct Adjacency {
    out: Vec<Vec<(usize, usize, bool)>>,
}

impl Adjacency {
    fn new(net: &Network) -> Self {
        let mut out = vec![Vec::new(); net.vertex_count()];
        for (e, edge) in net.edges().iter().enumerate() {
            out[edge.tail].push((edge.head, e, false));
            if !edge.directed {
                out[edge.head].push((edge.tail, e, true));
            }
        }
        for list in &mut out {
            list.sort_unstable();
        }
        Self { out }
    }

    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let n = self.out.len();
        let mut pred = vec![None; n];
        let mut seen = vec![false; n];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &(v, _, _) in &self.out[u] {
                if !seen[v] {
                    seen[v] = true;
                    pred[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        pred
    }

    /// With potentials `h`, each step `u -> v` costs the reduced weight
    /// `w + h[u] - h[v]`, which is non-negative up to rounding.
    fn dijkstra(&self, source: usize, w: &[f64], h: Option<&[f64]>) -> (Vec<f64>, Vec<Option<usize>>) {
        let n = self.out.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![None; n];
        let mut done = vec![false; n];
        dist[source] = 0.0;
        let mut heap = BinaryHeap::from([Entry { cost: 0.0, vertex: source }]);
        while let Some(Entry { cost, vertex: u }) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for &(v, e, _) in &self.out[u] {
                let step = match h {
                    Some(h) => (w[e] + h[u] - h[v]).max(0.0),
                    None => w[e],
                };
                let next = cost + step;
                if next < dist[v] {
                    dist[v] = next;
                    pred[v] = Some(u);
                    heap.push(Entry { cost: next, vertex: v });
                }
            }
        }
        (dist, pred)
    }

    fn bellman_ford(&self, net: &Network, source: usize, w: &[f64]) -> Result<(Vec<f64>, Vec<Option<usize>>)> {
        let n = self.out.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![None; n];
        dist[source] = 0.0;
        for _ in 1..n.max(1) {
            let mut changed = false;
            for u in 0..n {
                if dist[u].is_infinite() {
                    continue;
                }
                for &(v, e, _) in &self.out[u] {
                    let next = dist[u] + w[e];
                    if next < dist[v] {
                        dist[v] = next;
                        pred[v] = Some(u);
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok((dist, pred));
            }
        }
        for u in 0..n {
            if dist[u].is_infinite() {
                continue;
            }
            for &(v, e, _) in &self.out[u] {
                if dist[u] + w[e] < dist[v] {
                    return Err(Error::NegativeCycle(net.vertex(source).id.clone()));
                }
            }
        }
        Ok((dist, pred))
    }

    /// Johnson potentials: Bellman-Ford from a virtual source joined to
    /// every vertex by a zero-weight arc.
    fn potentials(&self, net: &Network, w: &[f64]) -> Result<Vec<f64>> {
        let n = self.out.len();
        let mut h = vec![0.0; n];
        // n + 1 vertices including the virtual source: n passes settle it,
        // one more proves there is no negative cycle
        for _ in 0..=n {
            let mut changed = false;
            for u in 0..n {
                for &(v, e, _) in &self.out[u] {
                    let next = h[u] + w[e];
                    if next < h[v] {
                        h[v] = next;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(h);
            }
        }
        Err(Error::NegativeCycle(
            net.vertices().first().map(|v| v.id.clone()).unwrap_or_default(),
        ))
    }
}

/// All-pairs shortest distances via Johnson's algorithm (`None` when
/// unreachable). Sources are processed in parallel.
pub fn johnson_all_pairs(net: &Network, weights: &[f64]) -> Result<Vec<Vec<Option<f64>>>> {
    check_weights(net, weights)?;
    let adjacency = Adjacency::new(net);
    let h = adjacency.potentials(net, weights)?;
    (0..net.vertex_count())
        .into_par_iter()
        .map(|s| {
            let (_, pred) = adjacency.dijkstra(s, weights, Some(&h));
            (0..net.vertex_count())
                .map(|t| trace(&pred, s, t).map(|p| sum_along(net, &p, Some(weights))).transpose())
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// All-pairs distances by repeated Bellman-Ford, for cross-checking.
pub fn bellman_ford_all_pairs(net: &Network, weights: &[f64]) -> Result<Vec<Vec<Option<f64>>>> {
    check_weights(net, weights)?;
    let adjacency = Adjacency::new(net);
    (0..net.vertex_count())
        .map(|s| {
            let (_, pred) = adjacency.bellman_ford(net, s, weights)?;
            (0..net.vertex_count())
                .map(|t| trace(&pred, s, t).map(|p| sum_along(net, &p, Some(weights))).transpose())
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}
