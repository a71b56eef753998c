#![allow(dead_code)]

pub mod svg;

use std::path::PathBuf;

use ndarray::Array2;
use netintensity::io::{read_inputs, EdgeSource};
use netintensity::{build_network, Event, EventTable, GraphKind, Mark, Network};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Directory of the chicago export (`nodes.csv`, `edges.csv`, `events.csv`).
pub fn chicago_dir() -> PathBuf {
    std::env::var_os("NETINTENSITY_CHICAGO_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/chicago"))
}

pub fn chicago(kind: GraphKind) -> Result<(Network, EventTable), String> {
    let dir = chicago_dir();
    let (nodes, edges, events) = (dir.join("nodes.csv"), dir.join("edges.csv"), dir.join("events.csv"));
    for p in [&nodes, &edges, &events] {
        if !p.exists() {
            return Err(format!("chicago fixture missing: {}", p.display()));
        }
    }
    read_inputs(&nodes, EdgeSource::EdgeList(&edges), Some(&events), kind, 5.0).map_err(|e| e.to_string())
}

/// `rows x cols` lattice, vertices `V1..` in row-major order, 4-neighbour edges.
pub fn grid(rows: usize, cols: usize, spacing: f64, kind: GraphKind) -> Network {
    let n = rows * cols;
    let mut a = Array2::zeros((n, n));
    let mut coords = Vec::with_capacity(n);
    for r in 0..rows {
        for c in 0..cols {
            let i = r * cols + c;
            coords.push([c as f64 * spacing, r as f64 * spacing]);
            if c + 1 < cols {
                a[[i, i + 1]] = 1.0;
                if kind != GraphKind::Directed {
                    a[[i + 1, i]] = 1.0;
                }
            }
            if r + 1 < rows {
                a[[i, i + cols]] = 1.0;
                if kind == GraphKind::Undirected {
                    a[[i + cols, i]] = 1.0;
                }
            }
        }
    }
    build_network(a.view(), &coords, kind, 5.0).unwrap()
}

/// Random graph on `n` vertices with coordinates in `[0, 100)^2`. Each
/// unordered pair is joined with probability `p`; undirected kinds add edges,
/// directed adds an arc in a random direction, mixed picks either.
pub fn random_network(rng: &mut impl Rng, n: usize, p: f64, kind: GraphKind) -> Network {
    let coords: Vec<[f64; 2]> = (0..n).map(|_| [rng.random_range(0.0..100.0), rng.random_range(0.0..100.0)]).collect();
    let mut a = Array2::zeros((n, n));
    for i in 0..n {
        for j in (i + 1)..n {
            if !rng.random_bool(p) {
                continue;
            }
            let (t, h) = if rng.random_bool(0.5) { (i, j) } else { (j, i) };
            let undirected = match kind {
                GraphKind::Undirected => true,
                GraphKind::Directed => false,
                GraphKind::Mixed => rng.random_bool(0.5),
            };
            a[[t, h]] = 1.0;
            if undirected {
                a[[h, t]] = 1.0;
            }
        }
    }
    build_network(a.view(), &coords, kind, 5.0).unwrap()
}

/// Events scattered near random edges, with categorical marks drawn from `levels`.
pub fn random_events(rng: &mut impl Rng, net: &Network, m: usize, spread: f64, levels: &[&str]) -> EventTable {
    let events = (0..m)
        .map(|_| {
            let (x, y) = if net.edge_count() == 0 {
                (rng.random_range(0.0..100.0), rng.random_range(0.0..100.0))
            } else {
                let e = net.edge(rng.random_range(0..net.edge_count()));
                let (a, b) = (net.coord(e.tail), net.coord(e.head));
                let t: f64 = rng.random_range(0.0..1.0);
                (
                    a[0] + t * (b[0] - a[0]) + rng.random_range(-spread..spread),
                    a[1] + t * (b[1] - a[1]) + rng.random_range(-spread..spread),
                )
            };
            if levels.is_empty() {
                Event::new(x, y)
            } else {
                Event::marked(x, y, Mark::Category(levels[rng.random_range(0..levels.len())].to_string()))
            }
        })
        .collect();
    EventTable::new(events)
}

/// Point-to-segment distance by a dense scan of the segment followed by
/// golden-section refinement around the best grid point.
pub fn grid_distance(p: [f64; 2], v1: [f64; 2], v2: [f64; 2]) -> f64 {
    let dist = |t: f64| {
        let q = [v1[0] + t * (v2[0] - v1[0]), v1[1] + t * (v2[1] - v1[1])];
        (p[0] - q[0]).hypot(p[1] - q[1])
    };
    const STEPS: usize = 1000;
    let best = (0..=STEPS).min_by(|&a, &b| dist(a as f64 / STEPS as f64).total_cmp(&dist(b as f64 / STEPS as f64))).unwrap();
    let (mut lo, mut hi) = (best.saturating_sub(1) as f64 / STEPS as f64, ((best + 1).min(STEPS)) as f64 / STEPS as f64);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let (m1, m2) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
        if dist(m1) <= dist(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    [dist(lo), dist(hi), dist(0.5 * (lo + hi)), dist(0.0), dist(1.0)].into_iter().fold(f64::INFINITY, f64::min)
}

/// Cheapest simple path by exhaustive enumeration (weights along the
/// traversable edges; unit weights when `w` is `None`).
pub fn brute_force_path(net: &Network, w: Option<&[f64]>, s: usize, t: usize) -> Option<f64> {
    fn go(net: &Network, w: Option<&[f64]>, v: usize, t: usize, seen: &mut Vec<bool>, acc: f64, best: &mut Option<f64>) {
        if v == t {
            if best.is_none_or(|b| acc < b) {
                *best = Some(acc);
            }
            return;
        }
        for &e in net.incident_edges(v) {
            let edge = net.edge(e);
            let u = edge.other(v);
            if seen[u] || !edge.traversable(v, u) {
                continue;
            }
            seen[u] = true;
            go(net, w, u, t, seen, acc + w.map_or(1.0, |w| w[e]), best);
            seen[u] = false;
        }
    }
    let mut seen = vec![false; net.vertex_count()];
    seen[s] = true;
    let mut best = None;
    go(net, w, s, t, &mut seen, 0.0, &mut best);
    best
}

/// All-pairs hop distances on the undirected skeleton by Floyd-Warshall.
pub fn hop_oracle(net: &Network) -> Vec<Vec<Option<usize>>> {
    let n = net.vertex_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for e in net.edges() {
        d[e.tail][e.head] = 1;
        d[e.head][e.tail] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d.into_iter().map(|r| r.into_iter().map(|v| (v < inf).then_some(v)).collect()).collect()
}

/// Dense first-order weight matrix on the skeleton.
pub fn dense_weights(net: &Network, row_standardized: bool) -> Array2<f64> {
    let n = net.vertex_count();
    let mut w = Array2::zeros((n, n));
    for e in net.edges() {
        w[[e.tail, e.head]] = 1.0;
        w[[e.head, e.tail]] = 1.0;
    }
    if row_standardized {
        for mut row in w.rows_mut() {
            let s: f64 = row.sum();
            if s > 0.0 {
                row.mapv_inplace(|v| v / s);
            }
        }
    }
    w
}

/// Every arrangement of `values`, by Heap's algorithm.
pub fn permutations(values: &[f64]) -> Vec<Vec<f64>> {
    let mut a = values.to_vec();
    let n = a.len();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-300) || a == b
}
