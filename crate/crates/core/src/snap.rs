//! Event-to-edge alignment.
//!
//! For an edge with endpoints `v1`, `v2` and an event `xi`, let
//! `a = v2 - v1`, `b = xi - v1`, `c = xi - v2`. The projection of `b` on `a`
//! is `b1 = t a` with `t = (b . a) / (a . a)` and the rejection is
//! `b2 = b - b1`. The closest vector, and thus the event-to-edge distance, is
//!
//! * `b2` when `0 < t < 1` (the event lies beside the segment),
//! * `b` when `t <= 0` (beyond the tail),
//! * `c` when `t >= 1` (beyond the head).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::events::EventTable;
use crate::graph::Network;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectionCase {
    Interior,
    NearTail,
    NearHead,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionResult {
    pub case: ProjectionCase,
    pub distance: f64,
    /// Closest point on the segment.
    pub foot: [f64; 2],
    /// Signed scalar projection in units of the segment length.
    pub t: f64,
}

pub fn project_point_to_segment(xi: [f64; 2], v1: [f64; 2], v2: [f64; 2]) -> Result<ProjectionResult> {
    let a = [v2[0] - v1[0], v2[1] - v1[1]];
    let aa = a[0] * a[0] + a[1] * a[1];
    if aa == 0.0 {
        return Err(Error::DegenerateSegment(v1[0], v1[1]));
    }
    let b = [xi[0] - v1[0], xi[1] - v1[1]];
    let t = (b[0] * a[0] + b[1] * a[1]) / aa;
    if t <= 0.0 {
        Ok(ProjectionResult {
            case: ProjectionCase::NearTail,
            distance: b[0].hypot(b[1]),
            foot: v1,
            t,
        })
    } else if t >= 1.0 {
        let c = [xi[0] - v2[0], xi[1] - v2[1]];
        Ok(ProjectionResult {
            case: ProjectionCase::NearHead,
            distance: c[0].hypot(c[1]),
            foot: v2,
            t,
        })
    } else {
        let b1 = [t * a[0], t * a[1]];
        let b2 = [b[0] - b1[0], b[1] - b1[1]];
        Ok(ProjectionResult {
            case: ProjectionCase::Interior,
            distance: b2[0].hypot(b2[1]),
            foot: [v1[0] + b1[0], v1[1] + b1[1]],
            t,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Unassigned {
    pub event: usize,
    /// Distance to the nearest edge (infinite when the network has no edges).
    pub distance: f64,
}

/// Partition of the events over the edges.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Assignment {
    /// Event indices per edge, ascending.
    pub edge_events: Vec<Vec<usize>>,
    pub unassigned: Vec<Unassigned>,
}

impl Assignment {
    pub fn count(&self, edge: usize) -> usize {
        self.edge_events[edge].len()
    }

    pub fn assigned_count(&self) -> usize {
        self.edge_events.iter().map(Vec::len).sum()
    }

    /// Edge of every event, `None` for unassigned ones.
    pub fn event_edges(&self, n_events: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n_events];
        for (edge, events) in self.edge_events.iter().enumerate() {
            for &e in events {
                out[e] = Some(edge);
            }
        }
        out
    }
}

/// Nearest edge to a point, ties going to the lower edge index.
pub fn nearest_edge(net: &Network, point: [f64; 2]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (idx, e) in net.edges().iter().enumerate() {
        // lengths are positive, so the segment is never degenerate
        let d = match project_point_to_segment(point, net.coord(e.tail), net.coord(e.head)) {
            Ok(p) => p.distance,
            Err(_) => continue,
        };
        if best.map_or(true, |(_, bd)| d < bd) {
            best = Some((idx, d));
        }
    }
    best
}

/// Assign every event to its nearest edge among edges within `tau`.
pub fn assign_events(net: &Network, events: &EventTable, tau: f64) -> Assignment {
    let nearest: Vec<Option<(usize, f64)>> = events
        .events()
        .par_iter()
        .map(|ev| nearest_edge(net, [ev.x, ev.y]))
        .collect();
    let mut assignment = Assignment {
        edge_events: vec![Vec::new(); net.edge_count()],
        unassigned: Vec::new(),
    };
    for (event, hit) in nearest.into_iter().enumerate() {
        match hit {
            Some((edge, d)) if d <= tau => assignment.edge_events[edge].push(event),
            Some((_, d)) => assignment.unassigned.push(Unassigned { event, distance: d }),
            None => assignment.unassigned.push(Unassigned { event, distance: f64::INFINITY }),
        }
    }
    assignment
}
