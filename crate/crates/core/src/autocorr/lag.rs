use std::collections::VecDeque;

use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Network;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LagMode {
    #[default]
    Partial,
    Cumulative,
}

/// Binary neighbourhood at lag `order`, stored as sorted neighbour lists.
#[derive(Debug, Clone, PartialEq)]
pub struct LagStructure {
    pub order: usize,
    pub mode: LagMode,
    neighbors: Vec<Vec<usize>>,
}

impl LagStructure {
    /// The identity neighbourhood used for lag 0.
    pub fn identity(n: usize) -> Self {
        Self { order: 0, mode: LagMode::Partial, neighbors: (0..n).map(|i| vec![i]).collect() }
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    /// Number of ordered pairs `(i, j)` with `W[i][j] = 1`.
    pub fn pair_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum()
    }

    pub fn matrix(&self) -> Array2<u8> {
        let n = self.neighbors.len();
        let mut m = Array2::zeros((n, n));
        for (i, list) in self.neighbors.iter().enumerate() {
            for &j in list {
                m[[i, j]] = 1;
            }
        }
        m
    }
}

/// Hop distances on the undirected skeleton; `None` when unreachable.
pub fn hop_distances(net: &Network) -> Vec<Vec<Option<usize>>> {
    let n = net.vertex_count();
    let skeleton: Vec<Vec<usize>> = (0..n).map(|v| net.skeleton_neighbors(v)).collect();
    (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![None; n];
            dist[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let du = dist[u].unwrap_or(0);
                for &v in &skeleton[u] {
                    if dist[v].is_none() {
                        dist[v] = Some(du + 1);
                        queue.push_back(v);
                    }
                }
            }
            dist
        })
        .collect()
}

fn from_hops(hops: &[Vec<Option<usize>>], k: usize, mode: LagMode) -> LagStructure {
    let neighbors = hops
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, d)| match (mode, d) {
                    (LagMode::Partial, Some(d)) => *d == k,
                    (LagMode::Cumulative, Some(d)) => (1..=k).contains(d),
                    (_, None) => false,
                })
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    LagStructure { order: k, mode, neighbors }
}

pub fn lag_matrix(net: &Network, k: usize, mode: LagMode) -> Result<LagStructure> {
    if k == 0 {
        return Err(Error::InvalidArgument("lag order must be at least 1".into()));
    }
    Ok(from_hops(&hop_distances(net), k, mode))
}

/// Lag structures for orders `1..=lag_max`, sharing one hop-distance pass.
pub fn lag_structures(net: &Network, lag_max: usize, mode: LagMode) -> Result<Vec<LagStructure>> {
    if lag_max == 0 {
        return Err(Error::InvalidArgument("lag_max must be at least 1".into()));
    }
    let hops = hop_distances(net);
    Ok((1..=lag_max).map(|k| from_hops(&hops, k, mode)).collect())
}
