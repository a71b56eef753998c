//! Conditional-permutation reference distributions for local statistics.
//!
//! For vertex `i` the value `x_i` stays in place and the neighbourhood is
//! filled with a uniform draw without replacement from the other `n - 1`
//! values. Each vertex has its own ChaCha stream, so the output does not
//! depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::local::{centered, WeightStyle, Weights};
use crate::error::{Error, Result};
use crate::graph::Network;

pub const MIN_SIMULATIONS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalStatistic {
    /// Local Moran `I_i`.
    Moran,
    /// Local Geary `c_i`.
    Geary,
    /// Raw Getis-Ord `G_i`.
    Getis,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PermutationMoments {
    pub observed: f64,
    pub mean: f64,
    /// Sample variance of the replicates.
    pub variance: f64,
    /// Folded pseudo p-value `(min(k, n_sim - k) + 1) / (n_sim + 1)` where
    /// `k` counts replicates at or above the observed value.
    pub p: f64,
    pub n_sim: usize,
}

impl PermutationMoments {
    /// Monte-Carlo standard error of `mean`.
    pub fn std_error(&self) -> f64 {
        (self.variance / self.n_sim as f64).sqrt()
    }

    pub fn z(&self) -> f64 {
        let d = self.observed - self.mean;
        if self.variance > 0.0 {
            d / self.variance.sqrt()
        } else if d == 0.0 {
            0.0
        } else {
            f64::NAN
        }
    }
}

pub fn permutation_oracle(
    net: &Network,
    x: &[f64],
    statistic: LocalStatistic,
    n_sim: usize,
    seed: u64,
) -> Result<Vec<PermutationMoments>> {
    permutation_oracle_with(net, x, statistic, n_sim, seed, WeightStyle::default())
}

pub fn permutation_oracle_with(
    net: &Network,
    x: &[f64],
    statistic: LocalStatistic,
    n_sim: usize,
    seed: u64,
    style: WeightStyle,
) -> Result<Vec<PermutationMoments>> {
    let n = net.vertex_count();
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x.len() });
    }
    if n_sim < MIN_SIMULATIONS {
        return Err(Error::InvalidArgument(format!("n_sim must be at least {MIN_SIMULATIONS}, got {n_sim}")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 vertices, got {n}")));
    }
    let w = Weights::new(net, style);
    let (z, ss) = centered(x);
    let m2 = ss / n as f64;
    let s2 = ss / (n as f64 - 1.0);
    let total: f64 = x.iter().sum();

    // statistic of vertex i given the neighbour values (as indices into x)
    let stat = |i: usize, nb: &[usize]| -> f64 {
        if nb.is_empty() {
            return 0.0;
        }
        let wt = w.weight(i);
        match statistic {
            LocalStatistic::Moran if ss == 0.0 => 0.0,
            LocalStatistic::Moran => z[i] / m2 * (wt * nb.iter().map(|&j| z[j]).sum::<f64>()),
            LocalStatistic::Geary => wt * nb.iter().map(|&j| (x[i] - x[j]).powi(2)).sum::<f64>() / s2,
            LocalStatistic::Getis => wt * nb.iter().map(|&j| x[j]).sum::<f64>() / (total - x[i]),
        }
    };

    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let neighbors = &w.neighbors[i];
            let observed = stat(i, neighbors);
            let d = neighbors.len();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let mut pool: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let mut larger = 0usize;
            let mut sum_sq = 0.0;
            let mut replicates = Vec::with_capacity(n_sim);
            for _ in 0..n_sim {
                // partial Fisher-Yates: the first d slots become the sample
                for k in 0..d {
                    let r = rng.random_range(k..pool.len());
                    pool.swap(k, r);
                }
                let s = stat(i, &pool[..d]);
                if s >= observed {
                    larger += 1;
                }
                replicates.push(s);
            }
            // shifted by the first replicate so identical replicates give exactly 0
            let shift = replicates[0];
            let mut sum_d = 0.0;
            for s in &replicates {
                sum_d += s - shift;
                sum_sq += (s - shift) * (s - shift);
            }
            let mean = shift + sum_d / n_sim as f64;
            let variance = ((sum_sq - sum_d * sum_d / n_sim as f64) / (n_sim as f64 - 1.0)).max(0.0);
            let p = (larger.min(n_sim - larger) + 1) as f64 / (n_sim + 1) as f64;
            PermutationMoments { observed, mean, variance, p, n_sim }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_network, GraphKind};
    use ndarray::array;

    fn path4() -> Network {
        let a = array![[0., 1., 0., 0.], [1., 0., 1., 0.], [0., 1., 0., 1.], [0., 0., 1., 0.]];
        build_network(a.view(), &[[0., 0.], [1., 0.], [2., 0.], [3., 0.]], GraphKind::Undirected, 5.0).unwrap()
    }

    #[test]
    fn seeded_and_reproducible() {
        let net = path4();
        let x = [1.0, 3.0, 2.0, 8.0];
        let a = permutation_oracle(&net, &x, LocalStatistic::Moran, 1000, 7).unwrap();
        let b = permutation_oracle(&net, &x, LocalStatistic::Moran, 1000, 7).unwrap();
        assert_eq!(a, b);
        let c = permutation_oracle(&net, &x, LocalStatistic::Moran, 1000, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn constant_values_have_zero_variance() {
        let net = path4();
        for stat in [LocalStatistic::Moran, LocalStatistic::Getis] {
            for m in permutation_oracle(&net, &[2.0; 4], stat, 1000, 1).unwrap() {
                assert_eq!(m.variance, 0.0);
                assert_eq!(m.z(), 0.0);
            }
        }
    }

    #[test]
    fn too_few_simulations() {
        assert!(permutation_oracle(&path4(), &[1., 2., 3., 4.], LocalStatistic::Moran, 999, 1).is_err());
    }
}
