mod common;

use netintensity::autocorr::{
    getis_rows, hop_distances, lag_matrix, local_geary_with, local_moran_with, node_general_correlation,
    permutation_oracle, permutation_oracle_with, DependenceType, LagMode, LocalStatistic, WeightStyle,
};
use netintensity::{GraphKind, Network};
use proptest::prelude::*;
use rand::Rng;

use common::{dense_weights, hop_oracle, permutations, random_network, rel_close, rng};

fn values(r: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| r.random_range(0.0..1.0f64).powi(2) * 0.05).collect()
}

fn style() -> impl Strategy<Value = WeightStyle> {
    prop_oneof![Just(WeightStyle::RowStandardized), Just(WeightStyle::Binary)]
}

fn kind() -> impl Strategy<Value = GraphKind> {
    prop_oneof![Just(GraphKind::Undirected), Just(GraphKind::Directed), Just(GraphKind::Mixed)]
}

/// Mean and population variance of `stat` over every arrangement of the
/// other values around vertex `i`.
fn enumerate_moments(x: &[f64], i: usize, stat: impl Fn(&[f64]) -> f64) -> (f64, f64) {
    let others: Vec<f64> = x.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
    let mut vals = Vec::new();
    for perm in permutations(&others) {
        let mut y = Vec::with_capacity(x.len());
        let mut it = perm.iter();
        for j in 0..x.len() {
            y.push(if j == i { x[i] } else { *it.next().unwrap() });
        }
        vals.push(stat(&y));
    }
    let m = vals.iter().sum::<f64>() / vals.len() as f64;
    let v = vals.iter().map(|s| (s - m).powi(2)).sum::<f64>() / vals.len() as f64;
    (m, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn lags_partition_hop_distances(seed in any::<u64>(), n in 1usize..=12, k in kind()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.25, k);
        let oracle = hop_oracle(&net);
        prop_assert_eq!(&hop_distances(&net), &oracle);
        let diam = oracle.iter().flatten().flatten().copied().max().unwrap_or(0).max(1);
        let mut union = vec![vec![0u8; n]; n];
        for lag in 1..=diam {
            let m = lag_matrix(&net, lag, LagMode::Partial).unwrap().matrix();
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(m[[i, j]] == 1, oracle[i][j] == Some(lag));
                    prop_assert!(union[i][j] + m[[i, j]] <= 1, "partial lags overlap");
                    union[i][j] += m[[i, j]];
                }
            }
            let c = lag_matrix(&net, lag, LagMode::Cumulative).unwrap().matrix();
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(c[[i, j]], union[i][j]);
                }
            }
        }
    }

    #[test]
    fn lag_one_partial_equals_cumulative(seed in any::<u64>(), n in 3usize..20) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.3, GraphKind::Undirected);
        let x = values(&mut r, n);
        for dep in [DependenceType::Correlation, DependenceType::Covariance, DependenceType::Moran, DependenceType::Geary] {
            let p = node_general_correlation(&net, dep, 1, &x, LagMode::Partial).unwrap();
            let c = node_general_correlation(&net, dep, 1, &x, LagMode::Cumulative).unwrap();
            prop_assert_eq!(p[1].to_bits(), c[1].to_bits());
        }
    }

    #[test]
    fn local_moran_matches_direct_evaluation(seed in any::<u64>(), n in 3usize..=8, st in style()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.45, GraphKind::Undirected);
        let x = values(&mut r, n);
        let w = dense_weights(&net, st == WeightStyle::RowStandardized);
        let rows = local_moran_with(&net, &x, st).unwrap();
        let ii = |y: &[f64], i: usize| {
            let mean = y.iter().sum::<f64>() / n as f64;
            let m2 = y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
            (y[i] - mean) / m2 * (0..n).map(|j| w[[i, j]] * (y[j] - mean)).sum::<f64>()
        };
        for i in 0..n {
            let direct = ii(&x, i);
            prop_assert!((rows[i].ii - direct).abs() <= 1e-12 * direct.abs().max(1.0), "{} vs {}", rows[i].ii, direct);
            let (e, v) = enumerate_moments(&x, i, |y| ii(y, i));
            prop_assert!((rows[i].e_ii - e).abs() <= 1e-12 * e.abs().max(1.0), "E {} vs {}", rows[i].e_ii, e);
            prop_assert!((rows[i].var_ii - v).abs() <= 1e-12 * v.abs().max(1.0), "Var {} vs {}", rows[i].var_ii, v);
        }
    }

    #[test]
    fn local_geary_matches_direct_evaluation(seed in any::<u64>(), n in 2usize..=8, st in style()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.45, GraphKind::Mixed);
        let x = values(&mut r, n);
        let w = dense_weights(&net, st == WeightStyle::RowStandardized);
        let mean = x.iter().sum::<f64>() / n as f64;
        let s2 = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        let got = local_geary_with(&net, &x, st).unwrap();
        for i in 0..n {
            let direct = (0..n).map(|j| w[[i, j]] * (x[i] - x[j]).powi(2)).sum::<f64>() / s2;
            prop_assert!((got[i] - direct).abs() <= 1e-12 * direct.max(1.0));
        }
    }

    #[test]
    fn local_getis_matches_enumerated_moments(seed in any::<u64>(), n in 3usize..=8, st in style()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.45, GraphKind::Undirected);
        let x: Vec<f64> = (0..n).map(|_| r.random_range(0.1..5.0)).collect();
        let w = dense_weights(&net, st == WeightStyle::RowStandardized);
        let rows = getis_rows(&net, &x, st).unwrap();
        for i in 0..n {
            let g = |y: &[f64]| {
                let others: f64 = (0..n).filter(|&j| j != i).map(|j| y[j]).sum();
                (0..n).map(|j| w[[i, j]] * y[j]).sum::<f64>() / others
            };
            let direct = g(&x);
            prop_assert!((rows[i].g - direct).abs() <= 1e-12 * direct.max(1.0));
            let (e, v) = enumerate_moments(&x, i, g);
            prop_assert!((rows[i].e_g - e).abs() <= 1e-12 * e.max(1.0));
            prop_assert!((rows[i].var_g - v).abs() <= 1e-12 * v.max(e * e), "{} vs {}", rows[i].var_g, v);
            if v > 1e-20 {
                let z = (direct - e) / v.sqrt();
                prop_assert!((rows[i].z - z).abs() <= 1e-9 * z.abs().max(1.0), "{} vs {}", rows[i].z, z);
            }
        }
    }

    #[test]
    fn affine_invariance(seed in any::<u64>(), n in 4usize..25, a in prop_oneof![-50.0..-0.1f64, 0.1..50.0f64], b in -10.0..10.0f64) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.3, GraphKind::Undirected);
        let x = values(&mut r, n);
        let y: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let close = |p: f64, q: f64| (p.is_nan() && q.is_nan()) || (p - q).abs() <= 1e-10 * p.abs().max(1.0);
        let (lx, ly) = (local_moran_with(&net, &x, WeightStyle::RowStandardized).unwrap(), local_moran_with(&net, &y, WeightStyle::RowStandardized).unwrap());
        for (p, q) in lx.iter().zip(&ly) {
            prop_assert!(close(p.ii, q.ii), "Ii {} {}", p.ii, q.ii);
        }
        let (gx, gy) = (local_geary_with(&net, &x, WeightStyle::RowStandardized).unwrap(), local_geary_with(&net, &y, WeightStyle::RowStandardized).unwrap());
        for (p, q) in gx.iter().zip(&gy) {
            prop_assert!(close(*p, *q), "c_i {p} {q}");
        }
        for dep in [DependenceType::Correlation, DependenceType::Moran, DependenceType::Geary] {
            let (p, q) = (node_general_correlation(&net, dep, 3, &x, LagMode::Partial).unwrap(), node_general_correlation(&net, dep, 3, &y, LagMode::Partial).unwrap());
            for (u, v) in p.iter().zip(&q) {
                prop_assert!(close(*u, *v), "{dep:?} {u} {v}");
            }
        }
        let (p, q) = (node_general_correlation(&net, DependenceType::Covariance, 3, &x, LagMode::Partial).unwrap(), node_general_correlation(&net, DependenceType::Covariance, 3, &y, LagMode::Partial).unwrap());
        for (u, v) in p.iter().zip(&q) {
            prop_assert!(close(u * a * a, *v), "cov {u} {v}");
        }
    }

    #[test]
    fn local_moran_sums_to_global_cross_product(seed in any::<u64>(), n in 3usize..30) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n, 0.2, GraphKind::Undirected);
        let x = values(&mut r, n);
        let rows = local_moran_with(&net, &x, WeightStyle::Binary).unwrap();
        let w = dense_weights(&net, false);
        let mean = x.iter().sum::<f64>() / n as f64;
        let z: Vec<f64> = x.iter().map(|v| v - mean).collect();
        let m2 = z.iter().map(|v| v * v).sum::<f64>() / n as f64;
        let cross: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| w[[i, j]] * z[i] * z[j]).sum();
        let total: f64 = rows.iter().map(|r| r.ii).sum();
        prop_assert!((total - cross / m2).abs() <= 1e-10 * (cross / m2).abs().max(1.0));
        // and the global Moran at lag 1 is the same quantity scaled by n / S0
        let s0: f64 = w.sum();
        if s0 > 0.0 {
            let moran = node_general_correlation(&net, DependenceType::Moran, 1, &x, LagMode::Partial).unwrap()[1];
            prop_assert!(rel_close(moran, total / s0, 1e-10), "{moran} vs {}", total / s0);
        }
    }
}

fn fixtures() -> Vec<(Network, Vec<f64>)> {
    (0..5)
        .map(|k| {
            let mut r = rng(900 + k);
            let n = 6 + 3 * k as usize;
            let net = random_network(&mut r, n, 0.35, GraphKind::Undirected);
            let x = values(&mut r, n);
            (net, x)
        })
        .collect()
}

#[test]
fn permutation_mean_matches_analytic_moran_expectation() {
    for (net, x) in fixtures() {
        let rows = local_moran_with(&net, &x, WeightStyle::RowStandardized).unwrap();
        let sims = permutation_oracle(&net, &x, LocalStatistic::Moran, 10_000, 17).unwrap();
        for (row, sim) in rows.iter().zip(&sims) {
            assert_eq!(row.ii, sim.observed);
            let tol = 3.0 * sim.std_error();
            assert!((sim.mean - row.e_ii).abs() <= tol.max(1e-15), "mean {} vs E {} (3 SE = {tol})", sim.mean, row.e_ii);
            // the sample variance converges too; a loose relative check
            if row.var_ii > 0.0 {
                assert!((sim.variance / row.var_ii - 1.0).abs() < 0.1, "var {} vs {}", sim.variance, row.var_ii);
            }
        }
    }
}

#[test]
fn permutation_mean_matches_analytic_getis_expectation() {
    for (net, x) in fixtures() {
        let rows = getis_rows(&net, &x, WeightStyle::Binary).unwrap();
        let sims = permutation_oracle_with(&net, &x, LocalStatistic::Getis, 10_000, 5, WeightStyle::Binary).unwrap();
        for (row, sim) in rows.iter().zip(&sims) {
            assert!(rel_close(row.g, sim.observed, 1e-12));
            assert!((sim.mean - row.e_g).abs() <= (3.0 * sim.std_error()).max(1e-15));
        }
    }
}

#[test]
fn monte_carlo_error_shrinks_with_root_n() {
    let (net, x) = fixtures().remove(2);
    let vertex = (0..net.vertex_count()).find(|&v| !net.skeleton_neighbors(v).is_empty()).unwrap();
    let spread = |n_sim: usize| {
        let means: Vec<f64> = (0..60)
            .map(|seed| permutation_oracle(&net, &x, LocalStatistic::Moran, n_sim, seed).unwrap()[vertex].mean)
            .collect();
        let m = means.iter().sum::<f64>() / means.len() as f64;
        (means.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (means.len() - 1) as f64).sqrt()
    };
    let (s1, s2, s4) = (spread(1000), spread(2000), spread(4000));
    let halving = s1 / s4;
    assert!((halving / 2.0 - 1.0).abs() < 0.2, "quadrupling n_sim: ratio {halving}");
    let doubling = s1 / s2;
    assert!((doubling / 2f64.sqrt() - 1.0).abs() < 0.2, "doubling n_sim: ratio {doubling}");
}

#[test]
fn permutation_is_thread_count_independent() {
    let (net, x) = fixtures().remove(1);
    let base = permutation_oracle(&net, &x, LocalStatistic::Geary, 2000, 9).unwrap();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        assert_eq!(pool.install(|| permutation_oracle(&net, &x, LocalStatistic::Geary, 2000, 9).unwrap()), base);
    }
}
