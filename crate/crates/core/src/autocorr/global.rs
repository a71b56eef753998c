use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::lag::{lag_structures, LagMode, LagStructure};
use crate::error::{Error, Result};
use crate::graph::Network;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DependenceType {
    Correlation,
    Covariance,
    Moran,
    Geary,
}

impl FromStr for DependenceType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "correlation" => Ok(Self::Correlation),
            "covariance" => Ok(Self::Covariance),
            "moran" => Ok(Self::Moran),
            "geary" => Ok(Self::Geary),
            other => Err(Error::InvalidArgument(format!("unknown dependence type {other:?}"))),
        }
    }
}

/// How lagged covariance and correlation pair values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CorrelationConvention {
    /// Mean product over lag pairs: `cov_k = sum_ij W_k z_i z_j / S0` with
    /// `cov_0 = sum z^2 / n`; `corr_k = cov_k / var(x)` with the `n - 1`
    /// variance and `corr_0 = 1`.
    #[default]
    PairProduct,
    /// Pearson statistics between `x_i` and the lag-neighbour mean of `x`,
    /// over vertices with a nonempty lag neighbourhood.
    NeighborMean,
}

/// Lagged autocorrelation for lags `0..=lag_max`.
pub fn node_general_correlation(
    net: &Network,
    dep_type: DependenceType,
    lag_max: usize,
    x: &[f64],
    mode: LagMode,
) -> Result<Vec<f64>> {
    node_general_correlation_with(net, dep_type, lag_max, x, mode, CorrelationConvention::default())
}

pub fn node_general_correlation_with(
    net: &Network,
    dep_type: DependenceType,
    lag_max: usize,
    x: &[f64],
    mode: LagMode,
    convention: CorrelationConvention,
) -> Result<Vec<f64>> {
    let n = net.vertex_count();
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x.len() });
    }
    let lags = lag_structures(net, lag_max, mode)?;
    let mean = x.iter().sum::<f64>() / n as f64;
    let z: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let ss: f64 = z.iter().map(|v| v * v).sum();
    if ss == 0.0 {
        log::warn!("values are constant; {dep_type:?} is undefined beyond the lag-0 covariance");
    }
    let mut out = Vec::with_capacity(lag_max + 1);
    out.push(match dep_type {
        DependenceType::Covariance => match convention {
            CorrelationConvention::PairProduct => ss / n as f64,
            CorrelationConvention::NeighborMean => ss / (n as f64 - 1.0),
        },
        DependenceType::Correlation if ss == 0.0 => f64::NAN,
        DependenceType::Correlation => 1.0,
        _ => pair_statistic(dep_type, &LagStructure::identity(n), x, &z, ss),
    });
    for lag in &lags {
        if lag.pair_count() == 0 {
            log::warn!("lag {} has no vertex pairs", lag.order);
            out.push(f64::NAN);
            continue;
        }
        out.push(match (dep_type, convention) {
            (DependenceType::Correlation | DependenceType::Covariance, CorrelationConvention::NeighborMean) => {
                neighbor_mean(dep_type, lag, x)
            }
            _ => pair_statistic(dep_type, lag, x, &z, ss),
        });
    }
    Ok(out)
}

fn pair_statistic(dep_type: DependenceType, lag: &LagStructure, x: &[f64], z: &[f64], ss: f64) -> f64 {
    let n = x.len() as f64;
    let s0 = lag.pair_count() as f64;
    let mut cross = 0.0;
    let mut squared = 0.0;
    for i in 0..lag.len() {
        for &j in lag.neighbors(i) {
            cross += z[i] * z[j];
            squared += (x[i] - x[j]) * (x[i] - x[j]);
        }
    }
    let undefined = ss == 0.0;
    match dep_type {
        DependenceType::Covariance => cross / s0,
        DependenceType::Correlation if undefined => f64::NAN,
        DependenceType::Correlation => (cross / s0) / (ss / (n - 1.0)),
        DependenceType::Moran if undefined => f64::NAN,
        DependenceType::Moran => (n / s0) * cross / ss,
        DependenceType::Geary if undefined => f64::NAN,
        DependenceType::Geary => ((n - 1.0) / (2.0 * s0)) * squared / ss,
    }
}

fn neighbor_mean(dep_type: DependenceType, lag: &LagStructure, x: &[f64]) -> f64 {
    let pairs: Vec<(f64, f64)> = (0..lag.len())
        .filter(|&i| !lag.neighbors(i).is_empty())
        .map(|i| {
            let nb = lag.neighbors(i);
            (x[i], nb.iter().map(|&j| x[j]).sum::<f64>() / nb.len() as f64)
        })
        .collect();
    let m = pairs.len() as f64;
    if pairs.len() < 2 {
        return f64::NAN;
    }
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pairs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    match dep_type {
        DependenceType::Covariance => sxy / (m - 1.0),
        _ => {
            let sxx: f64 = pairs.iter().map(|p| (p.0 - mx).powi(2)).sum();
            let syy: f64 = pairs.iter().map(|p| (p.1 - my).powi(2)).sum();
            if sxx == 0.0 || syy == 0.0 {
                f64::NAN
            } else {
                sxy / (sxx.sqrt() * syy.sqrt())
            }
        }
    }
}
