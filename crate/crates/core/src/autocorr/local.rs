use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::graph::Network;

/// First-order weights on the undirected skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum WeightStyle {
    /// `w_ij = 1 / deg(i)` for neighbours of `i`.
    #[default]
    RowStandardized,
    /// `w_ij = 1` for neighbours of `i`.
    Binary,
}

pub(crate) struct Weights {
    pub neighbors: Vec<Vec<usize>>,
    pub style: WeightStyle,
}

impl Weights {
    pub fn new(net: &Network, style: WeightStyle) -> Self {
        let neighbors = (0..net.vertex_count()).map(|v| net.skeleton_neighbors(v)).collect();
        Self { neighbors, style }
    }

    pub fn weight(&self, i: usize) -> f64 {
        match self.style {
            WeightStyle::Binary => 1.0,
            WeightStyle::RowStandardized => 1.0 / self.neighbors[i].len() as f64,
        }
    }

    /// `(W_i, sum_j w_ij^2)`.
    pub fn sums(&self, i: usize) -> (f64, f64) {
        let d = self.neighbors[i].len() as f64;
        if d == 0.0 {
            return (0.0, 0.0);
        }
        let w = self.weight(i);
        (w * d, w * w * d)
    }

    pub fn lag(&self, i: usize, values: &[f64]) -> f64 {
        self.lag_by(i, |j| values[j])
    }

    pub fn lag_by(&self, i: usize, f: impl Fn(usize) -> f64) -> f64 {
        let nb = &self.neighbors[i];
        if nb.is_empty() {
            return 0.0;
        }
        self.weight(i) * nb.iter().map(|&j| f(j)).sum::<f64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalMoranRow {
    pub ii: f64,
    pub e_ii: f64,
    pub var_ii: f64,
    pub z_ii: f64,
    pub p: f64,
}

/// Moments of `I_i` under conditional randomization: `z_i` held fixed and
/// the other `n - 1` centred values permuted. `wi` and `wi2` are the sums of
/// the weights of row `i` and of their squares.
pub fn local_moran_moments(z_i: f64, m2: f64, n: usize, wi: f64, wi2: f64) -> (f64, f64) {
    let n = n as f64;
    let e = -z_i * z_i * wi / ((n - 1.0) * m2);
    let var = (z_i / m2).powi(2) * n / (n - 2.0) * (wi2 - wi * wi / (n - 1.0)) * (m2 - z_i * z_i / (n - 1.0));
    (e, var)
}

pub(crate) fn centered(x: &[f64]) -> (Vec<f64>, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let z: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let ss = z.iter().map(|v| v * v).sum();
    (z, ss)
}

fn check_len(net: &Network, x: &[f64], min: usize) -> Result<()> {
    let n = net.vertex_count();
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x.len() });
    }
    if n < min {
        return Err(Error::InvalidArgument(format!("need at least {min} vertices, got {n}")));
    }
    Ok(())
}

pub fn local_moran(net: &Network, x: &[f64]) -> Result<Vec<LocalMoranRow>> {
    local_moran_with(net, x, WeightStyle::default())
}

/// Local Moran table. With two vertices the variance is undefined and the
/// `var_ii`, `z_ii` and `p` entries are NaN.
pub fn local_moran_with(net: &Network, x: &[f64], style: WeightStyle) -> Result<Vec<LocalMoranRow>> {
    check_len(net, x, 2)?;
    let n = x.len();
    let w = Weights::new(net, style);
    let (z, ss) = centered(x);
    if ss == 0.0 {
        log::warn!("local Moran: values are constant, moments are degenerate");
        let row = LocalMoranRow { ii: 0.0, e_ii: 0.0, var_ii: 0.0, z_ii: f64::NAN, p: f64::NAN };
        return Ok(vec![row; n]);
    }
    let m2 = ss / n as f64;
    Ok((0..n)
        .map(|i| {
            let ii = z[i] / m2 * w.lag(i, &z);
            let (wi, wi2) = w.sums(i);
            let (e_ii, var_ii) = local_moran_moments(z[i], m2, n, wi, wi2);
            let var_ii = if n > 2 { var_ii.max(0.0) } else { f64::NAN };
            let z_ii = if var_ii > 0.0 { (ii - e_ii) / var_ii.sqrt() } else { f64::NAN };
            let p = erfc(z_ii.abs() / std::f64::consts::SQRT_2);
            LocalMoranRow { ii, e_ii, var_ii, z_ii, p }
        })
        .collect())
}

pub fn local_geary(net: &Network, x: &[f64]) -> Result<Vec<f64>> {
    local_geary_with(net, x, WeightStyle::default())
}

/// `c_i = sum_j w_ij (x_i - x_j)^2 / s^2` with the sample variance `s^2`.
pub fn local_geary_with(net: &Network, x: &[f64], style: WeightStyle) -> Result<Vec<f64>> {
    check_len(net, x, 2)?;
    let n = x.len();
    let w = Weights::new(net, style);
    let (_, ss) = centered(x);
    if ss == 0.0 {
        log::warn!("local Geary: values are constant, statistic undefined");
        return Ok(vec![f64::NAN; n]);
    }
    let s2 = ss / (n as f64 - 1.0);
    Ok((0..n)
        .map(|i| w.lag_by(i, |j| (x[i] - x[j]).powi(2)) / s2)
        .collect())
}

/// Getis-Ord `G_i` (neighbours only, `j != i`) with its randomization moments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GetisRow {
    pub g: f64,
    pub e_g: f64,
    pub var_g: f64,
    pub z: f64,
}

pub fn getis_rows(net: &Network, x: &[f64], style: WeightStyle) -> Result<Vec<GetisRow>> {
    check_len(net, x, 3)?;
    let n = x.len();
    let nf = n as f64;
    let w = Weights::new(net, style);
    let total: f64 = x.iter().sum();
    let (z, ss) = centered(x);
    let mut undefined = 0usize;
    let rows = (0..n)
        .map(|i| {
            let (wi, s1i) = w.sums(i);
            let others = total - x[i];
            let g = if others == 0.0 {
                undefined += 1;
                f64::NAN
            } else {
                w.lag(i, x) / others
            };
            let e_g = wi / (nf - 1.0);
            // spread of the other n - 1 values around their own mean
            let s2_i = (ss - z[i] * z[i] * nf / (nf - 1.0)) / (nf - 1.0);
            let spread = ((nf - 1.0) * s1i - wi * wi) / (nf - 2.0);
            let var_g = if others == 0.0 {
                f64::NAN
            } else {
                let mean_i = others / (nf - 1.0);
                spread * s2_i / ((nf - 1.0) * (nf - 1.0) * mean_i * mean_i)
            };
            let denom2 = s2_i * spread;
            let z_score = if denom2 > 0.0 {
                (w.lag(i, &z) + wi * z[i] / (nf - 1.0)) / denom2.sqrt()
            } else {
                0.0
            };
            GetisRow { g, e_g, var_g, z: z_score }
        })
        .collect();
    if undefined > 0 {
        log::warn!("local Getis: {undefined} vertices have a zero sum over the other values, G undefined");
    }
    Ok(rows)
}

pub fn local_getis(net: &Network, x: &[f64]) -> Result<Vec<f64>> {
    local_getis_with(net, x, WeightStyle::default())
}

/// Local Getis-Ord z-scores.
pub fn local_getis_with(net: &Network, x: &[f64], style: WeightStyle) -> Result<Vec<f64>> {
    Ok(getis_rows(net, x, style)?.into_iter().map(|r| r.z).collect())
}
