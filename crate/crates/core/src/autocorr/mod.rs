//! Network autocorrelation of nodewise values.
//!
//! Neighbourhoods are defined on the undirected skeleton of the graph for
//! every graph kind. Global statistics run over partial (hop distance exactly
//! `k`) or cumulative (hop distance `1..=k`) lags; local statistics use
//! first-order neighbours.

mod global;
mod lag;
mod local;
mod permutation;

pub use global::{node_general_correlation, node_general_correlation_with, CorrelationConvention, DependenceType};
pub use lag::{hop_distances, lag_matrix, lag_structures, LagMode, LagStructure};
pub use local::{
    getis_rows, local_geary, local_geary_with, local_getis, local_getis_with, local_moran, local_moran_moments,
    local_moran_with, GetisRow, LocalMoranRow, WeightStyle,
};
pub use permutation::{permutation_oracle, permutation_oracle_with, LocalStatistic, PermutationMoments};

use crate::error::Result;
use crate::intensity::AnnotatedNetwork;

impl LocalStatistic {
    /// Node column the statistic is stored under.
    pub fn column_name(self) -> &'static str {
        match self {
            LocalStatistic::Moran => "moran",
            LocalStatistic::Geary => "geary",
            LocalStatistic::Getis => "getis",
        }
    }
}

/// Compute a local statistic of the nodewise intensity and store it as a
/// node column (`moran` holds `I_i`, `geary` holds `c_i`, `getis` the z-scores).
pub fn node_local_correlation(g: &mut AnnotatedNetwork, statistic: LocalStatistic) -> Result<Vec<f64>> {
    let x = g.node_intensity();
    let values = match statistic {
        LocalStatistic::Moran => local_moran(g.network(), &x)?.iter().map(|r| r.ii).collect(),
        LocalStatistic::Geary => local_geary(g.network(), &x)?,
        LocalStatistic::Getis => local_getis(g.network(), &x)?,
    };
    g.set_node_column(statistic.column_name(), values.clone())?;
    Ok(values)
}

impl std::str::FromStr for LocalStatistic {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "moran" => Ok(LocalStatistic::Moran),
            "geary" => Ok(LocalStatistic::Geary),
            "getis" => Ok(LocalStatistic::Getis),
            other => Err(crate::error::Error::InvalidArgument(format!("unknown local statistic {other:?}"))),
        }
    }
}

/// Pearson correlation; NaN when either vector is constant or shorter than 2.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    use statrs::statistics::Statistics;
    if x.len() != y.len() {
        return Err(crate::error::Error::LengthMismatch { expected: x.len(), got: y.len() });
    }
    let (sx, sy) = (x.iter().std_dev(), y.iter().std_dev());
    if x.len() < 2 || sx == 0.0 || sy == 0.0 {
        return Ok(f64::NAN);
    }
    Ok(x.iter().covariance(y.iter()) / (sx * sy))
}

/// Correlation between the nodewise intensities of two event categories,
/// each related to the network on its own.
pub fn cross_mark_correlation(
    net: &crate::graph::Network,
    events: &crate::events::EventTable,
    level_a: &str,
    level_b: &str,
) -> Result<f64> {
    let intensity = |level: &str| {
        crate::intensity::relate_events_to_network(net.clone(), events.with_category(level)).node_intensity()
    };
    pearson(&intensity(level_a), &intensity(level_b))
}
