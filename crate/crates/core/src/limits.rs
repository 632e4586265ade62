use serde::{Deserialize, Serialize};

/// Desk-scale bounds for the exhaustive and sampling operations.
///
/// None of these come from the mathematics; they only keep a single call
/// within reasonable time and memory. Every operation that enumerates or
/// samples takes a `&Limits` so callers can raise them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest level materialised by `enumerate_level`.
    pub enumeration: usize,
    /// Largest diagram size accepted by the path-counting oracle.
    pub oracle: usize,
    /// Largest level a graded-graph check may touch.
    pub graph_levels: usize,
    /// Largest size for exhaustive tableau sweeps (coherence, centrality).
    pub tableau_sweep: usize,
    /// Largest prefix length for induced prefix distributions.
    pub prefix: usize,
    /// Largest diagram size for induced prefix distributions.
    pub prefix_shape: usize,
    /// Largest size of a sampled growth path.
    pub sampling: usize,
    /// Levels below this are sampled with exact rational transition weights.
    pub exact_threshold: usize,
    /// Largest length for brute-force numbering enumeration.
    pub numberings: usize,
    /// Largest Toeplitz minor order.
    pub minor_order: usize,
    /// Largest index window for minor sweeps.
    pub minor_window: usize,
    /// Largest truncation order for power series.
    pub series_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 60,
            oracle: 40,
            graph_levels: 40,
            tableau_sweep: 12,
            prefix: 8,
            prefix_shape: 40,
            sampling: 100_000,
            exact_threshold: 200,
            numberings: 10,
            minor_order: 6,
            minor_window: 14,
            series_order: 64,
        }
    }
}
