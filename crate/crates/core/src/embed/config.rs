use serde::{Deserialize, Serialize};

/// Which parameterization the embedding pipeline uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// The symbolic parameters of the proof: `d = ceil(3k/gamma)`, `l = 4d`,
    /// floors `n^(1/2)` and `(n/3)^(3/4)`. Exercisable only at astronomical
    /// `n`; at desk scale it reports failure.
    Paper,
    /// Floors scaled down to `max(k, ...)` of measured quantities so the same
    /// stages run at desk scale.
    #[default]
    Adaptive,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Paper => "paper",
            Mode::Adaptive => "adaptive",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "paper" => Ok(Mode::Paper),
            "adaptive" => Ok(Mode::Adaptive),
            _ => Err(crate::error::invalid(format!("unknown mode {s:?}"))),
        }
    }
}

/// Scaled-down floors used in [`Mode::Adaptive`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AdaptiveParams {
    /// Matching size is `max(k, ceil(d_factor * k))`.
    pub d_factor: f64,
    /// Dependent random choice sample size.
    pub l: usize,
    /// Required common neighbourhood of spot-checked `d`-sets.
    pub neighborhood_floor: usize,
    /// Cyclic shifts of an ordering hint turned into positional partitions.
    pub shifts: usize,
    /// Partitions grown around sampled directed triangles.
    pub triangle_seeds: usize,
    /// The fallback search keeps edges whose triangle count reaches this
    /// quantile of the positive counts.
    pub edge_quantile: f64,
}

impl Default for AdaptiveParams {
    fn default() -> Self {
        Self {
            d_factor: 1.0,
            l: 1,
            neighborhood_floor: 1,
            shifts: 24,
            triangle_seeds: 24,
            edge_quantile: 0.5,
        }
    }
}

/// Tunables of the search. Every probabilistic stage is capped here.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub mode: Mode,
    /// Master seed; every stage derives its own stream from it.
    pub seed: u64,
    /// Local-search runs per level; the ordering with fewest backward edges
    /// is kept.
    pub order_restarts: usize,
    /// Random tripartitions evaluated; the pipeline walks them best first.
    pub partition_retries: usize,
    /// Full pipeline rounds (each with fresh randomness) before giving up.
    pub stage_retries: usize,
    /// Dependent random choice resamples per round.
    pub drc_retries: usize,
    /// `d`-subsets spot-checked when dependent random choice accepts.
    pub drc_spot_checks: usize,
    /// Randomized retries of the complete-bipartite extraction.
    pub kst_retries: usize,
    /// Exhaustive `k`-subset fallback of that extraction applies up to this
    /// many matching edges.
    pub kst_exhaustive_max_d: usize,
    /// Run the exhaustive `D_k` search when `n <= 15` and `k <= 3`.
    pub brute_force_fallback: bool,
    /// Stop after this much wall-clock time; `None` means unbounded.
    pub time_budget_ms: Option<u64>,
    pub adaptive: AdaptiveParams,
    /// The absolute constant of the triangle-count lower bound. Its value is
    /// not known; it is recorded for experiment tables only.
    pub triangle_constant: Option<f64>,
    /// Exponent constant of the headline bound, `2^33` times the above.
    pub exponent_constant: Option<f64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Adaptive,
            seed: 0,
            order_restarts: 4,
            partition_retries: 30,
            stage_retries: 20,
            drc_retries: 20,
            drc_spot_checks: 100,
            kst_retries: 20,
            kst_exhaustive_max_d: 24,
            brute_force_fallback: true,
            time_budget_ms: None,
            adaptive: AdaptiveParams::default(),
            triangle_constant: None,
            exponent_constant: None,
        }
    }
}

impl PipelineConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }
}
