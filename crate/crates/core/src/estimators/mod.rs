//! Sampling estimators built on the local oracles.
//!
//! Every estimator is a deterministic function of the instance and the
//! [`EstimatorConfig`] (seed included) and returns an [`EstimateReport`]
//! carrying the estimate, the intermediate quantities it was assembled from
//! and the distance queries it charged.

mod bad_vertices;
mod bridges;
mod path_cover;
mod tsp;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LedgerSnapshot, TspInstance};
use crate::local::splitmix64;

pub use bad_vertices::{estimate_bad_vertices, is_bad_vertex};
pub use bridges::{estimate_bridges, test_bridges_at};
pub use path_cover::estimate_path_cover;
pub use tsp::{
    estimate_graphic_tsp_subquadratic, estimate_graphic_tsp_v1, estimate_graphic_tsp_v2, estimate_tsp12,
    AdversarialMatching, ExactMatching, MatchingEstimator,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimatorConfig {
    /// Number of replicas per edge in the copy graph.
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Sample count for the path-cover sampler.
    #[serde(default)]
    pub r_override: Option<usize>,
    /// Sample count for the bad-vertex and bridge samplers; falls back to `r_override`.
    #[serde(default)]
    pub aux_r_override: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    /// Clamp the path-cover estimate to `[0, n - 1]`.
    #[serde(default = "default_true")]
    pub clamp: bool,
    /// Record wall time in reports. Off by default so reports are reproducible byte for byte.
    #[serde(default)]
    pub timing: bool,
}

fn default_k() -> usize {
    crate::port_greedy::DEFAULT_K
}

fn default_epsilon() -> f64 {
    0.1
}

fn default_true() -> bool {
    true
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            k: default_k(),
            epsilon: default_epsilon(),
            r_override: None,
            aux_r_override: None,
            seed: 0,
            clamp: true,
            timing: false,
        }
    }
}

impl EstimatorConfig {
    pub fn new(k: usize, epsilon: f64, seed: u64) -> Self {
        EstimatorConfig {
            k,
            epsilon,
            seed,
            ..Self::default()
        }
    }

    pub fn with_r(mut self, r: usize) -> Self {
        self.r_override = Some(r);
        self
    }

    pub fn with_aux_r(mut self, r: usize) -> Self {
        self.aux_r_override = Some(r);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidParameter("K must be at least 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.r_override == Some(0) || self.aux_r_override == Some(0) {
            return Err(Error::InvalidParameter("sample counts must be positive".into()));
        }
        Ok(())
    }

    /// Path-cover sample count: `192·K²·ln n` unless overridden.
    pub fn path_cover_samples(&self, n: usize) -> usize {
        self.r_override
            .unwrap_or_else(|| (192.0 * (self.k * self.k) as f64 * ln(n)).ceil().max(1.0) as usize)
    }

    /// Bridge sample count: `256·ε⁻⁴·ln n` unless overridden.
    pub fn bridge_samples(&self, n: usize) -> usize {
        self.aux_r_override
            .or(self.r_override)
            .unwrap_or_else(|| (256.0 * self.epsilon.powi(-4) * ln(n)).ceil().max(1.0) as usize)
    }

    /// Bad-vertex sample count: `4·ε⁻²·ln n` unless overridden.
    pub fn bad_vertex_samples(&self, n: usize) -> usize {
        self.aux_r_override
            .or(self.r_override)
            .unwrap_or_else(|| (4.0 * self.epsilon.powi(-2) * ln(n)).ceil().max(1.0) as usize)
    }
}

fn ln(n: usize) -> f64 {
    (n.max(2) as f64).ln()
}

/// Seed for an independent random stream derived from a base seed.
pub fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index))
}

pub(crate) mod streams {
    pub const PATH_COVER_SAMPLES: u64 = 1;
    pub const PATH_COVER_SESSIONS: u64 = 2;
    pub const BAD_VERTICES: u64 = 3;
    pub const BRIDGES: u64 = 4;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub algorithm: String,
    pub n: usize,
    pub seed: u64,
    pub value: f64,
    /// Intermediate estimates the value is assembled from.
    pub components: BTreeMap<String, f64>,
    /// Charged distance queries by phase, plus `total`.
    pub queries: BTreeMap<String, u64>,
    pub samples: usize,
    pub wall_ms: f64,
}

impl EstimateReport {
    pub fn component(&self, label: &str) -> Option<f64> {
        self.components.get(label).copied()
    }

    /// Recomputes the value from the components and checks it matches.
    pub fn audit(&self) -> Result<()> {
        let c = |label: &str| {
            self.component(label)
                .ok_or_else(|| Error::InvariantViolation(format!("missing component `{label}`")))
        };
        let n = self.n as f64;
        let expected = match self.algorithm.as_str() {
            "path_cover" => {
                let (f, k) = (c("f")?, c("k")?);
                let raw = k / (2.0 * (k + 2.0)) * (2.0 * f * n - n / (4.0 * k));
                let clamped = raw.clamp(0.0, (n - 1.0).max(0.0));
                if !(close(c("rho_raw")?, raw) && (close(self.value, raw) || close(self.value, clamped))) {
                    return Err(self.mismatch(clamped));
                }
                return Ok(());
            }
            "bad_vertices" => n * c("mean")? + c("epsilon")? * n / 2.0,
            "bridges" => n * c("mean")? + 3.0 * c("epsilon")? * n / 4.0,
            "tsp12" => 2.0 * n - c("rho_tilde")?,
            "graphic_v1" => 2.0 * n - (c("rho_tilde")? - 2.0 * c("beta_tilde")?) / 5.0,
            "graphic_v2" => 2.0 * n - (c("rho_tilde")? - c("b_tilde")?) / 3.0,
            "graphic_subquadratic" => 2.0 * n - (c("mu_tilde")? - c("b_tilde")?) / 3.0,
            other => return Err(Error::InvalidParameter(format!("unknown algorithm `{other}`"))),
        };
        if close(self.value, expected) {
            Ok(())
        } else {
            Err(self.mismatch(expected))
        }
    }

    fn mismatch(&self, expected: f64) -> Error {
        Error::InvariantViolation(format!(
            "{} report value {} does not match components ({expected})",
            self.algorithm, self.value
        ))
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Bookkeeping shared by all estimators: start snapshot and clock.
pub(crate) struct Run<'a> {
    inst: &'a TspInstance,
    start: LedgerSnapshot,
    clock: Option<Instant>,
}

impl<'a> Run<'a> {
    pub fn start(inst: &'a TspInstance, cfg: &EstimatorConfig) -> Self {
        Run {
            inst,
            start: inst.ledger().snapshot(),
            clock: cfg.timing.then(Instant::now),
        }
    }

    pub fn finish(
        self,
        algorithm: &str,
        cfg: &EstimatorConfig,
        value: f64,
        components: BTreeMap<String, f64>,
        samples: usize,
    ) -> EstimateReport {
        EstimateReport {
            algorithm: algorithm.to_string(),
            n: self.inst.n(),
            seed: cfg.seed,
            value,
            components,
            queries: self.inst.ledger().snapshot().since(&self.start).to_map(),
            samples,
            wall_ms: self.clock.map_or(0.0, |t| t.elapsed().as_secs_f64() * 1e3),
        }
    }
}
