//! Run configuration: tolerance knobs, output format and worker count,
//! loadable from a JSON file (`--config` or the `QUARTICS_CONFIG`
//! environment variable) with flag-level overrides.

use std::path::Path;

use serde::{Deserialize, Serialize};

use quartics::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    /// Only meaningful for sweeps, which always stream CSV.
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!("unknown format `{other}` (expected json, csv or text)")),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Relative residual target for Newton polishing.
    pub polish_tol: f64,
    /// Distance under which near-coincident points merge.
    pub cluster_eps: f64,
    /// Relative modulus under which polynomial coefficients are dropped.
    pub coeff_drop_tol: f64,
    pub format: OutputFormat,
    /// Worker threads for sweeps; results are emitted in grid order
    /// regardless.
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = Tolerances::default();
        RunConfig {
            polish_tol: t.polish,
            cluster_eps: t.cluster_eps,
            coeff_drop_tol: t.coeff_drop,
            format: OutputFormat::Json,
            workers: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            polish: self.polish_tol,
            cluster_eps: self.cluster_eps,
            coeff_drop: self.coeff_drop_tol,
            ..Tolerances::default()
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.workers < 1 {
            return Err("worker count must be at least 1".into());
        }
        self.tolerances().validate().map_err(|e| e.to_string())
    }
}
