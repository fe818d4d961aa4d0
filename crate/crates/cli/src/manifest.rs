//! Record of a batch run, enough to replay it.

use std::path::Path;

use anyhow::{bail, Context, Result};
use netbandit::policies::PolicyName;
use netbandit::sim::{BatchOptions, EpisodeConfig};
use serde::{Deserialize, Serialize};

pub const FILE_NAME: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// One resolved config per (policy, seed), policy-major.
    pub configs: Vec<EpisodeConfig>,
    pub batch: BatchOptions,
    pub output_dir: String,
    pub tool_version: String,
    /// RFC 3339, UTC.
    pub timestamp: String,
    pub master_seed: u64,
}

/// A batch in the shape `run_batch` takes.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchPlan {
    pub template: EpisodeConfig,
    pub seeds: Vec<u64>,
    pub policies: Vec<PolicyName>,
}

impl BatchPlan {
    pub fn configs(&self) -> Vec<EpisodeConfig> {
        self.policies
            .iter()
            .flat_map(|&policy| {
                self.seeds.iter().map(move |&seed| EpisodeConfig {
                    policy,
                    seed,
                    ..self.template.clone()
                })
            })
            .collect()
    }
}

impl RunManifest {
    pub fn new(
        plan: &BatchPlan,
        batch: &BatchOptions,
        output_dir: &Path,
        master_seed: u64,
    ) -> Self {
        RunManifest {
            configs: plan.configs(),
            batch: BatchOptions {
                threads: None,
                ..batch.clone()
            },
            output_dir: output_dir.display().to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            master_seed,
        }
    }

    /// Recover the batch; fails if the configs are not a policy × seed grid
    /// over one template.
    pub fn plan(&self) -> Result<BatchPlan> {
        let Some(first) = self.configs.first() else {
            bail!("manifest lists no configs");
        };
        let mut policies: Vec<PolicyName> = Vec::new();
        let mut seeds: Vec<u64> = Vec::new();
        for c in &self.configs {
            if !policies.contains(&c.policy) {
                policies.push(c.policy);
            }
            if c.policy == first.policy {
                seeds.push(c.seed);
            }
        }
        let plan = BatchPlan {
            template: first.clone(),
            seeds,
            policies,
        };
        if plan.configs() != self.configs {
            bail!("manifest configs do not form a policy × seed grid");
        }
        Ok(plan)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
    }
}
