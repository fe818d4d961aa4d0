//! Named experiments with fixed sizes, seeds and policies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::env::Scenario;
use crate::error::{Error, Result};
use crate::policies::{PolicyName, PolicyOptions};
use crate::sim::{replicate_seeds, EnvSpec, EpisodeConfig, GraphSpec, StrategySpec};
use crate::strategies::Constraint;

pub const DEFAULT_MASTER_SEED: u64 = 2016;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// DFL-SSO vs MOSS, 100 arms, ER p = 0.3.
    FigSsoVsMoss,
    /// DFL-CSO on a sparse ER graph (p = 0.3).
    FigCsoSparse,
    /// DFL-CSO on a dense ER graph (p = 0.6).
    FigCsoDense,
    FigSsr,
    FigCsr,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::FigSsoVsMoss,
        Preset::FigCsoSparse,
        Preset::FigCsoDense,
        Preset::FigSsr,
        Preset::FigCsr,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Preset::FigSsoVsMoss => "fig-sso-vs-moss",
            Preset::FigCsoSparse => "fig-cso-sparse",
            Preset::FigCsoDense => "fig-cso-dense",
            Preset::FigSsr => "fig-ssr",
            Preset::FigCsr => "fig-csr",
        }
    }

    pub fn experiment(self) -> Experiment {
        let base = |scenario, arms, p, strategies: Option<Constraint>| EpisodeConfig {
            scenario,
            policy: PolicyName::DflSso,
            horizon: 10_000,
            arms,
            graph: GraphSpec::Er { p, seed: None },
            strategies: strategies.map(StrategySpec::new),
            env: EnvSpec::default(),
            seed: 0,
            options: PolicyOptions::default(),
        };
        let indep2 = || Some(Constraint::IndependentSets { max_size: 2 });
        let (template, policies) = match self {
            Preset::FigSsoVsMoss => (
                base(Scenario::Sso, 100, 0.3, None),
                vec![PolicyName::DflSso, PolicyName::Moss],
            ),
            Preset::FigCsoSparse => (
                base(Scenario::Cso, 15, 0.3, indep2()),
                vec![PolicyName::DflCso],
            ),
            Preset::FigCsoDense => (
                base(Scenario::Cso, 15, 0.6, indep2()),
                vec![PolicyName::DflCso],
            ),
            Preset::FigSsr => (base(Scenario::Ssr, 20, 0.3, None), vec![PolicyName::DflSsr]),
            Preset::FigCsr => (
                base(Scenario::Csr, 12, 0.3, indep2()),
                vec![PolicyName::DflCsr],
            ),
        };
        let template = EpisodeConfig {
            policy: policies[0],
            ..template
        };
        Experiment {
            name: self.as_str().to_string(),
            template,
            policies,
            replicates: 20,
            master_seed: DEFAULT_MASTER_SEED,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown preset {s:?}")))
    }
}

/// A batch definition: template config, policies and replicate count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Experiment {
    pub name: String,
    pub template: EpisodeConfig,
    pub policies: Vec<PolicyName>,
    pub replicates: usize,
    pub master_seed: u64,
}

impl Experiment {
    pub fn seeds(&self) -> Vec<u64> {
        replicate_seeds(self.master_seed, self.replicates)
    }

    /// One resolved config per (policy, seed), policy-major.
    pub fn episode_configs(&self) -> Vec<EpisodeConfig> {
        let seeds = self.seeds();
        self.policies
            .iter()
            .flat_map(|&policy| {
                seeds.iter().map(move |&seed| EpisodeConfig {
                    policy,
                    seed,
                    ..self.template.clone()
                })
            })
            .collect()
    }
}
