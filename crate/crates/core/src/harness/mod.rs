//! Seeded generators and the randomized statement suite.

mod generators;
mod rng;
mod suite;

pub use generators::{
    gen_certified_super, gen_disjoint_pair, gen_frame, gen_hermitian, gen_kframe_instance, gen_low_rank_frame,
    gen_matrix, gen_orthonormal, gen_outside_range, gen_quaternion, gen_unitary, gen_vector, null_projection,
};
pub use rng::QRng;
pub use suite::entry_ids;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub n1: usize,
    pub n2: usize,
    pub m: usize,
    pub trials: usize,
    pub tol: f64,
    /// Id of a suite entry whose computed dual is perturbed by `1e-3`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrupt: Option<String>,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self { seed: 42, n1: 4, n2: 4, m: 8, trials: 100, tol: 1e-8, corrupt: None }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if self.n1 == 0 || self.n2 == 0 {
            return bad("dimensions must be at least 1");
        }
        if self.m == 0 {
            return bad("frame length must be at least 1");
        }
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.trials > u32::MAX as usize {
            return bad("too many trials");
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tolerance must be positive and finite");
        }
        if let Some(id) = &self.corrupt {
            if !entry_ids().contains(&id.as_str()) {
                return Err(Error::InvalidConfig(format!("unknown suite entry `{id}`")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    /// Passes when the property holds; `worst_residual` is the largest
    /// residual seen.
    Property,
    /// Passes when the violation is detected; `worst_residual` is the
    /// smallest detection statistic seen.
    NegativeControl,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryReport {
    pub id: String,
    pub anchor: String,
    pub kind: EntryKind,
    pub trials: usize,
    pub passes: usize,
    pub worst_residual: f64,
    /// First failing trial.
    #[serde(default)]
    pub witness: Option<String>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.passes == self.trials
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: GenConfig,
    pub entries: Vec<EntryReport>,
    pub overall: bool,
}

impl SuiteReport {
    pub fn entry(&self, id: &str) -> Option<&EntryReport> {
        self.entries.iter().find(|e| e.id == id)
    }
}

/// Runs every entry `cfg.trials` times, trials in parallel.
pub fn run_suite(cfg: &GenConfig) -> Result<SuiteReport> {
    run(cfg, true)
}

/// Same report as [`run_suite`], computed on the calling thread.
pub fn run_suite_serial(cfg: &GenConfig) -> Result<SuiteReport> {
    run(cfg, false)
}

fn run(cfg: &GenConfig, parallel: bool) -> Result<SuiteReport> {
    cfg.validate()?;
    let entries: Vec<EntryReport> = suite::ENTRIES
        .iter()
        .enumerate()
        .map(|(idx, entry)| {
            let corrupt = cfg.corrupt.as_deref() == Some(entry.id);
            let one = |t: usize| suite::run_trial(entry, cfg, idx as u32, t as u32, corrupt);
            let trials: Vec<suite::Trial> = if parallel {
                (0..cfg.trials).into_par_iter().map(one).collect()
            } else {
                (0..cfg.trials).map(one).collect()
            };
            suite::reduce(entry, &trials)
        })
        .collect();
    let overall = entries.iter().all(EntryReport::passed);
    Ok(SuiteReport { config: cfg.clone(), entries, overall })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> GenConfig {
        GenConfig { trials: 3, ..GenConfig::default() }
    }

    #[test]
    fn config_validation() {
        assert!(GenConfig::default().validate().is_ok());
        for bad in [
            GenConfig { n1: 0, ..small() },
            GenConfig { m: 0, ..small() },
            GenConfig { trials: 0, ..small() },
            GenConfig { tol: 0.0, ..small() },
            GenConfig { tol: f64::NAN, ..small() },
            GenConfig { corrupt: Some("nope".into()), ..small() },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))), "{bad:?}");
        }
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let a = run_suite(&small()).unwrap();
        for e in &a.entries {
            assert!(e.passed(), "{e:?}");
        }
        assert!(a.overall);
        let b = run_suite_serial(&small()).unwrap();
        assert_eq!(crate::json::to_string(&a).unwrap(), crate::json::to_string(&b).unwrap());
    }

    #[test]
    fn corruption_hits_only_its_target() {
        let cfg = GenConfig { corrupt: Some("kdual-reconstruction".into()), ..small() };
        let r = run_suite(&cfg).unwrap();
        assert!(!r.overall);
        let failing: Vec<&str> = r.entries.iter().filter(|e| !e.passed()).map(|e| e.id.as_str()).collect();
        assert_eq!(failing, ["kdual-reconstruction"]);
        let e = r.entry("kdual-reconstruction").unwrap();
        assert_eq!(e.passes, 0);
        assert!(e.worst_residual > 1e-6 && e.witness.is_some());
    }
}
