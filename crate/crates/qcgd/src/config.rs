use std::path::Path;

use qcgd_core::{Universe, DEFAULT_EPS, DEFAULT_SECTOR_CAP};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::{read_json, InputRecord, UniverseSpec};

/// Environment variable naming a config file when `--config` is absent.
pub const CONFIG_ENV: &str = "QCGD_CONFIG";

/// Parameters shared by every subcommand. Embedded in every artifact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub universe: UniverseSpec,
    pub eps: f64,
    /// Largest sector the tool will enumerate.
    pub cap: usize,
    pub n_max: u32,
    pub m_max: u32,
    pub r_max: u32,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            universe: UniverseSpec {
                vertices: vec!["a".into(), "b".into()],
                labels: vec!["0".into(), "1".into()],
                ports: 2,
                marked: false,
            },
            eps: DEFAULT_EPS,
            cap: DEFAULT_SECTOR_CAP,
            n_max: 3,
            m_max: 3,
            r_max: 3,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<(RunConfig, InputRecord)> {
        let (cfg, rec): (RunConfig, _) = read_json(path)?;
        cfg.validate()?;
        Ok((cfg, rec))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::Config(format!("eps must be positive, got {}", self.eps)));
        }
        if self.cap == 0 {
            return Err(Error::Config("cap must be positive".into()));
        }
        self.universe.to_universe().map(|_| ())
    }

    pub fn universe(&self) -> Result<Universe> {
        self.universe.to_universe()
    }
}
