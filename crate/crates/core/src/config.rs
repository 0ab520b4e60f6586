//! Run configuration files.
//!
//! Configs are JSON. Lengths in the file (`xi`, explicit DH rows, exploration
//! ranges, step, caps, radius floor) are in the declared `units` ("mm" by
//! default, or "m"); DH angles are in degrees unless `angles` is "rad".
//! Everything is converted to meters and radians on load. Unknown keys are
//! rejected.
//!
//! ```json
//! { "xi": [3, 8, 34], "seed": 1 }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dexterity::DexterityConfig;
use crate::error::{Error, Result};
use crate::geometry::PartitionConfig;
use crate::kinematics::{DhChain, DhRow, JointKind, LinkLengths};
use crate::optimizer::{ExplorationConfig, ExplorationMode, PipelineConfig, SelectionRule, CANDIDATE_SAMPLES};
use crate::sampling::{SamplerConfig, SamplingScheme, BOUNDARY_SAMPLES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthUnit {
    #[default]
    Mm,
    M,
}

impl LengthUnit {
    pub fn to_meters(self, v: f64) -> f64 {
        match self {
            LengthUnit::Mm => v * 1e-3,
            LengthUnit::M => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleUnit {
    #[default]
    Deg,
    Rad,
}

/// Sample budgets applied to fields the config file leaves unset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Preset {
    /// Quick look: 20k cloud samples, 10k per sweep candidate.
    Fast,
    /// 500k cloud samples, 100k per sweep candidate.
    #[default]
    Paper,
}

impl Preset {
    fn budgets(self) -> (usize, usize) {
        match self {
            Preset::Fast => (20_000, 10_000),
            Preset::Paper => (BOUNDARY_SAMPLES, CANDIDATE_SAMPLES),
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Preset::Fast),
            "paper" => Ok(Preset::Paper),
            other => Err(Error::InvalidConfig(format!("unknown preset `{other}` (fast|paper)"))),
        }
    }
}

// ---- file representation -------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    units: LengthUnit,
    xi: Option<[f64; 3]>,
    chain: Option<RawChain>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    sampler: RawSampler,
    #[serde(default)]
    dexterity: DexterityConfig,
    #[serde(default)]
    partition: PartitionConfig,
    #[serde(default)]
    exploration: RawExploration,
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChain {
    #[serde(default)]
    angles: AngleUnit,
    rows: Vec<RawRow>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    kind: JointKind,
    #[serde(default)]
    a: f64,
    #[serde(default)]
    alpha: f64,
    #[serde(default)]
    d: f64,
    #[serde(default)]
    theta: f64,
    q_min: f64,
    q_max: f64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSampler {
    n_samples: Option<usize>,
    scheme: Option<SamplingScheme>,
    beta_floor: Option<f64>,
    beta_scale: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExploration {
    range_a1: Option<[f64; 2]>,
    range_a3: Option<[f64; 2]>,
    range_a5: Option<[f64; 2]>,
    step: Option<f64>,
    total_max: Option<f64>,
    mode: Option<ExplorationMode>,
    selection: Option<RawSelection>,
    samples_per_candidate: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
enum RawSelection {
    MaxDexVolume,
    MinTotalLengthWithRadiusFloor { r_floor: f64 },
}

// ---- validated configuration --------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Design {
    Prrrr(LinkLengths),
    Chain(DhChain),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub design: Design,
    pub seed: u64,
    pub sampler: SamplerConfig,
    pub dexterity: DexterityConfig,
    pub partition: PartitionConfig,
    pub exploration: ExplorationConfig,
    pub output_dir: PathBuf,
    #[serde(skip)]
    explicit_samples: bool,
    #[serde(skip)]
    explicit_candidate_samples: bool,
}

impl RunConfig {
    /// Defaults around a PRRRR design vector.
    pub fn for_design(xi: LinkLengths, seed: u64) -> Self {
        let mut cfg = Self {
            design: Design::Prrrr(xi),
            seed,
            sampler: SamplerConfig::default(),
            dexterity: DexterityConfig::default(),
            partition: PartitionConfig::default(),
            exploration: ExplorationConfig::default(),
            output_dir: PathBuf::from("out"),
            explicit_samples: false,
            explicit_candidate_samples: false,
        };
        cfg.set_seed(seed);
        cfg
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
        self.sampler.seed = seed;
    }

    /// Overrides the cloud sample count regardless of preset.
    pub fn set_samples(&mut self, n: usize) {
        self.sampler.n_samples = n;
        self.explicit_samples = true;
    }

    /// Fills sample budgets the file did not set.
    pub fn apply_preset(&mut self, preset: Preset) {
        let (cloud, candidate) = preset.budgets();
        if !self.explicit_samples {
            self.sampler.n_samples = cloud;
        }
        if !self.explicit_candidate_samples {
            self.exploration.samples_per_candidate = candidate;
        }
    }

    pub fn pipeline(&self) -> PipelineConfig {
        PipelineConfig {
            sampler: self.sampler.clone(),
            dexterity: self.dexterity.clone(),
            partition: self.partition.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Design::Prrrr(xi) = &self.design {
            xi.check_lower_bounds()
                .map_err(|e| Error::InvalidConfig(format!("xi: {e}")))?;
        }
        self.sampler.validate()?;
        self.dexterity.validate()?;
        self.partition.validate()?;
        self.exploration.validate()?;
        Ok(())
    }

    /// SHA-256 of the canonical JSON form of the resolved config.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

fn convert(raw: RawConfig) -> Result<RunConfig> {
    let unit = raw.units;
    let len = |v: f64| unit.to_meters(v);

    let design = match (raw.xi, raw.chain) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidConfig("give either `xi` or `chain`, not both".into()));
        }
        // sweeps never read the design; everything else gets the reference one
        (None, None) => Design::Prrrr(LinkLengths::from_mm(3.0, 8.0, 34.0)),
        (Some([a1, a3, a5]), None) => Design::Prrrr(LinkLengths::new(len(a1), len(a3), len(a5))),
        (None, Some(chain)) => {
            let ang = |v: f64| match chain.angles {
                AngleUnit::Deg => v.to_radians(),
                AngleUnit::Rad => v,
            };
            let rows = chain
                .rows
                .into_iter()
                .map(|r| {
                    let (q_min, q_max) = match r.kind {
                        JointKind::Prismatic => (len(r.q_min), len(r.q_max)),
                        JointKind::Revolute => (ang(r.q_min), ang(r.q_max)),
                    };
                    DhRow {
                        a: len(r.a),
                        alpha: ang(r.alpha),
                        d_offset: len(r.d),
                        theta_offset: ang(r.theta),
                        kind: r.kind,
                        q_min,
                        q_max,
                    }
                })
                .collect();
            Design::Chain(DhChain::new(rows).map_err(|e| Error::InvalidConfig(format!("chain: {e}")))?)
        }
    };

    let defaults = SamplerConfig::default();
    let sampler = SamplerConfig {
        n_samples: raw.sampler.n_samples.unwrap_or(defaults.n_samples),
        scheme: raw.sampler.scheme.unwrap_or(defaults.scheme),
        seed: raw.seed,
        beta_floor: raw.sampler.beta_floor.unwrap_or(defaults.beta_floor),
        beta_scale: raw.sampler.beta_scale.unwrap_or(defaults.beta_scale),
    };

    let e = raw.exploration;
    let ed = ExplorationConfig::default();
    let range = |r: Option<[f64; 2]>, d: [f64; 2]| r.map(|[lo, hi]| [len(lo), len(hi)]).unwrap_or(d);
    let exploration = ExplorationConfig {
        range_a1: range(e.range_a1, ed.range_a1),
        range_a3: range(e.range_a3, ed.range_a3),
        range_a5: range(e.range_a5, ed.range_a5),
        step: e.step.map(len).unwrap_or(ed.step),
        total_max: e.total_max.map(len).unwrap_or(ed.total_max),
        mode: e.mode.unwrap_or(ed.mode),
        selection: match e.selection {
            None => ed.selection,
            Some(RawSelection::MaxDexVolume) => SelectionRule::MaxDexVolume,
            Some(RawSelection::MinTotalLengthWithRadiusFloor { r_floor }) => {
                SelectionRule::MinTotalLengthWithRadiusFloor { r_floor: len(r_floor) }
            }
        },
        samples_per_candidate: e.samples_per_candidate.unwrap_or(ed.samples_per_candidate),
    };

    let cfg = RunConfig {
        design,
        seed: raw.seed,
        sampler,
        dexterity: raw.dexterity,
        partition: raw.partition,
        exploration,
        output_dir: raw.output_dir.unwrap_or_else(|| PathBuf::from("out")),
        explicit_samples: raw.sampler.n_samples.is_some(),
        explicit_candidate_samples: e.samples_per_candidate.is_some(),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Parses and validates a config document.
pub fn parse_config(text: &str, context: &str) -> Result<RunConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|source| Error::Parse {
        context: context.to_string(),
        source,
    })?;
    convert(raw)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, &path.display().to_string())
}
