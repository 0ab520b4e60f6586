//! Exhaustive link-length exploration.
//!
//! Every feasible lattice point `[a1, a3, a5]` is run through the
//! sample -> score -> analyze pipeline. Each candidate draws from its own
//! seed derived from the sweep seed and its lattice coordinates
//! ([`candidate_seed`]), so a single candidate can be re-run in isolation and
//! reproduce its sweep result exactly.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::dexterity::{score_cloud, DexterityConfig};
use crate::error::{Error, Result};
use crate::geometry::{analyze, PartitionConfig, WorkspaceReport};
use crate::kinematics::{LinkLengths, MAX_TOTAL_LENGTH};
use crate::parallel::map_indexed;
use crate::sampling::{sample_prrrr, SamplerConfig};

/// Default per-candidate sample budget.
pub const CANDIDATE_SAMPLES: usize = 100_000;

// Lattice snapping for exact comparisons of lengths (1 nm).
const NM_PER_M: f64 = 1e9;
const LATTICE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExplorationMode {
    Full,
    SimplifiedTotalSaturated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum SelectionRule {
    MaxDexVolume,
    /// Smallest total length whose dexterous equivalent radius reaches `r_floor` (m).
    MinTotalLengthWithRadiusFloor {
        r_floor: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExplorationConfig {
    pub range_a1: [f64; 2],
    pub range_a3: [f64; 2],
    pub range_a5: [f64; 2],
    pub step: f64,
    pub total_max: f64,
    pub mode: ExplorationMode,
    pub selection: SelectionRule,
    pub samples_per_candidate: usize,
}

impl Default for ExplorationConfig {
    fn default() -> Self {
        Self {
            range_a1: [0.003, 0.008],
            range_a3: [0.003, 0.012],
            range_a5: [0.015, 0.035],
            step: 0.001,
            total_max: MAX_TOTAL_LENGTH,
            mode: ExplorationMode::SimplifiedTotalSaturated,
            selection: SelectionRule::MaxDexVolume,
            samples_per_candidate: CANDIDATE_SAMPLES,
        }
    }
}

impl ExplorationConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, [lo, hi]) in [
            ("range_a1", self.range_a1),
            ("range_a3", self.range_a3),
            ("range_a5", self.range_a5),
        ] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::InvalidConfig(format!(
                    "exploration.{name} = [{lo}, {hi}] needs L <= U"
                )));
            }
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "exploration.step = {} must be > 0",
                self.step
            )));
        }
        if !(self.total_max > 0.0 && self.total_max.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "exploration.total_max = {} must be > 0",
                self.total_max
            )));
        }
        if self.samples_per_candidate < 1 {
            return Err(Error::InvalidConfig(
                "exploration.samples_per_candidate must be >= 1".into(),
            ));
        }
        if let SelectionRule::MinTotalLengthWithRadiusFloor { r_floor } = self.selection {
            if !(r_floor >= 0.0 && r_floor.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "selection r_floor = {r_floor} must be >= 0"
                )));
            }
        }
        Ok(())
    }
}

fn lattice(range: [f64; 2], step: f64) -> Vec<f64> {
    let [lo, hi] = range;
    let count = ((hi - lo) / step + LATTICE_EPS).floor() as usize + 1;
    (0..count).map(|k| lo + k as f64 * step).collect()
}

fn nm(v: f64) -> i64 {
    (v * NM_PER_M).round() as i64
}

/// Feasible design vectors, in `a1`-major then `a3` then `a5` order.
pub fn enumerate_grid(cfg: &ExplorationConfig) -> Result<Vec<LinkLengths>> {
    cfg.validate()?;
    let a1s = lattice(cfg.range_a1, cfg.step);
    let a3s = lattice(cfg.range_a3, cfg.step);
    let feasible = |xi: &LinkLengths| xi.check_constraints(cfg.total_max).is_ok();

    let mut grid = Vec::new();
    match cfg.mode {
        ExplorationMode::Full => {
            let a5s = lattice(cfg.range_a5, cfg.step);
            for &a1 in &a1s {
                for &a3 in &a3s {
                    for &a5 in &a5s {
                        let xi = LinkLengths::new(a1, a3, a5);
                        if feasible(&xi) {
                            grid.push(xi);
                        }
                    }
                }
            }
        }
        ExplorationMode::SimplifiedTotalSaturated => {
            let [lo5, hi5] = cfg.range_a5;
            for &a1 in &a1s {
                for &a3 in &a3s {
                    let a5 = cfg.total_max - a1 - a3;
                    if a5 < lo5 - LATTICE_EPS || a5 > hi5 + LATTICE_EPS {
                        continue;
                    }
                    let xi = LinkLengths::new(a1, a3, a5);
                    if feasible(&xi) {
                        grid.push(xi);
                    }
                }
            }
        }
    }
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok(grid)
}

/// Stream seed of one candidate: SplitMix64 over the sweep seed and the
/// design vector snapped to nanometers.
pub fn candidate_seed(seed: u64, xi: &LinkLengths) -> u64 {
    let mut h = splitmix(seed);
    for v in xi.as_array() {
        h = splitmix(h ^ nm(v) as u64);
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Pipeline settings shared by every candidate of a sweep.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub sampler: SamplerConfig,
    pub dexterity: DexterityConfig,
    pub partition: PartitionConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub xi: LinkLengths,
    pub seed: u64,
    pub v_reach: f64,
    /// Zero when the dexterous set is empty.
    pub v_dex: f64,
    pub r_ed: f64,
    /// Link-length constraints hold.
    pub feasible: bool,
    pub dexterous_empty: bool,
    #[serde(skip)]
    pub reach: Option<WorkspaceReport>,
    #[serde(skip)]
    pub dex: Option<WorkspaceReport>,
}

impl Candidate {
    pub fn total_length(&self) -> f64 {
        self.xi.total()
    }

    /// Eligible for selection: feasible with a non-empty dexterous set.
    pub fn selectable(&self) -> bool {
        self.feasible && !self.dexterous_empty
    }
}

/// Runs one design vector through the pipeline.
///
/// `pipeline.sampler.seed` is used as given; sweeps pass the derived
/// [`candidate_seed`]. An empty dexterous set yields an infeasible candidate
/// with `v_dex = 0` instead of an error.
pub fn evaluate(xi: LinkLengths, pipeline: &PipelineConfig) -> Result<Candidate> {
    let cloud = sample_prrrr(xi, &pipeline.sampler)?;
    let scored = score_cloud(cloud, &pipeline.dexterity)?;
    let seed = pipeline.sampler.seed;
    let feasible = xi.check_constraints(MAX_TOTAL_LENGTH).is_ok();
    match analyze(&scored, &pipeline.partition) {
        Ok((reach, dex)) => Ok(Candidate {
            xi,
            seed,
            v_reach: reach.volume,
            v_dex: dex.volume,
            r_ed: dex.equivalent_radius,
            feasible,
            dexterous_empty: false,
            reach: Some(reach),
            dex: Some(dex),
        }),
        Err(Error::EmptyDexterousSet { .. }) => {
            let reach = crate::geometry::analyze_points(
                &scored.cloud.points,
                pipeline.partition.fit_order_reach,
                &pipeline.partition,
            )?;
            Ok(Candidate {
                xi,
                seed,
                v_reach: reach.volume,
                v_dex: 0.0,
                r_ed: 0.0,
                feasible,
                dexterous_empty: true,
                reach: Some(reach),
                dex: None,
            })
        }
        Err(e) => Err(e),
    }
}

/// Deterministic order used by both rules after their primary criterion.
fn tie_break(a: &Candidate, b: &Candidate) -> Ordering {
    nm(a.total_length())
        .cmp(&nm(b.total_length()))
        .then_with(|| b.v_dex.total_cmp(&a.v_dex))
        .then_with(|| nm(a.xi.a1).cmp(&nm(b.xi.a1)))
        .then_with(|| nm(a.xi.a3).cmp(&nm(b.xi.a3)))
        .then_with(|| nm(a.xi.a5).cmp(&nm(b.xi.a5)))
}

/// Picks the candidate preferred by `rule`.
///
/// A single candidate is returned as is. Otherwise `MaxDexVolume` takes the
/// largest `v_dex` (ties: shorter, then smaller `a1`, `a3`), and the radius
/// rule takes the shortest candidate with `r_ed >= r_floor` (ties: larger
/// `v_dex`, then smaller `a1`, `a3`).
pub fn select<'a>(candidates: &'a [Candidate], rule: &SelectionRule) -> Result<&'a Candidate> {
    if let [only] = candidates {
        return Ok(only);
    }
    match *rule {
        SelectionRule::MaxDexVolume => candidates
            .iter()
            .filter(|c| c.selectable())
            .min_by(|a, b| b.v_dex.total_cmp(&a.v_dex).then_with(|| tie_break(a, b)))
            .ok_or(Error::NoSelectableCandidate),
        SelectionRule::MinTotalLengthWithRadiusFloor { r_floor } => candidates
            .iter()
            .filter(|c| c.selectable() && c.r_ed >= r_floor)
            .min_by(|a, b| tie_break(a, b))
            .ok_or_else(|| Error::RadiusFloorUnmet {
                floor: r_floor,
                best: candidates
                    .iter()
                    .filter(|c| c.selectable())
                    .map(|c| c.r_ed)
                    .fold(0.0, f64::max),
            }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExplorationResult {
    pub candidates: Vec<Candidate>,
    pub best: Candidate,
    pub v_max: f64,
    pub selection: SelectionRule,
    pub mode: ExplorationMode,
    pub seed: u64,
}

/// Sweeps the grid and applies the selection rule.
///
/// `keep_reports` retains the per-candidate slice data; large sweeps usually
/// only need the scalar results.
pub fn explore(
    cfg: &ExplorationConfig,
    pipeline: &PipelineConfig,
    seed: u64,
    keep_reports: bool,
) -> Result<ExplorationResult> {
    let grid = enumerate_grid(cfg)?;
    let candidates = map_indexed(grid.len(), |i| {
        let xi = grid[i];
        let mut p = pipeline.clone();
        p.sampler.n_samples = cfg.samples_per_candidate;
        p.sampler.seed = candidate_seed(seed, &xi);
        evaluate(xi, &p).map(|mut c| {
            // the grid already enforces the configured length cap
            c.feasible = true;
            if !keep_reports {
                c.reach = None;
                c.dex = None;
            }
            c
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let best = select(&candidates, &cfg.selection)?.clone();
    let v_max = candidates
        .iter()
        .filter(|c| c.selectable())
        .map(|c| c.v_dex)
        .fold(0.0, f64::max);
    Ok(ExplorationResult {
        candidates,
        best,
        v_max,
        selection: cfg.selection,
        mode: cfg.mode,
        seed,
    })
}
