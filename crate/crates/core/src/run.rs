//! Subcommand orchestration: run a pipeline stage, write its files and a
//! manifest into the output directory.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use chrono::Utc;
use serde::Serialize;

use crate::config::{Design, RunConfig};
use crate::dexterity::{score_cloud, ScoredCloud};
use crate::error::{Error, Result};
use crate::export::{write_boundary_csv, write_cloud_csv, write_json, write_scored_csv, write_sweep_csv};
use crate::geometry::{analyze_points, equivalent_radius, WorkspaceReport};
use crate::manifest::{RunManifest, MANIFEST_FILE};
use crate::optimizer::{enumerate_grid, explore, Candidate, ExplorationConfig};
use crate::sampling::{sample_prrrr, sample_workspace, PointCloud, SamplingScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Sample,
    Workspace,
    Volume,
    Optimize,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Sample => "sample",
            Subcommand::Workspace => "workspace",
            Subcommand::Volume => "volume",
            Subcommand::Optimize => "optimize",
        }
    }
}

impl std::str::FromStr for Subcommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sample" => Ok(Subcommand::Sample),
            "workspace" => Ok(Subcommand::Workspace),
            "volume" => Ok(Subcommand::Volume),
            "optimize" => Ok(Subcommand::Optimize),
            other => Err(Error::InvalidConfig(format!("unknown subcommand `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// Data files written, relative to the output directory.
    pub files: Vec<String>,
    pub manifest: RunManifest,
    pub summary: String,
}

/// Machine-readable failure record.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    pub error: &'static str,
    pub message: String,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        Self {
            error: e.kind(),
            message: e.to_string(),
        }
    }
}

/// Volume results for one design.
#[derive(Debug, Clone, Serialize)]
pub struct VolumeReport {
    pub design: Design,
    pub seed: u64,
    pub n_samples: usize,
    pub scheme: SamplingScheme,
    pub m_ref: f64,
    pub score_min: f64,
    pub score_max: f64,
    pub threshold: f64,
    pub dexterous_points: usize,
    pub v_reach_m3: f64,
    pub v_dex_m3: f64,
    pub r_e_reach_m: f64,
    pub r_ed_m: f64,
    pub reachable: WorkspaceReport,
    /// Absent when no point clears the threshold.
    pub dexterous: Option<WorkspaceReport>,
}

/// Sweep outcome as written to the selection file.
#[derive(Debug, Clone, Serialize)]
pub struct SelectionReport<'a> {
    pub exploration: &'a ExplorationConfig,
    pub seed: u64,
    pub candidates: usize,
    pub v_max_m3: f64,
    pub best: &'a Candidate,
}

pub fn sample_cloud(cfg: &RunConfig) -> Result<PointCloud> {
    match &cfg.design {
        Design::Prrrr(xi) => sample_prrrr(*xi, &cfg.sampler),
        Design::Chain(chain) => sample_workspace(chain, &cfg.sampler),
    }
}

/// Scores the sampled cloud and analyzes both workspaces.
pub fn volume_report(cfg: &RunConfig) -> Result<(ScoredCloud, VolumeReport)> {
    let scored = score_cloud(sample_cloud(cfg)?, &cfg.dexterity)?;
    let part = &cfg.partition;
    let reachable = analyze_points(&scored.cloud.points, part.fit_order_reach, part)?;
    let dex_points = scored.dexterous_points();
    let dexterous = match analyze_points(&dex_points, part.fit_order_dex, part) {
        Ok(r) => Some(r),
        Err(Error::EmptyCloud | Error::DegenerateExtent { .. }) => None,
        Err(e) => return Err(e),
    };
    let v_dex = dexterous.as_ref().map_or(0.0, |d| d.volume);
    let report = VolumeReport {
        design: cfg.design.clone(),
        seed: cfg.seed,
        n_samples: cfg.sampler.n_samples,
        scheme: cfg.sampler.scheme,
        m_ref: cfg.dexterity.m_ref,
        score_min: scored.score_min,
        score_max: scored.score_max,
        threshold: scored.threshold,
        dexterous_points: dex_points.len(),
        v_reach_m3: reachable.volume,
        v_dex_m3: v_dex,
        r_e_reach_m: reachable.equivalent_radius,
        r_ed_m: equivalent_radius(v_dex),
        reachable,
        dexterous,
    };
    Ok((scored, report))
}

fn write_file(dir: &Path, name: &str, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<String> {
    let path = dir.join(name);
    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w)?;
    w.flush().map_err(|e| Error::io(&path, e))?;
    Ok(name.to_string())
}

/// Runs one stage and writes its outputs plus `manifest.json` into
/// `cfg.output_dir`.
pub fn run_subcommand(cmd: Subcommand, cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let started = Utc::now();
    let dir = cfg.output_dir.as_path();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let mut files = Vec::new();
    let summary = match cmd {
        Subcommand::Sample => {
            let cloud = sample_cloud(cfg)?;
            files.push(write_file(dir, "cloud.csv", |w| write_cloud_csv(w, &cloud, true))?);
            format!(
                "sampled {} points (seed {}, {:?})",
                cloud.len(),
                cfg.seed,
                cfg.sampler.scheme
            )
        }
        Subcommand::Workspace => {
            let (scored, report) = volume_report(cfg)?;
            files.push(write_file(dir, "scored.csv", |w| write_scored_csv(w, &scored))?);
            files.push(write_file(dir, "boundary_reach.csv", |w| {
                write_boundary_csv(w, &report.reachable)
            })?);
            if let Some(dex) = &report.dexterous {
                files.push(write_file(dir, "boundary_dex.csv", |w| write_boundary_csv(w, dex))?);
            }
            format!(
                "{} points, {} dexterous (threshold {:.4e}), {} reachable slices",
                scored.cloud.len(),
                scored.dexterous_count(),
                scored.threshold,
                report.reachable.slices.len()
            )
        }
        Subcommand::Volume => {
            let (_, report) = volume_report(cfg)?;
            files.push(write_file(dir, "volume.json", |w| write_json(w, &report))?);
            format!(
                "V_reach = {:.4e} m^3, V_dex = {:.4e} m^3, R_ed = {:.2} mm",
                report.v_reach_m3,
                report.v_dex_m3,
                report.r_ed_m * 1e3
            )
        }
        Subcommand::Optimize => {
            let grid = enumerate_grid(&cfg.exploration)?;
            let result = explore(&cfg.exploration, &cfg.pipeline(), cfg.seed, false)?;
            files.push(write_file(dir, "sweep.csv", |w| {
                write_sweep_csv(w, &result.candidates)
            })?);
            let selection = SelectionReport {
                exploration: &cfg.exploration,
                seed: cfg.seed,
                candidates: grid.len(),
                v_max_m3: result.v_max,
                best: &result.best,
            };
            files.push(write_file(dir, "selection.json", |w| write_json(w, &selection))?);
            let b = &result.best;
            format!(
                "{} candidates; selected [{:.0}, {:.0}, {:.0}] mm with V_dex = {:.4e} m^3, R_ed = {:.2} mm",
                grid.len(),
                b.xi.a1 * 1e3,
                b.xi.a3 * 1e3,
                b.xi.a5 * 1e3,
                b.v_dex,
                b.r_ed * 1e3
            )
        }
    };

    let mut manifest = RunManifest::new(cmd.name(), cfg.hash(), cfg.seed, started);
    manifest.finish(dir, &files)?;
    write_file(dir, MANIFEST_FILE, |w| write_json(w, &manifest))?;
    Ok(RunOutcome {
        files,
        manifest,
        summary,
    })
}
