//! Relative manipulability scoring and the dexterous/reachable split.

use nalgebra::{DMatrix, Dim, Matrix, RawStorage};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{LinkLengths, TipPosition};
use crate::parallel::map_indexed;
use crate::sampling::PointCloud;

/// Default threshold position inside the realized score range.
///
/// `0.35` puts the cut 35% of the way up from the minimum, so the upper 65%
/// of the range counts as dexterous.
pub const DEFAULT_M_REF: f64 = 0.35;

// Roundoff allowance on det(J J^T) before it counts as a broken Jacobian.
const NEGATIVE_DET_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DexterityConfig {
    /// Task-space dimension, 1..=3 (rows of J used).
    pub m_task: usize,
    /// Threshold fraction: `tau = min + m_ref * (max - min)`.
    pub m_ref: f64,
}

impl Default for DexterityConfig {
    fn default() -> Self {
        Self {
            m_task: 3,
            m_ref: DEFAULT_M_REF,
        }
    }
}

impl DexterityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.m_task) {
            return Err(Error::InvalidConfig(format!(
                "dexterity.m_task = {} outside [1, 3]",
                self.m_task
            )));
        }
        if !(0.0..=1.0).contains(&self.m_ref) {
            return Err(Error::InvalidConfig(format!(
                "dexterity.m_ref = {} outside [0, 1]",
                self.m_ref
            )));
        }
        Ok(())
    }
}

/// `det(J_m J_m^T)^(1/m)` over the first `m_task` rows of `j`.
pub fn manipulability<R, C, S>(j: &Matrix<f64, R, C, S>, m_task: usize) -> Result<f64>
where
    R: Dim,
    C: Dim,
    S: RawStorage<f64, R, C>,
{
    if m_task == 0 || m_task > j.nrows() {
        return Err(Error::InvalidConfig(format!(
            "m_task = {m_task} but the Jacobian has {} rows",
            j.nrows()
        )));
    }
    if !j.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidConfig("Jacobian has non-finite entries".into()));
    }
    let rows = DMatrix::from_fn(m_task, j.ncols(), |r, c| j[(r, c)]);
    let det = (&rows * rows.transpose()).determinant();
    if det < -NEGATIVE_DET_TOL {
        return Err(Error::NegativeDeterminant(det));
    }
    Ok(det.max(0.0).powf(1.0 / m_task as f64))
}

/// `M / (a1 + a3 + a5)`.
pub fn relative_manipulability(m: f64, xi: &LinkLengths) -> Result<f64> {
    normalize(m, xi.total())
}

fn normalize(m: f64, length: f64) -> Result<f64> {
    if !(length > 0.0) {
        return Err(Error::InvalidChain(format!(
            "total link length {length} must be positive"
        )));
    }
    Ok(m / length)
}

/// Score threshold for a realized range; never above `max`, so the
/// best-scoring points always qualify.
pub fn dexterity_threshold(score_min: f64, score_max: f64, m_ref: f64) -> f64 {
    (score_min + m_ref * (score_max - score_min)).min(score_max)
}

/// Per-point classification of a score list: `(min, max, threshold, mask)`.
pub fn classify(scores: &[f64], m_ref: f64) -> (f64, f64, f64, Vec<bool>) {
    let min = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tau = dexterity_threshold(min, max, m_ref);
    let mask = scores.iter().map(|&s| s >= tau).collect();
    (min, max, tau, mask)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredCloud {
    pub cloud: PointCloud,
    pub scores: Vec<f64>,
    pub score_min: f64,
    pub score_max: f64,
    pub threshold: f64,
    pub dexterous_mask: Vec<bool>,
}

impl ScoredCloud {
    pub fn dexterous_count(&self) -> usize {
        self.dexterous_mask.iter().filter(|&&d| d).count()
    }

    pub fn dexterous_points(&self) -> Vec<TipPosition> {
        self.cloud
            .points
            .iter()
            .zip(&self.dexterous_mask)
            .filter_map(|(p, &d)| d.then_some(*p))
            .collect()
    }
}

/// Scores every stored joint state and applies the threshold rule.
pub fn score_cloud(cloud: PointCloud, cfg: &DexterityConfig) -> Result<ScoredCloud> {
    cfg.validate()?;
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let length = match cloud.link_lengths {
        Some(xi) => xi.total(),
        None => cloud.chain.length_scale,
    };
    let scores = map_indexed(cloud.len(), |i| {
        let j = cloud.chain.jacobian_unchecked(cloud.joint_state(i));
        manipulability(&j, cfg.m_task).and_then(|m| normalize(m, length))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let (score_min, score_max, threshold, dexterous_mask) = classify(&scores, cfg.m_ref);
    Ok(ScoredCloud {
        cloud,
        scores,
        score_min,
        score_max,
        threshold,
        dexterous_mask,
    })
}
