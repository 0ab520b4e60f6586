//! Monte Carlo joint-space sampling and the Cartesian point clouds it maps to.
//!
//! Reproducibility: sample indices are cut into fixed chunks of
//! [`CHUNK_LEN`]. Chunk `k` draws from a ChaCha8 generator seeded with the
//! master seed and switched to stream `k` ([`chunk_rng`]). Each sample draws
//! its joints in row order from its chunk's generator. The cloud therefore
//! depends only on `(seed, config, chain)`, not on the number of workers.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{DhChain, DhRow, JointKind, LinkLengths, TipPosition};
use crate::parallel::map_indexed;

/// Sample count for manipulability statistics.
pub const MANIPULABILITY_SAMPLES: usize = 10_000;
/// Sample count for boundary and volume runs.
pub const BOUNDARY_SAMPLES: usize = 500_000;
/// Samples per RNG stream.
pub const CHUNK_LEN: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingScheme {
    Uniform,
    Beta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplerConfig {
    pub n_samples: usize,
    pub scheme: SamplingScheme,
    pub seed: u64,
    /// Shape floor: `alpha = beta = range * beta_scale + beta_floor`.
    pub beta_floor: f64,
    pub beta_scale: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            n_samples: BOUNDARY_SAMPLES,
            scheme: SamplingScheme::Beta,
            seed: 0,
            beta_floor: 0.30,
            beta_scale: 1.0 / (5.0 * PI),
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 1 {
            return Err(Error::InvalidConfig("sampler.n_samples must be >= 1".into()));
        }
        if !(self.beta_floor > 0.0 && self.beta_floor.is_finite()) {
            return Err(Error::InvalidConfig("sampler.beta_floor must be positive".into()));
        }
        if !(self.beta_scale > 0.0 && self.beta_scale.is_finite()) {
            return Err(Error::InvalidConfig("sampler.beta_scale must be positive".into()));
        }
        Ok(())
    }
}

/// Generator for chunk `chunk` of a run seeded with `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Beta shape parameters for a row.
///
/// Revolute rows use their angular range in radians. The prismatic row has
/// no angular range; it borrows the shape of a 90 deg revolute joint.
pub fn beta_params(row: &DhRow, cfg: &SamplerConfig) -> (f64, f64) {
    let range = match row.kind {
        JointKind::Revolute => row.range(),
        JointKind::Prismatic => FRAC_PI_2,
    };
    let shape = range * cfg.beta_scale + cfg.beta_floor;
    (shape, shape)
}

/// Per-row sampling law, `q_min + (q_max - q_min) * u`.
#[derive(Debug, Clone, Copy)]
pub struct JointDistribution {
    lo: f64,
    hi: f64,
    law: Law,
}

#[derive(Debug, Clone, Copy)]
enum Law {
    Fixed,
    Uniform,
    Beta(Beta<f64>),
}

impl JointDistribution {
    pub fn uniform(row: &DhRow) -> Self {
        let law = if row.range() == 0.0 { Law::Fixed } else { Law::Uniform };
        Self {
            lo: row.q_min,
            hi: row.q_max,
            law,
        }
    }

    pub fn beta(row: &DhRow, cfg: &SamplerConfig) -> Result<Self> {
        if row.range() == 0.0 {
            return Ok(Self {
                lo: row.q_min,
                hi: row.q_max,
                law: Law::Fixed,
            });
        }
        let (a, b) = beta_params(row, cfg);
        let dist = Beta::new(a, b).map_err(|e| Error::InvalidConfig(format!("beta shape ({a}, {b}): {e}")))?;
        Ok(Self {
            lo: row.q_min,
            hi: row.q_max,
            law: Law::Beta(dist),
        })
    }

    pub fn for_scheme(row: &DhRow, cfg: &SamplerConfig) -> Result<Self> {
        match cfg.scheme {
            SamplingScheme::Uniform => Ok(Self::uniform(row)),
            SamplingScheme::Beta => Self::beta(row, cfg),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u = match self.law {
            Law::Fixed => return self.lo,
            Law::Uniform => rng.random::<f64>(),
            Law::Beta(ref d) => d.sample(rng),
        };
        (self.lo + (self.hi - self.lo) * u).clamp(self.lo, self.hi)
    }
}

pub fn draw_uniform<R: Rng + ?Sized>(row: &DhRow, n: usize, rng: &mut R) -> Vec<f64> {
    let dist = JointDistribution::uniform(row);
    (0..n).map(|_| dist.sample(rng)).collect()
}

pub fn draw_beta<R: Rng + ?Sized>(row: &DhRow, n: usize, cfg: &SamplerConfig, rng: &mut R) -> Result<Vec<f64>> {
    let dist = JointDistribution::beta(row, cfg)?;
    Ok((0..n).map(|_| dist.sample(rng)).collect())
}

/// Sampled tip positions with the joint states that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<TipPosition>,
    /// Row-major joint values, `dof` per point.
    pub joints: Vec<f64>,
    pub dof: usize,
    pub chain: DhChain,
    pub link_lengths: Option<LinkLengths>,
    pub seed: u64,
    pub scheme: SamplingScheme,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn joint_state(&self, i: usize) -> &[f64] {
        &self.joints[i * self.dof..(i + 1) * self.dof]
    }
}

/// Draws `cfg.n_samples` joint states and maps each through the chain.
pub fn sample_workspace(chain: &DhChain, cfg: &SamplerConfig) -> Result<PointCloud> {
    cfg.validate()?;
    let dists = chain
        .rows
        .iter()
        .map(|row| JointDistribution::for_scheme(row, cfg))
        .collect::<Result<Vec<_>>>()?;
    let dof = chain.dof();
    let n = cfg.n_samples;
    let chunks = n.div_ceil(CHUNK_LEN);

    let parts = map_indexed(chunks, |k| {
        let start = k * CHUNK_LEN;
        let len = CHUNK_LEN.min(n - start);
        let mut rng = chunk_rng(cfg.seed, k as u64);
        let mut points = Vec::with_capacity(len);
        let mut joints = Vec::with_capacity(len * dof);
        let mut q = vec![0.0; dof];
        for _ in 0..len {
            for (slot, dist) in q.iter_mut().zip(&dists) {
                *slot = dist.sample(&mut rng);
            }
            points.push(TipPosition::from(chain.tip_unchecked(&q)));
            joints.extend_from_slice(&q);
        }
        (points, joints)
    });

    let mut points = Vec::with_capacity(n);
    let mut joints = Vec::with_capacity(n * dof);
    for (p, j) in parts {
        points.extend(p);
        joints.extend(j);
    }
    Ok(PointCloud {
        points,
        joints,
        dof,
        chain: chain.clone(),
        link_lengths: None,
        seed: cfg.seed,
        scheme: cfg.scheme,
    })
}

/// [`sample_workspace`] on the PRRRR chain, recording the design vector.
pub fn sample_prrrr(xi: LinkLengths, cfg: &SamplerConfig) -> Result<PointCloud> {
    let chain = crate::kinematics::build_prrrr_chain(xi)?;
    let mut cloud = sample_workspace(&chain, cfg)?;
    cloud.link_lengths = Some(xi);
    Ok(cloud)
}
