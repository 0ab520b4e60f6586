//! Oracles shared by the integration tests. Nothing here calls into the
//! library's kinematics or geometry code.
#![allow(dead_code)]

use std::collections::HashSet;
use std::f64::consts::FRAC_PI_2;

use dexspace::kinematics::{LinkLengths, TipPosition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closed-form tip position of the PRRRR wrist, expanded by hand from the
/// link transforms. Joint 2 carries a fixed +90 degree offset.
pub fn closed_form_tip(xi: &LinkLengths, q: &[f64]) -> [f64; 3] {
    let (a1, a3, a5) = (xi.a1, xi.a3, xi.a5);
    let d1 = q[0];
    let (s2, c2) = (q[1] + FRAC_PI_2).sin_cos();
    let (s3, c3) = q[2].sin_cos();
    let (s4, c4) = q[3].sin_cos();
    let (s5, c5) = q[4].sin_cos();
    let x = -a3 * s3 - a5 * c3 * s5 - a5 * c4 * c5 * s3;
    let y = a3 * c2 * c3 - a5 * c5 * (s2 * s4 - c2 * c3 * c4) - a5 * c2 * s3 * s5;
    let z = a1 + d1 + a3 * c3 * s2 + a5 * c5 * (c2 * s4 + c3 * c4 * s2) - a5 * s2 * s3 * s5;
    [x, y, z]
}

/// Uniform joint state inside the instrument's limits.
pub fn random_state<R: Rng>(rng: &mut R) -> Vec<f64> {
    let lim = std::f64::consts::FRAC_PI_4;
    let mut q = vec![rng.random_range(0.0..=0.010)];
    q.extend((0..4).map(|_| rng.random_range(-lim..=lim)));
    q
}

/// Link lengths in [3, 12] x [3, 12] x [10, 30] mm.
pub fn random_xi<R: Rng>(rng: &mut R) -> LinkLengths {
    LinkLengths::new(
        rng.random_range(0.003..0.012),
        rng.random_range(0.003..0.012),
        rng.random_range(0.010..0.030),
    )
}

/// Occupied-voxel volume: count of distinct cubes of side `h` holding at
/// least one point, times `h^3`.
pub fn voxel_volume(points: &[TipPosition], h: f64) -> f64 {
    let cells: HashSet<(i64, i64, i64)> = points
        .iter()
        .map(|p| {
            (
                (p.x / h).floor() as i64,
                (p.y / h).floor() as i64,
                (p.z / h).floor() as i64,
            )
        })
        .collect();
    cells.len() as f64 * h * h * h
}

/// Spearman rank correlation, average ranks for ties.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for k in i..=j {
                r[idx[k]] = avg;
            }
            i = j + 1;
        }
        r
    }
    let (ra, rb) = (ranks(a), ranks(b));
    let n = a.len() as f64;
    let ma = ra.iter().sum::<f64>() / n;
    let mb = rb.iter().sum::<f64>() / n;
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = ra.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}
