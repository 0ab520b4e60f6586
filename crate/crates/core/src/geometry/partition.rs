use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{Axis, TipPosition};

/// Upper and lower boundary sample of one column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Column {
    pub x_center: f64,
    pub z_max: f64,
    pub z_min: f64,
}

/// Uniform bins along one axis. The last bin includes its right edge.
#[derive(Debug, Clone, PartialEq)]
pub struct SlicePartition {
    pub buckets: Vec<Vec<usize>>,
    pub delta: f64,
    pub min: f64,
    pub max: f64,
}

impl SlicePartition {
    pub fn center(&self, slice: usize) -> f64 {
        self.min + (slice as f64 + 0.5) * self.delta
    }
}

fn bin_index(v: f64, min: f64, delta: f64, bins: usize) -> usize {
    let k = ((v - min) / delta).floor();
    if k <= 0.0 {
        0
    } else {
        (k as usize).min(bins - 1)
    }
}

/// Splits point indices into `s_n` equal-width slabs along `axis`.
pub fn partition_slices(points: &[TipPosition], s_n: usize, axis: Axis) -> Result<SlicePartition> {
    if points.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if s_n == 0 {
        return Err(Error::InvalidConfig("slice count must be >= 1".into()));
    }
    let (min, max) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let v = p.coord(axis);
        (lo.min(v), hi.max(v))
    });
    if !(max > min) {
        return Err(Error::DegenerateExtent { min, max });
    }
    let delta = (max - min) / s_n as f64;
    let mut buckets = vec![Vec::new(); s_n];
    for (i, p) in points.iter().enumerate() {
        buckets[bin_index(p.coord(axis), min, delta, s_n)].push(i);
    }
    Ok(SlicePartition {
        buckets,
        delta,
        min,
        max,
    })
}

/// Columns of one slice with the realized abscissa extent of their points.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSet {
    pub columns: Vec<Column>,
    pub x_min: f64,
    pub x_max: f64,
    pub delta_x: f64,
}

/// Per-column max and min height of `(x, z)` slice points over `s_m`
/// equal-width columns. Columns with fewer than `min_points` points are
/// dropped, so at most `s_m` columns come back.
pub fn column_extrema(points: &[(f64, f64)], s_m: usize, min_points: usize) -> ColumnSet {
    let empty = ColumnSet {
        columns: Vec::new(),
        x_min: 0.0,
        x_max: 0.0,
        delta_x: 0.0,
    };
    if points.is_empty() || s_m == 0 {
        return empty;
    }
    let (lo, hi) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(x, _)| {
            (lo.min(x), hi.max(x))
        });
    let bins = if hi > lo { s_m } else { 1 };
    let delta_x = (hi - lo) / s_m as f64;

    struct Acc {
        count: usize,
        z_max: f64,
        z_min: f64,
        x_lo: f64,
        x_hi: f64,
    }
    let mut acc: Vec<Acc> = (0..bins)
        .map(|_| Acc {
            count: 0,
            z_max: f64::NEG_INFINITY,
            z_min: f64::INFINITY,
            x_lo: f64::INFINITY,
            x_hi: f64::NEG_INFINITY,
        })
        .collect();
    for &(x, z) in points {
        let j = if bins == 1 { 0 } else { bin_index(x, lo, delta_x, bins) };
        let a = &mut acc[j];
        a.count += 1;
        a.z_max = a.z_max.max(z);
        a.z_min = a.z_min.min(z);
        a.x_lo = a.x_lo.min(x);
        a.x_hi = a.x_hi.max(x);
    }

    let mut columns = Vec::new();
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for (j, a) in acc.iter().enumerate() {
        if a.count == 0 || a.count < min_points {
            continue;
        }
        let x_center = if bins == 1 { lo } else { lo + (j as f64 + 0.5) * delta_x };
        columns.push(Column {
            x_center,
            z_max: a.z_max,
            z_min: a.z_min,
        });
        x_min = x_min.min(a.x_lo);
        x_max = x_max.max(a.x_hi);
    }
    if columns.is_empty() {
        return empty;
    }
    ColumnSet {
        columns,
        x_min,
        x_max,
        delta_x,
    }
}
