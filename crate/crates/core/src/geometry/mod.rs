//! Workspace boundary and volume from a point cloud.
//!
//! The cloud is cut into slabs along the slicing axis. Inside each slab the
//! points are binned into columns along the column axis, and the highest and
//! lowest point of every column become boundary samples. Least-squares
//! polynomials through those samples give an upper and a lower envelope whose
//! integrated gap is the slab's cross-section; the volume is the sum of the
//! cross-sections times the slab width.

mod area;
mod partition;
mod poly;

pub use area::{envelope_area, symmetric_area, SliceArea};
pub use partition::{column_extrema, partition_slices, Column, ColumnSet, SlicePartition};
pub use poly::{fit_boundary, fit_polynomial, Polynomial};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dexterity::ScoredCloud;
use crate::error::{Error, Result};
use crate::kinematics::{Axis, TipPosition};
use crate::parallel::map_indexed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceAxes {
    pub slice: Axis,
    pub column: Axis,
    pub height: Axis,
}

impl Default for SliceAxes {
    fn default() -> Self {
        Self {
            slice: Axis::Y,
            column: Axis::X,
            height: Axis::Z,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PartitionConfig {
    pub s_n: usize,
    pub s_m: usize,
    pub fit_order_reach: usize,
    pub fit_order_dex: usize,
    pub min_points_per_column: usize,
    pub axes: SliceAxes,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        Self {
            s_n: 40,
            s_m: 40,
            fit_order_reach: 7,
            fit_order_dex: 6,
            min_points_per_column: 1,
            axes: SliceAxes::default(),
        }
    }
}

impl PartitionConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.s_n < 1 {
            return fail(format!("partition.s_n = {} must be >= 1", self.s_n));
        }
        if self.s_m < 2 {
            return fail(format!("partition.s_m = {} must be >= 2", self.s_m));
        }
        if self.fit_order_reach < 1 || self.fit_order_dex < 1 {
            return fail("partition fit orders must be >= 1".into());
        }
        if self.min_points_per_column < 1 {
            return fail("partition.min_points_per_column must be >= 1".into());
        }
        let a = self.axes;
        if a.slice == a.column || a.slice == a.height || a.column == a.height {
            return fail("partition.axes must name three distinct axes".into());
        }
        Ok(())
    }
}

/// Boundary data and fitted envelope of one slab.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceBoundary {
    pub slice_index: usize,
    pub y_center: f64,
    pub point_count: usize,
    pub columns: Vec<Column>,
    /// Order actually fitted; below the configured order for sparse slabs.
    pub order: usize,
    pub upper: Polynomial,
    pub lower: Polynomial,
    pub x_min: f64,
    pub x_max: f64,
    pub area: SliceArea,
}

/// Area enclosed by a slab's envelope over its realized abscissa extent.
pub fn slice_area(boundary: &SliceBoundary) -> SliceArea {
    envelope_area(&boundary.upper, &boundary.lower, boundary.x_min, boundary.x_max)
}

/// `delta_y * sum(A_i)` with compensated summation.
pub fn volume(slices: &[SliceBoundary], delta_y: f64) -> f64 {
    delta_y * neumaier_sum(slices.iter().map(|s| s.area.area))
}

pub fn equivalent_radius(volume: f64) -> f64 {
    (3.0 * volume.max(0.0) / (4.0 * PI)).cbrt()
}

fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorkspaceReport {
    pub volume: f64,
    pub equivalent_radius: f64,
    pub point_count: usize,
    pub fit_order: usize,
    pub delta_y: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// Slabs whose fitted envelope crosses itself somewhere.
    pub crossing_slices: usize,
    /// Slabs whose area was clamped to the positive part.
    pub clamped_slices: usize,
    pub config: PartitionConfig,
    pub slices: Vec<SliceBoundary>,
}

/// Full partition, extrema, fit, area and volume pipeline on one point set.
pub fn analyze_points(points: &[TipPosition], order: usize, cfg: &PartitionConfig) -> Result<WorkspaceReport> {
    cfg.validate()?;
    let axes = cfg.axes;
    let part = partition_slices(points, cfg.s_n, axes.slice)?;

    let slices: Vec<Option<SliceBoundary>> = map_indexed(part.buckets.len(), |i| {
        let bucket = &part.buckets[i];
        let xz: Vec<(f64, f64)> = bucket
            .iter()
            .map(|&k| (points[k].coord(axes.column), points[k].coord(axes.height)))
            .collect();
        let set = column_extrema(&xz, cfg.s_m, cfg.min_points_per_column);
        if set.columns.len() < 2 {
            return None;
        }
        let used = order.min(set.columns.len() - 1);
        // two or more distinct column centers always determine a fit
        let (upper, lower) = fit_boundary(&set.columns, used).ok()?;
        let mut slice = SliceBoundary {
            slice_index: i,
            y_center: part.center(i),
            point_count: bucket.len(),
            columns: set.columns,
            order: used,
            upper,
            lower,
            x_min: set.x_min,
            x_max: set.x_max,
            area: SliceArea {
                area: 0.0,
                crossing: false,
                clamped: false,
            },
        };
        slice.area = slice_area(&slice);
        Some(slice)
    });
    let slices: Vec<SliceBoundary> = slices.into_iter().flatten().collect();

    let v = volume(&slices, part.delta);
    Ok(WorkspaceReport {
        volume: v,
        equivalent_radius: equivalent_radius(v),
        point_count: points.len(),
        fit_order: order,
        delta_y: part.delta,
        y_min: part.min,
        y_max: part.max,
        crossing_slices: slices.iter().filter(|s| s.area.crossing).count(),
        clamped_slices: slices.iter().filter(|s| s.area.clamped).count(),
        config: cfg.clone(),
        slices,
    })
}

/// Reachable report over all points and dexterous report over the masked
/// points, each with its own fit order.
pub fn analyze(scored: &ScoredCloud, cfg: &PartitionConfig) -> Result<(WorkspaceReport, WorkspaceReport)> {
    let reach = analyze_points(&scored.cloud.points, cfg.fit_order_reach, cfg)?;
    let dex_points = scored.dexterous_points();
    let empty_dex = || Error::EmptyDexterousSet {
        score_min: scored.score_min,
        score_max: scored.score_max,
        threshold: scored.threshold,
    };
    if dex_points.is_empty() {
        return Err(empty_dex());
    }
    let dex = match analyze_points(&dex_points, cfg.fit_order_dex, cfg) {
        // a single dexterous point (or a flat set) has no extent to slice
        Err(Error::DegenerateExtent { .. }) => return Err(empty_dex()),
        other => other?,
    };
    Ok((reach, dex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn radius_of_unit_ball() {
        assert_relative_eq!(equivalent_radius(4.0 * PI / 3.0), 1.0, epsilon = 1e-15);
        assert_eq!(equivalent_radius(0.0), 0.0);
    }

    #[test]
    fn reported_radii() {
        assert!((equivalent_radius(7.69e-5) - 0.0264).abs() < 5e-5);
        assert!((equivalent_radius(2.09e-5) - 0.0171).abs() < 5e-5);
    }

    #[test]
    fn empty_volume() {
        assert_eq!(volume(&[], 0.1), 0.0);
    }

    #[test]
    fn compensated_sum() {
        let v = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(neumaier_sum(v.into_iter()), 2.0);
    }

    #[test]
    fn config_validation() {
        assert!(PartitionConfig::default().validate().is_ok());
        let bad = PartitionConfig {
            s_m: 1,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let clash = PartitionConfig {
            axes: SliceAxes {
                slice: Axis::X,
                column: Axis::X,
                height: Axis::Z,
            },
            ..Default::default()
        };
        assert!(clash.validate().is_err());
    }

    #[test]
    fn box_cloud_volume() {
        // Lattice filling [0, 2] x [0, 1] x [0, 0.5]: every slab is a rectangle.
        let mut pts = Vec::new();
        for i in 0..=40 {
            for j in 0..=20 {
                for k in 0..=10 {
                    pts.push(TipPosition::new(i as f64 * 0.05, j as f64 * 0.05, k as f64 * 0.05));
                }
            }
        }
        let cfg = PartitionConfig {
            s_n: 10,
            s_m: 10,
            ..Default::default()
        };
        let rep = analyze_points(&pts, 3, &cfg).unwrap();
        assert_relative_eq!(rep.delta_y, 0.1, epsilon = 1e-15);
        assert_eq!(rep.slices.len(), 10);
        assert_relative_eq!(rep.volume, 1.0, max_relative = 1e-10);
        assert_eq!(rep.crossing_slices, 0);
    }
}
