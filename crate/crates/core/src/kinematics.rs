//! Denavit-Hartenberg serial chains: tip position and positional Jacobian.
//!
//! Every row uses the standard convention
//! `A_i = Rot_z(theta) * Trans_z(d) * Trans_x(a) * Rot_x(alpha)` where the
//! joint variable is added to `theta_offset` (revolute) or `d_offset`
//! (prismatic). All lengths are meters and all angles radians.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Matrix3xX, Matrix4, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lower bound on `a1` and `a3` (fabricability).
pub const MIN_A1: f64 = 0.003;
pub const MIN_A3: f64 = 0.003;
/// The last link doubles as the end effector.
pub const MIN_A5: f64 = 0.010;
/// Upper bound on `a1 + a3 + a5`.
pub const MAX_TOTAL_LENGTH: f64 = 0.045;
/// Stroke of the prismatic insertion joint.
pub const PRISMATIC_STROKE: f64 = 0.010;
/// Symmetric limit of the four revolute joints.
pub const REVOLUTE_LIMIT: f64 = std::f64::consts::FRAC_PI_4;

// Slack for bounds that arrive through a mm -> m conversion.
const BOUND_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JointKind {
    Prismatic,
    Revolute,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DhRow {
    pub a: f64,
    pub alpha: f64,
    pub d_offset: f64,
    pub theta_offset: f64,
    pub kind: JointKind,
    /// Joint limits, meters for prismatic rows and radians for revolute rows.
    pub q_min: f64,
    pub q_max: f64,
}

impl DhRow {
    pub fn revolute(a: f64, alpha: f64, d: f64, theta_offset: f64, q_min: f64, q_max: f64) -> Self {
        Self {
            a,
            alpha,
            d_offset: d,
            theta_offset,
            kind: JointKind::Revolute,
            q_min,
            q_max,
        }
    }

    pub fn prismatic(a: f64, alpha: f64, d_offset: f64, theta: f64, q_min: f64, q_max: f64) -> Self {
        Self {
            a,
            alpha,
            d_offset,
            theta_offset: theta,
            kind: JointKind::Prismatic,
            q_min,
            q_max,
        }
    }

    pub fn range(&self) -> f64 {
        self.q_max - self.q_min
    }

    fn validate(&self, index: usize) -> Result<()> {
        let finite = [
            self.a,
            self.alpha,
            self.d_offset,
            self.theta_offset,
            self.q_min,
            self.q_max,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidChain(format!("row {index} has non-finite entries")));
        }
        if self.q_min > self.q_max {
            return Err(Error::InvalidChain(format!(
                "row {index}: q_min {} > q_max {}",
                self.q_min, self.q_max
            )));
        }
        if self.a < 0.0 {
            return Err(Error::InvalidChain(format!(
                "row {index}: negative link length a = {}",
                self.a
            )));
        }
        Ok(())
    }

    /// Homogeneous transform of this row for joint value `q`.
    pub fn transform(&self, q: f64) -> Matrix4<f64> {
        let (theta, d) = match self.kind {
            JointKind::Revolute => (self.theta_offset + q, self.d_offset),
            JointKind::Prismatic => (self.theta_offset, self.d_offset + q),
        };
        let (st, ct) = theta.sin_cos();
        let (sa, ca) = self.alpha.sin_cos();
        #[rustfmt::skip]
        let m = Matrix4::new(
            ct, -st * ca,  st * sa, self.a * ct,
            st,  ct * ca, -ct * sa, self.a * st,
            0.0,      sa,       ca, d,
            0.0,     0.0,      0.0, 1.0,
        );
        m
    }
}

/// Serial chain of DH rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DhChain {
    pub rows: Vec<DhRow>,
    pub base_transform: Matrix4<f64>,
    /// Total link length used to normalize manipulability.
    pub length_scale: f64,
}

impl DhChain {
    /// Builds a chain with identity base. The length scale defaults to the
    /// sum of `a` and `|d_offset|` over all rows.
    pub fn new(rows: Vec<DhRow>) -> Result<Self> {
        let length_scale = rows.iter().map(|r| r.a + r.d_offset.abs()).sum();
        Self::with_base(rows, Matrix4::identity(), length_scale)
    }

    pub fn with_base(rows: Vec<DhRow>, base_transform: Matrix4<f64>, length_scale: f64) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidChain("chain needs at least one row".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            row.validate(i + 1)?;
        }
        if !base_transform.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidChain("base transform has non-finite entries".into()));
        }
        Ok(Self {
            rows,
            base_transform,
            length_scale,
        })
    }

    pub fn dof(&self) -> usize {
        self.rows.len()
    }

    pub fn check_dimension(&self, q: &[f64]) -> Result<()> {
        if q.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                got: q.len(),
            });
        }
        Ok(())
    }

    pub fn check_limits(&self, q: &[f64]) -> Result<()> {
        self.check_dimension(q)?;
        for (i, (row, &v)) in self.rows.iter().zip(q).enumerate() {
            if !(v >= row.q_min && v <= row.q_max) {
                return Err(Error::JointLimit {
                    joint: i + 1,
                    value: v,
                    min: row.q_min,
                    max: row.q_max,
                });
            }
        }
        Ok(())
    }

    /// Tip position without dimension checks; `q.len()` must equal `dof()`.
    pub(crate) fn tip_unchecked(&self, q: &[f64]) -> Vector3<f64> {
        let t = self
            .rows
            .iter()
            .zip(q)
            .fold(self.base_transform, |acc, (row, &v)| acc * row.transform(v));
        t.fixed_view::<3, 1>(0, 3).into_owned()
    }

    pub(crate) fn jacobian_unchecked(&self, q: &[f64]) -> Matrix3xX<f64> {
        let n = self.rows.len();
        let mut axes = Vec::with_capacity(n);
        let mut origins = Vec::with_capacity(n);
        let mut t = self.base_transform;
        for (row, &v) in self.rows.iter().zip(q) {
            axes.push(t.fixed_view::<3, 1>(0, 2).into_owned());
            origins.push(t.fixed_view::<3, 1>(0, 3).into_owned());
            t *= row.transform(v);
        }
        let tip: Vector3<f64> = t.fixed_view::<3, 1>(0, 3).into_owned();
        let mut jac = Matrix3xX::zeros(n);
        for (i, row) in self.rows.iter().enumerate() {
            let col = match row.kind {
                JointKind::Revolute => axes[i].cross(&(tip - origins[i])),
                JointKind::Prismatic => axes[i],
            };
            jac.set_column(i, &col);
        }
        jac
    }
}

/// Joint values, one per row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointState(pub Vec<f64>);

impl JointState {
    pub fn new(q: Vec<f64>) -> Self {
        Self(q)
    }

    /// Checks dimension and joint limits.
    pub fn validated(chain: &DhChain, q: Vec<f64>) -> Result<Self> {
        chain.check_limits(&q)?;
        Ok(Self(q))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TipPosition {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TipPosition {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn coord(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }
}

impl From<Vector3<f64>> for TipPosition {
    fn from(v: Vector3<f64>) -> Self {
        Self::new(v.x, v.y, v.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Design vector `[a1, a3, a5]` of the PRRRR instrument, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkLengths {
    pub a1: f64,
    pub a3: f64,
    pub a5: f64,
}

impl LinkLengths {
    pub fn new(a1: f64, a3: f64, a5: f64) -> Self {
        Self { a1, a3, a5 }
    }

    pub fn from_mm(a1: f64, a3: f64, a5: f64) -> Self {
        Self::new(a1 * 1e-3, a3 * 1e-3, a5 * 1e-3)
    }

    pub fn total(&self) -> f64 {
        self.a1 + self.a3 + self.a5
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a1, self.a3, self.a5]
    }

    /// Checks the per-link lower bounds.
    pub fn check_lower_bounds(&self) -> Result<()> {
        let checks = [
            ("a1", self.a1, MIN_A1),
            ("a3", self.a3, MIN_A3),
            ("a5", self.a5, MIN_A5),
        ];
        for (name, value, min) in checks {
            if !value.is_finite() || value < min - BOUND_EPS {
                return Err(Error::Constraint(format!(
                    "{name} = {:.4} mm is below the {:.0} mm minimum",
                    value * 1e3,
                    min * 1e3
                )));
            }
        }
        Ok(())
    }

    /// Lower bounds plus the total-length cap.
    pub fn check_constraints(&self, total_max: f64) -> Result<()> {
        self.check_lower_bounds()?;
        if self.total() > total_max + BOUND_EPS {
            return Err(Error::Constraint(format!(
                "total length {:.4} mm exceeds the {:.4} mm maximum",
                self.total() * 1e3,
                total_max * 1e3
            )));
        }
        Ok(())
    }
}

/// The five-row PRRRR instrument chain for the given link lengths.
///
/// Row 1 is the insertion joint: its fixed `theta` is 90 deg and `a1` sits in
/// the `d` offset so that it stacks with the stroke along the base z-axis.
/// Row 2 carries the 90 deg joint offset; `a2 = a4 = 0`.
pub fn build_prrrr_chain(xi: LinkLengths) -> Result<DhChain> {
    xi.check_lower_bounds()?;
    let lim = REVOLUTE_LIMIT;
    let rows = vec![
        DhRow::prismatic(0.0, FRAC_PI_2, xi.a1, FRAC_PI_2, 0.0, PRISMATIC_STROKE),
        DhRow::revolute(0.0, -FRAC_PI_2, 0.0, FRAC_PI_2, -lim, lim),
        DhRow::revolute(xi.a3, FRAC_PI_2, 0.0, 0.0, -lim, lim),
        DhRow::revolute(0.0, -FRAC_PI_2, 0.0, 0.0, -lim, lim),
        DhRow::revolute(xi.a5, 0.0, 0.0, 0.0, -lim, lim),
    ];
    DhChain::with_base(rows, Matrix4::identity(), xi.total())
}

pub fn forward_kinematics(chain: &DhChain, q: &JointState) -> Result<TipPosition> {
    chain.check_dimension(q.as_slice())?;
    Ok(chain.tip_unchecked(q.as_slice()).into())
}

/// Positional geometric Jacobian (3 x dof). Revolute columns are
/// `z_{i-1} x (p_e - p_{i-1})`, prismatic columns `z_{i-1}`.
pub fn positional_jacobian(chain: &DhChain, q: &JointState) -> Result<Matrix3xX<f64>> {
    chain.check_dimension(q.as_slice())?;
    Ok(chain.jacobian_unchecked(q.as_slice()))
}
