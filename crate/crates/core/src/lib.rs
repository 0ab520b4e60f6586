//! Monte Carlo workspace analysis for a PRRRR continuum-instrument wrist.
//!
//! The pipeline samples joint space, maps samples through DH forward
//! kinematics, scores each sample by relative manipulability, and estimates
//! reachable and dexterous volumes by slicing the point cloud and integrating
//! fitted boundary polynomials. A lattice sweep over the link lengths picks a
//! design.
//!
//! ```no_run
//! use dexspace::kinematics::LinkLengths;
//! use dexspace::optimizer::{evaluate, PipelineConfig};
//!
//! let c = evaluate(LinkLengths::from_mm(3.0, 8.0, 34.0), &PipelineConfig::default())?;
//! println!("V_dex = {:.3e} m^3", c.v_dex);
//! # Ok::<(), dexspace::Error>(())
//! ```

// `!(a > b)` is used deliberately so NaN takes the error path.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod dexterity;
pub mod error;
pub mod export;
pub mod geometry;
pub mod kinematics;
pub mod manifest;
pub mod optimizer;
mod parallel;
pub mod run;
pub mod sampling;

pub use error::{Error, Result};
