//! CSV and JSON writers.
//!
//! Floats go out as `{:.16e}` (17 significant digits), which parses back to
//! the identical `f64`. All lengths are meters, volumes cubic meters; the unit
//! is part of every CSV column name.

use std::io::{BufRead, Write};

use serde::Serialize;

use crate::dexterity::ScoredCloud;
use crate::error::{Error, Result};
use crate::geometry::WorkspaceReport;
use crate::kinematics::TipPosition;
use crate::optimizer::Candidate;
use crate::sampling::PointCloud;

/// Abscissa samples per slice in the boundary CSV.
pub const BOUNDARY_SAMPLES_PER_SLICE: usize = 200;

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<output>", e)
}

fn joint_header(dof: usize) -> String {
    (1..=dof).map(|i| format!(",q{i}")).collect()
}

fn write_point_row<W: Write>(w: &mut W, p: &TipPosition, q: &[f64]) -> std::io::Result<()> {
    write!(w, "{},{},{}", fmt_f64(p.x), fmt_f64(p.y), fmt_f64(p.z))?;
    for v in q {
        write!(w, ",{}", fmt_f64(*v))?;
    }
    Ok(())
}

/// `x_m,y_m,z_m` plus one column per joint when `with_joints` is set.
pub fn write_cloud_csv<W: Write>(w: &mut W, cloud: &PointCloud, with_joints: bool) -> Result<()> {
    let inner = |w: &mut W| -> std::io::Result<()> {
        let joints = if with_joints {
            joint_header(cloud.dof)
        } else {
            String::new()
        };
        writeln!(w, "x_m,y_m,z_m{joints}")?;
        for (i, p) in cloud.points.iter().enumerate() {
            let q = if with_joints { cloud.joint_state(i) } else { &[] };
            write_point_row(w, p, q)?;
            writeln!(w)?;
        }
        Ok(())
    };
    inner(w).map_err(io_err)
}

/// Cloud rows with `score,dexterous` appended.
pub fn write_scored_csv<W: Write>(w: &mut W, scored: &ScoredCloud) -> Result<()> {
    let cloud = &scored.cloud;
    let inner = |w: &mut W| -> std::io::Result<()> {
        writeln!(w, "x_m,y_m,z_m{},score,dexterous", joint_header(cloud.dof))?;
        for (i, p) in cloud.points.iter().enumerate() {
            write_point_row(w, p, cloud.joint_state(i))?;
            writeln!(
                w,
                ",{},{}",
                fmt_f64(scored.scores[i]),
                u8::from(scored.dexterous_mask[i])
            )?;
        }
        Ok(())
    };
    inner(w).map_err(io_err)
}

/// Reads the `x_m,y_m,z_m` columns of a cloud CSV back.
pub fn read_cloud_csv<R: BufRead>(r: R) -> Result<Vec<TipPosition>> {
    let bad = |line: usize, what: String| Error::InvalidConfig(format!("cloud csv line {line}: {what}"));
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| bad(1, "missing header".into()))?
        .map_err(io_err)?;
    if !header.starts_with("x_m,y_m,z_m") {
        return Err(bad(1, format!("unexpected header `{header}`")));
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(io_err)?;
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let mut next = || -> Result<f64> {
            let f = fields.next().ok_or_else(|| bad(i + 2, "too few columns".into()))?;
            f.parse().map_err(|e| bad(i + 2, format!("`{f}`: {e}")))
        };
        out.push(TipPosition::new(next()?, next()?, next()?));
    }
    Ok(out)
}

/// Upper and lower envelope of every fitted slice, sampled evenly over its
/// integration interval.
pub fn write_boundary_csv<W: Write>(w: &mut W, report: &WorkspaceReport) -> Result<()> {
    let inner = |w: &mut W| -> std::io::Result<()> {
        writeln!(w, "slice_index,y_m,x_m,u_m,l_m")?;
        let n = BOUNDARY_SAMPLES_PER_SLICE;
        for s in &report.slices {
            for k in 0..n {
                let x = s.x_min + (s.x_max - s.x_min) * k as f64 / (n - 1) as f64;
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    s.slice_index,
                    fmt_f64(s.y_center),
                    fmt_f64(x),
                    fmt_f64(s.upper.eval(x)),
                    fmt_f64(s.lower.eval(x))
                )?;
            }
        }
        Ok(())
    };
    inner(w).map_err(io_err)
}

/// One row per evaluated design.
pub fn write_sweep_csv<W: Write>(w: &mut W, candidates: &[Candidate]) -> Result<()> {
    let inner = |w: &mut W| -> std::io::Result<()> {
        writeln!(
            w,
            "a1_m,a3_m,a5_m,l_total_m,v_reach_m3,v_dex_m3,r_ed_m,feasible,dexterous"
        )?;
        for c in candidates {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                fmt_f64(c.xi.a1),
                fmt_f64(c.xi.a3),
                fmt_f64(c.xi.a5),
                fmt_f64(c.total_length()),
                fmt_f64(c.v_reach),
                fmt_f64(c.v_dex),
                fmt_f64(c.r_ed),
                u8::from(c.feasible),
                u8::from(!c.dexterous_empty)
            )?;
        }
        Ok(())
    };
    inner(w).map_err(io_err)
}

/// Pretty JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize + ?Sized>(w: &mut W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(|e| io_err(e.into()))?;
    writeln!(w).map_err(io_err)
}
