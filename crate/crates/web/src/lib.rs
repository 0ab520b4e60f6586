//! wasm-bindgen bindings behind `www/index.html`.
//!
//! A [`Workspace`] samples one design once; the page then asks it for the
//! projected cloud, for individual slice envelopes and for the volumes.

use dexspace::dexterity::{score_cloud, DexterityConfig, ScoredCloud};
use dexspace::geometry::{analyze_points, equivalent_radius, PartitionConfig, WorkspaceReport};
use dexspace::kinematics::LinkLengths;
use dexspace::sampling::{sample_prrrr, SamplerConfig};
use js_sys::Float64Array;
use wasm_bindgen::prelude::*;

/// Curve samples per slice envelope.
const CURVE_POINTS: usize = 120;

fn js_err(e: dexspace::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

#[wasm_bindgen]
pub struct Workspace {
    scored: ScoredCloud,
    reach: WorkspaceReport,
    dex: Option<WorkspaceReport>,
}

#[wasm_bindgen]
impl Workspace {
    /// Samples and analyzes the design `[a1, a3, a5]` given in mm.
    #[wasm_bindgen(constructor)]
    pub fn new(a1: f64, a3: f64, a5: f64, samples: usize, seed: u64, m_ref: f64) -> Result<Workspace, JsValue> {
        let xi = LinkLengths::from_mm(a1, a3, a5);
        xi.check_lower_bounds().map_err(js_err)?;
        let sampler = SamplerConfig {
            n_samples: samples,
            seed,
            ..Default::default()
        };
        let dexterity = DexterityConfig {
            m_ref,
            ..Default::default()
        };
        let cloud = sample_prrrr(xi, &sampler).map_err(js_err)?;
        let scored = score_cloud(cloud, &dexterity).map_err(js_err)?;
        let part = PartitionConfig::default();
        let reach = analyze_points(&scored.cloud.points, part.fit_order_reach, &part).map_err(js_err)?;
        let dex = analyze_points(&scored.dexterous_points(), part.fit_order_dex, &part).ok();
        Ok(Workspace { scored, reach, dex })
    }

    /// Flat `[x, y, z, dexterous]` quadruples in meters.
    pub fn points(&self) -> Float64Array {
        let mut out = Vec::with_capacity(self.scored.cloud.len() * 4);
        for (p, &d) in self.scored.cloud.points.iter().zip(&self.scored.dexterous_mask) {
            out.extend_from_slice(&[p.x, p.y, p.z, if d { 1.0 } else { 0.0 }]);
        }
        Float64Array::from(out.as_slice())
    }

    /// `[v_reach, v_dex, r_ed, dexterous fraction]`.
    pub fn volumes(&self) -> Float64Array {
        let v_dex = self.dex.as_ref().map_or(0.0, |d| d.volume);
        let frac = self.scored.dexterous_count() as f64 / self.scored.cloud.len() as f64;
        Float64Array::from(&[self.reach.volume, v_dex, equivalent_radius(v_dex), frac][..])
    }

    /// Slice slab count of the reachable (or dexterous) report.
    pub fn slice_count(&self, dexterous: bool) -> usize {
        self.report(dexterous).map_or(0, |r| r.slices.len())
    }

    /// Envelope of one fitted slice as flat `[x, upper, lower]` triples,
    /// followed by the slab's y center as the last value.
    pub fn slice_curve(&self, dexterous: bool, index: usize) -> Float64Array {
        let Some(s) = self.report(dexterous).and_then(|r| r.slices.get(index)) else {
            return Float64Array::new_with_length(0);
        };
        let mut out = Vec::with_capacity(CURVE_POINTS * 3 + 1);
        for k in 0..CURVE_POINTS {
            let x = s.x_min + (s.x_max - s.x_min) * k as f64 / (CURVE_POINTS - 1) as f64;
            out.extend_from_slice(&[x, s.upper.eval(x), s.lower.eval(x)]);
        }
        out.push(s.y_center);
        Float64Array::from(out.as_slice())
    }

    /// Column extrema of one slice as flat `[x, z_max, z_min]` triples.
    pub fn slice_columns(&self, dexterous: bool, index: usize) -> Float64Array {
        let Some(s) = self.report(dexterous).and_then(|r| r.slices.get(index)) else {
            return Float64Array::new_with_length(0);
        };
        let out: Vec<f64> = s.columns.iter().flat_map(|c| [c.x_center, c.z_max, c.z_min]).collect();
        Float64Array::from(out.as_slice())
    }
}

impl Workspace {
    fn report(&self, dexterous: bool) -> Option<&WorkspaceReport> {
        if dexterous {
            self.dex.as_ref()
        } else {
            Some(&self.reach)
        }
    }
}
