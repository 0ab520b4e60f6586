//! Least-squares boundary polynomials.
//!
//! Fits are solved in a rescaled variable `t = (x - center) / half_width`
//! that maps the fitted abscissae onto `[-1, 1]`; a Householder QR solve on
//! that Vandermonde matrix stays well conditioned at order 7, where the
//! normal equations in raw meters do not.

use nalgebra::{DMatrix, DVector};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    /// Ascending coefficients in the scaled variable.
    coeffs: Vec<f64>,
    center: f64,
    half_width: f64,
}

impl Polynomial {
    /// Polynomial from ascending monomial coefficients in `x`.
    pub fn monomial(coeffs: Vec<f64>) -> Self {
        Self {
            coeffs,
            center: 0.0,
            half_width: 1.0,
        }
    }

    pub fn scaled(coeffs: Vec<f64>, center: f64, half_width: f64) -> Self {
        Self {
            coeffs,
            center,
            half_width,
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn scaled_coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    fn t(&self, x: f64) -> f64 {
        (x - self.center) / self.half_width
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = self.t(x);
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Antiderivative in `t`, vanishing at `t = 0`.
    fn primitive_t(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * t + c / (k + 1) as f64)
            * t
    }

    /// Exact integral over `[a, b]` from the antiderivative.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        self.half_width * (self.primitive_t(self.t(b)) - self.primitive_t(self.t(a)))
    }

    /// Ascending monomial coefficients in `x` (constant term first).
    pub fn monomial_coeffs(&self) -> Vec<f64> {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        // (x - c)^k / h^k expanded binomially
        let inv_h = 1.0 / self.half_width;
        for (k, &ck) in self.coeffs.iter().enumerate() {
            let scale = ck * inv_h.powi(k as i32);
            let mut binom = 1.0;
            for (j, o) in out[..=k].iter_mut().enumerate() {
                *o += scale * binom * (-self.center).powi((k - j) as i32);
                binom = binom * (k - j) as f64 / (j + 1) as f64;
            }
        }
        out
    }

    /// `self - other`. Both must share a frame or be re-expressed as monomials.
    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        if self.center == other.center && self.half_width == other.half_width {
            let n = self.coeffs.len().max(other.coeffs.len());
            let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
            let coeffs = (0..n).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect();
            return Polynomial::scaled(coeffs, self.center, self.half_width);
        }
        let a = self.monomial_coeffs();
        let b = other.monomial_coeffs();
        let n = a.len().max(b.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        Polynomial::monomial((0..n).map(|i| get(&a, i) - get(&b, i)).collect())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Polynomial", 4)?;
        s.serialize_field("coeffs", &self.monomial_coeffs())?;
        s.serialize_field("scaled_coeffs", &self.coeffs)?;
        s.serialize_field("center", &self.center)?;
        s.serialize_field("half_width", &self.half_width)?;
        s.end()
    }
}

/// Least-squares polynomial of the given order through `(x, y)` samples.
pub fn fit_polynomial(xs: &[f64], ys: &[f64], order: usize) -> Result<Polynomial> {
    assert_eq!(xs.len(), ys.len(), "abscissae and ordinates must pair up");
    if xs.len() < order + 1 {
        return Err(Error::Underdetermined {
            needed: order + 1,
            got: xs.len(),
        });
    }
    let (lo, hi) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
        (lo.min(x), hi.max(x))
    });
    let center = 0.5 * (lo + hi);
    let half_width = if hi > lo { 0.5 * (hi - lo) } else { 1.0 };
    frame_fit(xs, ys, order, center, half_width)
}

fn frame_fit(xs: &[f64], ys: &[f64], order: usize, center: f64, half_width: f64) -> Result<Polynomial> {
    let n = xs.len();
    let m = order + 1;
    let v = DMatrix::from_fn(n, m, |r, c| ((xs[r] - center) / half_width).powi(c as i32));
    let b = DVector::from_column_slice(ys);
    let qr = v.qr();
    let rhs = qr.q().transpose() * b;
    let r = qr.r();
    let coeffs = r.solve_upper_triangular(&rhs).ok_or(Error::Underdetermined {
        needed: m,
        got: distinct_count(xs),
    })?;
    Ok(Polynomial::scaled(coeffs.iter().copied().collect(), center, half_width))
}

fn distinct_count(xs: &[f64]) -> usize {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v.len()
}

/// Upper and lower boundary fits over column extrema, sharing one frame.
pub fn fit_boundary(columns: &[super::Column], order: usize) -> Result<(Polynomial, Polynomial)> {
    if columns.len() < order + 1 {
        return Err(Error::Underdetermined {
            needed: order + 1,
            got: columns.len(),
        });
    }
    let xs: Vec<f64> = columns.iter().map(|c| c.x_center).collect();
    let upper: Vec<f64> = columns.iter().map(|c| c.z_max).collect();
    let lower: Vec<f64> = columns.iter().map(|c| c.z_min).collect();
    let fit_upper = fit_polynomial(&xs, &upper, order)?;
    let fit_lower = frame_fit(&xs, &lower, order, fit_upper.center, fit_upper.half_width)?;
    Ok((fit_upper, fit_lower))
}
