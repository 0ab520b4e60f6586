use serde::Serialize;

use super::poly::Polynomial;

// Grid used to locate sign changes of the fitted thickness.
const CROSSING_GRID: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliceArea {
    pub area: f64,
    /// The thickness `u - l` goes negative somewhere on the interval.
    pub crossing: bool,
    /// The signed integral was negative and only the positive part was kept.
    pub clamped: bool,
}

/// Area between `upper` and `lower` over `[x_min, x_max]`.
///
/// The signed integral of `u - l` is used as is unless it is negative; then
/// the thickness is clamped to zero pointwise and the positive lobes are
/// integrated exactly between its roots.
pub fn envelope_area(upper: &Polynomial, lower: &Polynomial, x_min: f64, x_max: f64) -> SliceArea {
    if !(x_max > x_min) {
        return SliceArea {
            area: 0.0,
            crossing: false,
            clamped: false,
        };
    }
    let diff = upper.sub(lower);
    let signed = diff.integrate(x_min, x_max);

    let step = (x_max - x_min) / CROSSING_GRID as f64;
    let grid: Vec<f64> = (0..=CROSSING_GRID)
        .map(|i| {
            if i == CROSSING_GRID {
                x_max
            } else {
                x_min + step * i as f64
            }
        })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&x| diff.eval(x)).collect();
    let crossing = values.iter().any(|&v| v < 0.0);

    if signed >= 0.0 {
        return SliceArea {
            area: signed,
            crossing,
            clamped: false,
        };
    }

    let mut breaks = vec![x_min];
    for i in 0..CROSSING_GRID {
        let (a, b) = (values[i], values[i + 1]);
        if (a < 0.0) != (b < 0.0) {
            breaks.push(bisect(&diff, grid[i], grid[i + 1]));
        }
    }
    breaks.push(x_max);
    let area = breaks
        .windows(2)
        .filter(|w| diff.eval(0.5 * (w[0] + w[1])) > 0.0)
        .map(|w| diff.integrate(w[0], w[1]))
        .sum::<f64>()
        .max(0.0);
    SliceArea {
        area,
        crossing,
        clamped: true,
    }
}

fn bisect(p: &Polynomial, mut a: f64, mut b: f64) -> f64 {
    let neg_a = p.eval(a) < 0.0;
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (p.eval(m) < 0.0) == neg_a {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Symmetric-slice shortcut `2 * sum_j dp_{j-1} / j * x_max^j` for ascending
/// monomial coefficient differences `delta`. Only equal to the general
/// integral over `[-x_max, x_max]` when the odd terms of `delta` vanish.
pub fn symmetric_area(delta: &[f64], x_max: f64) -> f64 {
    2.0 * delta
        .iter()
        .enumerate()
        .map(|(k, &d)| d / (k + 1) as f64 * x_max.powi(k as i32 + 1))
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rectangle() {
        let a = envelope_area(
            &Polynomial::monomial(vec![1.0]),
            &Polynomial::monomial(vec![0.0]),
            -1.0,
            1.0,
        );
        assert_relative_eq!(a.area, 2.0, epsilon = 1e-15);
        assert!(!a.crossing && !a.clamped);
    }

    #[test]
    fn parabola() {
        let a = envelope_area(
            &Polynomial::monomial(vec![0.0, 0.0, 1.0]),
            &Polynomial::monomial(vec![0.0]),
            0.0,
            1.0,
        );
        assert_relative_eq!(a.area, 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn symmetric_shortcut_matches_for_even_difference() {
        let upper = Polynomial::monomial(vec![2.0, 0.0, -0.5, 0.0, 0.1]);
        let lower = Polynomial::monomial(vec![-1.0, 0.0, 0.3]);
        let general = envelope_area(&upper, &lower, -1.3, 1.3).area;
        let delta = upper.sub(&lower).monomial_coeffs();
        assert_relative_eq!(symmetric_area(&delta, 1.3), general, max_relative = 1e-13);
    }

    #[test]
    fn symmetric_shortcut_differs_with_odd_terms() {
        let upper = Polynomial::monomial(vec![2.0, 0.7]);
        let lower = Polynomial::monomial(vec![0.0]);
        let general = envelope_area(&upper, &lower, -1.0, 1.0).area;
        assert_relative_eq!(general, 4.0, epsilon = 1e-14);
        assert_relative_eq!(symmetric_area(&[2.0, 0.7], 1.0), 4.7, epsilon = 1e-14);
    }

    #[test]
    fn crossing_without_clamp() {
        // u - l = x, positive overall on [-0.5, 1]
        let a = envelope_area(
            &Polynomial::monomial(vec![0.0, 1.0]),
            &Polynomial::monomial(vec![0.0]),
            -0.5,
            1.0,
        );
        assert!(a.crossing && !a.clamped);
        assert_relative_eq!(a.area, 0.5 - 0.125, epsilon = 1e-14);
    }

    #[test]
    fn negative_integral_is_clamped_pointwise() {
        // u - l = x on [-1, 0.5]: signed -0.375, positive lobe 0.125
        let a = envelope_area(
            &Polynomial::monomial(vec![0.0, 1.0]),
            &Polynomial::monomial(vec![0.0]),
            -1.0,
            0.5,
        );
        assert!(a.crossing && a.clamped);
        assert_relative_eq!(a.area, 0.125, epsilon = 1e-12);

        let all_negative = envelope_area(
            &Polynomial::monomial(vec![-1.0]),
            &Polynomial::monomial(vec![0.0]),
            0.0,
            1.0,
        );
        assert_eq!(all_negative.area, 0.0);
        assert!(all_negative.clamped);
    }
}
