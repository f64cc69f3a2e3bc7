//! Geometry of the spiral of Theodorus.
//!
//! Triangle `n` has legs `1` and `√n` and hypotenuse `√(n+1)`. Its interior angle at the origin
//! is `α_n = asin(1/√(n+1))` and the complementary angle at the outer vertex is
//! `β_n = acos(1/√(n+1))`. Point `n` sits at radius `√n` and polar angle `θ_n = Σ_{k<n} α_k`.

use serde::Serialize;

use crate::compensated::CompensatedSum;

/// Angle of triangle `n` at the spiral's centre.
#[inline]
pub fn interior_angle(n: usize) -> f64 {
    (1.0 / ((n + 1) as f64).sqrt()).asin()
}

/// Angle of triangle `n` between the unit leg and the hypotenuse.
#[inline]
pub fn exterior_angle(n: usize) -> f64 {
    (1.0 / ((n + 1) as f64).sqrt()).acos()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpiralPoint {
    pub n: usize,
    pub radius: f64,
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Unbounded iterator over spiral points starting at `n = 1`.
#[derive(Clone, Debug)]
pub struct Spiral {
    next: usize,
    theta: CompensatedSum,
}

impl Spiral {
    pub fn new() -> Self {
        Self {
            next: 1,
            theta: CompensatedSum::new(),
        }
    }
}

impl Default for Spiral {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Spiral {
    type Item = SpiralPoint;

    fn next(&mut self) -> Option<SpiralPoint> {
        let n = self.next;
        let alpha = interior_angle(n);
        let point = SpiralPoint {
            n,
            radius: (n as f64).sqrt(),
            theta: self.theta.value(),
            alpha,
            beta: exterior_angle(n),
        };
        self.theta.add(alpha);
        self.next += 1;
        Some(point)
    }
}

/// Points `1..=n_max`.
pub fn spiral_points(n_max: usize) -> Vec<SpiralPoint> {
    Spiral::new().take(n_max).collect()
}

/// θ_n as a compensated sum; bit-identical to the `theta` of the n-th [`Spiral`] point.
pub fn theta(n: usize) -> f64 {
    theta_sum(n).value()
}

pub(crate) fn theta_sum(n: usize) -> CompensatedSum {
    (1..n.max(1)).map(interior_angle).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn first_triangle_is_isosceles() {
        let p = spiral_points(1)[0];
        assert!((p.alpha - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(p.radius, 1.0);
        assert_eq!(p.theta, 0.0);
    }

    #[test]
    fn theta_four_matches_oracle() {
        // 30-digit reference: π/4 + asin(1/√3) + asin(1/2)
        assert!((theta(4) - 1.924_476_647_666_134_5).abs() < 1e-15);
    }

    #[test]
    fn complementary_and_monotone() {
        let pts = spiral_points(5000);
        for w in pts.windows(2) {
            assert!(w[1].theta > w[0].theta);
            assert!(w[1].alpha < w[0].alpha);
            assert!(w[1].beta > w[0].beta);
        }
        for p in &pts {
            assert!((p.alpha + p.beta - FRAC_PI_2).abs() < 1e-12);
            assert!((p.radius * p.radius - p.n as f64).abs() <= 1e-12 * p.n as f64);
        }
    }

    #[test]
    fn iterator_and_direct_sum_agree_bitwise() {
        for p in spiral_points(300) {
            assert_eq!(p.theta.to_bits(), theta(p.n).to_bits());
        }
    }

    #[test]
    fn radius_of_hundredth_point() {
        assert_eq!(spiral_points(100)[99].radius, 10.0);
    }
}
