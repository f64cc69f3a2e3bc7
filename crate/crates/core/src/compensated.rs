//! Error-compensated floating-point accumulation.
//!
//! [`CompensatedSum`] is a Neumaier accumulator. Its running state `(sum, compensation)` is an
//! unevaluated pair whose exact sum carries roughly twice the precision of an `f64`, which is
//! what long angle series (10⁶–10⁷ terms) need to stay accurate to the last digit.

/// Neumaier compensated accumulator.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        Self {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Best `f64` estimate of the accumulated total.
    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// The total as a normalized double-double `(hi, lo)` with `hi = fl(hi + lo)`.
    pub fn parts(&self) -> (f64, f64) {
        two_sum(self.sum, self.compensation)
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

/// Error-free addition: returns `(s, e)` with `s = fl(a + b)` and `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free product: returns `(p, e)` with `p = fl(a * b)` and `a * b = p + e` exactly.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// π/2 as a double-double.
pub const FRAC_PI_2_DD: (f64, f64) = (std::f64::consts::FRAC_PI_2, 6.123_233_995_736_766e-17);

/// `k · π/2` as a double-double, accurate to about 1e-32 relative.
pub fn multiple_of_half_pi(k: f64) -> (f64, f64) {
    let (p, e) = two_prod(k, FRAC_PI_2_DD.0);
    two_sum(p, e + k * FRAC_PI_2_DD.1)
}
