//! Monotone piecewise-cubic Hermite interpolation with Fritsch–Carlson slopes.

use crate::scalar::{lit, Scalar};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum PchipError {
    #[error("need at least two knots with matching x/y lengths")]
    LengthMismatch,
    #[error("knot abscissae must be strictly increasing")]
    NonIncreasing,
    #[error("knots must be finite")]
    NonFinite,
}

/// Shape-preserving cubic interpolant: between two knots the curve never
/// leaves the interval spanned by the knot values.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneCubic<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    slopes: Vec<T>,
}

impl<T: Scalar> MonotoneCubic<T> {
    pub fn new(xs: Vec<T>, ys: Vec<T>) -> Result<Self, PchipError> {
        let n = xs.len();
        if n < 2 || ys.len() != n {
            return Err(PchipError::LengthMismatch);
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(PchipError::NonFinite);
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(PchipError::NonIncreasing);
        }

        let secants: Vec<T> = (0..n - 1)
            .map(|k| (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]))
            .collect();

        let half = lit::<T>(0.5);
        let mut m = vec![T::zero(); n];
        m[0] = secants[0];
        m[n - 1] = secants[n - 2];
        for k in 1..n - 1 {
            let (a, b) = (secants[k - 1], secants[k]);
            m[k] = if a * b <= T::zero() {
                T::zero()
            } else {
                half * (a + b)
            };
        }

        // Flat segments pin both end slopes; then limit to the monotonicity circle.
        let three = lit::<T>(3.0);
        let nine = lit::<T>(9.0);
        for k in 0..n - 1 {
            let s = secants[k];
            if s == T::zero() {
                m[k] = T::zero();
                m[k + 1] = T::zero();
                continue;
            }
            let alpha = m[k] / s;
            let beta = m[k + 1] / s;
            if alpha < T::zero() {
                m[k] = T::zero();
            }
            if beta < T::zero() {
                m[k + 1] = T::zero();
            }
            let (alpha, beta) = (m[k] / s, m[k + 1] / s);
            let r2 = alpha * alpha + beta * beta;
            if r2 > nine {
                let tau = three / r2.sqrt();
                m[k] = tau * alpha * s;
                m[k + 1] = tau * beta * s;
            }
        }

        Ok(Self { xs, ys, slopes: m })
    }

    pub fn knots_x(&self) -> &[T] {
        &self.xs
    }

    pub fn knots_y(&self) -> &[T] {
        &self.ys
    }

    pub fn slopes(&self) -> &[T] {
        &self.slopes
    }

    fn segment(&self, x: T) -> usize {
        let n = self.xs.len();
        match self.xs.partition_point(|&k| k <= x) {
            0 => 0,
            i if i >= n => n - 2,
            i => i - 1,
        }
    }

    /// Value and first derivative at `x`; outside the knot range the end
    /// segments are extended.
    pub fn eval_with_slope(&self, x: T) -> (T, T) {
        let k = self.segment(x);
        let (x0, x1) = (self.xs[k], self.xs[k + 1]);
        let (y0, y1) = (self.ys[k], self.ys[k + 1]);
        let (m0, m1) = (self.slopes[k], self.slopes[k + 1]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let one = T::one();
        let two = lit::<T>(2.0);
        let three = lit::<T>(3.0);
        let six = lit::<T>(6.0);

        let t2 = t * t;
        let u = one - t;
        let h01 = t2 * (three - two * t);
        let h10 = t * u * u;
        let h11 = -t2 * u;
        // Written relative to y0 so equal knots give exactly y0.
        let mut value = y0 + (y1 - y0) * h01 + h * (m0 * h10 + m1 * h11);
        if (T::zero()..=one).contains(&t) {
            let (lo, hi) = if y0 <= y1 { (y0, y1) } else { (y1, y0) };
            value = value.max(lo).min(hi);
        }

        let dh01 = six * t * u;
        let dh10 = one - lit::<T>(4.0) * t + three * t2;
        let dh11 = three * t2 - two * t;
        let slope = (y1 - y0) * dh01 / h + m0 * dh10 + m1 * dh11;
        (value, slope)
    }

    pub fn eval(&self, x: T) -> T {
        self.eval_with_slope(x).0
    }

    pub fn derivative(&self, x: T) -> T {
        self.eval_with_slope(x).1
    }
}
