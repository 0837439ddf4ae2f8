use crate::numfmt::fmt_sig;
use crate::scalar::{from_usize, lit, to_f64, Scalar};

use super::design::{DesignError, DesignVector, HULL_LENGTH, MAX_RADIUS};
use super::pchip::{MonotoneCubic, PchipError};

/// Default number of midpoint-rule stations for surface integrals.
pub const DEFAULT_STATIONS: usize = 200;

/// Axial fractions of nose (and tail) length where control knots sit.
const CONTROL_FRACTIONS: [f64; 3] = [0.25, 0.5, 0.75];

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error(transparent)]
    InvalidDesign(#[from] DesignError),
    #[error("axial station {0} outside [0, 1]")]
    Domain(f64),
    #[error("bad knot set: {0}")]
    Knots(#[from] PchipError),
    #[error("profile knots must start at x=0, end at x=1 and have non-negative radii")]
    KnotSpan,
    #[error("need at least {min} {what}, got {got}")]
    TooFewSamples {
        what: &'static str,
        min: usize,
        got: usize,
    },
}

/// Radius curve `r(x)` of a body of revolution on `x ∈ [0, 1]`.
///
/// Immutable once built; all queries are pure.
#[derive(Clone, Debug, PartialEq)]
pub struct HullProfile<T> {
    curve: MonotoneCubic<T>,
    nose_length: T,
}

/// Builds the 9-knot profile of a valid design: both tips, three knots at
/// quarter fractions of the nose, the junction at full radius and three at
/// quarter fractions of the tail.
pub fn build_profile<T: Scalar>(d: &DesignVector<T>) -> Result<HullProfile<T>, GeometryError> {
    HullProfile::from_design(d)
}

impl<T: Scalar> HullProfile<T> {
    pub fn from_design(d: &DesignVector<T>) -> Result<Self, GeometryError> {
        d.validate()?;
        let nose = d.nose_length;
        let tail = d.tail_length();
        let r_max = lit::<T>(MAX_RADIUS);
        let half = lit::<T>(0.5);
        let radius = |diameter: T| (diameter * half).max(T::zero()).min(r_max);

        let mut xs = Vec::with_capacity(9);
        let mut ys = Vec::with_capacity(9);
        xs.push(T::zero());
        ys.push(T::zero());
        for (f, &dia) in CONTROL_FRACTIONS.iter().zip(&d.control_diameters[..3]) {
            xs.push(nose * lit(*f));
            ys.push(radius(dia));
        }
        xs.push(nose);
        ys.push(r_max);
        for (f, &dia) in CONTROL_FRACTIONS.iter().zip(&d.control_diameters[3..]) {
            xs.push(nose + tail * lit(*f));
            ys.push(radius(dia));
        }
        xs.push(lit(HULL_LENGTH));
        ys.push(T::zero());

        Ok(Self {
            curve: MonotoneCubic::new(xs, ys)?,
            nose_length: nose,
        })
    }

    /// Profile through arbitrary knots spanning `[0, 1]`. Used for synthetic
    /// bodies (cylinders, cones); hull invariants are not enforced.
    pub fn from_knots(xs: Vec<T>, ys: Vec<T>) -> Result<Self, GeometryError> {
        let spans = xs.first() == Some(&T::zero()) && xs.last() == Some(&lit(HULL_LENGTH));
        if !spans || ys.iter().any(|&r| r < T::zero()) {
            return Err(GeometryError::KnotSpan);
        }
        let curve = MonotoneCubic::new(xs, ys)?;
        let (mut nose_length, mut best) = (T::zero(), T::neg_infinity());
        for (&x, &r) in curve.knots_x().iter().zip(curve.knots_y()) {
            if r > best {
                best = r;
                nose_length = x;
            }
        }
        Ok(Self { curve, nose_length })
    }

    pub fn hull_length(&self) -> T {
        lit(HULL_LENGTH)
    }

    pub fn nose_length(&self) -> T {
        self.nose_length
    }

    /// Knots as `(axial station, radius)` pairs.
    pub fn knots(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.curve
            .knots_x()
            .iter()
            .copied()
            .zip(self.curve.knots_y().iter().copied())
    }

    /// Hermite slopes at the knots.
    pub fn knot_slopes(&self) -> &[T] {
        self.curve.slopes()
    }

    pub fn max_radius(&self) -> T {
        self.curve
            .knots_y()
            .iter()
            .fold(T::zero(), |acc, &r| acc.max(r))
    }

    fn check_domain(&self, x: T) -> Result<(), GeometryError> {
        if x >= T::zero() && x <= self.hull_length() {
            Ok(())
        } else {
            Err(GeometryError::Domain(to_f64(x)))
        }
    }

    pub fn radius_at(&self, x: T) -> Result<T, GeometryError> {
        self.check_domain(x)?;
        Ok(self.curve.eval(x))
    }

    pub fn slope_at(&self, x: T) -> Result<T, GeometryError> {
        self.check_domain(x)?;
        Ok(self.curve.derivative(x))
    }

    /// `(r, dr/dx)` without the domain check.
    pub(crate) fn radius_and_slope(&self, x: T) -> (T, T) {
        self.curve.eval_with_slope(x)
    }

    /// Midpoint stations `x_i = (i + ½)·L/n` with spacing `L/n`.
    pub fn midpoints(&self, n: usize) -> impl Iterator<Item = T> + '_ {
        let dx = self.hull_length() / from_usize::<T>(n);
        let half = lit::<T>(0.5);
        (0..n).map(move |i| (from_usize::<T>(i) + half) * dx)
    }

    /// Lateral surface area `∫ 2π r √(1 + r'²) dx`, midpoint rule on `n` stations.
    pub fn wetted_area(&self, n: usize) -> T {
        let n = n.max(1);
        let dx = self.hull_length() / from_usize::<T>(n);
        let two_pi = T::TAU();
        self.midpoints(n)
            .map(|x| {
                let (r, s) = self.radius_and_slope(x);
                two_pi * r * (T::one() + s * s).sqrt()
            })
            .sum::<T>()
            * dx
    }

    /// Enclosed volume `∫ π r² dx`, midpoint rule on `n` stations.
    pub fn volume(&self, n: usize) -> T {
        let n = n.max(1);
        let dx = self.hull_length() / from_usize::<T>(n);
        self.midpoints(n)
            .map(|x| {
                let r = self.curve.eval(x);
                T::PI() * r * r
            })
            .sum::<T>()
            * dx
    }

    /// `x,r` CSV with `n` uniformly spaced samples (endpoints included).
    pub fn to_csv(&self, n: usize) -> Result<String, GeometryError> {
        if n < 2 {
            return Err(GeometryError::TooFewSamples {
                what: "profile samples",
                min: 2,
                got: n,
            });
        }
        let mut out = String::from("x,r\n");
        for (x, r) in self.samples(n) {
            out.push_str(&fmt_sig(to_f64(x), 9));
            out.push(',');
            out.push_str(&fmt_sig(to_f64(r), 9));
            out.push('\n');
        }
        Ok(out)
    }

    /// `n ≥ 2` uniformly spaced `(x, r)` samples from 0 to the hull length.
    pub fn samples(&self, n: usize) -> impl Iterator<Item = (T, T)> + '_ {
        let last = from_usize::<T>(n.max(2) - 1);
        (0..n).map(move |i| {
            let x = if i + 1 == n {
                self.hull_length()
            } else {
                self.hull_length() * from_usize::<T>(i) / last
            };
            (x, self.curve.eval(x))
        })
    }
}

/// Free-function form of [`HullProfile::to_csv`].
pub fn export_profile_csv<T: Scalar>(
    p: &HullProfile<T>,
    n: usize,
) -> Result<String, GeometryError> {
    p.to_csv(n)
}

/// Parses the `x,r` CSV written by [`HullProfile::to_csv`].
pub fn parse_profile_csv(text: &str) -> Result<Vec<(f64, f64)>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some("x,r") => {}
        other => return Err(format!("expected header `x,r`, got {other:?}")),
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let (x, r) = l
                .split_once(',')
                .ok_or_else(|| format!("line {}: expected two fields", i + 2))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("line {}: {e}", i + 2))
            };
            Ok((parse(x)?, parse(r)?))
        })
        .collect()
}
