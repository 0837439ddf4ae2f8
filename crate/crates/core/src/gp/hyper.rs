//! Multi-start compass search of the log marginal likelihood over
//! log-hyperparameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{lit, to_f64, Scalar};

use super::kernel::{
    KernelParams, LENGTHSCALE_MAX, LENGTHSCALE_MIN, NOISE_MAX, NOISE_MIN, SIGNAL_MAX, SIGNAL_MIN,
};
use super::model::{log_likelihood, PairwiseSq};

const INITIAL_STEP: f64 = 0.125;
const MIN_STEP: f64 = 1.0 / 128.0;

/// Search space: log-box per hyperparameter, mapped to `[0, 1]^m`.
struct LogBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
    dim: usize,
    with_noise: bool,
}

impl LogBox {
    fn new(dim: usize, with_noise: bool) -> Self {
        let mut lo = vec![SIGNAL_MIN.ln()];
        let mut hi = vec![SIGNAL_MAX.ln()];
        lo.extend(std::iter::repeat_n(LENGTHSCALE_MIN.ln(), dim));
        hi.extend(std::iter::repeat_n(LENGTHSCALE_MAX.ln(), dim));
        if with_noise {
            lo.push(NOISE_MIN.ln());
            hi.push(NOISE_MAX.ln());
        }
        Self {
            lo,
            hi,
            dim,
            with_noise,
        }
    }

    fn len(&self) -> usize {
        self.lo.len()
    }

    fn decode<T: Scalar>(&self, u: &[f64], fixed_noise: T) -> KernelParams<T> {
        let val = |i: usize| (self.lo[i] + u[i] * (self.hi[i] - self.lo[i])).exp();
        // clamp guards exp/ln rounding at the box edges
        let ls = (0..self.dim)
            .map(|k| lit::<T>(val(1 + k).clamp(LENGTHSCALE_MIN, LENGTHSCALE_MAX)))
            .collect();
        let noise = if self.with_noise {
            lit(val(self.dim + 1).clamp(NOISE_MIN, NOISE_MAX))
        } else {
            fixed_noise
        };
        KernelParams {
            signal_variance: lit(val(0).clamp(SIGNAL_MIN, SIGNAL_MAX)),
            lengthscales: ls,
            noise_variance: noise,
        }
    }

    fn encode<T: Scalar>(&self, p: &KernelParams<T>) -> Vec<f64> {
        let mut raw = vec![to_f64(p.signal_variance)];
        raw.extend(p.lengthscales.iter().map(|&l| to_f64(l)));
        if self.with_noise {
            raw.push(to_f64(p.noise_variance));
        }
        raw.iter()
            .enumerate()
            .map(|(i, v)| ((v.ln() - self.lo[i]) / (self.hi[i] - self.lo[i])).clamp(0.0, 1.0))
            .collect()
    }
}

pub(crate) struct SearchSettings {
    pub starts: usize,
    pub max_evals_per_start: usize,
    pub optimize_noise: bool,
    pub seed: u64,
}

/// Returns the best hyperparameters found and their log marginal likelihood.
/// Start 0 is `initial`; the remaining starts are seeded uniform draws.
pub(crate) fn maximize_likelihood<T: Scalar>(
    pairs: &PairwiseSq<T>,
    y: &[T],
    initial: &KernelParams<T>,
    settings: &SearchSettings,
) -> (KernelParams<T>, T) {
    let space = LogBox::new(initial.dim(), settings.optimize_noise);
    let fixed_noise = initial.noise_variance;
    let objective = |u: &[f64]| -> f64 {
        let p = space.decode(u, fixed_noise);
        log_likelihood(pairs, y, &p).map_or(f64::NEG_INFINITY, to_f64)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut best_u = space.encode(initial);
    let mut best_f = objective(&best_u);
    for start in 0..settings.starts.max(1) {
        let u0 = if start == 0 {
            best_u.clone()
        } else {
            (0..space.len()).map(|_| rng.random::<f64>()).collect()
        };
        let (u, f) = compass_search(&objective, u0, settings.max_evals_per_start);
        if f > best_f {
            best_u = u;
            best_f = f;
        }
    }
    let params = space.decode(&best_u, fixed_noise);
    let lml = log_likelihood(pairs, y, &params).unwrap_or(T::neg_infinity());
    (params, lml)
}

/// Opportunistic coordinate search in `[0, 1]^m`, maximizing.
fn compass_search(
    objective: &impl Fn(&[f64]) -> f64,
    mut u: Vec<f64>,
    max_evals: usize,
) -> (Vec<f64>, f64) {
    let mut f = objective(&u);
    let mut evals = 1;
    let mut step = INITIAL_STEP;
    'outer: while step >= MIN_STEP {
        let mut improved = false;
        for i in 0..u.len() {
            for dir in [1.0, -1.0] {
                if evals >= max_evals {
                    break 'outer;
                }
                let moved = (u[i] + dir * step).clamp(0.0, 1.0);
                if moved == u[i] {
                    continue;
                }
                let old = std::mem::replace(&mut u[i], moved);
                let fc = objective(&u);
                evals += 1;
                if fc > f {
                    f = fc;
                    improved = true;
                    break;
                }
                u[i] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (u, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compass_search_finds_interior_maximum() {
        let target = [0.3, 0.71, 0.5];
        let obj = |u: &[f64]| {
            -u.iter()
                .zip(&target)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
        };
        let (u, f) = compass_search(&obj, vec![0.9, 0.1, 0.0], 10_000);
        assert!(f > -1e-4, "{u:?}");
    }

    #[test]
    fn encode_decode_round_trip() {
        let space = LogBox::new(3, true);
        let p = KernelParams {
            signal_variance: 1.3,
            lengthscales: vec![0.2, 1.0, 4.0],
            noise_variance: 1e-4,
        };
        let q: KernelParams<f64> = space.decode(&space.encode(&p), 0.0);
        assert!((q.signal_variance - 1.3).abs() < 1e-12);
        assert!((q.lengthscales[2] - 4.0).abs() < 1e-12);
        assert!((q.noise_variance - 1e-4).abs() < 1e-16);
    }
}
