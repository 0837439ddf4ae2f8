use crate::scalar::{from_usize, lit, Scalar};

use super::hyper::{maximize_likelihood, SearchSettings};
use super::kernel::{matern52, scaled_distance, KernelParams};
use super::linalg::{cholesky, solve_lower, solve_upper_transposed};
use super::GpError;

/// Jitter added to the diagonal, tried in order until the Gram matrix factors.
const JITTER_LADDER: [f64; 6] = [0.0, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4];
/// Two normalized inputs closer than this (max-norm) are duplicates.
const DUPLICATE_TOL: f64 = 1e-12;

/// Fitting options.
#[derive(Clone, Debug, PartialEq)]
pub struct GpConfig<T> {
    /// Starting point of the search, or the fixed hyperparameters.
    pub initial: KernelParams<T>,
    pub optimize_hyperparams: bool,
    /// Also search the noise variance (for noisy external solvers).
    pub optimize_noise: bool,
    pub seed: u64,
    pub starts: usize,
    pub max_evals_per_start: usize,
}

impl<T: Scalar> GpConfig<T> {
    pub fn new(dim: usize) -> Self {
        Self {
            initial: KernelParams::default_for(dim),
            optimize_hyperparams: true,
            optimize_noise: false,
            seed: 0,
            starts: 16,
            max_evals_per_start: 60,
        }
    }

    /// Fixed hyperparameters, no search.
    pub fn fixed(params: KernelParams<T>) -> Self {
        Self {
            optimize_hyperparams: false,
            ..Self::new(params.dim()).with_initial(params)
        }
    }

    pub fn with_initial(mut self, params: KernelParams<T>) -> Self {
        self.initial = params;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Squared per-dimension differences of every input pair `i > j`.
pub(crate) struct PairwiseSq<T> {
    n: usize,
    dim: usize,
    sq: Vec<T>,
}

impl<T: Scalar> PairwiseSq<T> {
    pub(crate) fn new(x: &[Vec<T>]) -> Self {
        let n = x.len();
        let dim = x.first().map_or(0, Vec::len);
        let mut sq = Vec::with_capacity(n * n.saturating_sub(1) / 2 * dim);
        for i in 0..n {
            for j in 0..i {
                sq.extend(x[i].iter().zip(&x[j]).map(|(&a, &b)| (a - b) * (a - b)));
            }
        }
        Self { n, dim, sq }
    }

    fn gram(&self, p: &KernelParams<T>, diagonal: T) -> Vec<T> {
        let n = self.n;
        let inv: Vec<T> = p.lengthscales.iter().map(|&l| T::one() / (l * l)).collect();
        let mut k = vec![T::zero(); n * n];
        let mut idx = 0;
        for i in 0..n {
            for j in 0..i {
                let r2: T = self.sq[idx..idx + self.dim]
                    .iter()
                    .zip(&inv)
                    .map(|(&d, &w)| d * w)
                    .sum();
                idx += self.dim;
                let v = matern52(p.signal_variance, r2.sqrt());
                k[i * n + j] = v;
                k[j * n + i] = v;
            }
            k[i * n + i] = p.signal_variance + diagonal;
        }
        k
    }
}

/// Factor `K + (noise + jitter) I`, escalating the jitter on failure.
fn factorize<T: Scalar>(pairs: &PairwiseSq<T>, p: &KernelParams<T>) -> Option<(Vec<T>, T)> {
    JITTER_LADDER.iter().find_map(|&j| {
        let jitter = lit::<T>(j);
        cholesky(&pairs.gram(p, p.noise_variance + jitter), pairs.n).map(|l| (l, jitter))
    })
}

fn lml_from_factor<T: Scalar>(l: &[T], n: usize, y: &[T], alpha: &[T]) -> T {
    let fit: T = y.iter().zip(alpha).map(|(&a, &b)| a * b).sum();
    let logdet: T = (0..n).map(|i| l[i * n + i].ln()).sum();
    let half = lit::<T>(0.5);
    -half * fit - logdet - half * from_usize::<T>(n) * T::TAU().ln()
}

/// Log marginal likelihood of standardized targets, `None` if the Gram matrix
/// cannot be factored.
pub(crate) fn log_likelihood<T: Scalar>(
    pairs: &PairwiseSq<T>,
    y: &[T],
    p: &KernelParams<T>,
) -> Option<T> {
    let (l, _) = factorize(pairs, p)?;
    let alpha = solve_upper_transposed(&l, pairs.n, &solve_lower(&l, pairs.n, y));
    Some(lml_from_factor(&l, pairs.n, y, &alpha))
}

/// Gaussian-process surrogate with zero prior mean on z-scored outputs and
/// inputs mapped to the unit cube of the design bounds.
#[derive(Clone, Debug)]
pub struct GpModel<T> {
    bounds: Vec<(T, T)>,
    x_unit: Vec<Vec<T>>,
    y_std: Vec<T>,
    y_mean: T,
    y_scale: T,
    params: KernelParams<T>,
    chol: Vec<T>,
    alpha: Vec<T>,
    jitter: T,
}

impl<T: Scalar> GpModel<T> {
    pub fn fit(
        x: &[Vec<T>],
        y: &[T],
        bounds: &[(T, T)],
        cfg: &GpConfig<T>,
    ) -> Result<Self, GpError> {
        let n = x.len();
        let dim = bounds.len();
        if n == 0 {
            return Err(GpError::EmptyData);
        }
        if y.len() != n {
            return Err(GpError::DimensionMismatch {
                expected: n,
                got: y.len(),
            });
        }
        if let Some(row) = x.iter().find(|r| r.len() != dim) {
            return Err(GpError::DimensionMismatch {
                expected: dim,
                got: row.len(),
            });
        }
        if cfg.initial.dim() != dim {
            return Err(GpError::DimensionMismatch {
                expected: dim,
                got: cfg.initial.dim(),
            });
        }
        if bounds
            .iter()
            .any(|&(lo, hi)| !lo.is_finite() || !hi.is_finite() || lo >= hi)
        {
            return Err(GpError::InvalidBounds);
        }
        if x.iter().flatten().chain(y).any(|v| !v.is_finite()) {
            return Err(GpError::NonFinite);
        }
        cfg.initial.validate()?;

        let x_unit: Vec<Vec<T>> = x.iter().map(|row| to_unit(bounds, row)).collect();
        let tol = lit::<T>(DUPLICATE_TOL);
        for i in 0..n {
            for j in 0..i {
                let close = x_unit[i]
                    .iter()
                    .zip(&x_unit[j])
                    .all(|(&a, &b)| (a - b).abs() <= tol);
                if close {
                    return Err(GpError::DuplicateInput(j, i));
                }
            }
        }

        let nf = from_usize::<T>(n);
        let y_mean = y.iter().copied().sum::<T>() / nf;
        let var = y.iter().map(|&v| (v - y_mean) * (v - y_mean)).sum::<T>() / nf;
        let sd = var.sqrt();
        let floor = lit::<T>(1e-12) * y_mean.abs().max(T::one());
        let y_scale = if sd > floor { sd } else { T::one() };
        let y_std: Vec<T> = y.iter().map(|&v| (v - y_mean) / y_scale).collect();

        let pairs = PairwiseSq::new(&x_unit);
        let params = if cfg.optimize_hyperparams {
            let settings = SearchSettings {
                starts: cfg.starts,
                max_evals_per_start: cfg.max_evals_per_start,
                optimize_noise: cfg.optimize_noise,
                seed: cfg.seed,
            };
            maximize_likelihood(&pairs, &y_std, &cfg.initial, &settings).0
        } else {
            cfg.initial.clone()
        };

        let (chol, jitter) = factorize(&pairs, &params).ok_or(GpError::NotPositiveDefinite)?;
        let alpha = solve_upper_transposed(&chol, n, &solve_lower(&chol, n, &y_std));
        Ok(Self {
            bounds: bounds.to_vec(),
            x_unit,
            y_std,
            y_mean,
            y_scale,
            params,
            chol,
            alpha,
            jitter,
        })
    }

    pub fn n(&self) -> usize {
        self.x_unit.len()
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn params(&self) -> &KernelParams<T> {
        &self.params
    }

    pub fn jitter(&self) -> T {
        self.jitter
    }

    pub fn bounds(&self) -> &[(T, T)] {
        &self.bounds
    }

    pub fn y_mean(&self) -> T {
        self.y_mean
    }

    pub fn y_scale(&self) -> T {
        self.y_scale
    }

    pub fn standardized_targets(&self) -> &[T] {
        &self.y_std
    }

    pub fn unit_inputs(&self) -> &[Vec<T>] {
        &self.x_unit
    }

    /// Prior standard deviation of the latent function in output units.
    pub fn prior_std(&self) -> T {
        self.params.signal_variance.sqrt() * self.y_scale
    }

    pub fn to_unit(&self, x: &[T]) -> Vec<T> {
        to_unit(&self.bounds, x)
    }

    pub fn from_unit(&self, u: &[T]) -> Vec<T> {
        u.iter()
            .zip(&self.bounds)
            .map(|(&v, &(lo, hi))| lo + v * (hi - lo))
            .collect()
    }

    /// Posterior mean and standard deviation of the latent function at `x`
    /// (design units), in output units.
    pub fn posterior(&self, x: &[T]) -> (T, T) {
        self.posterior_unit(&self.to_unit(x))
    }

    /// [`posterior`](Self::posterior) for a unit-cube input.
    pub fn posterior_unit(&self, u: &[T]) -> (T, T) {
        let (m, v) = self.posterior_standardized(u);
        (self.y_mean + self.y_scale * m, self.y_scale * v.sqrt())
    }

    /// Mean and variance on the standardized scale.
    pub fn posterior_standardized(&self, u: &[T]) -> (T, T) {
        let n = self.n();
        let ks: Vec<T> = self
            .x_unit
            .iter()
            .map(|xi| {
                matern52(
                    self.params.signal_variance,
                    scaled_distance(&self.params.lengthscales, u, xi),
                )
            })
            .collect();
        let mean = ks.iter().zip(&self.alpha).map(|(&a, &b)| a * b).sum::<T>();
        let v = solve_lower(&self.chol, n, &ks);
        let var = self.params.signal_variance - v.iter().map(|&a| a * a).sum::<T>();
        (mean, var.max(T::zero()))
    }

    /// `−½ yᵀα − Σ log Lᵢᵢ − (n/2) log 2π` on the standardized targets.
    pub fn log_marginal_likelihood(&self) -> T {
        lml_from_factor(&self.chol, self.n(), &self.y_std, &self.alpha)
    }
}

fn to_unit<T: Scalar>(bounds: &[(T, T)], x: &[T]) -> Vec<T> {
    x.iter()
        .zip(bounds)
        .map(|(&v, &(lo, hi))| (v - lo) / (hi - lo))
        .collect()
}

/// Free-function form of [`GpModel::fit`].
pub fn fit<T: Scalar>(
    x: &[Vec<T>],
    y: &[T],
    bounds: &[(T, T)],
    cfg: &GpConfig<T>,
) -> Result<GpModel<T>, GpError> {
    GpModel::fit(x, y, bounds, cfg)
}
