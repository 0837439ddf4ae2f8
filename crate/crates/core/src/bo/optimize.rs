use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gp::{GpConfig, GpModel, KernelParams};
use crate::scalar::{lit, to_f64, Scalar};

use super::acquisition::beta_schedule;
use super::lhs::latin_hypercube;
use super::propose::{propose_next, ProposalSettings};
use super::trace::Trace;
use super::BoError;

/// Drag recorded for a failed evaluation; such points never enter the surrogate.
pub const FAILURE_SENTINEL: f64 = 1e9;

/// Outcome of an objective call that did not produce a value.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ObjectiveError {
    /// The point cannot be evaluated; recorded with the failure sentinel.
    #[error("evaluation failed: {0}")]
    Failed(String),
    /// Stop the run (e.g. an external solver result is not available yet).
    #[error("run aborted: {0}")]
    Abort(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoConfig<T> {
    /// Total evaluation budget, initial design included.
    pub budget: usize,
    pub n_init: usize,
    pub delta: T,
    pub v: T,
    pub seed: u64,
    pub bounds: Vec<(T, T)>,
    pub proposal: ProposalSettings,
    /// Hyperparameter search starts per refit.
    pub gp_starts: usize,
    pub gp_max_evals_per_start: usize,
    /// Search the GP noise variance too (noisy objectives).
    pub optimize_noise: bool,
}

impl<T: Scalar> BoConfig<T> {
    /// 100 evaluations, 10-point initial design, δ = 0.1, v = 1.
    pub fn new(bounds: Vec<(T, T)>, seed: u64) -> Self {
        Self {
            budget: 100,
            n_init: 10,
            delta: lit(0.1),
            v: T::one(),
            seed,
            bounds,
            proposal: ProposalSettings::default(),
            gp_starts: 16,
            gp_max_evals_per_start: 60,
            optimize_noise: false,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<(), BoError> {
        let bad = |m: String| Err(BoError::InvalidConfig(m));
        if self.n_init < 2 {
            return bad(format!("n_init must be at least 2, got {}", self.n_init));
        }
        if self.n_init >= self.budget {
            return bad(format!(
                "n_init ({}) must be below the budget ({})",
                self.n_init, self.budget
            ));
        }
        if !(self.delta > T::zero() && self.delta < T::one()) {
            return bad(format!(
                "delta must be in (0, 1), got {}",
                to_f64(self.delta)
            ));
        }
        if self.v.is_nan() || self.v <= T::zero() {
            return bad("v must be positive".into());
        }
        if self.bounds.is_empty() {
            return bad("empty bounds".into());
        }
        if self
            .bounds
            .iter()
            .any(|&(lo, hi)| lo.is_nan() || hi.is_nan() || lo >= hi)
        {
            return bad("every bound needs lo < hi".into());
        }
        Ok(())
    }
}

/// Seed for the hyperparameter search at evaluation `t`.
fn refit_seed(seed: u64, t: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(t as u64)
}

/// Runs the objective once; successful distinct points join the training set.
fn evaluate<T, F>(
    objective: &mut F,
    x: &[T],
    train_x: &mut Vec<Vec<T>>,
    train_y: &mut Vec<T>,
    failures: &mut Vec<String>,
) -> Result<T, BoError>
where
    T: Scalar,
    F: FnMut(&[T]) -> Result<T, ObjectiveError>,
{
    let sentinel = lit::<T>(FAILURE_SENTINEL);
    match objective(x) {
        Ok(v) if v.is_finite() && v < sentinel => {
            if !train_x.iter().any(|p| p.as_slice() == x) {
                train_x.push(x.to_vec());
                train_y.push(v);
            }
            Ok(v)
        }
        Ok(v) => {
            failures.push(format!("non-finite or sentinel value {}", to_f64(v)));
            Ok(sentinel)
        }
        Err(ObjectiveError::Failed(msg)) => {
            failures.push(msg);
            Ok(sentinel)
        }
        Err(ObjectiveError::Abort(msg)) => Err(BoError::Aborted(msg)),
    }
}

/// Sequential GP-LCB minimization of `objective` over `cfg.bounds`.
///
/// A seeded Latin hypercube fills the first `n_init` evaluations; every later
/// round refits the surrogate on all successful, distinct evaluations and
/// evaluates the LCB minimizer with `β` from [`beta_schedule`] at the round
/// index. The incumbent is the minimum observed value.
pub fn optimize<T, F>(mut objective: F, cfg: &BoConfig<T>) -> Result<Trace<T>, BoError>
where
    T: Scalar,
    F: FnMut(&[T]) -> Result<T, ObjectiveError>,
{
    cfg.validate()?;
    let dim = cfg.bounds.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut trace = Trace::default();
    let mut train_x: Vec<Vec<T>> = Vec::new();
    let mut train_y: Vec<T> = Vec::new();
    let mut failures = Vec::new();

    for u in latin_hypercube::<T, _>(cfg.n_init, dim, &mut rng) {
        let x: Vec<T> = u
            .iter()
            .zip(&cfg.bounds)
            .map(|(&v, &(lo, hi))| lo + v * (hi - lo))
            .collect();
        let y = evaluate(
            &mut objective,
            &x,
            &mut train_x,
            &mut train_y,
            &mut failures,
        )?;
        trace.push(x, y, T::zero(), T::zero());
    }
    if train_x.is_empty() {
        return Err(BoError::AllInitialFailed(failures));
    }

    let mut params = KernelParams::default_for(dim);
    for t in cfg.n_init + 1..=cfg.budget {
        let gp_cfg = GpConfig {
            initial: params.clone(),
            optimize_hyperparams: true,
            optimize_noise: cfg.optimize_noise,
            seed: refit_seed(cfg.seed, t),
            starts: cfg.gp_starts,
            max_evals_per_start: cfg.gp_max_evals_per_start,
        };
        let model = GpModel::fit(&train_x, &train_y, &cfg.bounds, &gp_cfg)?;
        params = model.params().clone();
        let beta = beta_schedule(t - cfg.n_init, dim, cfg.delta, cfg.v)?;
        let proposal = propose_next(&model, beta, &mut rng, &cfg.proposal);
        let y = evaluate(
            &mut objective,
            &proposal.x,
            &mut train_x,
            &mut train_y,
            &mut failures,
        )?;
        trace.push(proposal.x, y, beta, proposal.acquisition);
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bo::regret;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| (v - 0.3).powi(2)).sum()
    }

    fn quick(dim: usize, budget: usize, seed: u64) -> BoConfig<f64> {
        let mut cfg = BoConfig::new(vec![(0.0, 1.0); dim], seed).with_budget(budget);
        cfg.proposal.n_random = 256;
        cfg.proposal.n_local = 32;
        cfg.gp_starts = 4;
        cfg
    }

    #[test]
    fn finds_sphere_minimum_in_low_dimension() {
        let trace = optimize(|x: &[f64]| Ok(sphere(x)), &quick(2, 30, 1)).unwrap();
        assert_eq!(trace.len(), 30);
        assert!(trace.best().unwrap() < 1e-3, "{}", trace.best().unwrap());
        assert!(regret(&trace, 0.0).simple < 1e-3);
    }

    #[test]
    fn constant_objective() {
        let trace = optimize(|_: &[f64]| Ok(4.2), &quick(3, 15, 2)).unwrap();
        assert_eq!(trace.incumbent().unwrap().drag, 4.2);
        assert!(trace.records.iter().all(|r| r.best == 4.2));
    }

    #[test]
    fn failures_get_sentinel_and_are_skipped() {
        let f = |x: &[f64]| {
            if x[0] > 0.5 {
                Err(ObjectiveError::Failed("bad geometry".into()))
            } else {
                Ok(sphere(x))
            }
        };
        let trace = optimize(f, &quick(2, 20, 3)).unwrap();
        assert!(trace.records.iter().any(|r| r.drag == FAILURE_SENTINEL));
        assert!(trace.best().unwrap() < 1.0);
        let w: Vec<f64> = trace.best_so_far();
        assert!(w.windows(2).all(|p| p[1] <= p[0]));
    }

    #[test]
    fn all_initial_failures_abort() {
        let f = |_: &[f64]| -> Result<f64, ObjectiveError> {
            Err(ObjectiveError::Failed("nope".into()))
        };
        match optimize(f, &quick(2, 20, 4)) {
            Err(BoError::AllInitialFailed(msgs)) => assert_eq!(msgs.len(), 10),
            other => panic!("unexpected {other:?}"),
        }
        let f = |_: &[f64]| f64::NAN;
        assert!(matches!(
            optimize(|x: &[f64]| Ok(f(x)), &quick(2, 20, 4)),
            Err(BoError::AllInitialFailed(_))
        ));
    }

    #[test]
    fn abort_propagates() {
        let mut calls = 0;
        let f = |x: &[f64]| {
            calls += 1;
            if calls > 12 {
                Err(ObjectiveError::Abort("pending".into()))
            } else {
                Ok(sphere(x))
            }
        };
        assert_eq!(
            optimize(f, &quick(2, 20, 5)).unwrap_err(),
            BoError::Aborted("pending".into())
        );
    }

    #[test]
    fn invalid_configs() {
        let mut c = quick(2, 20, 0);
        c.n_init = 1;
        assert!(c.validate().is_err());
        let c = quick(2, 10, 0);
        assert!(c.validate().is_err());
        let mut c = quick(2, 20, 0);
        c.delta = 1.5;
        assert!(c.validate().is_err());
        let mut c = quick(2, 20, 0);
        c.bounds[1] = (1.0, 0.0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn seeded_runs_serialize_identically() {
        let a = optimize(|x: &[f64]| Ok(sphere(x)), &quick(3, 20, 9)).unwrap();
        let b = optimize(|x: &[f64]| Ok(sphere(x)), &quick(3, 20, 9)).unwrap();
        assert_eq!(a.to_jsonl(), b.to_jsonl());
        let c = optimize(|x: &[f64]| Ok(sphere(x)), &quick(3, 20, 10)).unwrap();
        assert_ne!(a.to_jsonl(), c.to_jsonl());
    }
}
