use serde::{Deserialize, Serialize};

use crate::scalar::{to_f64, Scalar};

/// One evaluation of the optimization loop.
///
/// Initial-design records carry `beta = 0` and `acq = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord<T> {
    pub t: usize,
    pub x: Vec<T>,
    pub drag: T,
    pub best: T,
    pub beta: T,
    pub acq: T,
}

/// Ordered evaluation history of a single optimization run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trace<T> {
    pub records: Vec<TraceRecord<T>>,
}

#[derive(Debug, thiserror::Error)]
#[error("trace line {line}: {source}")]
pub struct TraceParseError {
    pub line: usize,
    pub source: serde_json::Error,
}

impl<T: Scalar> Default for Trace<T> {
    fn default() -> Self {
        Self {
            records: Vec::new(),
        }
    }
}

impl<T: Scalar> Trace<T> {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Appends an evaluation, updating best-so-far.
    pub fn push(&mut self, x: Vec<T>, drag: T, beta: T, acq: T) {
        let best = self.best().map_or(drag, |b| b.min(drag));
        self.records.push(TraceRecord {
            t: self.records.len() + 1,
            x,
            drag,
            best,
            beta,
            acq,
        });
    }

    pub fn best(&self) -> Option<T> {
        self.records.last().map(|r| r.best)
    }

    /// First record attaining the minimum drag.
    pub fn incumbent(&self) -> Option<&TraceRecord<T>> {
        self.records
            .iter()
            .fold(None, |acc: Option<&TraceRecord<T>>, r| match acc {
                Some(a) if a.drag <= r.drag => Some(a),
                _ => Some(r),
            })
    }

    pub fn best_so_far(&self) -> Vec<T> {
        self.records.iter().map(|r| r.best).collect()
    }
}

impl<T: Scalar + Serialize + for<'de> Deserialize<'de>> Trace<T> {
    /// JSON Lines, one record per evaluation.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("trace record serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, TraceParseError> {
        let records = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|source| TraceParseError {
                    line: i + 1,
                    source,
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { records })
    }
}

/// Regret against a known optimum (non-negative for minimization).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Regret<T> {
    /// `best_so_far(T) − f*`
    pub simple: T,
    /// `Σ_t (f(x_t) − f*)`
    pub cumulative: T,
}

pub fn regret<T: Scalar>(trace: &Trace<T>, f_star: T) -> Regret<T> {
    let simple = trace.best().map_or(T::zero(), |b| b - f_star);
    let cumulative = trace.records.iter().map(|r| r.drag - f_star).sum();
    Regret { simple, cumulative }
}

/// `R_T / T` for reporting.
pub fn average_regret<T: Scalar>(trace: &Trace<T>, f_star: T) -> f64 {
    if trace.is_empty() {
        return 0.0;
    }
    to_f64(regret(trace, f_star).cumulative) / trace.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace(vals: &[f64]) -> Trace<f64> {
        let mut t = Trace::default();
        for &v in vals {
            t.push(vec![v, 0.5], v, 1.0, v - 1.0);
        }
        t
    }

    #[test]
    fn best_so_far_is_running_minimum() {
        let t = trace(&[3.0, 5.0, 2.0, 2.5, 1.0]);
        assert_eq!(t.best_so_far(), vec![3.0, 3.0, 2.0, 2.0, 1.0]);
        assert_eq!(t.incumbent().unwrap().t, 5);
        assert_eq!(t.records[2].t, 3);
    }

    #[test]
    fn regret_definitions() {
        let t = trace(&[3.0, 1.0, 2.0]);
        let r = regret(&t, 1.0);
        assert_eq!(r.simple, 0.0);
        assert_eq!(r.cumulative, 3.0);
        let r = regret(&t, 0.5);
        assert!(r.cumulative >= r.simple && r.simple >= 0.0);
        assert!((average_regret(&t, 1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn jsonl_format_and_round_trip() {
        let t = trace(&[0.1 + 0.2, 1.0 / 3.0]);
        let s = t.to_jsonl();
        let first = s.lines().next().unwrap();
        assert_eq!(
            first,
            r#"{"t":1,"x":[0.30000000000000004,0.5],"drag":0.30000000000000004,"best":0.30000000000000004,"beta":1.0,"acq":-0.7}"#
        );
        assert_eq!(Trace::<f64>::from_jsonl(&s).unwrap(), t);
        assert!(Trace::<f64>::from_jsonl("{bad").is_err());
    }
}
