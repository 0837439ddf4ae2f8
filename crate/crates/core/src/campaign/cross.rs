use crate::drag::{drag_total, Scenario};
use crate::numfmt::fmt_sig;

use super::evaluator::EvaluatorKind;
use super::runner::CampaignResult;
use super::CampaignError;

pub const MATRIX_HEADER: &str = "design_scenario,eval_scenario,velocity,intensity,drag_n";
pub const DIAGONAL_TOL: f64 = 1e-9;

/// `drag[i][j]`: optimum of scenario `i` evaluated in scenario `j`, N.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossEvalMatrix {
    pub scenarios: Vec<Scenario<f64>>,
    pub drag: Vec<Vec<f64>>,
}

impl CrossEvalMatrix {
    pub fn len(&self) -> usize {
        self.scenarios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scenarios.is_empty()
    }

    /// Long-format CSV, one row per (design, evaluation) pair.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(48 * self.len() * self.len());
        out.push_str(MATRIX_HEADER);
        out.push('\n');
        for (i, row) in self.drag.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let s = &self.scenarios[j];
                out.push_str(&format!(
                    "{i},{j},{},{},{}\n",
                    fmt_sig(s.velocity, 9),
                    fmt_sig(s.turbulence_intensity, 9),
                    fmt_sig(v, 9)
                ));
            }
        }
        out
    }

    /// Off-diagonal entries undercutting the native optimum of their
    /// column by more than `rel` (imported design beats the BO result).
    pub fn native_violations(&self, rel: f64) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for j in 0..n {
            let native = self.drag[j][j];
            for i in (0..n).filter(|&i| i != j) {
                if self.drag[i][j] < native * (1.0 - rel) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Evaluates every scenario's optimum in every scenario with the analytic
/// oracle. For analytic campaigns the diagonal must reproduce the recorded
/// optima.
pub fn cross_evaluate(result: &CampaignResult) -> Result<CrossEvalMatrix, CampaignError> {
    let fluid = result.meta.fluid;
    let scenarios: Vec<Scenario<f64>> = result.scenarios.iter().map(|r| r.scenario).collect();
    let mut drag = Vec::with_capacity(scenarios.len());
    for r in &result.scenarios {
        let row = scenarios
            .iter()
            .map(|s| drag_total(&r.optimal, s, &fluid))
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| CampaignError::Evaluation {
                index: r.index,
                message: e.to_string(),
            })?;
        if let Some(bad) = row.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(CampaignError::Evaluation {
                index: r.index,
                message: format!("non-positive drag {} in scenario {bad}", row[bad]),
            });
        }
        drag.push(row);
    }
    if result.evaluator() == EvaluatorKind::Strip {
        for (i, r) in result.scenarios.iter().enumerate() {
            let diff = (drag[i][i] - r.optimal_drag).abs();
            if diff > DIAGONAL_TOL {
                return Err(CampaignError::Diagonal {
                    index: r.index,
                    recorded: r.optimal_drag,
                    recomputed: drag[i][i],
                });
            }
        }
    }
    Ok(CrossEvalMatrix { scenarios, drag })
}
