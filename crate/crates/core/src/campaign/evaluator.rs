use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bo::ObjectiveError;
use crate::drag::{drag_total, FluidProps, Scenario};
use crate::foamcase::{parse_force_log, turbulence_ic, write_case, C_MU, FORCE_LOG};
use crate::geometry::{build_profile, DesignVector};

/// Drag source for an optimization run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvaluatorKind {
    /// Analytic strip-integration drag oracle.
    Strip,
    /// Writes a solver case per evaluation and reads back the force log
    /// once it has been produced externally.
    FoamManual,
}

impl EvaluatorKind {
    pub fn id(self) -> &'static str {
        match self {
            Self::Strip => "strip",
            Self::FoamManual => "foam-manual",
        }
    }
}

impl fmt::Display for EvaluatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for EvaluatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strip" => Ok(Self::Strip),
            "foam-manual" => Ok(Self::FoamManual),
            other => Err(format!(
                "unknown evaluator '{other}' (expected strip or foam-manual)"
            )),
        }
    }
}

/// Drag objective bound to one scenario.
#[derive(Clone, Debug)]
pub struct Evaluator {
    pub kind: EvaluatorKind,
    pub scenario: Scenario<f64>,
    pub fluid: FluidProps<f64>,
    /// Turbulent length scale for emitted cases, m.
    pub length_scale: f64,
    /// Parent of the per-evaluation case directories (foam-manual only).
    pub case_root: PathBuf,
    calls: usize,
}

impl Evaluator {
    pub fn new(
        kind: EvaluatorKind,
        scenario: Scenario<f64>,
        fluid: FluidProps<f64>,
        length_scale: f64,
        case_root: impl Into<PathBuf>,
    ) -> Self {
        Self {
            kind,
            scenario,
            fluid,
            length_scale,
            case_root: case_root.into(),
            calls: 0,
        }
    }

    /// Case directory of the `n`-th evaluation (1-based).
    pub fn case_dir(&self, n: usize) -> PathBuf {
        self.case_root.join(format!("eval_{n:03}"))
    }

    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64, ObjectiveError> {
        self.calls += 1;
        let design = DesignVector::from_slice(x);
        match self.kind {
            EvaluatorKind::Strip => drag_total(&design, &self.scenario, &self.fluid)
                .map_err(|e| ObjectiveError::Failed(e.to_string())),
            EvaluatorKind::FoamManual => {
                let dir = self.case_dir(self.calls);
                self.foam_manual(&design, &dir)
            }
        }
    }

    fn foam_manual(&self, design: &DesignVector<f64>, dir: &Path) -> Result<f64, ObjectiveError> {
        let log = dir.join(FORCE_LOG);
        if log.is_file() {
            let text = std::fs::read_to_string(&log)
                .map_err(|e| ObjectiveError::Failed(format!("{}: {e}", log.display())))?;
            let history = parse_force_log(&text)
                .map_err(|e| ObjectiveError::Failed(format!("{}: {e}", log.display())))?;
            return if history.final_drag.is_finite() && history.final_drag > 0.0 {
                Ok(history.final_drag)
            } else {
                Err(ObjectiveError::Failed(format!(
                    "{}: non-positive drag {}",
                    log.display(),
                    history.final_drag
                )))
            };
        }
        let profile = build_profile(design).map_err(|e| ObjectiveError::Failed(e.to_string()))?;
        let ic = turbulence_ic(
            self.scenario.velocity,
            self.scenario.turbulence_intensity,
            self.length_scale,
            C_MU,
        )
        .map_err(|e| ObjectiveError::Failed(e.to_string()))?;
        write_case(dir, &profile, &self.scenario, &self.fluid, &ic)
            .map_err(|e| ObjectiveError::Abort(e.to_string()))?;
        Err(ObjectiveError::Abort(format!(
            "case written to {}; run the solver there and rerun to continue",
            dir.display()
        )))
    }
}
