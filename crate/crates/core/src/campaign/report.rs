use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::geometry::build_profile;
use crate::numfmt::fmt_sig;

use super::cross::CrossEvalMatrix;
use super::runner::CampaignResult;
use super::scenarios::{D1_SCENARIO, D2_SCENARIO};
use super::CampaignError;

pub const MATRIX_FILE: &str = "cross_eval.csv";
pub const PROFILES_FILE: &str = "optimal_profiles.csv";
pub const COMPARISON_FILE: &str = "d1_d2.csv";
pub const LONG_FILE: &str = "drag_long.csv";
pub const SUMMARY_FILE: &str = "summary.json";
/// Axial samples per profile in the profiles file.
pub const PROFILE_SAMPLES: usize = 101;
/// Relative margin for counting imported designs that beat a native optimum.
pub const VIOLATION_MARGIN: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    D1,
    D2,
    Tie,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub scenario: usize,
    pub velocity: f64,
    pub intensity: f64,
    pub d1_drag_n: f64,
    pub d2_drag_n: f64,
    pub winner: Winner,
}

/// D1 against D2 in every scenario that is native to neither.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct D1D2Comparison {
    pub d1_scenario: usize,
    pub d2_scenario: usize,
    pub rows: Vec<ComparisonRow>,
    pub d2_wins: usize,
    pub d1_wins: usize,
    pub ties: usize,
}

pub fn compare_d1_d2(matrix: &CrossEvalMatrix) -> D1D2Comparison {
    let (a, b) = (D1_SCENARIO, D2_SCENARIO);
    let rows: Vec<ComparisonRow> = (0..matrix.len())
        .filter(|&j| j != a && j != b)
        .map(|j| {
            let (d1, d2) = (matrix.drag[a][j], matrix.drag[b][j]);
            let winner = match d2.partial_cmp(&d1) {
                Some(Ordering::Less) => Winner::D2,
                Some(Ordering::Greater) => Winner::D1,
                _ => Winner::Tie,
            };
            ComparisonRow {
                scenario: j,
                velocity: matrix.scenarios[j].velocity,
                intensity: matrix.scenarios[j].turbulence_intensity,
                d1_drag_n: d1,
                d2_drag_n: d2,
                winner,
            }
        })
        .collect();
    let count = |w| rows.iter().filter(|r| r.winner == w).count();
    D1D2Comparison {
        d1_scenario: a,
        d2_scenario: b,
        d2_wins: count(Winner::D2),
        d1_wins: count(Winner::D1),
        ties: count(Winner::Tie),
        rows,
    }
}

impl D1D2Comparison {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eval_scenario,velocity,intensity,d1_drag_n,d2_drag_n,winner\n");
        for r in &self.rows {
            let w = match r.winner {
                Winner::D1 => "d1",
                Winner::D2 => "d2",
                Winner::Tie => "tie",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{w}\n",
                r.scenario,
                fmt_sig(r.velocity, 9),
                fmt_sig(r.intensity, 9),
                fmt_sig(r.d1_drag_n, 9),
                fmt_sig(r.d2_drag_n, 9)
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub evaluator: String,
    pub budget: usize,
    pub base_seed: u64,
    pub compared_scenarios: usize,
    pub d2_wins: usize,
    pub d1_wins: usize,
    pub ties: usize,
    /// Imported designs beating a native optimum by more than 5%.
    pub native_violations: usize,
    pub optimal_drag_n: Vec<f64>,
}

/// Sampled optimal profiles of all scenarios, long format.
pub fn profiles_csv(result: &CampaignResult) -> Result<String, CampaignError> {
    let mut out = String::from("scenario,velocity,intensity,x_m,r_m\n");
    for r in &result.scenarios {
        let p = build_profile(&r.optimal).map_err(|e| CampaignError::Evaluation {
            index: r.index,
            message: e.to_string(),
        })?;
        let (u, i) = (
            fmt_sig(r.scenario.velocity, 9),
            fmt_sig(r.scenario.turbulence_intensity, 9),
        );
        for (x, rad) in p.samples(PROFILE_SAMPLES) {
            out.push_str(&format!(
                "{},{u},{i},{},{}\n",
                r.index,
                fmt_sig(x, 9),
                fmt_sig(rad, 9)
            ));
        }
    }
    Ok(out)
}

/// Plot-ready drag of D1, D2 and the native optimum in every scenario.
pub fn long_csv(matrix: &CrossEvalMatrix) -> String {
    let mut out = String::from("scenario,velocity,intensity,design,drag_n\n");
    for (j, s) in matrix.scenarios.iter().enumerate() {
        let (u, i) = (fmt_sig(s.velocity, 9), fmt_sig(s.turbulence_intensity, 9));
        for (name, row) in [("D1", D1_SCENARIO), ("D2", D2_SCENARIO), ("native", j)] {
            out.push_str(&format!(
                "{j},{u},{i},{name},{}\n",
                fmt_sig(matrix.drag[row][j], 9)
            ));
        }
    }
    out
}

/// Writes the report files into `dir`, returning their paths.
pub fn report(
    result: &CampaignResult,
    matrix: &CrossEvalMatrix,
    dir: &Path,
) -> Result<Vec<PathBuf>, CampaignError> {
    std::fs::create_dir_all(dir).map_err(|source| CampaignError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let cmp = compare_d1_d2(matrix);
    let summary = ReportSummary {
        evaluator: result.meta.evaluator.id().to_string(),
        budget: result.meta.budget,
        base_seed: result.meta.base_seed,
        compared_scenarios: cmp.rows.len(),
        d2_wins: cmp.d2_wins,
        d1_wins: cmp.d1_wins,
        ties: cmp.ties,
        native_violations: matrix.native_violations(VIOLATION_MARGIN).len(),
        optimal_drag_n: result.scenarios.iter().map(|r| r.optimal_drag).collect(),
    };
    let mut summary_text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    summary_text.push('\n');
    let files = [
        (MATRIX_FILE, matrix.to_csv()),
        (PROFILES_FILE, profiles_csv(result)?),
        (COMPARISON_FILE, cmp.to_csv()),
        (LONG_FILE, long_csv(matrix)),
        (SUMMARY_FILE, summary_text),
    ];
    let mut written = Vec::with_capacity(files.len());
    for (name, text) in files {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|source| CampaignError::Io {
            path: path.clone(),
            source,
        })?;
        written.push(path);
    }
    Ok(written)
}
