use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bo::{optimize, BoConfig, BoError, Trace};
use crate::drag::{FluidProps, Scenario};
use crate::foamcase::LENGTH_SCALE_FRACTION;
use crate::geometry::{design_bounds, DesignVector, HULL_LENGTH};

use super::evaluator::{Evaluator, EvaluatorKind};
use super::scenarios::{scenario_label, scenario_matrix};
use super::CampaignError;

pub const METADATA_FILE: &str = "campaign.json";
pub const TRACE_FILE: &str = "trace.jsonl";
pub const OPTIMAL_FILE: &str = "optimal.json";
pub const MIN_BUDGET: usize = 12;
pub const N_INIT: usize = 10;

pub fn scenario_dir(root: &Path, index: usize) -> PathBuf {
    root.join(format!("scenario_{index}"))
}

/// Settings for one optimization run against one scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSettings {
    pub budget: usize,
    pub evaluator: EvaluatorKind,
    pub fluid: FluidProps<f64>,
    pub length_scale: f64,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            budget: 100,
            evaluator: EvaluatorKind::Strip,
            fluid: FluidProps::default(),
            length_scale: LENGTH_SCALE_FRACTION * HULL_LENGTH,
        }
    }
}

impl RunSettings {
    pub fn validate(&self) -> Result<(), CampaignError> {
        if self.budget < MIN_BUDGET {
            return Err(CampaignError::Config(format!(
                "budget must be at least {MIN_BUDGET}, got {}",
                self.budget
            )));
        }
        if !(self.length_scale > 0.0 && self.length_scale.is_finite()) {
            return Err(CampaignError::Config(format!(
                "length scale must be positive, got {}",
                self.length_scale
            )));
        }
        self.fluid
            .validate()
            .map_err(|e| CampaignError::Config(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignConfig {
    pub run: RunSettings,
    pub base_seed: u64,
    /// Scenarios run concurrently; results do not depend on it.
    pub parallel: usize,
}

impl CampaignConfig {
    pub fn new(budget: usize, base_seed: u64) -> Self {
        Self {
            run: RunSettings {
                budget,
                ..RunSettings::default()
            },
            base_seed,
            parallel: 1,
        }
    }

    pub fn validate(&self) -> Result<(), CampaignError> {
        if self.parallel == 0 {
            return Err(CampaignError::Config("parallel must be at least 1".into()));
        }
        self.run.validate()
    }

    pub fn metadata(&self) -> CampaignMeta {
        CampaignMeta {
            budget: self.run.budget,
            n_init: N_INIT,
            base_seed: self.base_seed,
            evaluator: self.run.evaluator,
            fluid: self.run.fluid,
            length_scale: self.run.length_scale,
            scenarios: scenario_matrix()
                .into_iter()
                .enumerate()
                .map(|(index, s)| ScenarioEntry {
                    index,
                    velocity: s.velocity,
                    intensity: s.turbulence_intensity,
                    seed: self.base_seed.wrapping_add(index as u64),
                })
                .collect(),
        }
    }
}

/// Contents of `campaign.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignMeta {
    pub budget: usize,
    pub n_init: usize,
    pub base_seed: u64,
    pub evaluator: EvaluatorKind,
    pub fluid: FluidProps<f64>,
    pub length_scale: f64,
    pub scenarios: Vec<ScenarioEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioEntry {
    pub index: usize,
    pub velocity: f64,
    pub intensity: f64,
    pub seed: u64,
}

impl CampaignMeta {
    pub fn run_settings(&self) -> RunSettings {
        RunSettings {
            budget: self.budget,
            evaluator: self.evaluator,
            fluid: self.fluid,
            length_scale: self.length_scale,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioResult {
    pub index: usize,
    pub scenario: Scenario<f64>,
    pub seed: u64,
    pub trace: Trace<f64>,
    pub optimal: DesignVector<f64>,
    pub optimal_drag: f64,
}

impl ScenarioResult {
    fn from_trace(
        index: usize,
        scenario: Scenario<f64>,
        seed: u64,
        trace: Trace<f64>,
    ) -> Option<Self> {
        let best = trace.incumbent()?;
        let optimal = DesignVector::from_slice(&best.x);
        let optimal_drag = best.drag;
        Some(Self {
            index,
            scenario,
            seed,
            trace,
            optimal,
            optimal_drag,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignResult {
    pub meta: CampaignMeta,
    pub scenarios: Vec<ScenarioResult>,
}

impl CampaignResult {
    pub fn evaluator(&self) -> EvaluatorKind {
        self.meta.evaluator
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CampaignError + '_ {
    move |source| CampaignError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes via a sibling temporary file so readers never see partial content.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CampaignError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(io_err(parent))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes).map_err(io_err(&tmp))?;
    std::fs::rename(&tmp, path).map_err(io_err(path))
}

fn design_json(d: &DesignVector<f64>) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("design serializes");
    s.push('\n');
    s
}

/// Writes `trace.jsonl` and then `optimal.json` (the completion marker).
pub fn persist_run(dir: &Path, trace: &Trace<f64>) -> Result<(), CampaignError> {
    write_atomic(&dir.join(TRACE_FILE), trace.to_jsonl().as_bytes())?;
    let best = trace.incumbent().ok_or_else(|| CampaignError::Corrupt {
        path: dir.join(TRACE_FILE),
        message: "empty trace".into(),
    })?;
    write_atomic(
        &dir.join(OPTIMAL_FILE),
        design_json(&DesignVector::from_slice(&best.x)).as_bytes(),
    )
}

/// Runs GP-LCB for one scenario, persisting the trace and optimum under `dir`.
pub fn run_scenario(
    scenario: Scenario<f64>,
    seed: u64,
    settings: &RunSettings,
    dir: &Path,
) -> Result<Trace<f64>, BoError> {
    let bounds = design_bounds().to_vec();
    let cfg = BoConfig::new(bounds, seed).with_budget(settings.budget);
    let mut ev = Evaluator::new(
        settings.evaluator,
        scenario,
        settings.fluid,
        settings.length_scale,
        dir.join("cases"),
    );
    optimize(|x: &[f64]| ev.evaluate(x), &cfg)
}

/// Loads a finished scenario; `None` when it is absent, partial or from a
/// different budget.
fn load_completed(dir: &Path, entry: &ScenarioEntry, budget: usize) -> Option<ScenarioResult> {
    std::fs::metadata(dir.join(OPTIMAL_FILE)).ok()?;
    let text = std::fs::read_to_string(dir.join(TRACE_FILE)).ok()?;
    let trace = Trace::from_jsonl(&text).ok()?;
    if trace.len() != budget {
        return None;
    }
    ScenarioResult::from_trace(
        entry.index,
        Scenario::new(entry.velocity, entry.intensity),
        entry.seed,
        trace,
    )
}

fn write_metadata(root: &Path, meta: &CampaignMeta) -> Result<(), CampaignError> {
    let path = root.join(METADATA_FILE);
    let mut text = serde_json::to_string_pretty(meta).expect("metadata serializes");
    text.push('\n');
    if let Ok(existing) = std::fs::read_to_string(&path) {
        let old: CampaignMeta =
            serde_json::from_str(&existing).map_err(|e| CampaignError::Corrupt {
                path: path.clone(),
                message: e.to_string(),
            })?;
        if &old != meta {
            return Err(CampaignError::MetadataMismatch(path));
        }
        if existing == text {
            return Ok(());
        }
    }
    write_atomic(&path, text.as_bytes())
}

pub fn run_campaign(cfg: &CampaignConfig, root: &Path) -> Result<CampaignResult, CampaignError> {
    run_campaign_with_progress(cfg, root, |_| {})
}

/// Runs the 25-scenario matrix under `root`, skipping scenarios already
/// completed there. `progress` is called once per scenario as it finishes
/// (or is found complete), in completion order.
pub fn run_campaign_with_progress<P>(
    cfg: &CampaignConfig,
    root: &Path,
    progress: P,
) -> Result<CampaignResult, CampaignError>
where
    P: Fn(&ScenarioResult) + Sync,
{
    cfg.validate()?;
    let meta = cfg.metadata();
    std::fs::create_dir_all(root).map_err(io_err(root))?;
    write_metadata(root, &meta)?;

    let done: Mutex<Vec<ScenarioResult>> = Mutex::new(Vec::with_capacity(meta.scenarios.len()));
    let mut pending = Vec::new();
    for entry in &meta.scenarios {
        match load_completed(&scenario_dir(root, entry.index), entry, meta.budget) {
            Some(r) => {
                progress(&r);
                done.lock().expect("result store").push(r);
            }
            None => pending.push(entry.clone()),
        }
    }

    let run_one = |entry: &ScenarioEntry| -> Result<(), CampaignError> {
        let scenario = Scenario::new(entry.velocity, entry.intensity);
        let dir = scenario_dir(root, entry.index);
        let fail = |source: BoError| CampaignError::Scenario {
            index: entry.index,
            label: scenario_label(&scenario),
            source,
        };
        let trace = run_scenario(scenario, entry.seed, &cfg.run, &dir).map_err(fail)?;
        persist_run(&dir, &trace)?;
        let r = ScenarioResult::from_trace(entry.index, scenario, entry.seed, trace)
            .expect("budget is positive so the trace is non-empty");
        progress(&r);
        done.lock().expect("result store").push(r);
        Ok(())
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallel)
        .build()
        .map_err(|e| CampaignError::Config(e.to_string()))?;
    let outcomes: Vec<Result<(), CampaignError>> =
        pool.install(|| pending.par_iter().map(run_one).collect());
    if let Some(err) = outcomes.into_iter().find_map(Result::err) {
        return Err(err);
    }

    let mut scenarios = done.into_inner().expect("result store");
    scenarios.sort_by_key(|r| r.index);
    Ok(CampaignResult { meta, scenarios })
}

/// Reads a finished campaign directory.
pub fn load_campaign(root: &Path) -> Result<CampaignResult, CampaignError> {
    let path = root.join(METADATA_FILE);
    let text = std::fs::read_to_string(&path).map_err(io_err(&path))?;
    let meta: CampaignMeta = serde_json::from_str(&text).map_err(|e| CampaignError::Corrupt {
        path: path.clone(),
        message: e.to_string(),
    })?;
    let mut scenarios = Vec::with_capacity(meta.scenarios.len());
    for entry in &meta.scenarios {
        let dir = scenario_dir(root, entry.index);
        let r =
            load_completed(&dir, entry, meta.budget).ok_or_else(|| CampaignError::Incomplete {
                index: entry.index,
                label: scenario_label(&Scenario::new(entry.velocity, entry.intensity)),
            })?;
        scenarios.push(r);
    }
    Ok(CampaignResult { meta, scenarios })
}
