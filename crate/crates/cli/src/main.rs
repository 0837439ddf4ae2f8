//! `hullbo`: hull drag optimization workbench.
//!
//! Exit status is 0 on success, 1 on a usage error and 2 on a runtime error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hull_bo::campaign::{
    cross_evaluate, load_campaign, persist_run, report, run_campaign_with_progress, run_scenario,
    scenario_label, CampaignConfig, EvaluatorKind, RunSettings, MATRIX_FILE, MIN_BUDGET,
};
use hull_bo::drag::{evaluate_drag, FluidProps, Scenario};
use hull_bo::foamcase::{turbulence_ic, write_case, C_MU, LENGTH_SCALE_FRACTION};
use hull_bo::geometry::{
    build_profile, export_profile_csv, export_stl, DesignVector, DEFAULT_STATIONS, HULL_LENGTH,
};

#[derive(Parser, Debug)]
#[command(
    name = "hullbo",
    version,
    about = "Bayesian optimization of axisymmetric hull drag"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the drag breakdown of a design as JSON.
    Evaluate {
        #[arg(long, value_name = "FILE")]
        design: PathBuf,
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Axial quadrature stations.
        #[arg(long, default_value_t = DEFAULT_STATIONS)]
        stations: usize,
    },
    /// Optimize the hull for one scenario.
    Optimize {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Optimize all 25 scenarios, then cross-evaluate and report.
    Campaign {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Scenarios run concurrently.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        parallel: u64,
    },
    /// Evaluate every scenario optimum in every scenario.
    CrossEval {
        #[arg(long, value_name = "DIR")]
        campaign: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Write the campaign report files.
    Report {
        #[arg(long, value_name = "DIR")]
        campaign: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Export a design as a binary STL mesh and/or a profile CSV.
    Export {
        #[arg(long, value_name = "FILE")]
        design: PathBuf,
        #[arg(long, value_name = "FILE")]
        stl: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        n_axial: usize,
        #[arg(long, default_value_t = 64)]
        n_circ: usize,
        /// Profile CSV stations.
        #[arg(long, default_value_t = DEFAULT_STATIONS)]
        stations: usize,
    },
    /// Write a solver case directory for a design and scenario.
    FoamCase {
        #[arg(long, value_name = "FILE")]
        design: PathBuf,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, value_name = "DIR")]
        dir: PathBuf,
        /// Turbulent length scale in metres.
        #[arg(long, default_value_t = LENGTH_SCALE_FRACTION * HULL_LENGTH)]
        length_scale: f64,
    },
}

#[derive(Args, Debug)]
struct ScenarioArgs {
    /// Free-stream speed, m/s.
    #[arg(long)]
    velocity: f64,
    /// Turbulence intensity, percent.
    #[arg(long)]
    intensity: f64,
}

impl ScenarioArgs {
    fn scenario(&self) -> Result<Scenario<f64>> {
        let s = Scenario::new(self.velocity, self.intensity);
        s.validate()?;
        Ok(s)
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(MIN_BUDGET as u64..))]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "strip", value_parser = parse_evaluator)]
    evaluator: EvaluatorKind,
}

impl RunArgs {
    fn settings(&self) -> RunSettings {
        RunSettings {
            budget: self.budget as usize,
            evaluator: self.evaluator,
            ..RunSettings::default()
        }
    }
}

fn parse_evaluator(s: &str) -> Result<EvaluatorKind, String> {
    s.parse()
}

fn read_design(path: &Path) -> Result<DesignVector<f64>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let d: DesignVector<f64> = serde_json::from_str(&text)
        .with_context(|| format!("parsing design {}", path.display()))?;
    d.validate()
        .with_context(|| format!("design {}", path.display()))?;
    Ok(d)
}

fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Evaluate {
            design,
            scenario,
            stations,
        } => {
            let d = read_design(&design)?;
            let b = evaluate_drag(&d, &scenario.scenario()?, &FluidProps::default(), stations)?;
            print_json(&b)
        }
        Command::Optimize { scenario, run, out } => {
            let s = scenario.scenario()?;
            let settings = run.settings();
            let trace = run_scenario(s, run.seed, &settings, &out)?;
            persist_run(&out, &trace)?;
            let best = trace.incumbent().expect("non-empty trace");
            print_json(&serde_json::json!({
                "velocity": s.velocity,
                "intensity": s.turbulence_intensity,
                "seed": run.seed,
                "budget": settings.budget,
                "optimal_drag_n": best.drag,
                "design": DesignVector::from_slice(&best.x),
            }))
        }
        Command::Campaign { run, out, parallel } => {
            let cfg = CampaignConfig {
                run: run.settings(),
                base_seed: run.seed,
                parallel: parallel as usize,
            };
            let result = run_campaign_with_progress(&cfg, &out, |r| {
                eprintln!(
                    "scenario {} ({}): optimum {} N",
                    r.index,
                    scenario_label(&r.scenario),
                    r.optimal_drag
                );
            })?;
            let matrix = cross_evaluate(&result)?;
            write_file(&out.join(MATRIX_FILE), matrix.to_csv())?;
            report(&result, &matrix, &out.join("report"))?;
            let summary = out.join("report").join(hull_bo::campaign::SUMMARY_FILE);
            print!("{}", std::fs::read_to_string(&summary)?);
            Ok(())
        }
        Command::CrossEval { campaign, out } => {
            let result = load_campaign(&campaign)?;
            let matrix = cross_evaluate(&result)?;
            write_file(&out, matrix.to_csv())
        }
        Command::Report { campaign, out } => {
            let result = load_campaign(&campaign)?;
            let matrix = cross_evaluate(&result)?;
            for path in report(&result, &matrix, &out)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Export {
            design,
            stl,
            csv,
            n_axial,
            n_circ,
            stations,
        } => {
            if stl.is_none() && csv.is_none() {
                bail!("nothing to export: pass --stl and/or --csv");
            }
            let p = build_profile(&read_design(&design)?)?;
            if let Some(path) = stl {
                write_file(&path, export_stl(&p, n_axial, n_circ)?)?;
            }
            if let Some(path) = csv {
                write_file(&path, export_profile_csv(&p, stations)?)?;
            }
            Ok(())
        }
        Command::FoamCase {
            design,
            scenario,
            dir,
            length_scale,
        } => {
            let s = scenario.scenario()?;
            let p = build_profile(&read_design(&design)?)?;
            let ic = turbulence_ic(s.velocity, s.turbulence_intensity, length_scale, C_MU)?;
            write_case(&dir, &p, &s, &FluidProps::default(), &ic)?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
