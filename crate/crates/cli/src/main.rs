use clap::{Parser, Subcommand};
use sepkds::harness::{emit_stats, load_scenario, render_svg, run_scenario, stem, HarnessError, Model, RenderWhat, RunOptions};
use sepkds::kinetics::EventLog;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Separation-sensitive kinetic collision detection for convex polygons.
#[derive(Parser)]
#[command(name = "sepkds", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Oracle grid size, overriding the scenario.
    #[arg(long, global = true, value_name = "N")]
    oracle_samples: Option<usize>,
    /// Seed for generated polygons, overriding the scenario.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
    /// Directory for artifacts (default: current directory).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Simulate a scenario, check it against the oracle, write CSV and JSON
    /// logs.
    Run { scenario: PathBuf },
    /// Draw part of a scenario as SVG.
    Render {
        scenario: PathBuf,
        #[arg(long, value_parser = ["hierarchy", "mixed", "inflated", "path"])]
        what: String,
    },
    /// Fit event counts of JSON logs against a scaling model.
    Stats {
        /// Glob matching event-log JSON files.
        pattern: String,
        #[arg(long, value_parser = ["log", "sqrt", "quad"])]
        model: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions { oracle_samples: cli.oracle_samples, seed: cli.seed, out: cli.out.clone() };
    let res = match &cli.cmd {
        Cmd::Run { scenario } => run(scenario, &opts),
        Cmd::Render { scenario, what } => render(scenario, what, &opts),
        Cmd::Stats { pattern, model } => stats(pattern, model, &opts),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sepkds: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(path: &Path, opts: &RunOptions) -> Result<(), HarnessError> {
    let report = run_scenario(path, opts)?;
    print!("{}", report.summary());
    println!("wrote {} and {}", report.csv.display(), report.json.display());
    Ok(())
}

fn render(path: &Path, what: &str, opts: &RunOptions) -> Result<(), HarnessError> {
    let sc = load_scenario(path, opts)?;
    let target: RenderWhat = what.parse().map_err(HarnessError::Unsupported)?;
    let dir = opts.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| HarnessError::Io { path: dir.clone(), source: e })?;
    let out = dir.join(format!("{}-{what}.svg", stem(&sc, path)));
    render_svg(&sc, target, &out)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn stats(pattern: &str, model: &str, opts: &RunOptions) -> Result<(), HarnessError> {
    let model: Model = model.parse().map_err(HarnessError::Unsupported)?;
    let paths = glob::glob(pattern).map_err(|e| HarnessError::Unsupported(format!("bad pattern: {e}")))?;
    let mut logs = Vec::new();
    for p in paths {
        let p = p.map_err(|e| HarnessError::Io { path: e.path().to_path_buf(), source: e.into() })?;
        let text = std::fs::read_to_string(&p).map_err(|e| HarnessError::Io { path: p.clone(), source: e })?;
        // Anything that is not an event log (e.g. scenario files) is skipped.
        if let Ok(log) = serde_json::from_str::<EventLog>(&text) {
            logs.push(log);
        }
    }
    let reg = emit_stats(&logs, model)?;
    print!("{}", reg.table());
    if let Some(dir) = &opts.out {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::Io { path: dir.clone(), source: e })?;
        let out = dir.join(format!("stats-{}.csv", model.name()));
        std::fs::write(&out, reg.table()).map_err(|e| HarnessError::Io { path: out.clone(), source: e })?;
    }
    Ok(())
}
