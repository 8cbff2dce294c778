//! Command-line front end: reads `.pch` scene files (or generates random
//! ones), evaluates their commands and prints a text or JSON report.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 parse error,
//! 3 semantic or evaluation error (including an unreadable file).

pub mod eval;
pub mod report;

use std::path::PathBuf;

use clap::Parser;
use num_bigint::BigInt;
use parchern_core::dsl::{elaborate, parse_program, Diagnostic, Phase, Pos};
use parchern_core::parabolic::Limits;
use parchern_core::random::{random_scene_source, rng_from_seed, RandomConfig};

use crate::eval::{evaluate, EvalOptions};
use crate::report::{
    render_text, to_json, Report, Status, SweepReport, SweepScene, SCHEMA_VERSION,
};

#[derive(Debug, Parser)]
#[command(
    name = "parchern",
    version,
    about = "Chern classes of parabolic bundles from scene files",
    after_help = "Usage forms: `parchern [compute] <FILE>` or `parchern --random <COUNT> [--seed <SEED>]`."
)]
pub struct Args {
    /// `compute <FILE>` or just `<FILE>`.
    #[arg(value_name = "FILE", num_args = 0..=2)]
    pub inputs: Vec<String>,

    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,

    /// Append `verify grothendieck` and `verify corollary1` for every
    /// parabolic declaration.
    #[arg(long)]
    pub verify_all: bool,

    /// Seed for `--random`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Generate and evaluate this many random scenes instead of reading a file.
    #[arg(long, value_name = "COUNT", conflicts_with = "inputs")]
    pub random: Option<usize>,

    /// Largest weight denominator accepted.
    #[arg(long, value_name = "INT", default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_denominator: u64,

    /// Include per-command wall-clock times in the report.
    #[arg(long)]
    pub timings: bool,

    #[arg(long, hide = true, value_name = "INDEX")]
    pub perturb_tilde: Option<u32>,
}

/// Everything a run writes, so tests can drive it without a process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub verify_all: bool,
    pub limits: Limits,
    pub eval: EvalOptions,
}

impl RunOptions {
    pub fn from_args(args: &Args) -> Self {
        RunOptions {
            verify_all: args.verify_all,
            limits: Limits {
                max_denominator: BigInt::from(args.max_denominator),
            },
            eval: EvalOptions {
                perturb_tilde: args.perturb_tilde,
                timings: args.timings,
            },
        }
    }
}

/// Parses, elaborates and evaluates one scene.
pub fn run_source(text: &str, opts: &RunOptions) -> (Report, Vec<Diagnostic>) {
    let program = match parse_program(text) {
        Ok(p) => p,
        Err(diags) => return (Report::failed(Status::ParseError, &diags), diags),
    };
    let mut scene = match elaborate(&program, &opts.limits) {
        Ok(s) => s,
        Err(diags) => return (Report::failed(Status::SemanticError, &diags), diags),
    };
    if opts.verify_all {
        let end = program
            .statements
            .last()
            .map(|s| s.pos)
            .unwrap_or(Pos::new(1, 1));
        scene.append_verify_all(end);
    }
    evaluate(&scene, &opts.eval)
}

fn format_diagnostics(label: &str, diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| format!("{label}:{d}\n")).collect()
}

pub fn run(args: &Args) -> RunOutput {
    let opts = RunOptions::from_args(args);
    if let Some(count) = args.random {
        return run_random(args.seed, count, args.json, &opts);
    }
    let path = match args.inputs.as_slice() {
        [file] => PathBuf::from(file),
        [cmd, file] if cmd == "compute" => PathBuf::from(file),
        [cmd, _] => {
            return RunOutput {
                exit_code: 2,
                stdout: String::new(),
                stderr: format!("error: unknown command `{cmd}`; expected `compute`\n"),
            }
        }
        _ => {
            return RunOutput {
                exit_code: 2,
                stdout: String::new(),
                stderr: "error: expected a scene file or `--random <COUNT>`\n".into(),
            }
        }
    };
    let label = path.display().to_string();
    let (report, diags) = match std::fs::read_to_string(&path) {
        Ok(text) => run_source(&text, &opts),
        Err(e) => {
            let d = Diagnostic::error(
                Phase::Semantic,
                Pos::new(1, 1),
                format!("cannot read file: {e}"),
            );
            let diags = vec![d];
            (Report::failed(Status::SemanticError, &diags), diags)
        }
    };
    RunOutput {
        exit_code: report.exit_code,
        stdout: if args.json {
            to_json(&report)
        } else {
            render_text(&report)
        },
        stderr: format_diagnostics(&label, &diags),
    }
}

fn run_random(seed: u64, count: usize, json: bool, opts: &RunOptions) -> RunOutput {
    let mut rng = rng_from_seed(seed);
    let cfg = RandomConfig::default();
    let sources: Vec<String> = (0..count)
        .map(|_| random_scene_source(&mut rng, &cfg))
        .collect();
    let mut scenes = Vec::with_capacity(count);
    let mut stderr = String::new();
    let mut worst = Status::Ok;
    for (index, source) in sources.into_iter().enumerate() {
        let (report, diags) = run_source(&source, opts);
        stderr.push_str(&format_diagnostics(&format!("<random {index}>"), &diags));
        if report.exit_code > worst.exit_code() {
            worst = report.status;
        }
        scenes.push(SweepScene {
            index,
            source,
            report,
        });
    }
    let stdout = if json {
        to_json(&SweepReport {
            schema: SCHEMA_VERSION,
            seed,
            count,
            scenes,
            status: worst,
            exit_code: worst.exit_code(),
        })
    } else {
        let mut out = String::new();
        for s in &scenes {
            out.push_str(&format!("== random scene {} (seed {seed}) ==\n", s.index));
            for line in s.source.lines() {
                out.push_str(&format!("# {line}\n"));
            }
            out.push_str(&render_text(&s.report));
        }
        out.push_str(&format!(
            "sweep: {count} scenes, status: {} (exit {})\n",
            worst.label(),
            worst.exit_code()
        ));
        out
    };
    RunOutput {
        exit_code: worst.exit_code(),
        stdout,
        stderr,
    }
}
