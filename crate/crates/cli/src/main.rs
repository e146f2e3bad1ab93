mod commands;
mod report;

use clap::{Args, Parser, Subcommand};
use report::{Outcome, Report};
use std::process::ExitCode;
use std::time::Instant;
use taut_circles::Error;

#[derive(Parser)]
#[command(name = "tcc", version, about = "Taut contact circle toolkit: invariants, moduli and checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Tolerance for the command's main residual.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Grid resolution per chart axis for quadrature.
    #[arg(long, global = true, default_value_t = taut_circles::gv::DEFAULT_RESOLUTION)]
    res: usize,
    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 1 gives bit-stable output.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit aligned key/value lines.
    #[arg(long, global = true)]
    table: bool,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Seifert invariants.
    Seifert {
        #[command(subcommand)]
        cmd: SeifertCmd,
    },
    /// T²-bundles over S¹ with periodic monodromy: table | h1 | moduli.
    Torusbundle { query: String, k: Option<String> },
    /// Z³-representations into the universal cover of E(2).
    T3 {
        #[command(subcommand)]
        cmd: T3Cmd,
    },
    /// Finite subgroups of SU(2): group | out0 | lens.
    Su2 { query: String, spec: String },
    /// Complex Godbillon–Vey invariant on S³.
    Gv {
        #[command(subcommand)]
        cmd: GvCmd,
    },
    /// Lifts to the universal cover of PSL₂R: gauss-bonnet | lift-uniqueness.
    Sl2 { query: String, tuple: Option<String> },
    /// Structure-equation residuals: e2 | sl2 | flat | s3-a <a> | s3-n <n>.
    Cartan {
        #[command(subcommand)]
        cmd: CartanCmd,
    },
    /// All classification tables as one JSON document.
    PaperTables,
}

#[derive(Subcommand)]
enum SeifertCmd {
    /// Analyze a tuple such as "g=0 b=-2 (2,1) (3,2) (7,6)", a JSON form, or a file.
    Analyze { tuple: String },
    /// Invariants of a fixed list of examples.
    Tables,
}

#[derive(Subcommand)]
enum T3Cmd {
    /// Standard and canonical form of a representation given as JSON or a JSON file.
    Standardize { rep: String },
}

#[derive(Subcommand)]
enum GvCmd {
    /// Quadrature with an error estimate from the half resolution.
    Compute { family: String, param: String },
    /// Closed-form value.
    Closed { family: String, param: String },
}

#[derive(Subcommand)]
enum CartanCmd {
    Check {
        geometry: String,
        param: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn dispatch(cli: &Cli) -> taut_circles::Result<Outcome> {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Seifert { cmd: SeifertCmd::Analyze { tuple } } => commands::seifert_analyze(tuple),
        Cmd::Seifert { cmd: SeifertCmd::Tables } => commands::seifert_tables(),
        Cmd::Torusbundle { query, k } => commands::torusbundle(query, k.as_deref()),
        Cmd::T3 { cmd: T3Cmd::Standardize { rep } } => commands::t3_standardize(rep),
        Cmd::Su2 { query, spec } => commands::su2(query, spec),
        Cmd::Gv { cmd: GvCmd::Compute { family, param } } => commands::gv_compute(family, param, g.res, g.tol),
        Cmd::Gv { cmd: GvCmd::Closed { family, param } } => commands::gv_closed(family, param),
        Cmd::Sl2 { query, tuple } => commands::sl2(query, tuple.as_deref(), g.tol),
        Cmd::Cartan { cmd: CartanCmd::Check { geometry, param, samples } } => {
            commands::cartan_check(geometry, param.as_deref(), g.seed, *samples, g.tol)
        }
        Cmd::PaperTables => unreachable!("handled before dispatch"),
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Verification(_) | Error::GroupNotFinite { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if let Cmd::PaperTables = cli.cmd {
        return match taut_circles::tables::render_paper_tables() {
            Ok(s) => {
                print!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_for(&e))
            }
        };
    }
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(o) => {
            let report = Report {
                command: command_echo(),
                inputs: o.inputs,
                outputs: o.outputs,
                residuals: o.residuals,
                verified: o.verified,
                wall_time_ms: cli.global.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
            };
            print!("{}", if cli.global.table { report.render_table() } else { report.render_json() });
            if report.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
