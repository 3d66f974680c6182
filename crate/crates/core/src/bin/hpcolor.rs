use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hpcolor::bench::{bench_csv, run_bench};
use hpcolor::engine::{solve_with, SolveOptions};
use hpcolor::gen::{generate, GenMode};
use hpcolor::io::{coloring_to_json, instance_to_json, parse_coloring, parse_instance, violation_to_json};
use hpcolor::model::{Coloring, Instance};
use hpcolor::render::{render_svg, Window};
use hpcolor::verify::{oracle, oracle_all, verify, Verdict};

const OK: u8 = 0;
const BAD_COLORING: u8 = 2;
const BAD_INPUT: u8 = 3;
const NO_COLORING: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hpcolor",
    version,
    about = "Two-colour half-planes so that every point of depth three sees both colours"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Colour an instance and write the colouring as JSON.
    Color {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Skip the exact check of the result.
        #[arg(long)]
        no_verify: bool,
    },
    /// Check a colouring; prints Ok or the first violation.
    Verify {
        input: PathBuf,
        coloring: PathBuf,
        #[arg(short = 'k', long, default_value_t = 3)]
        threshold: usize,
    },
    /// Exhaustive search for good colourings (at most 20 half-planes).
    Oracle {
        input: PathBuf,
        #[arg(short = 'k', long, default_value_t = 3)]
        threshold: usize,
        /// Print every good colouring instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Write a seeded random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "random")]
        mode: GenMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        bound: i64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Draw the arrangement as SVG.
    Render {
        input: PathBuf,
        #[arg(short, long)]
        coloring: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// x0,y0,x1,y1; fitted to the crossings when absent.
        #[arg(long)]
        window: Option<Window>,
    },
    /// Time the engine on covered instances and write n,seconds,case_path.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 2048, 4096])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

struct Failure(u8, String);

type CmdResult = Result<u8, Failure>;

fn bad_input(msg: impl ToString) -> Failure {
    Failure(BAD_INPUT, msg.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

fn read_coloring(path: &Path) -> Result<Coloring, Failure> {
    parse_coloring(&read(path)?).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| bad_input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Color { input, out, no_verify } => {
            let inst = read_instance(&input)?;
            let opts = SolveOptions { verify: !no_verify, ..SolveOptions::from_env() };
            let report = solve_with(&inst, &opts).map_err(|e| Failure(BAD_COLORING, e.to_string()))?;
            emit(out.as_deref(), &coloring_to_json(&report.coloring))?;
            Ok(OK)
        }
        Cmd::Verify { input, coloring, threshold } => {
            let inst = read_instance(&input)?;
            let c = read_coloring(&coloring)?;
            match verify(&inst, &c, threshold).map_err(bad_input)? {
                Verdict::Good => {
                    println!("Ok");
                    Ok(OK)
                }
                Verdict::Violation(v) => {
                    print!("{}", violation_to_json(&v));
                    Ok(BAD_COLORING)
                }
            }
        }
        Cmd::Oracle { input, threshold, all } => {
            let inst = read_instance(&input)?;
            let found = if all {
                oracle_all(&inst, threshold).map_err(bad_input)?
            } else {
                oracle(&inst, threshold).map_err(bad_input)?.into_iter().collect()
            };
            for c in &found {
                print!("{}", coloring_to_json(c));
            }
            Ok(if found.is_empty() { NO_COLORING } else { OK })
        }
        Cmd::Gen { n, mode, seed, bound, out } => {
            emit(out.as_deref(), &instance_to_json(&generate(n, mode, seed, bound)))?;
            Ok(OK)
        }
        Cmd::Render { input, coloring, out, window } => {
            let inst = read_instance(&input)?;
            let c = coloring.as_deref().map(read_coloring).transpose()?;
            let window = window.unwrap_or_else(|| Window::fit(&inst));
            emit(out.as_deref(), &render_svg(&inst, c.as_ref(), &window).map_err(bad_input)?)?;
            Ok(OK)
        }
        Cmd::Bench { sizes, seed, runs, csv } => {
            if sizes.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad_input("sizes must be strictly ascending"));
            }
            let recs = run_bench(&sizes, seed, runs).map_err(|e| Failure(BAD_COLORING, e.to_string()))?;
            emit(csv.as_deref(), &bench_csv(&recs))?;
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { BAD_INPUT } else { OK });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("hpcolor: {msg}");
            ExitCode::from(code)
        }
    }
}
