//! Command-line surface. Exit codes: 0 feasible / holds / verified, 1
//! infeasible / fails / not verified, 2 input or usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::criteria::{Criterion, ExhaustionLimit};
use crate::generator::{gen_random, GenParams, Probability};
use crate::graph::{verify_certificate, verify_factor, verify_factor_with_gy};
use crate::io::{emit_instance, parse_instance, InstanceDocument, OutputDocument};
use crate::oracle::{brute_force_factor, count_factors, OracleBudget};
use crate::solver::{solve_with, SolveOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bifactor",
    version,
    about = "Degree-bounded factors in bipartite multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InstanceArg {
    /// Instance file; standard input when omitted or `-`
    instance: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CriterionName {
    New,
    CymerKano,
    Heinrich,
    Ore,
    Hall,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an instance file
    Validate(InstanceArg),
    /// Construct a factor or an infeasibility certificate
    Solve {
        #[command(flatten)]
        input: InstanceArg,
        /// Start from a greedy factor instead of the empty one
        #[arg(long)]
        warm_start: bool,
    },
    /// Evaluate a feasibility criterion exhaustively
    Check {
        #[arg(long, value_enum)]
        criterion: CriterionName,
        /// Multiplicity floor for the Hall-type condition
        #[arg(long)]
        m_floor: Option<u64>,
        #[command(flatten)]
        input: InstanceArg,
    },
    /// Brute-force search over all sub-multigraphs
    Oracle {
        /// Count satisfying assignments instead of returning the first
        #[arg(long)]
        count: bool,
        #[arg(long, default_value_t = OracleBudget::default().max_configurations)]
        budget: u64,
        #[command(flatten)]
        input: InstanceArg,
    },
    /// Generate a random instance
    Gen {
        #[arg(long)]
        x_count: usize,
        #[arg(long)]
        y_count: usize,
        /// `p/q` or a decimal in [0, 1]
        #[arg(long)]
        edge_prob: Probability,
        #[arg(long, default_value_t = 1)]
        max_mult: u64,
        #[arg(long, default_value_t = 1)]
        g_max: u64,
        #[arg(long, default_value_t = 1)]
        f_slack: u64,
        #[arg(long)]
        min_mult_floor: Option<u64>,
        #[arg(long)]
        seed: u64,
    },
    /// Verify a factor document against an instance
    VerifyFactor {
        instance: PathBuf,
        /// Document from `solve` or `oracle`; standard input when omitted or `-`
        document: Option<PathBuf>,
        /// Also enforce the instance's `gy` lower bounds
        #[arg(long)]
        with_gy: bool,
    },
    /// Verify a certificate document against an instance
    VerifyCert {
        instance: PathBuf,
        document: Option<PathBuf>,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

type Failure = String;

impl Io<'_> {
    fn read(&mut self, path: Option<&PathBuf>) -> Result<String, Failure> {
        match path {
            Some(p) if p.as_os_str() != "-" => {
                fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))
            }
            _ => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| format!("stdin: {e}"))?;
                Ok(s)
            }
        }
    }

    fn instance(&mut self, path: Option<&PathBuf>) -> Result<InstanceDocument, Failure> {
        let text = self.read(path)?;
        let name = path.map_or("<stdin>".into(), |p| p.display().to_string());
        parse_instance(&text).map_err(|e| format!("{name}: {e}"))
    }

    fn document(&mut self, path: Option<&PathBuf>) -> Result<OutputDocument, Failure> {
        let text = self.read(path)?;
        OutputDocument::parse(&text).map_err(|e| format!("result document: {e}"))
    }

    fn print(&mut self, doc: &OutputDocument) -> Result<(), Failure> {
        self.stdout
            .write_all(doc.emit().as_bytes())
            .map_err(|e| e.to_string())
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn execute(command: Command, io: &mut Io<'_>) -> Result<i32, Failure> {
    match command {
        Command::Validate(input) => {
            let doc = io.instance(input.instance.as_ref())?;
            let inst = &doc.instance;
            io.print(&OutputDocument::Valid {
                x_count: inst.x_count(),
                y_count: inst.y_count(),
                edges: inst.edges().len(),
                total_multiplicity: inst.total_multiplicity(),
            })?;
            Ok(EXIT_OK)
        }
        Command::Solve { input, warm_start } => {
            let doc = io.instance(input.instance.as_ref())?;
            let report = solve_with(&doc.instance, SolveOptions { warm_start }, &mut ());
            io.print(&OutputDocument::from_outcome(&report.outcome))?;
            Ok(verdict(report.outcome.is_feasible()))
        }
        Command::Check {
            criterion,
            m_floor,
            input,
        } => {
            let criterion = match (criterion, m_floor) {
                (CriterionName::Hall, Some(m_floor)) => Criterion::Hall { m_floor },
                (CriterionName::Hall, None) => return Err("hall requires --m-floor".into()),
                (_, Some(_)) => return Err("--m-floor applies to hall only".into()),
                (CriterionName::New, None) => Criterion::New,
                (CriterionName::CymerKano, None) => Criterion::CymerKano,
                (CriterionName::Heinrich, None) => Criterion::Heinrich,
                (CriterionName::Ore, None) => Criterion::Ore,
            };
            let limit = ExhaustionLimit::from_env().map_err(|e| e.to_string())?;
            let doc = io.instance(input.instance.as_ref())?;
            let report = criterion
                .check(&doc.instance, doc.g_y.as_deref(), limit)
                .map_err(|e| e.to_string())?;
            io.print(&OutputDocument::from_report(criterion, &report))?;
            Ok(verdict(report.holds))
        }
        Command::Oracle {
            count,
            budget,
            input,
        } => {
            let doc = io.instance(input.instance.as_ref())?;
            let budget = OracleBudget {
                max_configurations: budget,
            };
            let g_y = doc.g_y.as_deref();
            if count {
                let n = count_factors(&doc.instance, g_y, budget).map_err(|e| e.to_string())?;
                io.print(&OutputDocument::FactorCount { count: n })?;
                Ok(verdict(n > 0))
            } else {
                let found =
                    brute_force_factor(&doc.instance, g_y, budget).map_err(|e| e.to_string())?;
                io.print(&OutputDocument::from_oracle(found.as_ref()))?;
                Ok(verdict(found.is_some()))
            }
        }
        Command::Gen {
            x_count,
            y_count,
            edge_prob,
            max_mult,
            g_max,
            f_slack,
            min_mult_floor,
            seed,
        } => {
            let inst = gen_random(&GenParams {
                x_count,
                y_count,
                edge_prob,
                max_mult,
                g_max,
                f_slack,
                min_mult_floor,
                seed,
            })
            .map_err(|e| e.to_string())?;
            io.stdout
                .write_all(emit_instance(&inst.into()).as_bytes())
                .map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Command::VerifyFactor {
            instance,
            document,
            with_gy,
        } => {
            let doc = io.instance(Some(&instance))?;
            let factor = io
                .document(document.as_ref())?
                .to_factor()
                .ok_or("expected a document of kind \"factor\"")?;
            let g_y = if with_gy { doc.g_y.as_deref() } else { None };
            let report = if g_y.is_some() {
                verify_factor_with_gy(&doc.instance, g_y, &factor)
            } else {
                verify_factor(&doc.instance, &factor)
            }
            .map_err(|e| e.to_string())?;
            io.print(&OutputDocument::from_factor_report(&report))?;
            Ok(verdict(report.is_valid()))
        }
        Command::VerifyCert { instance, document } => {
            let doc = io.instance(Some(&instance))?;
            let cert = io
                .document(document.as_ref())?
                .to_certificate()
                .ok_or("expected a document of kind \"certificate\"")?;
            let report = verify_certificate(&doc.instance, &cert).map_err(|e| e.to_string())?;
            io.print(&OutputDocument::from_certificate_report(&report))?;
            Ok(verdict(report.is_valid()))
        }
    }
}

/// Parses `args` (including the program name) and runs the command against
/// the given streams, returning the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                return EXIT_ERROR;
            }
            let _ = stdout.write_all(text.as_bytes());
            return EXIT_OK;
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stderr,
    };
    match execute(cli.command, &mut io) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            EXIT_ERROR
        }
    }
}

/// Entry point for the `bifactor` binary.
pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
