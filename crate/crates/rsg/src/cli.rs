//! The `rsg` command line.
//!
//! Exit codes: 0 pass / SAT / feasible, 1 fail / UNSAT / infeasible,
//! 2 INDETERMINATE, 64 usage error, 65 unparsable input file, 66 input file
//! unreadable, 74 output file unwritable.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rsg_core::bounds::{distance_certificate, expansion_audit, feasibility_verdict, max_r};
use rsg_core::constructions::{ApMethod, DifferenceSet, Family};
use rsg_core::search::{
    max_t_on_graph_with_clock, PackingOptions, SearchOptions, SearchOutcome, Verdict,
};
use rsg_core::{verify_decomposition, Error, MatchingDecomposition};

use crate::budget;
use crate::format::{emit_rsg, parse_rsg};
use crate::parallel::{exists_rs_parallel, WallClock};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = "rsg", version, about = "Ruzsa-Szemeredi graph workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a family member and write it as .rsg.
    Construct(ConstructArgs),
    /// Check an .rsg file's decomposition and edge-local invariants.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Matching-size bound, or the full feasibility verdict with --r.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether an (r, t)-RS graph on n vertices exists.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Search even when r exceeds the matching-size bound.
        #[arg(long)]
        no_eq1_shortcut: bool,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
        /// Write a SAT certificate here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the expansion audit on an .rsg file.
    Audit {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Hamming-distance certificate of an .rsg file.
    Distance {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Most edge-disjoint induced r-matchings in the graph of an .rsg file.
    MaxT {
        file: PathBuf,
        #[arg(long)]
        r: usize,
        /// Require the matchings to cover every edge.
        #[arg(long)]
        exact_cover: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
        /// Write the best packing found here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Wall-clock limit in seconds (0 = none). Default 60, or RSG_DEFAULT_BUDGET.
    #[arg(long)]
    timeout: Option<f64>,
    /// Node limit. Default 10^7, or RSG_DEFAULT_BUDGET.
    #[arg(long)]
    max_nodes: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Kneser,
    Hypercube,
    HypercubeAugmented,
    #[value(alias = "cayley")]
    CayleyAp,
    DisjointUnion,
    DoubleCover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ApMethodArg {
    #[value(alias = "greedy")]
    GreedyBase3,
    Behrend,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    family: FamilyName,
    /// Kneser / hypercube parameter.
    #[arg(long)]
    k: Option<usize>,
    /// Copies for disjoint-union.
    #[arg(long)]
    copies: Option<usize>,
    /// Odd modulus N for cayley-ap.
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long, value_enum, default_value = "greedy-base3")]
    apset_method: ApMethodArg,
    /// Generate the 3-AP-free set on [1, limit]; default (N - 1) / 3.
    #[arg(long)]
    limit: Option<u64>,
    /// Explicit 3-AP-free set, comma separated.
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<u64>>,
    /// Base family for disjoint-union and double-cover.
    #[arg(long, value_enum)]
    base: Option<FamilyName>,
    /// Base decomposition from an .rsg file instead of --base.
    #[arg(long, conflicts_with = "base")]
    from: Option<PathBuf>,
    /// Write here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Why a command stopped early; carries its exit code.
struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Exit {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Exit::new(EXIT_USAGE, message)
    }
}

fn core_error(e: Error) -> Exit {
    match e {
        Error::Precondition(_) => Exit::new(EXIT_FAIL, e.to_string()),
        Error::MalformedInput(_) => Exit::new(EXIT_PARSE, e.to_string()),
        _ => Exit::usage(e.to_string()),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(exit) => {
            let _ = writeln!(err, "rsg: {}", exit.message);
            exit.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Exit> {
    match command {
        Command::Construct(args) => construct(args, out),
        Command::Verify { file, json } => {
            let dec = read(&file)?;
            let report = verify_decomposition(&dec);
            if json {
                emit_json(out, &report)?;
            } else {
                emit_text(out, &report::verification(&report))?;
            }
            Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Bound {
            n,
            t,
            r: None,
            json,
        } => {
            let bound = max_r(n, t);
            if json {
                emit_json(out, &report::MaxRReport::new(n, t, bound))?;
            } else {
                emit_text(out, &format!("max r = {bound}\n"))?;
            }
            Ok(EXIT_OK)
        }
        Command::Bound {
            n,
            t,
            r: Some(r),
            json,
        } => {
            let verdict = feasibility_verdict(n, r, t).map_err(core_error)?;
            if json {
                emit_json(out, &verdict)?;
            } else {
                emit_text(out, &report::bound(&verdict))?;
            }
            Ok(if verdict.feasible { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Search {
            n,
            r,
            t,
            budget,
            no_eq1_shortcut,
            jobs,
            json,
            output,
        } => {
            let options = SearchOptions {
                budget: resolve_budget(&budget)?,
                eq1_shortcut: !no_eq1_shortcut,
            };
            let outcome = exists_rs_parallel(n, r, t, &options, jobs).map_err(core_error)?;
            let summary = format!("search n={n} r={r} t={t}");
            finish_search(out, &summary, &outcome, json, output.as_deref())
        }
        Command::Audit { file, json } => {
            let dec = read(&file)?;
            let audit = expansion_audit(&dec).map_err(core_error)?;
            if json {
                emit_json(out, &audit)?;
            } else {
                emit_text(out, &report::audit(&audit))?;
            }
            Ok(if audit.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Distance { file, json } => {
            let dec = read(&file)?;
            let cert = distance_certificate(&dec).map_err(core_error)?;
            if json {
                emit_json(out, &cert)?;
            } else {
                emit_text(out, &report::distance(&cert))?;
            }
            Ok(if cert.holds() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::MaxT {
            file,
            r,
            exact_cover,
            budget,
            json,
            output,
        } => {
            let dec = read(&file)?;
            let options = PackingOptions {
                budget: resolve_budget(&budget)?,
                exact_cover,
            };
            let outcome = max_t_on_graph_with_clock(dec.graph(), r, &options, &WallClock::start())
                .map_err(core_error)?;
            let summary = format!(
                "max-t r={r}{}",
                if exact_cover { " exact-cover" } else { "" }
            );
            finish_search(out, &summary, &outcome, json, output.as_deref())
        }
    }
}

fn resolve_budget(args: &BudgetArgs) -> Result<rsg_core::search::Budget, Exit> {
    let env = std::env::var(budget::ENV_VAR).ok();
    let timeout = match args.timeout {
        None => None,
        Some(secs) => Some(
            budget::seconds(&secs.to_string())
                .ok_or_else(|| Exit::usage(format!("--timeout {secs}: expected seconds >= 0")))?,
        ),
    };
    budget::resolve(env.as_deref(), args.max_nodes, timeout).map_err(|e| Exit::usage(e.to_string()))
}

fn finish_search(
    out: &mut dyn Write,
    summary: &str,
    outcome: &SearchOutcome,
    json: bool,
    output: Option<&Path>,
) -> Result<i32, Exit> {
    if let (Some(path), Some(cert)) = (output, &outcome.certificate) {
        write_file(path, &emit_rsg(cert))?;
    }
    if json {
        emit_json(out, &report::SearchReport::new(outcome))?;
    } else {
        emit_text(out, &report::search(summary, outcome))?;
    }
    Ok(match outcome.verdict {
        Verdict::Sat => EXIT_OK,
        Verdict::Unsat => EXIT_FAIL,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    })
}

fn construct(args: ConstructArgs, out: &mut dyn Write) -> Result<i32, Exit> {
    let dec = match args.family {
        FamilyName::DisjointUnion | FamilyName::DoubleCover => {
            let base = match (&args.from, args.base) {
                (Some(path), _) => read(path)?,
                (None, Some(base)) => family(base, &args)?.build().map_err(core_error)?,
                (None, None) => {
                    return Err(Exit::usage("transforms need --base FAMILY or --from FILE"))
                }
            };
            let built = if args.family == FamilyName::DoubleCover {
                rsg_core::constructions::double_cover(&base)
            } else {
                let copies = args
                    .copies
                    .ok_or_else(|| Exit::usage("disjoint-union needs --copies"))?;
                rsg_core::constructions::disjoint_union(&base, copies)
            };
            built.map_err(core_error)?
        }
        name => family(name, &args)?.build().map_err(core_error)?,
    };
    let text = emit_rsg(&dec);
    match &args.output {
        Some(path) => {
            write_file(path, &text)?;
            emit_text(
                out,
                &format!(
                    "wrote {}: n={} t={} r={}\n",
                    path.display(),
                    dec.n(),
                    dec.t(),
                    dec.r()
                ),
            )?;
        }
        None => emit_text(out, &text)?,
    }
    Ok(EXIT_OK)
}

/// The non-transform family described by the flags.
fn family(name: FamilyName, args: &ConstructArgs) -> Result<Family, Exit> {
    let k = || {
        args.k
            .ok_or_else(|| Exit::usage(format!("{name:?} needs --k").to_lowercase()))
    };
    Ok(match name {
        FamilyName::Kneser => Family::Kneser { k: k()? },
        FamilyName::Hypercube => Family::Hypercube { k: k()? },
        FamilyName::HypercubeAugmented => Family::HypercubeAugmented { k: k()? },
        FamilyName::CayleyAp => {
            let modulus = args
                .modulus
                .ok_or_else(|| Exit::usage("cayley-ap needs --modulus"))?;
            let set = match &args.set {
                Some(elements) => DifferenceSet::Explicit(elements.clone()),
                None => DifferenceSet::Generated {
                    method: match args.apset_method {
                        ApMethodArg::GreedyBase3 => ApMethod::GreedyBase3,
                        ApMethodArg::Behrend => ApMethod::Behrend,
                    },
                    limit: args.limit.unwrap_or(modulus.saturating_sub(1) / 3),
                },
            };
            Family::CayleyAp { modulus, set }
        }
        FamilyName::DisjointUnion | FamilyName::DoubleCover => {
            return Err(Exit::usage("--base must be a plain family"))
        }
    })
}

fn read(path: &Path) -> Result<MatchingDecomposition, Exit> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Exit::new(EXIT_NO_INPUT, format!("{}: {e}", path.display())))?;
    parse_rsg(&text).map_err(|e| Exit::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Exit> {
    std::fs::write(path, text).map_err(|e| Exit::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn emit_text(out: &mut dyn Write, text: &str) -> Result<(), Exit> {
    out.write_all(text.as_bytes())
        .map_err(|e| Exit::new(EXIT_IO, format!("stdout: {e}")))
}

fn emit_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Exit> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit_text(out, &text)
}

/// Wall time as fractional seconds for reports.
pub(crate) fn secs(d: Option<Duration>) -> Option<f64> {
    d.map(|d| d.as_secs_f64())
}
