//! Argument parsing, dispatch and output rendering.

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperaut_core::catalog::{CatalogEntry, Recipe};
use hyperaut_core::search::FixedFamilyMode;
use num_bigint::BigUint;
use serde::Serialize;

use crate::commands::{self, SearchMode, SearchOptions};
use crate::data::{self, load_catalog};
use crate::error::{CliError, ExitStatus, Result};
use crate::formats::CatalogFile;
use crate::jobs::{self, JOBS_ENV};
use crate::manifest::RunManifest;

#[derive(Parser, Debug)]
#[command(name = "hyperaut", version, about = "Automorphism groups of edge-transitive hypergraphs and certified counting bounds")]
pub struct Cli {
    /// Worker threads for batch items.
    #[arg(long, global = true, env = JOBS_ENV)]
    pub jobs: Option<usize>,
    /// Write a run manifest (JSON) to this path.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree, order, transitivity, primitivity, block systems.
    GroupInfo { source: String },
    /// Look for a subset whose orbit hypergraph has exactly this group as
    /// automorphism group.
    Search(SearchArgs),
    /// Certify every proper primitive catalog group of the given degrees.
    Table1 {
        #[arg(long, default_value = "5-10")]
        degrees: String,
        /// Allow degrees outside 5-10 and never fail on flag mismatches.
        #[arg(long)]
        informative: bool,
    },
    /// Counting bounds and proof inequalities.
    Bounds {
        #[command(subcommand)]
        command: BoundsCommand,
    },
    /// Subsets fixed by some non-identity element of the group or of the
    /// given overgroups.
    FixedFamily {
        source: String,
        #[arg(long = "overgroup")]
        overgroups: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Inspect, verify or regenerate the group catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// One or more group sources.
    #[arg(required = true)]
    pub sources: Vec<String>,
    #[arg(long, default_value_t = 6)]
    pub max_size: usize,
    #[arg(long, default_value_t = 64)]
    pub trials: usize,
    #[arg(long, default_value_t = hyperaut_core::search::DEFAULT_SEED)]
    pub seed: u64,
    /// Scan orbit representatives of every size instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
    /// Report every realizable size (implies an exhaustive scan).
    #[arg(long)]
    pub rank_profile: bool,
    /// Resumable state file for --rank-profile.
    #[arg(long, requires = "rank_profile")]
    pub checkpoint: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Auto,
    Elements,
    OrbitLengths,
}

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Evaluate a counting function, e.g. `eval F 3600`.
    Eval {
        function: String,
        args: Vec<u64>,
        #[arg(long, default_value_t = 256)]
        precision: u32,
    },
    /// Certify one inequality at one parameter.
    Check { name: String, parameter: u64 },
    /// Certify an inequality at every admissible parameter of a range;
    /// without a name, every registry entry over its default range.
    Scan {
        name: Option<String>,
        #[arg(long)]
        lo: Option<u64>,
        #[arg(long)]
        hi: Option<u64>,
    },
    /// Primes of the form (q^l - 1)/(q - 1) in [from, below).
    Primes {
        #[arg(long)]
        below: u64,
        #[arg(long, default_value_t = 5)]
        from: u64,
    },
    /// Check m! <= (c m)^m for m_low <= m <= m_high.
    Stirling { constant: String, m_low: u64, m_high: u64 },
    /// List registry entries.
    List,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// Print the bundled catalog.
    Dump,
    /// Verify a catalog file (default: the bundled one).
    Verify {
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Regenerate the catalog file from the construction recipes.
    Synthesize {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Append a recipe-built entry to a catalog file and verify the result.
    Extend {
        /// Base catalog file (default: the bundled one).
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        name: String,
        /// Recipe text, e.g. "projective d=2 q=13 kind=psl".
        #[arg(long)]
        recipe: String,
        #[arg(long)]
        order: String,
        #[arg(long)]
        imprimitive: bool,
        #[arg(long, default_value = "")]
        tag: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Primary output plus exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub text: String,
    pub status: ExitStatus,
    pub seed: Option<u64>,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn ok(text: String) -> RunOutput {
    RunOutput {
        text,
        status: ExitStatus::Success,
        seed: None,
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

fn points(v: &Option<Vec<usize>>) -> String {
    v.as_ref().map_or_else(
        || "-".to_string(),
        |p| format!("{{{}}}", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
    )
}

/// Left-aligned columns separated by two spaces.
fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn tsv(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join("\t") + "\n").collect()
}

fn tabular(format: Format, rows: &[Vec<String>]) -> String {
    match format {
        Format::Table => align(rows),
        _ => tsv(rows),
    }
}

fn render_table1(r: &commands::Table1Report, format: Format) -> String {
    if format == Format::Json {
        return json(r);
    }
    let mut rows = vec![["degree", "group", "order", "verdict", "set_transitive", "table1", "match", "witness"]
        .map(String::from)
        .to_vec()];
    for x in &r.rows {
        rows.push(vec![
            x.degree.to_string(),
            x.name.clone(),
            x.order.clone(),
            x.verdict.to_string(),
            x.set_transitive.to_string(),
            x.table1_member.to_string(),
            if x.matches { "ok" } else { "MISMATCH" }.to_string(),
            points(&x.witness),
        ]);
    }
    let mut out = tabular(format, &rows);
    out.push_str(&format!("# exceptions: {}\n", r.exceptions.len()));
    out.push_str(&format!("# mismatches: {}\n", r.mismatches.len()));
    out
}

/// One row per parameter: name, parameter, holds, margin_log2, precision_bits.
fn verdict_rows<'a>(reports: impl IntoIterator<Item = &'a commands::CheckReport>) -> Vec<Vec<String>> {
    let mut rows = vec![["name", "parameter", "holds", "margin_log2", "precision_bits", "branch"]
        .map(String::from)
        .to_vec()];
    for r in reports {
        rows.push(vec![
            r.name.clone(),
            r.parameter.to_string(),
            r.verdict.to_string(),
            format!("{:.6}", r.margin_lower),
            r.precision_bits.to_string(),
            opt(&r.branch),
        ]);
    }
    rows
}

fn render_scans(scans: &[commands::ScanOutput], format: Format) -> String {
    match format {
        Format::Json if scans.len() == 1 => json(&scans[0]),
        Format::Json => json(&scans),
        Format::Tsv => tsv(&verdict_rows(scans.iter().flat_map(|s| &s.verdicts))),
        Format::Table => {
            let mut rows = vec![["name", "lo", "hi", "checked", "all_hold", "failures", "undecided", "min_margin"]
                .map(String::from)
                .to_vec()];
            for s in scans {
                rows.push(vec![
                    s.name.clone(),
                    s.lo.to_string(),
                    s.hi.to_string(),
                    s.checked.to_string(),
                    s.all_hold.to_string(),
                    s.failures.len().to_string(),
                    s.undecided.len().to_string(),
                    s.min_margin.map_or_else(|| "-".into(), |m| format!("{m:.3}")),
                ]);
            }
            align(&rows)
        }
    }
}

fn worst(statuses: impl IntoIterator<Item = ExitStatus>) -> ExitStatus {
    // Undecided outranks a mismatch, which outranks success.
    statuses.into_iter().fold(ExitStatus::Success, |acc, s| match (acc, s) {
        (ExitStatus::Undecided, _) | (_, ExitStatus::Undecided) => ExitStatus::Undecided,
        (ExitStatus::ClaimsMismatch, _) | (_, ExitStatus::ClaimsMismatch) => ExitStatus::ClaimsMismatch,
        _ => ExitStatus::Success,
    })
}

fn bounds(cmd: &BoundsCommand, format: Format) -> Result<RunOutput> {
    let registry = data::registry()?;
    match cmd {
        BoundsCommand::Eval {
            function,
            args,
            precision,
        } => Ok(ok(json(&commands::bounds_eval(function, args, *precision)?))),
        BoundsCommand::Check { name, parameter } => {
            let r = commands::bounds_check(&registry, name, *parameter)?;
            let text = match format {
                Format::Json => json(&r),
                _ => tabular(format, &verdict_rows([&r])),
            };
            Ok(RunOutput {
                text,
                status: r.status(),
                seed: None,
            })
        }
        BoundsCommand::Scan { name, lo, hi } => {
            let names: Vec<String> = match name {
                Some(n) => vec![n.clone()],
                None => registry.scans.iter().map(|s| s.name.clone()).collect(),
            };
            let scans = names
                .iter()
                .map(|n| commands::bounds_scan(&registry, n, *lo, *hi))
                .collect::<Result<Vec<_>>>()?;
            Ok(RunOutput {
                text: render_scans(&scans, format),
                status: worst(scans.iter().map(commands::ScanOutput::status)),
                seed: None,
            })
        }
        BoundsCommand::Primes { below, from } => {
            let r = commands::bounds_primes(*from, *below);
            let text = match format {
                Format::Json => json(&r),
                Format::Tsv => {
                    let mut rows = vec![vec!["prime".to_string(), "q".into(), "l".into()]];
                    for f in &r.forms {
                        for [q, l] in &f.representations {
                            rows.push(vec![f.prime.to_string(), q.to_string(), l.to_string()]);
                        }
                    }
                    tsv(&rows)
                }
                Format::Table => {
                    r.primes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n"
                }
            };
            Ok(ok(text))
        }
        BoundsCommand::Stirling {
            constant,
            m_low,
            m_high,
        } => {
            let r = commands::bounds_stirling(constant, *m_low, *m_high)?;
            Ok(RunOutput {
                text: json(&r),
                status: if r.holds { ExitStatus::Success } else { ExitStatus::ClaimsMismatch },
                seed: None,
            })
        }
        BoundsCommand::List => {
            let mut rows = vec![vec!["name".to_string(), "parameter".into(), "default_range".into(), "statement".into()]];
            for e in hyperaut_core::bounds::REGISTRY {
                let range = registry
                    .scan(e.name)
                    .map_or_else(|| "-".to_string(), |s| format!("{}..{}", s.lo, s.hi));
                rows.push(vec![e.name.into(), e.parameter.into(), range, e.statement.into()]);
            }
            Ok(ok(match format {
                Format::Table => align(&rows),
                _ => tsv(&rows),
            }))
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn write_or_return(out: &Option<PathBuf>, text: String) -> Result<RunOutput> {
    match out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| CliError::io(p.display().to_string(), e))?;
            Ok(ok(format!("wrote {}\n", p.display())))
        }
        None => Ok(ok(text)),
    }
}

fn catalog(cmd: &CatalogCommand, format: Format) -> Result<RunOutput> {
    match cmd {
        CatalogCommand::Dump => {
            if format == Format::Json {
                return Ok(ok(data::CATALOG_JSON.to_string()));
            }
            let mut rows = vec![["name", "degree", "order", "primitive", "tag", "table1", "generators"]
                .map(String::from)
                .to_vec()];
            for e in load_catalog()?.entries() {
                rows.push(vec![
                    e.name.clone(),
                    e.degree.to_string(),
                    e.expected_order.to_string(),
                    e.expected_primitive.to_string(),
                    e.onan_scott_tag.clone(),
                    e.table1_member.to_string(),
                    e.generators.join(" "),
                ]);
            }
            Ok(ok(tabular(format, &rows)))
        }
        CatalogCommand::Verify { file } => {
            let c = match file {
                Some(p) => data::load_catalog_from(&read(p)?)?,
                None => load_catalog()?.clone(),
            };
            Ok(ok(json(&commands::catalog_verify(&c))))
        }
        CatalogCommand::Synthesize { out } => write_or_return(out, data::synthesize_catalog_json()?),
        CatalogCommand::Extend {
            file,
            name,
            recipe,
            order,
            imprimitive,
            tag,
            out,
        } => {
            let base = match file {
                Some(p) => CatalogFile::parse(&read(p)?)?,
                None => CatalogFile::parse(data::CATALOG_JSON)?,
            };
            let order = BigUint::from_str(order).map_err(|_| CliError::Input(format!("bad order {order:?}")))?;
            let entry = CatalogEntry::from_recipe(name, &Recipe::parse(recipe)?, order, !imprimitive, tag, false)?;
            write_or_return(out, commands::catalog_extend(&base, entry)?.render())
        }
    }
}

/// Runs a parsed command inside a worker pool.
pub fn execute(cli: &Cli) -> Result<RunOutput> {
    let pool = jobs::pool(jobs::job_count(cli.jobs));
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<RunOutput> {
    let format = cli.format;
    match &cli.command {
        Command::GroupInfo { source } => Ok(ok(json(&commands::group_info(source)?))),
        Command::Search(a) => {
            let opts = SearchOptions {
                max_size: a.max_size,
                trials: a.trials,
                seed: a.seed,
                mode: if a.rank_profile {
                    SearchMode::RankProfile
                } else if a.exhaustive {
                    SearchMode::Exhaustive
                } else {
                    SearchMode::Random
                },
                checkpoint: a.checkpoint.clone(),
            };
            let reports = commands::search(&a.sources, &opts)?;
            let text = if reports.len() == 1 { json(&reports[0]) } else { json(&reports) };
            Ok(RunOutput {
                text,
                status: ExitStatus::Success,
                seed: (opts.mode == SearchMode::Random).then_some(a.seed),
            })
        }
        Command::Table1 { degrees, informative } => {
            let degrees = commands::parse_degrees(degrees)?;
            let r = commands::table1(load_catalog()?, &degrees, *informative)?;
            Ok(RunOutput {
                text: render_table1(&r, format),
                status: r.status(),
                seed: None,
            })
        }
        Command::Bounds { command } => bounds(command, format),
        Command::FixedFamily {
            source,
            overgroups,
            mode,
        } => {
            let mode = match mode {
                Mode::Auto => FixedFamilyMode::Auto,
                Mode::Elements => FixedFamilyMode::Elements,
                Mode::OrbitLengths => FixedFamilyMode::OrbitLengths,
            };
            Ok(ok(json(&commands::fixed_family_cmd(source, overgroups, mode)?)))
        }
        Command::Catalog { command } => catalog(command, format),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::GroupInfo { .. } => "group-info",
        Command::Search(_) => "search",
        Command::Table1 { .. } => "table1",
        Command::Bounds { .. } => "bounds",
        Command::FixedFamily { .. } => "fixed-family",
        Command::Catalog { .. } => "catalog",
    }
}

/// Parses `args` (program name first), runs the command, writes the
/// manifest if asked, and returns the output and exit code. Errors are
/// rendered as text on the error channel of the returned pair.
pub fn run<I, T>(args: I) -> (String, String, u8)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitStatus::InputError.code() } else { 0 };
            return (if code == 0 { e.to_string() } else { String::new() }, if code == 0 { String::new() } else { e.to_string() }, code);
        }
    };
    let start = Instant::now();
    let (text, err, status, seed) = match execute(&cli) {
        Ok(o) => (o.text, String::new(), o.status, o.seed),
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_status(), None),
    };
    let mut err = err;
    if let Some(path) = &cli.manifest {
        let arguments: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
        let m = RunManifest::new(
            command_name(&cli.command),
            &arguments,
            seed,
            start.elapsed().as_secs_f64(),
            &text,
            status.code(),
        );
        let body = serde_json::to_string_pretty(&m).expect("manifest serializes") + "\n";
        if let Err(e) = std::fs::write(path, body) {
            err.push_str(&format!("error: {}: {e}\n", path.display()));
        }
    }
    (text, err, status.code())
}
