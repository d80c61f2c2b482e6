//! Command implementations. Each returns a serializable report; rendering
//! and exit codes are decided in [`crate::cli`].

use std::path::Path;
use std::sync::Mutex;

use hyperaut_core::bounds::{self, BoundExpression, ExponentExpr, Interval, ScaledPower, Term};
use hyperaut_core::search::{
    assemble, exhaustive_certify, fixed_family, random_search, s_family, scan_rank, FixedFamilyMode,
    RealizationResult, SearchConfig, Status,
};
use hyperaut_core::{catalog::Catalog, Error as CoreError, PermutationGroup, Subset};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::checkpoint::Checkpoint;
use crate::error::{CliError, ExitStatus, Result};
use crate::formats::{parse_decimal, CatalogFile, RegistryFile};
use crate::jobs::item_seed;
use crate::source::{resolve, ResolvedGroup};

/// Degrees covered by the table of exceptions.
pub const TABLE1_DEGREES: std::ops::RangeInclusive<usize> = 5..=10;

fn labels(s: Subset) -> Vec<usize> {
    s.to_labels()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInfo {
    pub group: String,
    pub degree: usize,
    pub order: String,
    pub transitive: bool,
    pub primitive: Option<bool>,
    pub transitivity_degree: usize,
    pub contains_alternating: bool,
    /// Nontrivial block systems as 1-indexed blocks; `None` if intransitive.
    pub block_systems: Option<Vec<Vec<Vec<usize>>>>,
    pub set_transitive: Option<bool>,
    pub table1_member: Option<bool>,
}

pub fn group_info(source: &str) -> Result<GroupInfo> {
    let r = resolve(source)?;
    let g = &r.group;
    let transitive = g.is_transitive();
    let block_systems = if transitive {
        Some(
            g.block_systems()?
                .iter()
                .map(|b| {
                    b.blocks()
                        .iter()
                        .map(|blk| blk.iter().map(|x| x + 1).collect())
                        .collect()
                })
                .collect(),
        )
    } else {
        None
    };
    let set_transitive = if g.degree() <= hyperaut_core::subset::MAX_SUBSET_DOMAIN {
        Some(g.is_set_transitive()?)
    } else {
        None
    };
    Ok(GroupInfo {
        group: r.label.clone(),
        degree: g.degree(),
        order: g.order().to_string(),
        transitive,
        primitive: transitive.then(|| g.is_primitive()),
        transitivity_degree: g.transitivity_degree()?,
        contains_alternating: g.contains_alternating(),
        block_systems,
        set_transitive,
        table1_member: r.table1_member,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Random,
    Exhaustive,
    RankProfile,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub max_size: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: SearchMode,
    pub checkpoint: Option<std::path::PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        let c = SearchConfig::default();
        SearchOptions {
            max_size: c.max_subset_size,
            trials: c.trials,
            seed: c.seed,
            mode: SearchMode::Random,
            checkpoint: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub group: String,
    pub degree: usize,
    pub order: String,
    pub mode: &'static str,
    /// Seed actually used; only random searches consume one.
    pub seed: Option<u64>,
    pub status: &'static str,
    pub witness: Option<Vec<usize>>,
    pub ranks_realizable: Option<Vec<usize>>,
    /// `[size, subsets tested]`.
    pub trials_used: Vec<[usize; 2]>,
}

fn search_report(r: &ResolvedGroup, mode: SearchMode, seed: Option<u64>, res: RealizationResult) -> SearchReport {
    SearchReport {
        group: r.label.clone(),
        degree: r.group.degree(),
        order: r.group.order().to_string(),
        mode: match mode {
            SearchMode::Random => "random",
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::RankProfile => "rank-profile",
        },
        seed,
        status: res.status.as_str(),
        witness: res.witness.map(labels),
        ranks_realizable: res.ranks_realizable,
        trials_used: res.trials_used.iter().map(|&(a, b)| [a, b]).collect(),
    }
}

/// Scans every size `1..=n/2`, in parallel, recording finished sizes in the
/// checkpoint file when one is given.
pub fn rank_profile(group: &PermutationGroup, checkpoint: Option<&Path>) -> Result<RealizationResult> {
    if group.contains_alternating() {
        return Err(CoreError::ContainsAlternating.into());
    }
    let config = SearchConfig::default();
    if group.degree() > config.exhaustive_limit {
        return Err(CoreError::LimitExceeded {
            what: "exhaustive scan degree",
            value: group.degree(),
            limit: config.exhaustive_limit,
        }
        .into());
    }
    let state = match checkpoint {
        Some(p) => Checkpoint::load_or_new(p, group)?,
        None => Checkpoint::new(group),
    };
    let n = group.degree();
    let todo: Vec<usize> = (1..=n / 2).filter(|&k| !state.is_done(k)).collect();
    let state = Mutex::new(state);
    todo.into_par_iter().try_for_each(|k| -> Result<()> {
        let scan = scan_rank(group, k)?;
        let mut s = state.lock().expect("checkpoint lock");
        s.record(&scan);
        if let Some(p) = checkpoint {
            s.save(p)?;
        }
        Ok(())
    })?;
    let state = state.into_inner().expect("checkpoint lock");
    Ok(assemble(n, &state.scans(), true))
}

pub fn search(sources: &[String], opts: &SearchOptions) -> Result<Vec<SearchReport>> {
    if opts.checkpoint.is_some() && sources.len() != 1 {
        return Err(CliError::Input("--checkpoint needs exactly one group".into()));
    }
    let groups = sources.iter().map(|s| resolve(s)).collect::<Result<Vec<_>>>()?;
    let run = |(i, r): (usize, &ResolvedGroup)| -> Result<SearchReport> {
        match opts.mode {
            SearchMode::Random => {
                let seed = if groups.len() == 1 { opts.seed } else { item_seed(opts.seed, i) };
                let config = SearchConfig {
                    max_subset_size: opts.max_size,
                    trials: opts.trials,
                    seed,
                    ..SearchConfig::default()
                };
                let res = random_search(&r.group, &config)?;
                Ok(search_report(r, opts.mode, Some(seed), res))
            }
            SearchMode::Exhaustive => {
                let res = exhaustive_certify(&r.group, &SearchConfig::default(), false)?;
                Ok(search_report(r, opts.mode, None, res))
            }
            SearchMode::RankProfile => {
                let res = rank_profile(&r.group, opts.checkpoint.as_deref())?;
                Ok(search_report(r, opts.mode, None, res))
            }
        }
    };
    if opts.mode == SearchMode::RankProfile {
        // Parallelism is inside each profile.
        groups.iter().enumerate().map(run).collect()
    } else {
        groups.par_iter().enumerate().map(run).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub degree: usize,
    pub name: String,
    pub order: String,
    pub verdict: &'static str,
    pub set_transitive: bool,
    pub table1_member: bool,
    pub matches: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub degrees: Vec<usize>,
    pub informative: bool,
    pub rows: Vec<Table1Row>,
    /// Labels certified as exceptions.
    pub exceptions: Vec<String>,
    pub set_transitive: Vec<String>,
    pub mismatches: Vec<String>,
}

impl Table1Report {
    pub fn status(&self) -> ExitStatus {
        if self.mismatches.is_empty() || self.informative {
            ExitStatus::Success
        } else {
            ExitStatus::ClaimsMismatch
        }
    }
}

/// Parses `5-10`, `6`, or `5,7,9`.
pub fn parse_degrees(text: &str) -> Result<Vec<usize>> {
    let bad = || CliError::Input(format!("bad degree list {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once('-') {
            let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn table1(catalog: &Catalog, degrees: &[usize], informative: bool) -> Result<Table1Report> {
    if !informative {
        if let Some(d) = degrees.iter().find(|d| !TABLE1_DEGREES.contains(d)) {
            return Err(CliError::Input(format!(
                "degree {d} is outside 5-10; pass --informative to scan it"
            )));
        }
    }
    let items: Vec<_> = degrees.iter().flat_map(|&d| catalog.proper_primitive(d)).collect();
    let config = SearchConfig::default();
    let rows = items
        .par_iter()
        .map(|(e, g)| -> Result<Table1Row> {
            let res = exhaustive_certify(g, &config, false)?;
            let certified = res.status == Status::ExceptionCertified;
            Ok(Table1Row {
                degree: e.degree,
                name: e.name.clone(),
                order: g.order().to_string(),
                verdict: res.status.as_str(),
                set_transitive: g.is_set_transitive()?,
                table1_member: e.table1_member,
                matches: certified == e.table1_member,
                witness: res.witness.map(labels),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pick = |f: &dyn Fn(&Table1Row) -> bool| -> Vec<String> {
        rows.iter().filter(|r| f(r)).map(|r| format!("{}@{}", r.name, r.degree)).collect()
    };
    Ok(Table1Report {
        degrees: degrees.to_vec(),
        informative,
        exceptions: pick(&|r| r.verdict == Status::ExceptionCertified.as_str()),
        set_transitive: pick(&|r| r.set_transitive),
        mismatches: pick(&|r| !r.matches),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub prime: u64,
    pub fix_count: usize,
    pub orbit_count: usize,
    pub subgroup_count: String,
    pub bound: String,
    pub newly_fixed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedFamilyOutput {
    pub group: String,
    pub overgroups: Vec<String>,
    pub degree: usize,
    pub total_subsets: String,
    pub total_fixed: String,
    pub has_regular_orbit: bool,
    pub regular_subset_witness: Option<Vec<usize>>,
    pub by_class: Vec<ClassRow>,
}

pub fn fixed_family_cmd(source: &str, overgroups: &[String], mode: FixedFamilyMode) -> Result<FixedFamilyOutput> {
    let r = resolve(source)?;
    let config = SearchConfig::default();
    let (labels_over, report) = if overgroups.is_empty() {
        (Vec::new(), fixed_family(&r.group, &config, mode)?)
    } else {
        let over = overgroups.iter().map(|s| resolve(s)).collect::<Result<Vec<_>>>()?;
        let groups: Vec<PermutationGroup> = over.iter().map(|o| o.group.clone()).collect();
        (
            over.iter().map(|o| o.label.clone()).collect(),
            s_family(&r.group, &groups, &config, mode)?,
        )
    };
    Ok(FixedFamilyOutput {
        group: r.label,
        overgroups: labels_over,
        degree: report.degree,
        total_subsets: (BigUint::from(1u32) << report.degree).to_string(),
        total_fixed: report.total_fixed.to_string(),
        has_regular_orbit: report.has_regular_orbit,
        regular_subset_witness: report.regular_subset_witness.map(labels),
        by_class: report
            .by_class
            .iter()
            .map(|c| ClassRow {
                prime: c.prime,
                fix_count: c.fix_count,
                orbit_count: c.orbit_count,
                subgroup_count: c.subgroup_count.to_string(),
                bound: c.bound.to_string(),
                newly_fixed: c.newly_fixed,
            })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermReport {
    pub label: String,
    pub log2_lower: f64,
    pub log2_upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub function: String,
    pub arguments: Vec<u64>,
    /// Exponent of 2 for single powers, as an exact expression.
    pub exponent: Option<String>,
    /// Exact rational value when the exponent is an integer combination.
    pub exact: Option<String>,
    pub log2_lower: f64,
    pub log2_upper: f64,
    pub precision_bits: u32,
    pub terms: Vec<TermReport>,
}

pub const EVAL_FUNCTIONS: &[(&str, usize)] = &[
    ("f0", 1),
    ("f-prime", 1),
    ("f-double-prime", 1),
    ("f-pij", 4),
    ("F", 1),
    ("B3", 1),
    ("g-prime", 1),
    ("g-double-prime", 1),
    ("g-ip", 3),
    ("G", 1),
    ("cutoff-wreath", 1),
    ("cutoff-pairs", 1),
];

fn interval_report(function: &str, args: &[u64], iv: &Interval, prec: u32) -> EvalReport {
    EvalReport {
        function: function.to_string(),
        arguments: args.to_vec(),
        exponent: None,
        exact: None,
        log2_lower: iv.lower_f64(),
        log2_upper: iv.upper_f64(),
        precision_bits: prec,
        terms: Vec::new(),
    }
}

fn power_report(function: &str, args: &[u64], e: ExponentExpr, prec: u32) -> EvalReport {
    let t = Term::power(e.clone());
    EvalReport {
        exponent: Some(e.to_string()),
        exact: t.exact_value().map(|v| v.to_string()),
        ..interval_report(function, args, &t.log2(prec), prec)
    }
}

fn scaled_report(function: &str, args: &[u64], s: ScaledPower, prec: u32) -> EvalReport {
    let t = s.to_term();
    EvalReport {
        exact: Some(s.value().to_string()),
        ..interval_report(function, args, &t.log2(prec), prec)
    }
}

fn sum_report(function: &str, args: &[u64], b: BoundExpression, prec: u32) -> EvalReport {
    let v = b.evaluate(prec);
    EvalReport {
        exact: b.exact_value().map(|x| x.to_string()),
        terms: b
            .terms()
            .iter()
            .map(|(label, t)| {
                let iv = t.log2(prec);
                TermReport {
                    label: label.clone(),
                    log2_lower: iv.lower_f64(),
                    log2_upper: iv.upper_f64(),
                }
            })
            .collect(),
        ..interval_report(function, args, &v.log2, prec)
    }
}

pub fn bounds_eval(function: &str, args: &[u64], prec: u32) -> Result<EvalReport> {
    let arity = EVAL_FUNCTIONS
        .iter()
        .find(|(f, _)| *f == function)
        .map(|&(_, a)| a)
        .ok_or_else(|| {
            let names: Vec<&str> = EVAL_FUNCTIONS.iter().map(|(f, _)| *f).collect();
            CliError::Input(format!("unknown function {function:?}; known: {}", names.join(", ")))
        })?;
    if args.len() != arity {
        return Err(CliError::Input(format!("{function} takes {arity} argument(s), got {}", args.len())));
    }
    let a = args;
    Ok(match function {
        "f0" => power_report(function, a, bounds::f0(a[0])?, prec),
        "f-prime" => power_report(function, a, bounds::f_prime(a[0])?, prec),
        "f-double-prime" => power_report(function, a, bounds::f_double_prime(a[0])?, prec),
        "f-pij" => scaled_report(function, a, bounds::f_p_ij(a[0], a[1], a[2], a[3])?, prec),
        "F" => sum_report(function, a, bounds::f_total(a[0])?, prec),
        "B3" => interval_report(function, a, &bounds::b3_log2(a[0], prec), prec),
        "g-prime" => power_report(function, a, bounds::g_prime(a[0])?, prec),
        "g-double-prime" => power_report(function, a, bounds::g_double_prime(a[0])?, prec),
        "g-ip" => scaled_report(function, a, bounds::g_i_p(a[0], a[1], a[2])?, prec),
        "G" => sum_report(function, a, bounds::g_total(a[0])?, prec),
        "cutoff-wreath" | "cutoff-pairs" => {
            let c = if function == "cutoff-wreath" {
                bounds::cutoff_wreath(a[0])?
            } else {
                bounds::cutoff_pairs(a[0])?
            };
            EvalReport {
                exact: Some(c.to_string()),
                ..interval_report(function, a, &Interval::from_integer(c.max(0) as u64, prec), prec)
            }
        }
        _ => unreachable!("arity table covers every function"),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub parameter: u64,
    pub verdict: &'static str,
    pub margin_lower: f64,
    pub margin_upper: f64,
    pub precision_bits: u32,
    pub branch: Option<&'static str>,
}

impl CheckReport {
    pub fn status(&self) -> ExitStatus {
        match self.verdict {
            "holds" => ExitStatus::Success,
            "fails" => ExitStatus::ClaimsMismatch,
            _ => ExitStatus::Undecided,
        }
    }
}

fn check_report(v: &bounds::InequalityVerdict) -> CheckReport {
    CheckReport {
        name: v.name.clone(),
        parameter: v.parameter,
        verdict: match v.holds {
            Some(true) => "holds",
            Some(false) => "fails",
            None => "undecided",
        },
        margin_lower: v.margin.lower_f64(),
        margin_upper: v.margin.upper_f64(),
        precision_bits: v.precision_bits,
        branch: v.branch.map(bounds::Branch::as_str),
    }
}

pub fn bounds_check(registry: &RegistryFile, name: &str, param: u64) -> Result<CheckReport> {
    let c = registry.constants()?;
    Ok(check_report(&bounds::check_inequality(name, param, &c)?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanOutput {
    pub name: String,
    pub lo: u64,
    pub hi: u64,
    pub checked: usize,
    pub all_hold: bool,
    pub failures: Vec<u64>,
    pub undecided: Vec<u64>,
    pub min_margin: Option<f64>,
    pub max_precision_bits: u32,
    pub verdicts: Vec<CheckReport>,
}

impl ScanOutput {
    pub fn status(&self) -> ExitStatus {
        if !self.undecided.is_empty() {
            ExitStatus::Undecided
        } else if !self.failures.is_empty() {
            ExitStatus::ClaimsMismatch
        } else {
            ExitStatus::Success
        }
    }
}

/// Pointwise scan; parameters are checked in parallel and reported in order.
pub fn bounds_scan(registry: &RegistryFile, name: &str, lo: Option<u64>, hi: Option<u64>) -> Result<ScanOutput> {
    let default = registry.scan(name);
    let lo = lo.or(default.map(|d| d.lo));
    let hi = hi.or(default.map(|d| d.hi));
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(CliError::Input(format!("{name}: no default range; give --lo and --hi")));
    };
    let c = registry.constants()?;
    let params = bounds::scan_parameters(name, lo, hi)?;
    let verdicts = params
        .par_iter()
        .map(|&p| bounds::check_inequality(name, p, &c))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let report = bounds::ScanReport {
        name: name.to_string(),
        verdicts,
    };
    Ok(ScanOutput {
        name: name.to_string(),
        lo,
        hi,
        checked: report.verdicts.len(),
        all_hold: report.all_hold(),
        failures: report.failures(),
        undecided: report.undecided(),
        min_margin: report.min_margin(),
        max_precision_bits: report.verdicts.iter().map(|v| v.precision_bits).max().unwrap_or(0),
        verdicts: report.verdicts.iter().map(check_report).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeForm {
    pub prime: u64,
    /// `[q, l]` pairs.
    pub representations: Vec<[u64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimesOutput {
    pub from: u64,
    pub below: u64,
    pub primes: Vec<u64>,
    pub forms: Vec<PrimeForm>,
}

pub fn bounds_primes(from: u64, below: u64) -> PrimesOutput {
    let primes = bounds::prime_form_primes(from, below);
    let forms = primes
        .iter()
        .map(|&p| PrimeForm {
            prime: p,
            representations: bounds::prime_form_solutions(p)
                .into_iter()
                .map(|(q, l)| [q, l as u64])
                .collect(),
        })
        .collect();
    PrimesOutput {
        from,
        below,
        primes,
        forms,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StirlingOutput {
    pub constant: String,
    pub m_low: u64,
    pub m_high: u64,
    pub holds: bool,
    pub first_failure: Option<u64>,
    pub checked: u64,
}

pub fn bounds_stirling(constant: &str, m_low: u64, m_high: u64) -> Result<StirlingOutput> {
    let c = parse_decimal(constant)?;
    if c <= num_rational::BigRational::from_integer(0.into()) || m_low == 0 || m_low > m_high {
        return Err(CliError::Input("need a positive constant and 1 <= m_low <= m_high".into()));
    }
    let r = bounds::stirling_check(&c, m_low, m_high);
    Ok(StirlingOutput {
        constant: c.to_string(),
        m_low,
        m_high,
        holds: r.holds,
        first_failure: r.first_failure,
        checked: r.checked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOutput {
    pub entries: usize,
    /// `[degree, entries]`.
    pub by_degree: Vec<[usize; 2]>,
    pub table1_members: usize,
    pub verified: bool,
}

pub fn catalog_verify(catalog: &Catalog) -> VerifyOutput {
    let mut by_degree: std::collections::BTreeMap<usize, usize> = Default::default();
    for e in catalog.entries() {
        *by_degree.entry(e.degree).or_default() += 1;
    }
    VerifyOutput {
        entries: catalog.len(),
        by_degree: by_degree.into_iter().map(|(d, c)| [d, c]).collect(),
        table1_members: catalog.entries().iter().filter(|e| e.table1_member).count(),
        verified: true,
    }
}

/// Appends one recipe-built entry to a catalog file and re-verifies the
/// whole file.
pub fn catalog_extend(base: &CatalogFile, entry: hyperaut_core::catalog::CatalogEntry) -> Result<CatalogFile> {
    let mut entries = base.to_entries()?;
    entries.push(entry);
    Catalog::new(entries.clone())?;
    let mut out = CatalogFile::from_entries(&entries);
    out.notes = base.notes.clone();
    Ok(out)
}
