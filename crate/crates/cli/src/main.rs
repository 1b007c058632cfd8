//! `smallcover` — exact counts and classifications of (Z2)^3-colorings of
//! m-sided prisms, with three mutually cross-checking computation routes.
//!
//! Exit codes: 0 success, 2 argument errors, 3 budget refusals,
//! 4 internal-consistency failures (including `verify` disagreements).

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use report::{render_table, Check, CountReport, Details, Format, VerifyReport};
use smallcover_core::budget::Budget;
use smallcover_core::burnside::{orbit_count_bruteforce, orbit_partition};
use smallcover_core::coloring::{
    count_colorings, count_fixed_colorings, count_normalized, count_same_top_bottom,
    ADMISSIBLE_BOTTOM_COLORS,
};
use smallcover_core::formulas::{
    class_count_formula, fixed_count_formula, lambda_count_formula, normalized_count_formula,
    nu_formula,
};
use smallcover_core::gf2::Gf2Vector;
use smallcover_core::prism::PrismComplex;
use smallcover_core::symmetry::full_group;
use smallcover_core::Error as CoreError;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "smallcover",
    version,
    about = "Counts and classifies (Z2)^3-colorings of m-sided prisms",
    long_about = "Counts and classifies (Z2)^3-colorings of m-sided prisms — equivalently, \
small covers over prisms up to equivariant diffeomorphism — by closed formulas, exhaustive \
enumeration, and Burnside orbit counting. `verify` runs all routes and fails on any mismatch."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Also write the report to this file (whole-file atomic write).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest m accepted by brute-force computations.
    #[arg(long, global = true, env = "SMALLCOVER_BUDGET", default_value_t = 12)]
    budget: u32,

    /// Override every brute-force budget.
    #[arg(long, global = true)]
    force: bool,

    /// Omit volatile report fields (elapsed_ms, tool_version).
    #[arg(long, global = true)]
    stable: bool,

    /// Worker threads for the parallel kernels; 0 uses the rayon default.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Total number of colorings of the m-sided prism.
    CountColorings {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Number of coloring classes under the face-poset automorphism group.
    Classes {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Number of colorings whose top and bottom facets share a color.
    Nu {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Fixed-coloring count for every automorphism group element.
    FixedCounts {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Lexicographically minimal representative of every coloring orbit.
    Orbits {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// One row per m in a range.
    Table {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, value_enum, default_value_t = Quantity::Classes)]
        quantity: Quantity,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Cross-validate all computation routes; nonzero exit on disagreement.
    Verify {
        #[arg(long)]
        m: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Enumerate,
    Burnside,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Enumerate => "enumerate",
            Method::Burnside => "burnside",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    Classes,
    Colorings,
    Nu,
}

impl Quantity {
    fn name(self) -> &'static str {
        match self {
            Quantity::Classes => "classes",
            Quantity::Colorings => "colorings",
            Quantity::Nu => "nu",
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(CoreError),
    Usage(String),
    Io(std::io::Error),
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        CliError::Core(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(err) => write!(f, "{err}"),
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Io(err) => write!(f, "{err}"),
        }
    }
}

fn exit_code_for(err: &CliError) -> ExitCode {
    match err {
        CliError::Core(CoreError::ResourceLimit { .. }) => ExitCode::from(3),
        CliError::Core(CoreError::InternalConsistency(_)) => ExitCode::from(4),
        CliError::Core(_) | CliError::Usage(_) => ExitCode::from(2),
        CliError::Io(_) => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("warning: could not configure {} threads: {err}", cli.threads);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn budget_of(cli: &Cli) -> Budget {
    if cli.force {
        Budget::unlimited()
    } else {
        Budget {
            max_enumeration_m: cli.budget,
            max_orbit_m: cli.budget.min(8),
            max_search_facets: 10,
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let budget = budget_of(cli);
    let started = Instant::now();
    let (output, ok) = match &cli.command {
        Command::CountColorings { m, method } => {
            let method = method.unwrap_or(Method::Formula);
            let report = scalar_report(Quantity::Colorings, *m, method, &budget, cli, started)?;
            (report.render(cli.format), true)
        }
        Command::Classes { m, method } => {
            let method = method.unwrap_or(Method::Formula);
            let report = scalar_report(Quantity::Classes, *m, method, &budget, cli, started)?;
            (report.render(cli.format), true)
        }
        Command::Nu { m, method } => {
            let method = method.unwrap_or(Method::Formula);
            let report = scalar_report(Quantity::Nu, *m, method, &budget, cli, started)?;
            (report.render(cli.format), true)
        }
        Command::FixedCounts { m, method } => {
            let method = method.unwrap_or(Method::Formula);
            let report = fixed_counts_report(*m, method, &budget, cli, started)?;
            (report.render(cli.format), true)
        }
        Command::Orbits { m, method } => {
            let method = method.unwrap_or(Method::Enumerate);
            if method != Method::Enumerate {
                return Err(CliError::Usage(format!(
                    "orbit representatives are only produced by enumeration; \
                     method {} does not apply",
                    method.name()
                )));
            }
            let report = orbits_report(*m, &budget, cli, started)?;
            (report.render(cli.format), true)
        }
        Command::Table { from, to, quantity, method } => {
            if from > to {
                return Err(CliError::Usage(format!(
                    "empty range: --from {from} is greater than --to {to}"
                )));
            }
            let method = method.unwrap_or(Method::Formula);
            let mut reports = Vec::new();
            for m in *from..=*to {
                reports.push(scalar_report(*quantity, m, method, &budget, cli, started)?);
            }
            (render_table(&reports, cli.format), true)
        }
        Command::Verify { m } => {
            let report = verify(*m, &budget, cli, started)?;
            (report.render(cli.format), report.ok)
        }
    };

    print!("{output}");
    if let Some(path) = &cli.out {
        write_atomically(path, &output)?;
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(4) })
}

fn scalar_value(
    quantity: Quantity,
    m: u32,
    method: Method,
    budget: &Budget,
) -> Result<BigUint, CliError> {
    match (quantity, method) {
        (Quantity::Colorings, Method::Formula) => Ok(lambda_count_formula(m)?),
        (Quantity::Colorings, Method::Enumerate) => Ok(count_colorings(m, budget)?),
        (Quantity::Classes, Method::Formula) => Ok(class_count_formula(m)?),
        (Quantity::Classes, Method::Burnside) => {
            Ok(orbit_count_bruteforce(m, budget)?.orbit_count)
        }
        (Quantity::Classes, Method::Enumerate) => {
            Ok(BigUint::from(orbit_partition(m, budget)?.len() as u64))
        }
        (Quantity::Nu, Method::Formula) => Ok(nu_formula(m)?),
        (Quantity::Nu, Method::Enumerate) => Ok(count_same_top_bottom(m, budget)?),
        (quantity, method) => Err(CliError::Usage(format!(
            "method {} does not apply to quantity {}",
            method.name(),
            quantity.name()
        ))),
    }
}

fn scalar_report(
    quantity: Quantity,
    m: u32,
    method: Method,
    budget: &Budget,
    cli: &Cli,
    started: Instant,
) -> Result<CountReport, CliError> {
    let value = scalar_value(quantity, m, method, budget)?;
    Ok(finish_report(
        CountReport {
            m,
            method: method.name(),
            quantity: quantity.name(),
            value: value.to_string(),
            details: None,
            elapsed_ms: None,
            tool_version: None,
        },
        cli,
        started,
    ))
}

fn fixed_counts_report(
    m: u32,
    method: Method,
    budget: &Budget,
    cli: &Cli,
    started: Instant,
) -> Result<CountReport, CliError> {
    let (counts, group_order) = match method {
        Method::Enumerate | Method::Burnside => {
            let summary = orbit_count_bruteforce(m, budget)?;
            (summary.fixed_counts, summary.group_order)
        }
        Method::Formula => {
            let group = full_group(m)?;
            let mut counts = BTreeMap::new();
            for g in &group {
                let word = g.as_word();
                let key = if m == 4 {
                    g.digest()
                } else {
                    word.map(|w| w.to_string()).unwrap_or_else(|| g.digest())
                };
                counts.insert(key, fixed_count_formula(m, word.as_ref())?);
            }
            (counts, group.len() as u64)
        }
    };

    let sum: BigUint = counts.values().sum();
    let order = BigUint::from(group_order);
    if &sum % &order != BigUint::from(0u32) {
        return Err(CliError::Core(CoreError::InternalConsistency(format!(
            "fixed-count sum for m = {m} is not divisible by the group order {group_order}"
        ))));
    }
    let orbit_count = &sum / &order;

    Ok(finish_report(
        CountReport {
            m,
            method: method.name(),
            quantity: "fixed_counts",
            value: sum.to_string(),
            details: Some(Details {
                group_order: Some(group_order),
                orbit_count: Some(orbit_count.to_string()),
                fixed_counts: Some(
                    counts.into_iter().map(|(k, v)| (k, v.to_string())).collect(),
                ),
                representatives: None,
            }),
            elapsed_ms: None,
            tool_version: None,
        },
        cli,
        started,
    ))
}

fn orbits_report(
    m: u32,
    budget: &Budget,
    cli: &Cli,
    started: Instant,
) -> Result<CountReport, CliError> {
    let partition = orbit_partition(m, budget)?;
    let representatives: Vec<Vec<u8>> = partition
        .iter()
        .map(|(coloring, _)| coloring.color_indices().to_vec())
        .collect();
    Ok(finish_report(
        CountReport {
            m,
            method: "enumerate",
            quantity: "representatives",
            value: representatives.len().to_string(),
            details: Some(Details {
                group_order: Some(full_group(m)?.len() as u64),
                orbit_count: Some(representatives.len().to_string()),
                fixed_counts: None,
                representatives: Some(representatives),
            }),
            elapsed_ms: None,
            tool_version: None,
        },
        cli,
        started,
    ))
}

fn finish_report(mut report: CountReport, cli: &Cli, started: Instant) -> CountReport {
    if !cli.stable {
        report.elapsed_ms = Some(started.elapsed().as_millis());
        report.tool_version = Some(VERSION);
    }
    report
}

fn push_check(checks: &mut Vec<Check>, name: impl Into<String>, left: BigUint, right: BigUint) {
    let ok = left == right;
    checks.push(Check {
        check: name.into(),
        left: left.to_string(),
        right: right.to_string(),
        ok,
    });
}

fn verify(m: u32, budget: &Budget, cli: &Cli, started: Instant) -> Result<VerifyReport, CliError> {
    if m < 3 {
        return Err(CliError::Usage(format!(
            "verify needs m >= 3 so that all routes apply, got m = {m}"
        )));
    }
    if m > budget.max_enumeration_m {
        return Err(CliError::Core(CoreError::ResourceLimit {
            what: "verification by full enumeration for m",
            requested: m,
            limit: budget.max_enumeration_m,
        }));
    }

    let mut checks = Vec::new();

    // Coloring counts along three routes.
    let colorings_brute = count_colorings(m, budget)?;
    push_check(
        &mut checks,
        "colorings: formula vs enumerate",
        lambda_count_formula(m)?,
        colorings_brute.clone(),
    );
    push_check(
        &mut checks,
        "colorings: enumerate vs 168 x normalized",
        colorings_brute.clone(),
        BigUint::from(168u32) * count_normalized(m, None)?,
    );
    for bits in ADMISSIBLE_BOTTOM_COLORS {
        let bottom = Gf2Vector::color(bits).expect("admissible color index");
        push_check(
            &mut checks,
            format!("normalized bottom {bottom}: enumerate vs recurrence"),
            count_normalized(m, Some(bottom))?,
            normalized_count_formula(m, Some(bottom))?,
        );
    }

    // Same-color top and bottom.
    push_check(
        &mut checks,
        "nu: formula vs enumerate",
        nu_formula(m)?,
        count_same_top_bottom(m, budget)?,
    );

    // Classes: formula vs Burnside average.
    let summary = orbit_count_bruteforce(m, budget)?;
    push_check(
        &mut checks,
        "classes: formula vs burnside",
        class_count_formula(m)?,
        summary.orbit_count.clone(),
    );

    // Per-element fixed counts vs the case formulas.
    let complex = PrismComplex::new(m)?;
    let group = full_group(m)?;
    let mut fixed_agree = 0u64;
    for g in &group {
        let brute = count_fixed_colorings(&complex, g)?;
        let predicted = fixed_count_formula(m, g.as_word().as_ref())?;
        if brute == predicted {
            fixed_agree += 1;
        } else {
            eprintln!(
                "fixed-count mismatch at m = {m}, element {}: enumerated {brute}, formula {predicted}",
                g.digest()
            );
        }
    }
    push_check(
        &mut checks,
        "fixed counts: enumerate vs case formulas (elements agreeing)",
        BigUint::from(fixed_agree),
        BigUint::from(group.len() as u64),
    );

    // Orbit materialization, when the budget allows it.
    if m <= budget.max_orbit_m {
        let partition = orbit_partition(m, budget)?;
        push_check(
            &mut checks,
            "classes: burnside vs orbit partition",
            summary.orbit_count.clone(),
            BigUint::from(partition.len() as u64),
        );
        let total: u64 = partition.iter().map(|(_, size)| size).sum();
        push_check(
            &mut checks,
            "orbit sizes sum to the coloring count",
            BigUint::from(total),
            colorings_brute,
        );
        let divides = partition
            .iter()
            .filter(|(_, size)| summary.group_order % size == 0)
            .count() as u64;
        push_check(
            &mut checks,
            "orbit sizes divide the group order (orbits passing)",
            BigUint::from(divides),
            BigUint::from(partition.len() as u64),
        );
    }

    let ok = checks.iter().all(|check| check.ok);
    let mut report = VerifyReport {
        m,
        ok,
        checks,
        elapsed_ms: None,
        tool_version: None,
    };
    if !cli.stable {
        report.elapsed_ms = Some(started.elapsed().as_millis());
        report.tool_version = Some(VERSION);
    }
    Ok(report)
}

/// Whole-file atomic write: temp file in the target directory, then rename.
fn write_atomically(path: &Path, contents: &str) -> Result<(), CliError> {
    let directory = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut temp = match directory {
        Some(dir) => tempfile::NamedTempFile::new_in(dir)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    temp.write_all(contents.as_bytes())?;
    temp.flush()?;
    temp.persist(path).map_err(|err| CliError::Io(err.error))?;
    Ok(())
}
