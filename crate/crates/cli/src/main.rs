use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use regulus::dissection::{verify_dissection, DissectionIdentityId};
use regulus::family::{GridBudget, Registry, DEFAULT_ORDER};
use regulus::oracle::{enumerate_multipartitions, multipartition_counts, RegularityProfile};
use regulus::report::{Status, SuiteReport};
use regulus::suite::{
    profile_coefficients, run_suite, verify_single_family, Selection, SuiteConfig,
};
use regulus::{BigInt, Error, Zmod};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VACUOUS: u8 = 3;
/// Explicit enumeration gets slow quickly; `oracle --enumerate` stops here.
const ENUMERATE_MAX_N: usize = 30;

#[derive(Parser)]
#[command(
    name = "regulus",
    version,
    about = "Exact checks of congruences for regular multipartitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of prod E_{l_i} / E_1^r from the series engine.
    Coeff(CoeffArgs),
    /// Multipartition counts from the dynamic-programming oracle.
    Oracle(OracleArgs),
    /// Check one of the dissection identities.
    Identity(IdentityArgs),
    /// Verify one congruence family, or every family of a registry file.
    Verify(VerifyArgs),
    /// Run the acceptance suite.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct ProfileArgs {
    /// Regularity shared by all r components.
    #[arg(long, requires = "r", conflicts_with = "profile")]
    ell: Option<u32>,
    /// Number of components when --ell is given.
    #[arg(long)]
    r: Option<u32>,
    /// Comma-separated regularities, e.g. 3,3,5.
    #[arg(long, value_delimiter = ',')]
    profile: Option<Vec<u32>>,
    /// A single index.
    #[arg(long, conflicts_with = "n_max")]
    n: Option<usize>,
    /// Print every index from 0 to this bound.
    #[arg(long)]
    n_max: Option<usize>,
}

impl ProfileArgs {
    fn profile(&self) -> Result<RegularityProfile, Error> {
        match (&self.profile, self.ell, self.r) {
            (Some(ells), _, _) => RegularityProfile::new(ells.clone()),
            (None, Some(ell), Some(r)) => RegularityProfile::uniform(ell, r),
            _ => Err(Error::Config("give --ell and --r, or --profile".into())),
        }
    }

    fn range(&self) -> Result<(usize, usize), Error> {
        match (self.n, self.n_max) {
            (Some(n), None) => Ok((n, n)),
            (None, Some(m)) => Ok((0, m)),
            _ => Err(Error::Config("give --n or --n-max".into())),
        }
    }
}

#[derive(Args)]
struct CoeffArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Reduce modulo this number.
    #[arg(long = "mod")]
    modulus: Option<u64>,
    /// Also print oracle counts and a match marker.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Also count by explicit enumeration (n <= 30).
    #[arg(long)]
    enumerate: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report to this file as well as stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct IdentityArgs {
    /// 2diss, 5diss, 7diss or 11diss.
    #[arg(long)]
    name: String,
    #[arg(long)]
    order: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BudgetArgs {
    /// Series order N; defaults to REGULUS_BUDGET_N or 2000.
    #[arg(long)]
    order: Option<usize>,
    /// Cap on n in each progression.
    #[arg(long)]
    n_max: Option<u64>,
    /// Exit 3 when a check is vacuous or skipped for budget.
    #[arg(long)]
    strict: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Result<GridBudget, Error> {
        let order = match self.order {
            Some(n) => n,
            None => SuiteConfig::order_from_env(DEFAULT_ORDER)?,
        };
        let budget = GridBudget {
            order,
            n_max: self.n_max,
            ..GridBudget::default()
        };
        budget.validate()?;
        Ok(budget)
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "registry")]
    family: Option<String>,
    /// Registry JSON file; without --family every family in it is verified.
    #[arg(long)]
    registry: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, conflicts_with = "only", required_unless_present = "only")]
    all: bool,
    /// Groups, check ids or id prefixes, comma separated.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<String>>,
    #[arg(long)]
    registry: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    output: OutputArgs,
}

enum Failure {
    Usage(String),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unknown(_)
            | Error::Config(_)
            | Error::InvalidProfile(_)
            | Error::InvalidModulus(_) => Failure::Usage(e.to_string()),
            other => Failure::Other(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Coeff(a) => coeff(a),
        Command::Oracle(a) => oracle(a),
        Command::Identity(a) => identity(a),
        Command::Verify(a) => verify(a),
        Command::Suite(a) => suite(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VIOLATION)
        }
    }
}

fn coeff(a: CoeffArgs) -> Result<u8, Failure> {
    let profile = a.profile.profile()?;
    let (lo, hi) = a.profile.range()?;
    let ring = a.modulus.map(Zmod::new).transpose()?;
    let series = profile_coefficients(&profile, hi)?;
    let oracle = if a.check {
        Some(multipartition_counts(&profile, hi)?.values)
    } else {
        None
    };
    let mut code = 0;
    for n in lo..=hi {
        let render = |v: &BigInt| match &ring {
            Some(z) => z.reduce_big(v).to_string(),
            None => v.to_string(),
        };
        let value = render(&series[n]);
        let line = match &oracle {
            Some(o) => {
                let ok = series[n] == o[n];
                if !ok {
                    code = EXIT_VIOLATION;
                }
                format!(
                    "{value} {} {}",
                    render(&o[n]),
                    if ok { "ok" } else { "MISMATCH" }
                )
            }
            None => value,
        };
        if lo == hi {
            println!("{line}");
        } else {
            println!("{n} {line}");
        }
    }
    Ok(code)
}

fn oracle(a: OracleArgs) -> Result<u8, Failure> {
    let profile = a.profile.profile()?;
    let (lo, hi) = a.profile.range()?;
    if a.enumerate && hi > ENUMERATE_MAX_N {
        return Err(Failure::Usage(format!(
            "--enumerate needs n <= {ENUMERATE_MAX_N}"
        )));
    }
    let table = multipartition_counts(&profile, hi)?;
    let mut code = 0;
    for n in lo..=hi {
        let mut line = table.values[n].to_string();
        if a.enumerate {
            let count = enumerate_multipartitions(&profile, n)?;
            let ok = table.values[n] == count.into();
            if !ok {
                code = EXIT_VIOLATION;
            }
            line = format!("{line} {count} {}", if ok { "ok" } else { "MISMATCH" });
        }
        if lo == hi {
            println!("{line}");
        } else {
            println!("{n} {line}");
        }
    }
    Ok(code)
}

fn emit(report: &SuiteReport, out: &OutputArgs) -> Result<(), Failure> {
    let text = match out.format {
        Format::Json => report.to_json()?,
        Format::Markdown => report.to_markdown(),
    };
    println!("{text}");
    if let Some(path) = &out.report {
        std::fs::write(path, format!("{text}\n"))?;
    }
    Ok(())
}

fn exit_code(report: &SuiteReport, strict: bool, out_of_budget: bool) -> u8 {
    if report.any_failed() {
        EXIT_VIOLATION
    } else if strict
        && (out_of_budget
            || report
                .checks
                .iter()
                .any(|c| matches!(c.status, Status::Vacuous | Status::Skipped)))
    {
        EXIT_VACUOUS
    } else {
        0
    }
}

fn identity(a: IdentityArgs) -> Result<u8, Failure> {
    let id: DissectionIdentityId = a
        .name
        .parse()
        .map_err(|_| Failure::Usage(format!("unknown identity `{}`", a.name)))?;
    let order = match a.order {
        Some(n) => n,
        None => SuiteConfig::order_from_env(DEFAULT_ORDER)?,
    };
    let report = verify_dissection(id, order)?;
    if let Some(i) = report.first_violation_index() {
        eprintln!("first mismatch at index {i}");
    }
    let suite = SuiteReport::new(vec![report]);
    emit(&suite, &a.output)?;
    Ok(exit_code(&suite, false, false))
}

fn load_registry(path: &Option<PathBuf>) -> Result<Registry, Failure> {
    match path {
        Some(p) => Registry::load(p).map_err(|e| Failure::Usage(e.to_string())),
        None => Ok(Registry::builtin()),
    }
}

fn verify(a: VerifyArgs) -> Result<u8, Failure> {
    let registry = load_registry(&a.registry)?;
    let budget = a.budget.budget()?;
    let ids: Vec<String> = match &a.family {
        Some(id) => vec![id.clone()],
        None => registry.families.iter().map(|f| f.id.clone()).collect(),
    };
    let mut reports = Vec::new();
    let mut out_of_budget = false;
    for id in &ids {
        let (report, grid) = verify_single_family(&registry, id, &budget)?;
        out_of_budget |= !grid.out_of_budget.is_empty();
        reports.push(report);
    }
    let suite = SuiteReport::new(reports);
    emit(&suite, &a.output)?;
    Ok(exit_code(&suite, a.budget.strict, out_of_budget))
}

fn suite(a: SuiteArgs) -> Result<u8, Failure> {
    let registry = load_registry(&a.registry)?;
    let selection = match a.only {
        Some(sel) => Selection::Only(sel),
        None => Selection::All,
    };
    let mut config = SuiteConfig::new(selection, a.budget.budget()?, registry)?;
    config.jobs = a.jobs;
    let report = run_suite(&config)?;
    emit(&report, &a.output)?;
    Ok(exit_code(&report, a.budget.strict, false))
}
