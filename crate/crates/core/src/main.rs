use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use meshperm::bijections::{map_for_pair, verify_bijection, MapKind};
use meshperm::catalog::{builtin_catalog, find, load_catalog, validate_symmetry_derivations, PatternPair};
use meshperm::checks::{crosscheck, verify_pairs, CheckLine, TableCache};
use meshperm::closed_forms::{
    first_descent_split, max_position_split, quadratic_recurrence_polynomial, stirling_closed_form_table,
};
use meshperm::dist::joint_distribution;
use meshperm::export::{render, Format, Source};
use meshperm::mesh::{count_occurrences, MeshPattern};
use meshperm::perm::capacity;
use meshperm::{Error, JointTable, Permutation};

#[derive(Parser)]
#[command(name = "meshperm", version, about = "Exact mesh-pattern enumeration and cross-checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest n to enumerate.
    #[arg(long = "n", global = true)]
    n: Option<usize>,
    /// Comma-separated pair ids, or `all`.
    #[arg(long, global = true, default_value = "all")]
    pairs: String,
    /// Output format: json, csv or text.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Treat failures of conjectured pairs as errors.
    #[arg(long, global = true)]
    strict: bool,
    /// Read the catalog from this file instead of the embedded copy.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Count occurrences of a pattern in a permutation.
    Count { perm: String, pattern: String },
    /// Joint table of a catalog pair.
    Table { pair: String, n: Option<usize> },
    /// Check joint symmetry and frame equality of catalog pairs.
    Verify,
    /// Compare every recurrence and closed form with enumeration.
    Crosscheck,
    /// Exhaustively check the explicit map of a pair.
    Bijection {
        pair: String,
        /// Map to use instead of the pair's own.
        #[arg(long)]
        map: Option<String>,
    },
    /// Catalog maintenance.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Export a joint table with its source.
    Export {
        pair: String,
        n: Option<usize>,
        /// brute_force or closed_form.
        #[arg(long, default_value = "brute_force")]
        source: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Load the catalog and recompute every displayed derivation chain.
    Validate,
}

const DEFAULT_N_MAX: usize = 7;

enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Context {
    global: Global,
    format: Format,
    catalog: Vec<PatternPair>,
}

impl Context {
    fn n_or(&self, positional: Option<usize>, default: usize) -> Result<usize, Failure> {
        let n = positional.or(self.global.n).unwrap_or(default);
        let limit = capacity()?;
        if n > limit {
            return Err(Failure::Usage(format!("n = {n} exceeds the configured capacity of {limit}")));
        }
        Ok(n)
    }

    fn pair(&self, id: &str) -> Result<&PatternPair, Failure> {
        Ok(find(&self.catalog, id)?)
    }

    fn selected(&self) -> Result<Vec<&PatternPair>, Failure> {
        if self.global.pairs == "all" {
            return Ok(self.catalog.iter().collect());
        }
        self.global
            .pairs
            .split(',')
            .map(|id| self.pair(id.trim()))
            .collect()
    }

    fn emit(&self, text: &str) -> Outcome {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.global.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Outcome {
        self.emit(&serde_json::to_string_pretty(value).expect("report serializes"))
    }
}

fn check_text(line: &CheckLine) -> String {
    let mark = if line.pass { "PASS" } else { "FAIL" };
    format!("{mark} {}: {}", line.name, line.detail)
}

fn cmd_count(ctx: &Context, perm: &str, pattern: &str) -> Outcome {
    let pi: Permutation = perm.parse()?;
    let q: MeshPattern = pattern.parse()?;
    ctx.emit(&count_occurrences(&pi, &q).to_string())
}

fn cmd_table(ctx: &Context, id: &str, n: Option<usize>) -> Outcome {
    let pair = ctx.pair(id)?;
    let n = ctx.n_or(n, DEFAULT_N_MAX)?;
    let table = joint_distribution(n, &pair.q1, &pair.q2)?;
    ctx.emit(&render(ctx.format, &table, &pair.q1, &pair.q2, None))
}

fn closed_form_table(pair: &PatternPair, n: usize) -> Result<JointTable, Failure> {
    let number: u32 = pair.id[1..].parse().unwrap_or(0);
    let table = match (&pair.id[..1], number) {
        ("S", 19..=20) => first_descent_split(n)?.total(),
        ("A", 17..=24) => stirling_closed_form_table(n)?,
        ("A", 25..=32) => max_position_split(n)?.total(),
        ("A", 33..=36) => {
            let poly = quadratic_recurrence_polynomial(n)?;
            let rows = poly
                .coefficients()
                .iter()
                .map(|row| row.iter().map(|&v| v as u64).collect())
                .collect();
            JointTable::from_rows(n, rows)
        }
        _ => {
            return Err(Failure::Usage(format!("pair {} has no closed form", pair.id)));
        }
    };
    Ok(table)
}

fn cmd_export(ctx: &Context, id: &str, n: Option<usize>, source: &str) -> Outcome {
    let pair = ctx.pair(id)?;
    let n = ctx.n_or(n, DEFAULT_N_MAX)?;
    let (table, source) = match source {
        "brute_force" => (joint_distribution(n, &pair.q1, &pair.q2)?, Source::BruteForce),
        "closed_form" => (closed_form_table(pair, n)?, Source::ClosedForm),
        other => return Err(Failure::Usage(format!("unknown source `{other}`"))),
    };
    let format = if ctx.global.format == "text" {
        Format::Json
    } else {
        ctx.format
    };
    ctx.emit(&render(format, &table, &pair.q1, &pair.q2, Some(source)))
}

fn cmd_verify(ctx: &Context) -> Outcome {
    let n_max = ctx.n_or(None, DEFAULT_N_MAX)?;
    let selected = ctx.selected()?;
    let report = verify_pairs(&ctx.catalog, &selected, n_max, ctx.global.strict, &mut TableCache::new())?;
    match ctx.format {
        Format::Json => ctx.emit_json(&report)?,
        _ => {
            let mut out = String::new();
            for pair in &report.pairs {
                let mark = if pair.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("{} [{}] {mark}\n", pair.pair, pair.frame));
                for line in &pair.checks {
                    out.push_str(&format!("  {}\n", check_text(line)));
                }
                if let Some(note) = &pair.conjecture {
                    out.push_str(&format!("  {note}\n"));
                }
            }
            out.push_str(&format!("{} pair reports, {}\n", report.pairs.len(), if report.pass { "all asserted checks pass" } else { "FAILED" }));
            ctx.emit(&out)?;
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_crosscheck(ctx: &Context) -> Outcome {
    let n_max = ctx.n_or(None, DEFAULT_N_MAX)?;
    let report = crosscheck(&ctx.catalog, n_max, &mut TableCache::new())?;
    match ctx.format {
        Format::Json => ctx.emit_json(&report)?,
        _ => {
            let lines: Vec<String> = report.checks.iter().map(check_text).collect();
            ctx.emit(&lines.join("\n"))?;
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn parse_map(name: &str) -> Result<MapKind, Failure> {
    let kinds = [
        MapKind::Complement,
        MapKind::Reverse,
        MapKind::SwapPrefix,
        MapKind::SwapEnds,
        MapKind::SwapFirstLast,
        MapKind::SwapFirstWithT,
        MapKind::IteratedSwap,
    ];
    kinds
        .into_iter()
        .find(|k| k.name() == name)
        .ok_or_else(|| Failure::Usage(format!("unknown map `{name}`")))
}

fn cmd_bijection(ctx: &Context, id: &str, map: Option<&str>) -> Outcome {
    let pair = ctx.pair(id)?;
    let n = ctx.n_or(None, 6)?;
    let kind = match map {
        Some(name) => parse_map(name)?,
        None => map_for_pair(pair)?,
    };
    let report = verify_bijection(kind, pair, n)?;
    ctx.emit_json(&report)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_catalog_validate(ctx: &Context) -> Outcome {
    let reports = validate_symmetry_derivations(&ctx.catalog);
    let pass = reports.iter().all(|r| r.pass);
    match ctx.format {
        Format::Json => ctx.emit_json(&serde_json::json!({
            "pairs": ctx.catalog.len(),
            "pass": pass,
            "chains": reports,
        }))?,
        _ => {
            let mut out = format!("{} pairs loaded\n", ctx.catalog.len());
            for r in &reports {
                let mark = if r.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("{mark} {}", r.chain));
                for m in &r.mismatches {
                    out.push_str(&format!("\n  {m}"));
                }
                out.push('\n');
            }
            ctx.emit(&out)?;
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> Outcome {
    let format: Format = cli.global.format.parse()?;
    if let Some(workers) = cli.global.workers {
        if workers == 0 {
            return Err(Failure::Usage("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let catalog = match &cli.global.catalog {
        Some(path) => load_catalog(path)?,
        None => builtin_catalog(),
    };
    let ctx = Context {
        global: cli.global,
        format,
        catalog,
    };
    match &cli.command {
        Command::Count { perm, pattern } => cmd_count(&ctx, perm, pattern),
        Command::Table { pair, n } => cmd_table(&ctx, pair, *n),
        Command::Verify => cmd_verify(&ctx),
        Command::Crosscheck => cmd_crosscheck(&ctx),
        Command::Bijection { pair, map } => cmd_bijection(&ctx, pair, map.as_deref()),
        Command::Catalog {
            action: CatalogAction::Validate,
        } => cmd_catalog_validate(&ctx),
        Command::Export { pair, n, source } => cmd_export(&ctx, pair, *n, source),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
