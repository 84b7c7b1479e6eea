//! The `obstructor` command line.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::catalog::{default_catalog, Catalog, CatalogError, Family, GroupSpec, SpecError, Verdict};
use crate::engine::{Classification, ObstructionReport, REPORT_SCHEMA_VERSION};
use crate::hopf::HopfDiagnostics;

#[derive(Debug, Parser)]
#[command(
    name = "obstructor",
    version,
    about = "Levels at which moduli spaces of flat G-bundles admit a pre-quantization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Truncate every presentation above this degree (at least 3).
    #[arg(long, global = true, value_name = "N")]
    pub max_degree: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute l0 for one group.
    Derive {
        /// Group such as PSU(6), SU(12)/Z4, PSO(10) or PE7.
        spec: String,
        /// Print the stepwise computation of the commutator pullback.
        #[arg(long)]
        trace: bool,
    },
    /// Recompute l0 across a family and compare with the closed forms.
    Table {
        /// One of SU, PSp, SO, PSO, Ss or exceptional.
        #[arg(long, value_name = "F")]
        family: String,
        /// Largest group parameter as written (n in SU(n), 2n in PSO(2n)).
        #[arg(long, value_name = "N")]
        max: Option<u64>,
    },
    /// Is the moduli space pre-quantizable at the given level?
    Check {
        /// Group such as PSU(6), SU(12)/Z4, PSO(10) or PE7.
        spec: String,
        /// Level k, a positive integer.
        #[arg(long, value_name = "L")]
        level: u64,
        /// Genus of the surface; the verdict does not depend on it.
        #[arg(long, value_name = "G", default_value_t = 1)]
        genus: u64,
    },
    /// Check the Hopf axioms of every presentation in the catalog.
    VerifyCatalog,
}

#[derive(Debug)]
enum Failure {
    Spec { input: String, error: SpecError },
    Catalog(CatalogError),
    Usage(String),
    Io(std::io::Error),
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Spec(error) => Failure::Spec { input: String::new(), error },
            e => Failure::Catalog(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

#[derive(Serialize)]
struct TableRow {
    group: String,
    engine_l0: Option<u64>,
    closed_form_l0: u64,
    #[serde(rename = "match")]
    matches: bool,
    provenance: Option<String>,
    error: Option<String>,
}

#[derive(Serialize)]
struct TableOutput {
    schema_version: u32,
    family: String,
    max: u64,
    rows: Vec<TableRow>,
    mismatches: usize,
}

#[derive(Serialize)]
struct VerifyOutput {
    schema_version: u32,
    max_degree: u32,
    ok: bool,
    presentations: Vec<HopfDiagnostics>,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = report_failure(&f, err);
            match f {
                Failure::Usage(_) | Failure::Spec { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn report_failure(f: &Failure, err: &mut dyn Write) -> std::io::Result<()> {
    match f {
        Failure::Spec { input, error } => {
            writeln!(err, "error: {error}")?;
            if !input.is_empty() {
                writeln!(err, "  {input}")?;
                let pad = input.get(..error.position).map_or(error.position, |s| s.chars().count());
                writeln!(err, "  {}^", " ".repeat(pad))?;
            }
            Ok(())
        }
        Failure::Catalog(e) => writeln!(err, "error: {e}"),
        Failure::Usage(m) => writeln!(err, "error: {m}"),
        Failure::Io(e) => writeln!(err, "error: {e}"),
    }
}

enum Source {
    Shared(&'static Catalog),
    Owned(Box<Catalog>),
}

impl std::ops::Deref for Source {
    type Target = Catalog;
    fn deref(&self) -> &Catalog {
        match self {
            Source::Shared(c) => c,
            Source::Owned(c) => c,
        }
    }
}

fn catalog(common: &Common) -> Result<Source, Failure> {
    match common.max_degree {
        None => Ok(Source::Shared(default_catalog()?)),
        Some(d) if d < 3 => Err(Failure::Usage(format!("--max-degree must be at least 3, got {d}"))),
        Some(d) => Ok(Source::Owned(Box::new(Catalog::from_env(Some(d))?))),
    }
}

fn parse_spec(s: &str) -> Result<GroupSpec, Failure> {
    GroupSpec::parse(s).map_err(|error| Failure::Spec { input: s.to_string(), error })
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let json = cli.common.json;
    match &cli.command {
        Command::Derive { spec, trace } => {
            let spec = parse_spec(spec)?;
            let report = catalog(&cli.common)?.derive(&spec)?;
            if json {
                print_json(out, &report)?;
            } else {
                render_report(out, &report, *trace)?;
            }
            Ok(0)
        }
        Command::Table { family, max } => {
            let fam: Family = family.parse().map_err(|_| CatalogError::UnsupportedFamily(family.clone()))?;
            let max = max.unwrap_or(fam.default_max());
            let cat = catalog(&cli.common)?;
            let rows = table_rows(&cat, &fam.sweep(max));
            let mismatches = rows.iter().filter(|r| !r.matches).count();
            if json {
                let table = TableOutput {
                    schema_version: REPORT_SCHEMA_VERSION,
                    family: fam.to_string(),
                    max,
                    rows,
                    mismatches,
                };
                print_json(out, &table)?;
            } else {
                render_table(out, &rows, mismatches)?;
            }
            Ok(if mismatches == 0 { 0 } else { 1 })
        }
        Command::Check { spec, level, genus } => {
            let spec = parse_spec(spec)?;
            if *level == 0 {
                return Err(Failure::Usage("--level must be at least 1".into()));
            }
            if *genus == 0 {
                return Err(Failure::Usage("--genus must be at least 1".into()));
            }
            let verdict = catalog(&cli.common)?.prequantizable(&spec, *level, *genus)?;
            if json {
                print_json(out, &verdict)?;
            } else {
                render_verdict(out, &verdict)?;
            }
            Ok(0)
        }
        Command::VerifyCatalog => {
            let cat = catalog(&cli.common)?;
            let diagnostics = cat.verify(&crate::catalog::sweep_specs())?;
            let ok = diagnostics.iter().all(HopfDiagnostics::is_ok);
            if json {
                let v = VerifyOutput {
                    schema_version: REPORT_SCHEMA_VERSION,
                    max_degree: cat.max_degree(),
                    ok,
                    presentations: diagnostics,
                };
                print_json(out, &v)?;
            } else {
                for d in &diagnostics {
                    writeln!(out, "{} {}", if d.is_ok() { "ok  " } else { "FAIL" }, d.summary())?;
                }
                let bad = diagnostics.iter().filter(|d| !d.is_ok()).count();
                writeln!(out, "{} presentations checked, {bad} failing", diagnostics.len())?;
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn table_rows(cat: &Catalog, specs: &[GroupSpec]) -> Vec<TableRow> {
    specs
        .iter()
        .map(|spec| {
            let closed = crate::catalog::closed_form_l0(spec);
            let group = spec.to_string();
            match cat.derive(spec) {
                Ok(r) => TableRow {
                    group,
                    engine_l0: Some(r.l0),
                    closed_form_l0: closed,
                    matches: r.l0 == closed,
                    provenance: Some(r.provenance.to_string()),
                    error: None,
                },
                Err(CatalogError::ClosedFormMismatch { engine, .. }) => TableRow {
                    group,
                    engine_l0: Some(engine),
                    closed_form_l0: closed,
                    matches: false,
                    provenance: None,
                    error: None,
                },
                Err(e) => TableRow {
                    group,
                    engine_l0: None,
                    closed_form_l0: closed,
                    matches: false,
                    provenance: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

fn render_table(out: &mut dyn Write, rows: &[TableRow], mismatches: usize) -> std::io::Result<()> {
    writeln!(out, "{:<14} {:>9} {:>11}  {:<8} provenance", "group", "engine l₀", "closed form", "match")?;
    for r in rows {
        let engine = r.engine_l0.map_or_else(|| "-".to_string(), |v| v.to_string());
        let flag = if r.matches { "ok" } else { "MISMATCH" };
        let tail = r.error.as_deref().or(r.provenance.as_deref()).unwrap_or("");
        writeln!(out, "{:<14} {:>9} {:>11}  {:<8} {}", r.group, engine, r.closed_form_l0, flag, tail)?;
    }
    writeln!(out, "{} rows, {mismatches} mismatches", rows.len())
}

fn classification_text(c: &Classification) -> String {
    match c {
        Classification::Zero => "0".into(),
        Classification::BocksteinImage { witness, coefficient, order } => {
            let k = match coefficient {
                1 => String::new(),
                -1 => "−".into(),
                c => format!("{c}·"),
            };
            format!("{k}β^({order})({witness})")
        }
        Classification::LemmaBacked { .. } => "lemma-backed".into(),
        Classification::PulledBack { from } => format!("pulled back from {from}"),
    }
}

fn render_report(out: &mut dyn Write, report: &ObstructionReport, trace: bool) -> std::io::Result<()> {
    writeln!(out, "group       {}", report.group)?;
    writeln!(out, "π₁          {}", report.fundamental_group)?;
    writeln!(out, "l₀          {}", report.l0)?;
    writeln!(out, "closed form {}", report.closed_form_l0)?;
    writeln!(out, "provenance  {}", report.provenance)?;
    if !report.primes.is_empty() {
        writeln!(out)?;
        writeln!(out, "{:<4} {:>2} {:>2}  {:<24} {:<22} {:>5}  strategy", "p", "r", "s", "φ*(x₃)", "class", "order")?;
        for p in &report.primes {
            let class = p.obstruction.clone().unwrap_or_else(|| "-".into());
            writeln!(
                out,
                "{:<4} {:>2} {:>2}  {:<24} {:<22} {:>5}  {}{}",
                p.prime,
                p.r,
                p.s,
                class,
                classification_text(&p.classification),
                p.local_order,
                p.strategy,
                if p.extrapolated { " (extrapolated)" } else { "" }
            )?;
        }
        writeln!(out)?;
        writeln!(out, "citations")?;
        for p in &report.primes {
            writeln!(out, "  p = {}: {}", p.prime, p.citation)?;
        }
    }
    if trace {
        writeln!(out)?;
        writeln!(out, "trace")?;
        for step in &report.trace {
            if step.citation.is_empty() {
                writeln!(out, "  {step}")?;
            } else {
                writeln!(out, "  {step}    [{}]", step.citation)?;
            }
        }
    }
    Ok(())
}

fn render_verdict(out: &mut dyn Write, v: &Verdict) -> std::io::Result<()> {
    if v.prequantizable {
        writeln!(out, "{} at level {}: prequantizable ({} | {})", v.group, v.level, v.l0, v.level)?;
    } else {
        writeln!(
            out,
            "{} at level {}: not prequantizable (l₀ = {}, smallest admissible level {})",
            v.group, v.level, v.l0, v.smallest_admissible_level
        )?;
    }
    writeln!(out, "genus {}: the answer is independent of the genus", v.genus)
}
