//! The `diagres` command line: verify catalog examples or job files, check
//! witnesses and compute Gröbner bases.
//!
//! Exit codes are 0 when every item passes, 1 when some item fails and 2 on
//! unusable input.

pub mod job;
mod locate;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::catalog::{
    build_affine_line, build_chart, build_cycle, build_nodal_conic, build_nodal_product, CatalogEntry, CatalogError,
    ChartId,
};
use crate::complexes::{nonexact_degrees, verify_diagonal_qiso, ComplexError};
use crate::groebner::{buchberger, Submodule};
use crate::scalars::FieldSpec;
use crate::witness::{verify_witness, WitnessError};
pub use job::{Job, JobError, JobFile};
pub use report::{Item, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Job(#[from] JobError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

#[derive(Parser, Debug)]
#[command(name = "diagres", version, about = "Verify resolutions of the diagonal over quotient polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a complex resolves the diagonal, plus its witness if any.
    Verify(Target),
    /// Check only the generation witness.
    Witness(Target),
    /// Print a reduced Gröbner basis for a job's `groebner` block, or for its
    /// diagonal ideal.
    Gb {
        #[arg(long)]
        job: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Print a catalog example as a job file.
    Export {
        #[arg(long, value_enum)]
        example: Example,
        #[command(flatten)]
        cycle: CycleArgs,
        #[arg(long)]
        field: Option<String>,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long, value_enum, conflicts_with = "job", required_unless_present = "job")]
    example: Option<Example>,
    #[arg(long)]
    job: Option<PathBuf>,
    #[command(flatten)]
    cycle: CycleArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CycleArgs {
    /// Number of components of the cycle `I_n`.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// A single chart `I,J` of `I_n × I_n`.
    #[arg(long)]
    chart: Option<String>,
}

#[derive(Args, Debug)]
struct Output {
    /// `q` for the rationals or `fp:P` for a prime field.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    report: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Example {
    AffineLine,
    NodalConic,
    Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let (mut report, format) = match command {
        Command::Verify(t) => (target_report(&t, false)?, t.output.report),
        Command::Witness(t) => (target_report(&t, true)?, t.output.report),
        Command::Gb { job, output } => (gb_report(&job, &output)?, output.report),
        Command::Export { example, cycle, field } => {
            let field = parse_field(field.as_deref())?.unwrap_or_default();
            let text = export(example, &cycle, field)?;
            let _ = writeln!(out, "{text}");
            return Ok(0);
        }
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    let _ = out.write_all(text.as_bytes());
    Ok(if report.passed { 0 } else { 1 })
}

fn parse_field(text: Option<&str>) -> Result<Option<FieldSpec>, CliError> {
    text.map(|t| FieldSpec::parse(t).map_err(|e| CliError::Usage(format!("--field {t}: {e}"))))
        .transpose()
}

fn parse_chart(args: &CycleArgs) -> Result<Option<ChartId>, CliError> {
    let Some(text) = &args.chart else { return Ok(None) };
    let id: ChartId = text
        .parse()
        .map_err(|e| CliError::Usage(format!("--chart {text}: {e}")))?;
    Ok(Some(ChartId::new(id.i, id.j, args.n)?))
}

fn load(path: &PathBuf, field: Option<FieldSpec>) -> Result<(JobFile, Job), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let file = JobFile::from_json(&text)?;
    let job = file.build(field, Some(&text))?;
    Ok((file, job))
}

fn target_report(t: &Target, witness_only: bool) -> Result<Report, CliError> {
    let override_field = parse_field(t.output.field.as_deref())?;
    let command = if witness_only { "witness" } else { "verify" };
    if let Some(path) = &t.job {
        let (_, job) = load(path, override_field)?;
        let item = job_item(&job, witness_only)?;
        let conclusion = item.witness.as_ref().and_then(|w| w.conclusion.clone());
        return Ok(Report::new(command, &job.name, job.ring.field().descriptor(), vec![item], conclusion));
    }
    let field = override_field.unwrap_or_default();
    let example = t.example.expect("clap requires an example or a job");
    match example {
        Example::AffineLine => {
            let e = build_affine_line(field)?;
            let item = entry_item(&e, witness_only)?;
            let conclusion = item.witness.as_ref().and_then(|w| w.conclusion.clone());
            Ok(Report::new(command, "affine-line", field.descriptor(), vec![item], conclusion))
        }
        Example::NodalConic => {
            let lemma = build_nodal_conic(field)?;
            let mut items = Vec::new();
            if !witness_only {
                items.push(entry_item(&build_nodal_product(field)?, false)?);
            }
            let item = entry_item(&lemma, witness_only)?;
            let conclusion = item.witness.as_ref().and_then(|w| w.conclusion.clone());
            items.push(item);
            Ok(Report::new(command, "nodal-conic", field.descriptor(), items, conclusion))
        }
        Example::Cycle => {
            if let Some(id) = parse_chart(&t.cycle)? {
                let job = build_chart(t.cycle.n, id, field)?;
                let item = Item::from_chart(job.verify()?, &job.notes);
                let subject = format!("cycle I_{} chart {id}", t.cycle.n);
                let conclusion = item.witness.as_ref().and_then(|w| w.conclusion.clone());
                return Ok(Report::new(command, &subject, field.descriptor(), vec![item], conclusion));
            }
            let catalog = build_cycle(t.cycle.n, field)?;
            let notes: Vec<Vec<String>> = catalog.jobs.iter().map(|j| j.notes.clone()).collect();
            let mut report = Report::from_cycle(catalog.verify()?, field.descriptor(), &notes);
            report.command = command.to_string();
            Ok(report)
        }
    }
}

fn entry_item(e: &CatalogEntry, witness_only: bool) -> Result<Item, CliError> {
    let mut item = Item::new(&e.name, e.complex.ranks().to_vec()).with_notes(&e.notes);
    if !witness_only {
        item = item.with_qiso(e.verify()?);
    }
    match e.verify_witness() {
        Some(w) => item = item.with_witness(w?),
        None if witness_only => return Err(CliError::Usage(format!("{} has no witness", e.name))),
        None => {}
    }
    Ok(item)
}

fn job_item(job: &Job, witness_only: bool) -> Result<Item, CliError> {
    let mut item = Item::new(&job.name, job.complex.ranks().to_vec()).with_notes(&job.notes);
    if let Some((lo, hi)) = job.complex.window().filter(|_| !item.notes.iter().any(|n| n.contains("claimed on window"))) {
        item.notes.push(format!("verdict claimed on window [{lo}, {hi}]"));
    }
    match (&job.diagonal, job.expectation) {
        (Some(d), job::ExpectationBlock::Qiso) => {
            if !witness_only {
                item = item.with_qiso(verify_diagonal_qiso(&job.complex, d)?);
            }
            match &job.witness {
                Some(w) => item = item.with_witness(verify_witness(w, &job.complex, d)?),
                None if witness_only => return Err(CliError::Usage(format!("{} has no witness", job.name))),
                None => {}
            }
        }
        _ if witness_only => {
            return Err(CliError::Usage(format!("{} expects exactness; witnesses need a diagonal", job.name)))
        }
        _ => item = item.with_nonexact(nonexact_degrees(&job.complex)?),
    }
    Ok(item)
}

fn gb_report(path: &PathBuf, output: &Output) -> Result<Report, CliError> {
    let (_, job) = load(path, parse_field(output.field.as_deref())?)?;
    let module: Submodule = match (&job.groebner, &job.diagonal) {
        (Some(s), _) => s.clone(),
        (None, Some(d)) => d.ideal().clone(),
        (None, None) => return Err(CliError::Usage(format!("{} has neither a groebner nor a diagonal block", job.name))),
    };
    let gb = buchberger(&module);
    let mut item = Item::new(&job.name, vec![module.rank()]);
    item.groebner = Some(gb.to_strings());
    if gb.is_unit_ideal() {
        item.notes.push("the submodule is the whole free module".into());
    }
    Ok(Report::new("gb", &job.name, job.ring.field().descriptor(), vec![item], None))
}

fn export(example: Example, cycle: &CycleArgs, field: FieldSpec) -> Result<String, CliError> {
    let file = match example {
        Example::AffineLine => JobFile::from_entry(&build_affine_line(field)?),
        Example::NodalConic => JobFile::from_entry(&build_nodal_conic(field)?),
        Example::Cycle => {
            let id = parse_chart(cycle)?.ok_or_else(|| CliError::Usage("exporting the cycle needs --chart".into()))?;
            JobFile::from_chart(cycle.n, &build_chart(cycle.n, id, field)?)
        }
    };
    Ok(file.to_json())
}

#[cfg(test)]
mod tests;
