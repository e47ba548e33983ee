//! `redeg`: invariants, Betti tables and degree-bound classification of
//! projective subschemes given as ideal files.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use redeg::betti::{koszul_betti, KoszulOptions};
use redeg::classify::{classify, ClassifyOptions, InputFlags};
use redeg::corpus::{entries, entry, run_corpus, CorpusEntry, CorpusRun, Source};
use redeg::formulas::{identity_grid, identity_lemma, IdentityCheck};
use redeg::ideal_file::{Flag, IdealFile};
use redeg::invariants::{noether_position, DEFAULT_TRIALS};
use redeg::{with_field, Error, FieldKind, MonomialOrder, Polynomial, Ring, Scalar};
use serde_json::{json, Value};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOETHER: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_TRUNCATED: u8 = 5;

#[derive(Parser)]
#[command(name = "redeg", version, about = "Reduction numbers, degree bounds and Betti tables of projective subschemes")]
struct Cli {
    /// Seed of the first random coordinate change.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random coordinate changes to try when the input coordinates are not
    /// in Noether position.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Coefficient field, GF(p) or QQ; defaults to the field in the file.
    #[arg(long, global = true)]
    field: Option<FieldKind>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct TableArgs {
    /// Largest row of the Betti tables to compute.
    #[arg(long)]
    cap: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariant report of an ideal file as JSON.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Print the Betti table of R over S_t as JSON.
    Betti {
        file: PathBuf,
        /// Number t of leading variables to quotient by.
        #[arg(long, default_value_t = 0)]
        over: usize,
        #[command(flatten)]
        table: TableArgs,
        /// Print a truncated table and exit 0 instead of failing.
        #[arg(long)]
        allow_truncated: bool,
    },
    /// Print the classification report as JSON; the exit code encodes the
    /// case label (10 maximal, 11 ACM, 12-14 non-ACM cases, 15 other).
    Classify {
        file: PathBuf,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Check the binomial identity behind the maximal-degree tables.
    Identity {
        #[arg(long, required_unless_present = "exhaustive_to")]
        e: Option<usize>,
        #[arg(long, required_unless_present = "exhaustive_to")]
        r: Option<usize>,
        /// A single m; all 1 <= m <= e + r when absent.
        #[arg(long)]
        m: Option<usize>,
        /// Check every 1 <= e <= E, 0 <= r <= R.
        #[arg(long, num_args = 2, value_names = ["E", "R"])]
        exhaustive_to: Option<Vec<usize>>,
    },
    /// The bundled corpus of examples.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Run one entry or all of them and print a JSON summary.
    Run {
        name: Option<String>,
        /// Second field whose tables must agree with the first; `none`
        /// skips the comparison.
        #[arg(long, default_value = "GF(101)")]
        cross_field: String,
    },
    /// List the entries.
    List,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IdealFile { .. } | Error::Parse { .. } => EXIT_PARSE,
            Error::NoetherPosition { .. } => EXIT_NOETHER,
            Error::Truncated { .. } => EXIT_TRUNCATED,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn failure(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("redeg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { file, table } => {
            let input = Input::read(file, cli.field)?;
            let report = with_field!(input.field, F => input.classify::<F>(cli, table))?;
            print_json(&report.invariants);
            Ok(0)
        }
        Command::Classify { file, table } => {
            let input = Input::read(file, cli.field)?;
            let report = with_field!(input.field, F => input.classify::<F>(cli, table))?;
            print_json(&report);
            if !report.audits_passed() {
                eprintln!("redeg: warning: some audits failed, see the report");
            }
            Ok(report.label.exit_code() as u8)
        }
        Command::Betti {
            file,
            over,
            table,
            allow_truncated,
        } => {
            let input = Input::read(file, cli.field)?;
            let t = with_field!(input.field, F => input.betti::<F>(cli, *over, table))?;
            print_json(&t);
            if t.truncated && !allow_truncated {
                return Err(failure(
                    EXIT_TRUNCATED,
                    format!("table truncated at row {}; raise --cap or pass --allow-truncated", t.cap),
                ));
            }
            Ok(0)
        }
        Command::Identity { e, r, m, exhaustive_to } => identity(*e, *r, *m, exhaustive_to.as_deref()),
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                for x in entries()? {
                    out(&format!("{:24} {:10} {}", x.name, source_kind(&x), x.citation));
                }
                Ok(0)
            }
            CorpusAction::Run { name, cross_field } => corpus_run(cli, name.as_deref(), cross_field),
        },
    }
}

/// Writes a line to stdout; a closed pipe (`redeg ... | head`) is not an
/// error.
fn out(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn print_json<T: serde::Serialize>(v: &T) {
    out(&serde_json::to_string_pretty(v).expect("serializable"));
}

/// A parsed ideal file and the field to compute over.
struct Input {
    file: IdealFile,
    field: FieldKind,
}

impl Input {
    fn read(path: &Path, field: Option<FieldKind>) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| failure(EXIT_FAILURE, format!("cannot read {}: {e}", path.display())))?;
        let file = IdealFile::parse(&text).map_err(|e| failure(EXIT_PARSE, format!("{}: {e}", path.display())))?;
        let field = field.unwrap_or(file.field);
        Ok(Input { file, field })
    }

    /// Generators in a degrevlex ring; files declaring an elimination order
    /// are converted.
    fn ideal<F: Scalar>(&self) -> redeg::Result<(Arc<Ring>, Vec<Polynomial<F>>)> {
        let (ring, gens) = self.file.polys_over::<F>()?;
        if ring.order() == MonomialOrder::DegRevLex {
            return Ok((ring, gens));
        }
        let dr = ring.with_order(MonomialOrder::DegRevLex)?;
        let gens = gens.iter().map(|g| g.reorder(&dr)).collect::<redeg::Result<Vec<_>>>()?;
        Ok((dr, gens))
    }

    fn flags(&self) -> InputFlags {
        let prime = self.file.has_flag(&Flag::Prime);
        InputFlags {
            prime,
            reduced: prime || self.file.has_flag(&Flag::Reduced),
        }
    }

    fn classify<F: Scalar>(&self, cli: &Cli, table: &TableArgs) -> redeg::Result<redeg::classify::ClassificationReport> {
        let (ring, gens) = self.ideal::<F>()?;
        let opts = ClassifyOptions {
            trials: cli.trials,
            seed: cli.seed,
            koszul: koszul_options(table),
            flags: self.flags(),
        };
        classify(&ring, &gens, &opts)
    }

    fn betti<F: Scalar>(&self, cli: &Cli, t: usize, table: &TableArgs) -> redeg::Result<redeg::BettiTable> {
        let (ring, gens) = self.ideal::<F>()?;
        let np = noether_position(&ring, &gens, cli.trials, cli.seed)?;
        if t > np.e {
            return Err(Error::RingIndex { t, max: np.e });
        }
        koszul_betti(&np.gb, t, koszul_options(table))
    }
}

fn koszul_options(table: &TableArgs) -> KoszulOptions {
    KoszulOptions {
        cap: table.cap,
        ..KoszulOptions::default()
    }
}

fn print_identity(c: &IdentityCheck) {
    let status = if c.equal { "pass" } else { "FAIL" };
    out(&format!("e={} m={} r={} lhs={} rhs={} {status}", c.e, c.m, c.r, c.lhs, c.rhs));
}

fn identity(e: Option<usize>, r: Option<usize>, m: Option<usize>, grid: Option<&[usize]>) -> Outcome {
    let checks: Vec<IdentityCheck> = match (grid, e, r) {
        (Some(&[emax, rmax]), _, _) => {
            if emax == 0 {
                return Err(failure(EXIT_FAILURE, "--exhaustive-to needs E >= 1"));
            }
            let failures = identity_grid(emax, rmax);
            let total: usize = (1..=emax).map(|e| (0..=rmax).map(|r| e + r).sum::<usize>()).sum();
            for c in &failures {
                print_identity(c);
            }
            out(&format!("{} of {total} triples pass", total - failures.len()));
            return Ok(if failures.is_empty() { 0 } else { EXIT_FAILURE });
        }
        (_, Some(e), Some(r)) => {
            let ms: Vec<usize> = match m {
                Some(m) => vec![m],
                None => (1..=e + r).collect(),
            };
            ms.into_iter()
                .map(|m| identity_lemma(e, m, r))
                .collect::<redeg::Result<_>>()?
        }
        _ => return Err(failure(EXIT_FAILURE, "give --e and --r, or --exhaustive-to E R")),
    };
    checks.iter().for_each(print_identity);
    Ok(if checks.iter().all(|c| c.equal) { 0 } else { EXIT_FAILURE })
}

fn source_kind(e: &CorpusEntry) -> &'static str {
    match e.source {
        Source::IdealFile { .. } => "ideal",
        Source::Curve { .. } => "curve",
        Source::Points { .. } => "points",
        Source::RandomCi { .. } => "random-ci",
        Source::Formula { .. } => "formula",
    }
}

fn corpus_run(cli: &Cli, name: Option<&str>, cross_field: &str) -> Outcome {
    let selected = match name {
        Some(n) => vec![entry(n)?],
        None => entries()?,
    };
    let mut fields = vec![cli.field.unwrap_or(FieldKind::Prime(32003))];
    if cross_field != "none" {
        let f: FieldKind = cross_field
            .parse()
            .map_err(|e: String| failure(EXIT_FAILURE, format!("--cross-field: {e}")))?;
        if !fields.contains(&f) {
            fields.push(f);
        }
    }
    let opts = ClassifyOptions {
        trials: cli.trials,
        seed: cli.seed,
        ..ClassifyOptions::default()
    };
    let run = run_corpus(&selected, &fields, &opts)?;
    print_json(&summary(&run, &fields));
    for r in run.failed() {
        eprintln!("{} over {}:", r.name, r.field);
        for c in r.checks.iter().filter(|c| !c.passed) {
            eprintln!("  {}: expected {} got {}", c.key, c.expected, c.actual);
        }
        for f in &r.failures {
            eprintln!("  {f}");
        }
    }
    for n in &run.field_dependent {
        eprintln!("{n}: Betti tables differ between fields");
    }
    Ok(if run.passed { 0 } else { EXIT_MISMATCH })
}

fn summary(run: &CorpusRun, fields: &[FieldKind]) -> Value {
    let results: Vec<Value> = run
        .results
        .iter()
        .map(|r| {
            let mismatches: Vec<Value> = r
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| json!({"key": c.key, "expected": c.expected, "actual": c.actual}))
                .collect();
            json!({
                "name": r.name,
                "field": r.field,
                "passed": r.passed,
                "checks": r.checks.len(),
                "label": r.report.as_ref().map(|x| x.label),
                "mismatches": mismatches,
                "failures": r.failures,
            })
        })
        .collect();
    json!({
        "fields": fields,
        "passed": run.passed,
        "field_dependent": run.field_dependent,
        "results": results,
    })
}
