//! Command-line front end: build a construction, optionally write the
//! corpus, verify it exactly, and report. Exit status 0 means the verdict
//! was pass (or verification was skipped), 1 means verification failed,
//! 2 means the invocation or its parameters were unusable.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use latin_packing::constructions::{
    min_lines_square, mols_packed, pack_even, pack_even_subgroup, pack_odd, pack_single,
    subgroup_4n, PackingSet, Pairing, DEFAULT_MOLS_CAP, DEFAULT_PACK_EVEN_CAP,
    DEFAULT_PACK_ODD_CAP,
};
use latin_packing::corpus::{self, MatrixCorpus};
use latin_packing::verify::{
    classify_symmetry, enumerate_latin_squares, is_latin, lines_form_group, verify_mols,
    verify_packing, Violation,
};
use latin_packing::{Error, SquareMatrix};

#[derive(Parser)]
#[command(
    name = "latin-packing",
    version,
    about = "Construct and verify Latin squares whose lines realize permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the constructed corpus to PATH ('-' for standard output,
    /// moving the report to standard error).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<String>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,

    /// Override the command's enumeration cap.
    #[arg(long, global = true, value_name = "K")]
    cap: Option<usize>,

    /// How to pair double cosets (odd orders) or Boolean vectors (even).
    #[arg(long, global = true, value_enum, default_value_t = PairingArg::Canonical)]
    pairing: PairingArg,

    /// Seed for the seeded pairing.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,

    /// Verify the construction after building (default).
    #[arg(long, global = true, overrides_with = "no_verify")]
    verify: bool,

    /// Skip post-construction verification.
    #[arg(long = "no-verify", global = true, overrides_with = "verify")]
    no_verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairingArg {
    Canonical,
    Seeded,
}

#[derive(Subcommand)]
enum Command {
    /// Pack all of S_n, n odd, into (n-1)!/4 Latin squares.
    PackOdd { n: usize },
    /// Pack all of S_n, n even, into (n-1)!/4 Latin squares.
    PackEven { n: usize },
    /// The even-order packing's core: (m-1)!·2^(m-3) squares realizing a
    /// subgroup of order m!·2^m, for n = 2m.
    PackSubgroup { n: usize },
    /// One Latin square whose 4n lines are distinct and form a group.
    PackSingle { n: usize },
    /// (p-1)/4 mutually orthogonal squares for a prime p ≡ 1 mod 4.
    Mols { p: usize },
    /// A Latin square with the minimum number of distinct lines.
    MinLines { n: usize },
    /// An explicit subgroup of S_n of order 4n, n even.
    #[command(name = "subgroup-4n")]
    Subgroup4n { n: usize },
    /// Verify a matrix corpus as a packing.
    Verify { file: PathBuf },
    /// Report the mirror symmetries of each matrix in a corpus.
    Classify { file: PathBuf },
    /// Count all Latin squares of order n ≤ 5.
    Enumerate { n: usize },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::PackOdd { .. } => "pack-odd",
            Command::PackEven { .. } => "pack-even",
            Command::PackSubgroup { .. } => "pack-subgroup",
            Command::PackSingle { .. } => "pack-single",
            Command::Mols { .. } => "mols",
            Command::MinLines { .. } => "min-lines",
            Command::Subgroup4n { .. } => "subgroup-4n",
            Command::Verify { .. } => "verify",
            Command::Classify { .. } => "classify",
            Command::Enumerate { .. } => "enumerate",
        }
    }

    fn has_cap(&self) -> bool {
        matches!(
            self,
            Command::PackOdd { .. }
                | Command::PackEven { .. }
                | Command::PackSubgroup { .. }
                | Command::Mols { .. }
        )
    }

    fn has_pairing(&self) -> bool {
        matches!(
            self,
            Command::PackOdd { .. } | Command::PackEven { .. } | Command::PackSubgroup { .. }
        )
    }
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    parameters: Value,
    matrix_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    distinct_lines: Option<usize>,
    expected_lines: usize,
    verdict: &'static str,
    elapsed_ms: u128,
    violations: Vec<Violation>,
}

impl RunReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        let params = self
            .parameters
            .as_object()
            .map(|map| {
                map.iter()
                    .map(|(k, v)| format!("{k}={}", flat_value(v)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default();
        out.push_str(&format!("parameters: {params}\n"));
        out.push_str(&format!("matrix_count: {}\n", self.matrix_count));
        if let Some(d) = self.distinct_lines {
            out.push_str(&format!("distinct_lines: {d}\n"));
        }
        out.push_str(&format!("expected_lines: {}\n", self.expected_lines));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out.push_str(&format!("elapsed_ms: {}\n", self.elapsed_ms));
        out.push_str(&format!("violations: {}\n", self.violations.len()));
        for v in &self.violations {
            out.push_str(&format!(
                "  matrix {} {} {} duplicates matrix {} {} {}\n",
                v.matrix, v.kind, v.index, v.duplicate_of.matrix, v.duplicate_of.kind,
                v.duplicate_of.index
            ));
        }
        out
    }
}

fn flat_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Anything that makes the invocation unusable: a bad flag combination or a
/// construction precondition failure. Both exit with status 2.
enum CliError {
    Lib(Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Lib(e)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let start = Instant::now();
    let verify_on = !cli.no_verify || cli.verify;

    if cli.cap.is_some() && !cli.command.has_cap() {
        return Err(CliError::Usage(format!(
            "the --cap flag does not apply to {}",
            cli.command.name()
        )));
    }
    if cli.pairing == PairingArg::Seeded && !cli.command.has_pairing() {
        return Err(CliError::Usage(format!(
            "the --pairing flag does not apply to {}",
            cli.command.name()
        )));
    }
    if cli.seed.is_some() && cli.pairing != PairingArg::Seeded {
        return Err(CliError::Usage("--seed requires --pairing seeded".into()));
    }
    let pairing = match cli.pairing {
        PairingArg::Canonical => Pairing::Canonical,
        PairingArg::Seeded => Pairing::Seeded(cli.seed.unwrap_or(0)),
    };

    if let Command::Classify { file } = &cli.command {
        return run_classify(file, &cli, start);
    }

    let outcome = build(&cli.command, cli.cap, pairing, verify_on)?;

    if let Some(path) = &cli.out {
        match &outcome.payload {
            Some(payload) => write_out(path, payload)?,
            None => {
                return Err(CliError::Usage(format!(
                    "the --out flag does not apply to {}",
                    cli.command.name()
                )))
            }
        }
    }

    let verdict = match outcome.pass {
        None => "skipped",
        Some(true) => "pass",
        Some(false) => "fail",
    };
    let report = RunReport {
        command: cli.command.name(),
        parameters: outcome.parameters,
        matrix_count: outcome.matrix_count,
        distinct_lines: outcome.distinct_lines,
        expected_lines: outcome.expected_lines,
        verdict,
        elapsed_ms: start.elapsed().as_millis(),
        violations: outcome.violations,
    };
    let rendered = match cli.report {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
    };
    emit_report(&rendered, cli.out.as_deref() == Some("-"));
    Ok(if outcome.pass == Some(false) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

/// The report goes to stdout unless the corpus already went there.
fn emit_report(rendered: &str, corpus_on_stdout: bool) {
    if corpus_on_stdout {
        eprint!("{rendered}");
    } else {
        print!("{rendered}");
    }
}

fn write_out(path: &str, payload: &str) -> Result<(), CliError> {
    if path == "-" {
        print!("{payload}");
        Ok(())
    } else {
        fs::write(path, payload)
            .map_err(|e| CliError::Usage(format!("cannot write {path}: {e}")))
    }
}

struct Outcome {
    parameters: Value,
    matrix_count: usize,
    expected_lines: usize,
    distinct_lines: Option<usize>,
    pass: Option<bool>,
    violations: Vec<Violation>,
    payload: Option<String>,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Latin square counts for orders 1..=5.
const LATIN_COUNTS: [usize; 6] = [0, 1, 2, 12, 576, 161280];

fn build(
    command: &Command,
    cap: Option<usize>,
    pairing: Pairing,
    verify_on: bool,
) -> Result<Outcome, CliError> {
    match command {
        Command::PackOdd { n } => {
            let cap = cap.unwrap_or(DEFAULT_PACK_ODD_CAP);
            let packing = pack_odd(*n, cap, pairing)?;
            whole_group_outcome(packing, "pack-odd", *n, cap, pairing, verify_on, false)
        }
        Command::PackEven { n } => {
            let cap = cap.unwrap_or(DEFAULT_PACK_EVEN_CAP);
            let packing = pack_even(*n, cap, pairing)?;
            whole_group_outcome(packing, "pack-even", *n, cap, pairing, verify_on, false)
        }
        Command::PackSubgroup { n } => {
            let cap = cap.unwrap_or(DEFAULT_PACK_EVEN_CAP);
            let packing = pack_even_subgroup(*n, cap, pairing)?;
            whole_group_outcome(packing, "pack-subgroup", *n, cap, pairing, verify_on, true)
        }
        Command::PackSingle { n } => {
            let matrix = pack_single(*n)?;
            let set = PackingSet::new(vec![matrix])?;
            let expected = 4 * n;
            let (distinct, pass, violations) = if verify_on {
                let report = verify_packing(&set);
                let group = lines_form_group(set.matrices())?;
                (
                    Some(report.distinct_lines),
                    Some(
                        report.is_packing
                            && report.distinct_lines == expected
                            && group.is_group
                            && group.order == expected,
                    ),
                    report.violations,
                )
            } else {
                (None, None, Vec::new())
            };
            Ok(Outcome {
                parameters: json!({ "n": n }),
                matrix_count: 1,
                expected_lines: expected,
                distinct_lines: distinct,
                pass,
                violations,
                payload: Some(corpus::render(&MatrixCorpus::with_source(
                    format!("pack-single {n}"),
                    set.into_matrices(),
                ))),
            })
        }
        Command::Mols { p } => {
            let cap = cap.unwrap_or(DEFAULT_MOLS_CAP);
            let packing = mols_packed(*p, cap)?;
            let expected = p * (p - 1);
            let (distinct, pass, violations) = if verify_on {
                let report = verify_packing(&packing);
                let orthogonal = verify_mols(packing.matrices())?;
                let group = lines_form_group(packing.matrices())?;
                (
                    Some(report.distinct_lines),
                    Some(
                        report.is_packing
                            && report.distinct_lines == expected
                            && orthogonal
                            && group.is_group
                            && group.order == expected,
                    ),
                    report.violations,
                )
            } else {
                (None, None, Vec::new())
            };
            Ok(Outcome {
                parameters: json!({ "p": p, "cap": cap }),
                matrix_count: packing.len(),
                expected_lines: expected,
                distinct_lines: distinct,
                pass,
                violations,
                payload: Some(corpus::render(&MatrixCorpus::with_source(
                    format!("mols {p}"),
                    packing.into_matrices(),
                ))),
            })
        }
        Command::MinLines { n } => {
            let matrix = min_lines_square(*n)?;
            let expected = if n % 2 == 1 { 2 * n } else { *n };
            let (distinct, pass) = if verify_on {
                let symmetry = classify_symmetry(&matrix);
                let flags_ok = n % 2 == 1
                    || (symmetry.symmetric
                        && symmetry.centrosymmetric
                        && symmetry.hankel_symmetric);
                (
                    Some(symmetry.distinct_lines),
                    Some(is_latin(&matrix) && symmetry.distinct_lines == expected && flags_ok),
                )
            } else {
                (None, None)
            };
            Ok(Outcome {
                parameters: json!({ "n": n }),
                matrix_count: 1,
                expected_lines: expected,
                distinct_lines: distinct,
                pass,
                violations: Vec::new(),
                payload: Some(corpus::render(&MatrixCorpus::with_source(
                    format!("min-lines {n}"),
                    vec![matrix],
                ))),
            })
        }
        Command::Subgroup4n { n } => {
            let group = subgroup_4n(*n)?;
            let expected = 4 * n;
            let mut payload = format!("# subgroup-4n {n}\n");
            for p in group.iter() {
                payload.push_str(&format!("{p}\n"));
            }
            Ok(Outcome {
                parameters: json!({ "n": n }),
                matrix_count: 0,
                expected_lines: expected,
                distinct_lines: Some(group.order()),
                pass: if verify_on {
                    Some(group.order() == expected)
                } else {
                    None
                },
                violations: Vec::new(),
                payload: Some(payload),
            })
        }
        Command::Verify { file } => {
            let text = fs::read_to_string(file)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", file.display())))?;
            let parsed = corpus::parse(&text)?;
            let set = PackingSet::new(parsed.matrices)?;
            let report = verify_packing(&set);
            Ok(Outcome {
                parameters: json!({ "file": file.display().to_string() }),
                matrix_count: set.len(),
                expected_lines: set.total_lines(),
                distinct_lines: Some(report.distinct_lines),
                pass: Some(report.is_packing),
                violations: report.violations,
                payload: None,
            })
        }
        Command::Classify { .. } => unreachable!("classify is dispatched separately"),
        Command::Enumerate { n } => {
            let squares = enumerate_latin_squares(*n)?;
            let expected_count = LATIN_COUNTS[*n];
            let expected_lines = factorial(*n);
            let mut census = std::collections::HashSet::new();
            let mut count = 0usize;
            let mut kept: Vec<SquareMatrix> = Vec::new();
            for square in squares {
                count += 1;
                if verify_on {
                    for line in square.lines() {
                        census.insert(line.seq);
                    }
                }
                kept.push(square);
            }
            let (distinct, pass) = if verify_on {
                (
                    Some(census.len()),
                    Some(count == expected_count && census.len() == expected_lines),
                )
            } else {
                (None, None)
            };
            Ok(Outcome {
                parameters: json!({ "n": n }),
                matrix_count: count,
                expected_lines,
                distinct_lines: distinct,
                pass,
                violations: Vec::new(),
                payload: Some(corpus::render(&MatrixCorpus::with_source(
                    format!("enumerate {n}"),
                    kept,
                ))),
            })
        }
    }
}

/// Shared tail for the three constructions whose lines must exhaust a
/// permutation set of known size: the two full-group packings (n!) and the
/// subgroup packing (m!·2^m, additionally closure-checked).
fn whole_group_outcome(
    packing: PackingSet,
    name: &'static str,
    n: usize,
    cap: usize,
    pairing: Pairing,
    verify_on: bool,
    check_group: bool,
) -> Result<Outcome, CliError> {
    let expected = if check_group {
        let m = n / 2;
        factorial(m) << m
    } else {
        factorial(n)
    };
    let (distinct, pass, violations) = if verify_on {
        let report = verify_packing(&packing);
        let mut ok = report.is_packing && report.distinct_lines == expected;
        if check_group && ok {
            let group = lines_form_group(packing.matrices())?;
            ok = group.is_group && group.order == expected;
        }
        (Some(report.distinct_lines), Some(ok), report.violations)
    } else {
        (None, None, Vec::new())
    };
    let mut parameters = json!({ "n": n, "cap": cap, "pairing": "canonical" });
    let mut source = format!("{name} {n}");
    if let Pairing::Seeded(seed) = pairing {
        parameters["pairing"] = json!("seeded");
        parameters["seed"] = json!(seed);
        source = format!("{name} {n} seeded {seed}");
    }
    Ok(Outcome {
        parameters,
        matrix_count: packing.len(),
        expected_lines: expected,
        distinct_lines: distinct,
        pass,
        violations,
        payload: Some(corpus::render(&MatrixCorpus::with_source(
            source,
            packing.into_matrices(),
        ))),
    })
}

#[derive(Serialize)]
struct ClassifyReport {
    command: &'static str,
    parameters: Value,
    matrix_count: usize,
    matrices: Vec<latin_packing::verify::SymmetryReport>,
    elapsed_ms: u128,
}

fn run_classify(file: &PathBuf, cli: &Cli, start: Instant) -> Result<ExitCode, CliError> {
    if cli.out.is_some() {
        return Err(CliError::Usage(
            "the --out flag does not apply to classify".into(),
        ));
    }
    let text = fs::read_to_string(file)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", file.display())))?;
    let parsed = corpus::parse(&text)?;
    let matrices: Vec<_> = parsed.matrices.iter().map(classify_symmetry).collect();
    let report = ClassifyReport {
        command: "classify",
        parameters: json!({ "file": file.display().to_string() }),
        matrix_count: matrices.len(),
        matrices,
        elapsed_ms: start.elapsed().as_millis(),
    };
    let rendered = match cli.report {
        ReportFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
        ReportFormat::Text => {
            let mut out = String::new();
            out.push_str("command: classify\n");
            out.push_str(&format!("parameters: file={}\n", file.display()));
            out.push_str(&format!("matrix_count: {}\n", report.matrix_count));
            for (i, m) in report.matrices.iter().enumerate() {
                out.push_str(&format!(
                    "matrix {}: symmetric={} centrosymmetric={} hankel_symmetric={} distinct_lines={}\n",
                    i + 1,
                    m.symmetric,
                    m.centrosymmetric,
                    m.hankel_symmetric,
                    m.distinct_lines
                ));
            }
            out.push_str(&format!("elapsed_ms: {}\n", start.elapsed().as_millis()));
            out
        }
    };
    print!("{rendered}");
    Ok(ExitCode::SUCCESS)
}
