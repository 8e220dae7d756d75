//! `hkcover`: exact invariants of branched abelian covers, ball-quotient
//! condition filters, nonexistence certificates, and grid searches.
//!
//! One JSON document (or CSV table) goes to standard output; diagnostics go
//! to standard error. Exit codes: 0 success/valid, 1 validation failure or
//! invalid result, 2 usage or input errors.

mod emit;
mod schema;

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use hkcover_core::{
    bmy_applicability, certify_nonexistence, cover_c1sq_nc, cover_chern, cover_euler_nc,
    gap_minimum, hirzebruch_polynomial, necessary_condition_filter, theorem_scan,
    validate_combinatorics, validate_profiles, verify_lemma_f0, CertificateRef, EnumerationCaps,
    Error as CoreError, FamilyGrid, FamilyPattern, NefParams, ScanReport, SearchMode, SearchSpec,
    Severity,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strictness {
    Strict,
    Permissive,
}

#[derive(Parser)]
#[command(name = "hkcover", version, about = "Branched-cover invariant toolkit")]
struct Cli {
    /// Output format for the report on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Permissive mode downgrades the minimum-curve-count rule to a warning.
    #[arg(long, global = true, value_enum, default_value_t = Strictness::Strict)]
    strictness: Strictness,
    /// Worker threads for grid searches (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an arrangement document against the combinatorial rules.
    Validate { file: PathBuf },
    /// Chern numbers of the cover at a given exponent.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        exponent: i64,
    },
    /// Coefficients of the gap polynomial H(n).
    Hpoly { file: PathBuf },
    /// Ball-quotient necessary-condition filter at a given exponent.
    Filter {
        file: PathBuf,
        #[arg(long)]
        exponent: i64,
    },
    /// Replay a nonexistence certificate for a surface family.
    Certify {
        /// hirzebruch, nef or plane.
        #[arg(long)]
        family: String,
        #[arg(long)]
        exponent: i64,
        /// Fix the Hirzebruch parameter.
        #[arg(long)]
        e: Option<i64>,
        /// Fix the plane-configuration degree.
        #[arg(long)]
        d: Option<i64>,
        /// Fix the nef-canonical self-intersection a = A^2.
        #[arg(long)]
        a: Option<i64>,
        /// Fix the nef-canonical degree b = K.C.
        #[arg(long)]
        b: Option<i64>,
        /// Fix the nef-canonical base gap delta = 3e - K^2.
        #[arg(long)]
        delta: Option<i64>,
        /// Force the fully symbolic derivation (the default when no
        /// parameter is fixed).
        #[arg(long)]
        symbolic: bool,
    },
    /// Run a grid search described by a spec document.
    Search { file: PathBuf },
    /// Cover invariants of an explicit normal-crossing model.
    Nccover {
        file: PathBuf,
        #[arg(long)]
        exponent: i64,
    },
    /// Scan for counterexamples to the minimal-point-count bound f0 >= e+6.
    LemmaF0 {
        #[arg(long, default_value_t = 2)]
        e_min: i64,
        #[arg(long)]
        e_max: i64,
        #[arg(long, default_value_t = 5)]
        k_min: i64,
        #[arg(long)]
        k_max: i64,
    },
}

enum Output {
    Json(Value),
    Csv(String),
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            std::process::exit(2);
        }
    };
    match dispatch(&cli) {
        Ok((output, code)) => {
            use std::io::Write;
            let text = match output {
                Output::Json(value) => {
                    let mut text = match cli.format {
                        Format::Pretty => serde_json::to_string_pretty(&value).expect("serializable"),
                        _ => serde_json::to_string(&value).expect("serializable"),
                    };
                    text.push('\n');
                    text
                }
                Output::Csv(table) => table,
            };
            // A closed pipe downstream is not an error worth reporting.
            let _ = std::io::stdout().write_all(text.as_bytes());
            std::process::exit(code);
        }
        Err(err) => {
            eprintln!("hkcover: {err:#}");
            std::process::exit(2);
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn cap_override() -> Result<Option<i64>> {
    match std::env::var("HK_CAP_SUM") {
        Ok(raw) => {
            let cap: i64 = raw
                .parse()
                .map_err(|_| anyhow!("HK_CAP_SUM must be an integer, got {raw:?}"))?;
            Ok(Some(cap))
        }
        Err(_) => Ok(None),
    }
}

fn dispatch(cli: &Cli) -> Result<(Output, i32)> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(cli, file),
        Command::Invariants { file, exponent } => cmd_invariants(cli, file, *exponent),
        Command::Hpoly { file } => cmd_hpoly(cli, file),
        Command::Filter { file, exponent } => cmd_filter(cli, file, *exponent),
        Command::Certify { family, exponent, e, d, a, b, delta, symbolic } => {
            cmd_certify(cli, family, *exponent, *e, *d, *a, *b, *delta, *symbolic)
        }
        Command::Search { file } => cmd_search(cli, file),
        Command::Nccover { file, exponent } => cmd_nccover(cli, file, *exponent),
        Command::LemmaF0 { e_min, e_max, k_min, k_max } => {
            cmd_lemma_f0(cli, (*e_min, *e_max), (*k_min, *k_max))
        }
    }
}

fn require_json(cli: &Cli, what: &str) -> Result<()> {
    if cli.format == Format::Csv {
        bail!("{what} has no CSV form; use --format json or pretty");
    }
    Ok(())
}

fn cmd_validate(cli: &Cli, file: &Path) -> Result<(Output, i32)> {
    require_json(cli, "validate output")?;
    let doc: schema::ArrangementDoc = read_json(file)?;
    let parsed = doc.parse()?;
    let report = validate_combinatorics(&parsed.surface, &parsed.combo);

    // In permissive mode the minimum-curve-count rule R3 only warns.
    let permissive = cli.strictness == Strictness::Permissive;
    let passed = report
        .findings
        .iter()
        .all(|f| f.passed || f.severity == Severity::Warning || (permissive && f.rule == "R3"));

    let (profile_value, profiles_passed) = match &parsed.profiles {
        None => (Value::Null, true),
        Some(profiles) => match validate_profiles(&parsed.surface, &parsed.combo, profiles) {
            Ok(profile_report) => {
                let ok = profile_report.passed();
                (emit::validation_report(&profile_report), ok)
            }
            Err(err) => (json!({"error": err.to_string()}), false),
        },
    };

    let all_passed = passed && profiles_passed;
    let value = json!({
        "surface": emit::surface(&parsed.surface),
        "combinatorics": emit::combinatorics(&parsed.combo),
        "report": emit::validation_report(&report),
        "profile_report": profile_value,
        "strictness": match cli.strictness { Strictness::Strict => "strict", Strictness::Permissive => "permissive" },
        "passed": all_passed,
    });
    Ok((Output::Json(value), if all_passed { 0 } else { 1 }))
}

fn cmd_invariants(cli: &Cli, file: &Path, n: i64) -> Result<(Output, i32)> {
    require_json(cli, "invariants output")?;
    let doc: schema::ArrangementDoc = read_json(file)?;
    let parsed = doc.parse()?;
    match cover_chern(&parsed.surface, &parsed.combo, n) {
        Ok(inv) => {
            let applicability =
                bmy_applicability(&parsed.surface, &parsed.combo, parsed.profiles.as_deref(), n);
            let value = json!({
                "surface": emit::surface(&parsed.surface),
                "invariants": emit::invariants(&inv),
                "bmy_applicability": {
                    "applicable": applicability.applicable,
                    "checks": applicability.checks.iter().map(|c| json!({
                        "name": c.name,
                        "value": c.value.as_ref().map(emit::rational),
                        "ok": c.ok,
                        "detail": c.detail,
                    })).collect::<Vec<_>>(),
                },
            });
            Ok((Output::Json(value), 0))
        }
        Err(CoreError::Rejected(report)) => Ok((
            Output::Json(json!({
                "error": "arrangement rejected by validation",
                "report": emit::validation_report(&report),
            })),
            1,
        )),
        Err(err) => Err(anyhow!("{err}")),
    }
}

fn cmd_hpoly(cli: &Cli, file: &Path) -> Result<(Output, i32)> {
    require_json(cli, "hpoly output")?;
    let doc: schema::ArrangementDoc = read_json(file)?;
    let parsed = doc.parse()?;
    match hirzebruch_polynomial(&parsed.surface, &parsed.combo) {
        Ok(h) => Ok((
            Output::Json(json!({
                "surface": emit::surface(&parsed.surface),
                "hpoly": emit::hpoly(&h),
            })),
            0,
        )),
        Err(CoreError::Rejected(report)) => Ok((
            Output::Json(json!({
                "error": "arrangement rejected by validation",
                "report": emit::validation_report(&report),
            })),
            1,
        )),
        Err(err) => Err(anyhow!("{err}")),
    }
}

fn cmd_filter(cli: &Cli, file: &Path, n: i64) -> Result<(Output, i32)> {
    require_json(cli, "filter output")?;
    let doc: schema::ArrangementDoc = read_json(file)?;
    let parsed = doc.parse()?;
    let outcome = necessary_condition_filter(&parsed.combo, n).map_err(|e| anyhow!("{e}"))?;
    let value = json!({
        "n": n,
        "pass": outcome.pass,
        "admissible_r": outcome.admissible_r,
        "offending_multiplicities": outcome.offending,
    });
    Ok((Output::Json(value), 0))
}

#[allow(clippy::too_many_arguments)]
fn cmd_certify(
    cli: &Cli,
    family: &str,
    n: i64,
    e: Option<i64>,
    d: Option<i64>,
    a: Option<i64>,
    b: Option<i64>,
    delta: Option<i64>,
    symbolic: bool,
) -> Result<(Output, i32)> {
    require_json(cli, "certificates")?;
    let pattern = match family {
        "hirzebruch" => FamilyPattern::Hirzebruch { e: if symbolic { None } else { e } },
        "plane" => FamilyPattern::Plane { d: if symbolic { None } else { d } },
        "nef" => {
            let fixed = if symbolic {
                None
            } else {
                match (a, b, delta) {
                    (None, None, None) => None,
                    (Some(a), Some(b), Some(delta)) => Some(NefParams { a, b, delta }),
                    _ => bail!("--a, --b and --delta must be given together"),
                }
            };
            FamilyPattern::NefCanonical { fixed }
        }
        other => bail!("unknown family {other:?} (expected hirzebruch, nef or plane)"),
    };
    let cert = certify_nonexistence(&pattern, n).map_err(|err| anyhow!("{err}"))?;
    let code = if cert.valid { 0 } else { 1 };
    Ok((Output::Json(emit::certificate(&cert)), code))
}

fn cmd_nccover(cli: &Cli, file: &Path, n: i64) -> Result<(Output, i32)> {
    require_json(cli, "nccover output")?;
    let doc: schema::ModelDoc = read_json(file)?;
    let model = doc.parse()?;
    let euler = cover_euler_nc(&model, n).map_err(|e| anyhow!("{e}"))?;
    let c1sq = cover_c1sq_nc(&model, n).map_err(|e| anyhow!("{e}"))?;
    let gap = BigInt::from(3) * &euler - &c1sq;
    let necessary = gap == BigInt::from(0);
    let value = json!({
        "e": emit::bigint(&euler),
        "c1sq": emit::bigint(&c1sq),
        "bmy_gap": emit::bigint(&gap),
        "ball_quotient_necessary": necessary,
    });
    Ok((Output::Json(value), 0))
}

fn cmd_lemma_f0(cli: &Cli, e_range: (i64, i64), k_range: (i64, i64)) -> Result<(Output, i32)> {
    let mut caps = EnumerationCaps::default();
    if let Some(cap) = cap_override()? {
        caps.max_target = cap;
    }
    let report = verify_lemma_f0(e_range, k_range, &caps).map_err(|e| anyhow!("{e}"))?;
    let code = if report.valid { 0 } else { 1 };
    let output = match cli.format {
        Format::Csv => Output::Csv(emit::lemma_report_csv(&report)),
        _ => Output::Json(emit::lemma_report(&report)),
    };
    Ok((output, code))
}

fn cmd_search(cli: &Cli, file: &Path) -> Result<(Output, i32)> {
    let doc: schema::SearchSpecDoc = read_json(file)?;
    let spec = doc.parse(cap_override()?)?;
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
        .max(1);
    match spec.mode {
        SearchMode::LemmaF0 => {
            let e_range = match &spec.grid {
                FamilyGrid::Hirzebruch { e } => *e,
                _ => bail!("lemma_f0 scans run on the hirzebruch family only"),
            };
            let report =
                verify_lemma_f0(e_range, spec.k_range, &spec.caps).map_err(|e| anyhow!("{e}"))?;
            let code = if report.valid { 0 } else { 1 };
            let output = match cli.format {
                Format::Csv => Output::Csv(emit::lemma_report_csv(&report)),
                _ => Output::Json(emit::lemma_report(&report)),
            };
            Ok((output, code))
        }
        SearchMode::TheoremScan => {
            let report = run_scan_parallel(&spec, workers)?;
            let code = if report.valid { 0 } else { 1 };
            let output = match cli.format {
                Format::Csv => Output::Csv(emit::scan_report_csv(&report)),
                _ => Output::Json(emit::scan_report(&report)),
            };
            Ok((output, code))
        }
        SearchMode::GapMinimum => {
            let rows = run_gap_parallel(&spec, workers)?;
            let output = match cli.format {
                Format::Csv => Output::Csv(emit::gap_rows_csv(&rows)),
                _ => Output::Json(emit::gap_rows(&rows)),
            };
            Ok((output, 0))
        }
    }
}

/// One spec per surface cell, preserving grid order, so cells can run on
/// separate threads and merge deterministically.
fn split_by_surface(spec: &SearchSpec) -> Vec<SearchSpec> {
    spec.cells()
        .into_iter()
        .map(|surface| SearchSpec {
            grid: match surface {
                hkcover_core::SurfaceModel::Hirzebruch { e } => {
                    FamilyGrid::Hirzebruch { e: (e, e) }
                }
                hkcover_core::SurfaceModel::Plane { d } => FamilyGrid::Plane { d: (d, d) },
                s @ hkcover_core::SurfaceModel::NefCanonical { .. } => {
                    FamilyGrid::NefCanonical { surfaces: vec![s] }
                }
            },
            k_range: spec.k_range,
            n_set: spec.n_set.clone(),
            mode: spec.mode,
            caps: spec.caps,
        })
        .collect()
}

fn run_chunked<T, F>(specs: Vec<SearchSpec>, workers: usize, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&SearchSpec) -> Result<T, CoreError> + Sync,
{
    let workers = workers.min(specs.len()).max(1);
    let results: Vec<Result<T, CoreError>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in specs.chunks(specs.len().div_ceil(workers)) {
            let job = &job;
            handles.push(scope.spawn(move || chunk.iter().map(job).collect::<Vec<_>>()));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    results
        .into_iter()
        .map(|r| r.map_err(|e| anyhow!("{e}")))
        .collect()
}

fn run_scan_parallel(spec: &SearchSpec, workers: usize) -> Result<ScanReport> {
    let specs = split_by_surface(spec);
    if specs.is_empty() {
        return theorem_scan(spec).map_err(|e| anyhow!("{e}"));
    }
    let reports = run_chunked(specs, workers, theorem_scan)?;
    // Deterministic merge in grid order.
    let mut cells = Vec::new();
    let mut hits = Vec::new();
    let mut certificates: Vec<CertificateRef> = Vec::new();
    let mut complete = true;
    for report in reports {
        cells.extend(report.cells);
        hits.extend(report.hits);
        complete &= report.complete;
        for cert in report.certificates {
            if !certificates.contains(&cert) {
                certificates.push(cert);
            }
        }
    }
    let valid = hits.is_empty() && complete;
    Ok(ScanReport { cells, hits, valid, complete, certificates })
}

fn run_gap_parallel(spec: &SearchSpec, workers: usize) -> Result<Vec<hkcover_core::GapRow>> {
    let specs = split_by_surface(spec);
    if specs.is_empty() {
        return gap_minimum(spec).map_err(|e| anyhow!("{e}"));
    }
    let rows = run_chunked(specs, workers, gap_minimum)?;
    Ok(rows.into_iter().flatten().collect())
}
