//! Command-line front end. `run` parses arguments, dispatches and returns the
//! process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0  | all assertions held |
//! | 1  | internal failure |
//! | 2  | NewCandidate, alarm or failed verification |
//! | 64 | usage or parse error |
//! | 65 | budget exceeded without `--long-run` |

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::classify::{classify, Tag};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linset::LinSetParams;
use crate::report::{render, FieldInfo, Format, Header};
use crate::search::{run_search, Outcome, SearchConfig, SearchKind};
use crate::suites::{run_suite, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_FINDING: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_BUDGET: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "msls", version, about = "Classify and search linear sets L(alpha, beta) in PG(1, q^5)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u32,
    /// q = p^e.
    #[arg(long, default_value_t = 1)]
    e: u32,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// json, csv or human.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Classify one pair (alpha, beta).
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        /// Integer below q^5 or g^k.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a verification suite: lem1, prop2, det, resultants, slavov, quartic, sheekey or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 17)]
        q_max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exhaustive search: lem1, prop2, full, restricted or probe.
    Search {
        kind: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON-lines checkpoint file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from the checkpoint.
        #[arg(long)]
        resume: bool,
        /// Allow runs beyond the default size limits.
        #[arg(long)]
        long_run: bool,
        #[arg(long, default_value_t = 64)]
        shards: usize,
        /// Enumerate every pair instead of Frobenius orbit representatives.
        #[arg(long)]
        no_reduction: bool,
        #[arg(long, hide = true)]
        stop_after_shards: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::NotPrime(_)
        | Error::InvalidDegree(_)
        | Error::FieldTooLarge { .. }
        | Error::ElementOutOfRange { .. }
        | Error::Parse(_)
        | Error::NotInSubfield(_)
        | Error::Precondition(_) => EXIT_USAGE,
        Error::Budget(_) => EXIT_BUDGET,
        _ => EXIT_INTERNAL,
    }
}

fn emit(out: &OutArgs, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (the first item is the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "msls: {e}");
            exit_code_of(&e)
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cli.cmd {
        Cmd::Classify { field, alpha, beta, seed, out } => {
            let fmt: Format = out.format.parse()?;
            let ctx = FieldCtx::new(field.p, field.e)?;
            let pr = LinSetParams::new(ctx.parse_elem(&alpha)?, ctx.parse_elem(&beta)?);
            let cl = classify(&ctx, &pr);
            let v = json!({
                "header": Header::new(seed, vec![FieldInfo::of(&ctx)]),
                "alpha": ctx.to_int(pr.alpha),
                "beta": ctx.to_int(pr.beta),
                "classification": cl.record(&ctx),
            });
            emit(&out, &render(&v, fmt)?, stdout)?;
            Ok(if cl.tag == Tag::NewCandidate { EXIT_FINDING } else { EXIT_OK })
        }
        Cmd::Verify { suite, q_max, seed, workers, out } => {
            let fmt: Format = out.format.parse()?;
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, &SuiteConfig { q_max, seed, workers })?;
            let text = match fmt {
                Format::Json => {
                    let mut s = String::new();
                    for r in &report.records {
                        s += &serde_json::to_string(r)?;
                        s.push('\n');
                    }
                    let summary = json!({"summary": {"header": report.header, "checks": report.records.len(),
                                                     "failed": report.failed, "pass": report.pass}});
                    s += &serde_json::to_string(&summary)?;
                    s.push('\n');
                    s
                }
                _ => render(&serde_json::to_value(&report)?, fmt)?,
            };
            emit(&out, &text, stdout)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_FINDING })
        }
        Cmd::Search {
            kind,
            field,
            workers,
            seed,
            checkpoint,
            resume,
            long_run,
            shards,
            no_reduction,
            stop_after_shards,
            out,
        } => {
            let fmt: Format = out.format.parse()?;
            let kind: SearchKind = serde_json::from_value(Value::String(kind.clone()))
                .map_err(|_| Error::Parse(format!("unknown search kind {kind:?}")))?;
            let ctx = FieldCtx::new(field.p, field.e)?;
            let cfg = SearchConfig {
                kind,
                seed,
                workers,
                shards,
                checkpoint,
                resume,
                long_run,
                reduce: !no_reduction,
                stop_after_shards,
            };
            match run_search(&ctx, &cfg)? {
                Outcome::Interrupted { shards_written } => {
                    writeln!(stderr, "msls: stopped after {shards_written} shards")?;
                    Ok(EXIT_INTERNAL)
                }
                Outcome::Done(report) => {
                    emit(&out, &render(&serde_json::to_value(&*report)?, fmt)?, stdout)?;
                    Ok(if report.has_findings() { EXIT_FINDING } else { EXIT_OK })
                }
            }
        }
    }
}
