use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use geninv_core::corpusgen::{generate_sample, GeneratorKind, GeneratorSpec};
use geninv_core::{NormSpec, NumericContext};
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::classify;
use crate::corpus::{corpus_to_string, load_corpus, Corpus};
use crate::verify::{verify_corpus, Suite};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const THREADS_VAR: &str = "GENINV_THREADS";

#[derive(Parser, Debug)]
#[command(name = "geninv", version, about = "Generalized inverses, EP and normal matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify one matrix.
    Classify {
        /// Sample, single-sample corpus or bare matrix file.
        input: PathBuf,
        /// l1, l2, linf or lp:<p>.
        #[arg(long, default_value = "l2", value_parser = parse_norm)]
        norm: NormSpec,
        /// Equality tolerance; rank_tol = tol/100, herm_tol = 10 tol.
        #[arg(long)]
        tol: Option<f64>,
        /// Report path (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check theorem characterizations over a corpus.
    Verify {
        /// lemma, t6, t7, t8, t9, t13, t14, t15, t19 or all.
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Report path (default: standard output).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate a seeded corpus.
    Generate {
        /// ep, mp_generic, group_invertible, normal, nilpotent or hermitian_diag.
        #[arg(long, value_parser = parse_kind)]
        kind: GeneratorKind,
        #[arg(long)]
        n: usize,
        /// Defaults depend on the kind.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Corpus path (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_norm(s: &str) -> Result<NormSpec, String> {
    s.parse().map_err(|e: geninv_core::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: geninv_core::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    s.parse().map_err(|e: geninv_core::Error| e.to_string())
}

pub fn context(tol: Option<f64>) -> Result<NumericContext> {
    Ok(match tol {
        Some(t) => NumericContext::with_tolerance(t)?,
        None => NumericContext::default(),
    })
}

/// Pool sized by `GENINV_THREADS`, or rayon's default when unset.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(v) = std::env::var_os(THREADS_VAR) {
        let v = v.to_string_lossy();
        let v = v.trim();
        if !v.is_empty() {
            let n: usize = v
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::Threads(format!("expected a positive integer, got {v:?}")))?;
            builder = builder.num_threads(n);
        }
    }
    builder.build().map_err(|e| Error::Threads(e.to_string()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    text.push('\n');
    text
}

pub fn cmd_classify(input: &Path, norm: NormSpec, tol: Option<f64>, out: Option<&Path>) -> Result<i32> {
    let ctx = context(tol)?;
    let corpus = load_corpus(input)?;
    let [sample] = corpus.samples.as_slice() else {
        return Err(Error::format(
            &input.display().to_string(),
            format!("expected one matrix, found {}", corpus.samples.len()),
        ));
    };
    let report = classify(&sample.id, &sample.matrix, norm, &ctx)?;
    emit(&to_json(&report), out)?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(suite: &Suite, corpus: &Path, tol: Option<f64>, report: Option<&Path>) -> Result<i32> {
    let ctx = context(tol)?;
    let samples = load_corpus(corpus)?.samples;
    let result = thread_pool()?.install(|| verify_corpus(&samples, suite, &ctx))?;
    emit(&to_json(&result), report)?;
    for s in &result.suites {
        eprintln!(
            "{}: {} samples, {} items checked, {} margin-zone, {} inconsistencies",
            s.theorem, s.summary.samples, s.summary.items_checked, s.summary.margin_zone, s.summary.inconsistencies
        );
    }
    Ok(if result.consistent { EXIT_OK } else { EXIT_INCONSISTENT })
}

pub fn cmd_generate(
    kind: GeneratorKind,
    n: usize,
    rank: Option<usize>,
    seed: u64,
    count: usize,
    out: Option<&Path>,
) -> Result<i32> {
    let ctx = NumericContext::default();
    let mut spec = GeneratorSpec::new(kind, n, rank, seed, count)?;
    spec.rank = Some(spec.rank());
    let samples = thread_pool()?.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| generate_sample(&spec, i, &ctx))
            .collect::<Result<Vec<_>, _>>()
    })?;
    emit(&corpus_to_string(&Corpus::new(Some(spec), samples)), out)?;
    Ok(EXIT_OK)
}

pub fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Classify { input, norm, tol, out } => cmd_classify(&input, norm, tol, out.as_deref()),
        Command::Verify {
            suite,
            corpus,
            tol,
            report,
        } => cmd_verify(&suite, &corpus, tol, report.as_deref()),
        Command::Generate {
            kind,
            n,
            rank,
            seed,
            count,
            out,
        } => cmd_generate(kind, n, rank, seed, count, out.as_deref()),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
