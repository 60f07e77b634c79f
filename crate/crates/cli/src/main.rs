//! `rootsub`: rational approximants to integer roots by rewriting and counting.
//!
//! Exit codes: 0 success, 1 failed check or domain error, 2 usage error,
//! 3 word expansion stopped by the length cap.

mod output;
mod verify;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rootsub::approx::Approximants;
use rootsub::spectral::root_truncated;
use rootsub::substitution::WordIter;
use rootsub::{
    incidence, make_root_rules, power_iteration, reference_digits, ApproxConfig, Counts, Matrix,
    RootTarget, RuleSet, Word, DEFAULT_LENGTH_CAP,
};

use output::{OutputFormat, RowWriter};
use verify::{Check, VerifyOptions};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TRUNCATED: u8 = 3;

#[derive(Parser)]
#[command(name = "rootsub", version, about = "Rational approximants to n^(1/m) by counting symbols in substitution sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Which substitution to run: the root family for `(m, N)` or a rules file.
#[derive(Args, Clone)]
struct RuleSource {
    /// Alphabet size; the root of order m is approximated.
    #[arg(long = "m", default_value_t = 2)]
    m: usize,

    /// Radicand.
    #[arg(long = "N", visible_alias = "n", default_value_t = 2)]
    n: u64,

    /// Use the substitution in this rules file instead of the root family.
    #[arg(long, conflicts_with_all = ["m", "n"])]
    rules_file: Option<PathBuf>,
}

enum Source {
    Root { m: usize, n: u64, rules: RuleSet },
    File(RuleSet),
}

impl Source {
    fn rules(&self) -> &RuleSet {
        match self {
            Source::Root { rules, .. } | Source::File(rules) => rules,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the table of count vectors and ratio approximants.
    Approx {
        #[command(flatten)]
        source: RuleSource,
        /// Number of rows after the seed.
        #[arg(long, default_value_t = 16)]
        iters: usize,
        /// Fractional digits in decimal renderings.
        #[arg(long, default_value_t = 14)]
        digits: usize,
        /// Seed count vector, comma separated (default 1,0,...,0).
        #[arg(long, value_delimiter = ',')]
        seed_counts: Option<Vec<BigUint>>,
        /// Stop once successive n0/n1 ratios differ by less than 10^-P.
        #[arg(long)]
        stop_places: Option<u32>,
        /// Only report the ratio n_j/n_{j+1} for this j.
        #[arg(long)]
        ratio_index: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Print the words W_0 ... W_depth, one per line.
    Expand {
        #[command(flatten)]
        source: RuleSource,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Longest word that may be built.
        #[arg(long, default_value_t = DEFAULT_LENGTH_CAP)]
        length_cap: usize,
        /// Seed word: digits ("0112") or separated indices ("0,11,2").
        #[arg(long, default_value = "0")]
        seed: Word,
    },
    /// Cross-check word rewriting, primitivity and the dominant eigenpair.
    Verify {
        #[command(flatten)]
        source: RuleSource,
        /// Decimal places for the exact eigenpair.
        #[arg(long, default_value_t = 20)]
        digits: u32,
        /// Deepest word for the rewriting check; the length cap may stop it earlier.
        #[arg(long, default_value_t = 64)]
        depth: usize,
        /// Power iteration tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_LENGTH_CAP)]
        length_cap: usize,
        #[arg(long, default_value = "0")]
        seed: Word,
    },
    /// Print the substitution in rules text format.
    Rules {
        #[command(flatten)]
        source: RuleSource,
    },
}

/// Errors mapped to exit codes.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<rootsub::Error> for Failure {
    fn from(e: rootsub::Error) -> Self {
        match e {
            rootsub::Error::RulesSyntax { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("i/o error: {e}"))
    }
}

fn load(source: &RuleSource) -> Result<Source, Failure> {
    match &source.rules_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            RuleSet::parse(&text)
                .map(Source::File)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => Ok(Source::Root {
            m: source.m,
            n: source.n,
            rules: make_root_rules(source.m, source.n)?,
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_approx(
    source: &RuleSource,
    iters: usize,
    digits: usize,
    seed_counts: Option<Vec<BigUint>>,
    stop_places: Option<u32>,
    ratio_index: Option<usize>,
    format: OutputFormat,
) -> Result<u8, Failure> {
    let source = load(source)?;
    let rules = source.rules();
    let m = rules.m();
    let seed = match seed_counts {
        Some(v) => Counts::new(v),
        None => Counts::unit(m, 0),
    };
    let target = match &source {
        Source::Root { m, n, .. } => Some(RootTarget { m: *m, n: *n }),
        Source::File(_) => None,
    };
    let config = ApproxConfig { max_iters: iters, stop_places, places: digits };
    let matrix: Matrix = incidence(rules);
    let stream = Approximants::with_matrix(matrix.clone(), seed, target, config)?;
    let columns: Vec<usize> = match ratio_index {
        Some(j) if j + 1 < m => vec![j],
        Some(j) => return Err(rootsub::Error::RatioIndex { index: j, m }.into()),
        None => (0..m - 1).collect(),
    };
    let reference = match target {
        Some(t) => Some(root_truncated(t.m, t.n, digits as u32 + 2)?.to_rational()),
        None => None,
    };

    let stdout = io::stdout().lock();
    let mut writer = RowWriter::new(stdout, format, m, columns.clone(), reference)?;
    let mut stop = None;
    for row in stream.skip(1) {
        writer.write_row(&row)?;
        stop = row.stop;
    }
    let mut footer = Vec::new();
    match target {
        Some(t) => footer.push(format!(
            "N^(1/m) = {} (truncated)",
            reference_digits(t.m, t.n, digits as u32)?
        )),
        None => {
            let run = power_iteration::<f64, _>(&matrix, 1e-12, 100_000);
            let v = &run.estimate().vector;
            for &j in &columns {
                footer.push(format!(
                    "limit of n{j}/n{} by power iteration ≈ {:.*}{}",
                    j + 1,
                    digits.min(15),
                    v[j] / v[j + 1],
                    if run.converged() { "" } else { " (not converged)" }
                ));
            }
        }
    }
    if let Some(s) = stop {
        footer.push(format!("stop: {s}"));
    }
    writer.footer(&footer)?;
    writer.finish()?;
    Ok(0)
}

fn cmd_expand(source: &RuleSource, depth: usize, length_cap: usize, seed: Word) -> Result<u8, Failure> {
    if seed.is_empty() {
        return Err(Failure::Usage("seed word is empty".into()));
    }
    let source = load(source)?;
    let mut words = WordIter::new(source.rules(), seed, length_cap)?;
    let mut out = io::BufWriter::new(io::stdout().lock());
    let mut produced = 0;
    for word in words.by_ref().take(depth + 1) {
        writeln!(out, "{word}")?;
        produced += 1;
    }
    out.flush()?;
    if produced <= depth {
        eprintln!(
            "rootsub: stopped after depth {} of {depth}: the next word exceeds the length cap of {length_cap}",
            produced - 1
        );
        return Ok(EXIT_TRUNCATED);
    }
    Ok(0)
}

fn cmd_verify(source: &RuleSource, opts: VerifyOptions, seed: Word) -> Result<u8, Failure> {
    if seed.is_empty() {
        return Err(Failure::Usage("seed word is empty".into()));
    }
    let source = load(source)?;
    let rules = source.rules();
    let matrix: Matrix = incidence(rules);
    let mut checks: Vec<Check> = vec![
        verify::oracle_equivalence(rules, &seed, &opts)?,
        verify::primitivity(&matrix),
    ];
    match &source {
        Source::Root { m, n, .. } => {
            checks.push(verify::root_eigenvalue(*m, *n, &opts)?);
            checks.push(verify::root_eigenvector(*m, *n, &opts)?);
        }
        Source::File(_) => {
            let (value, vector) = verify::general_eigenpair(&matrix, &opts);
            checks.push(value);
            checks.push(vector);
        }
    }
    let mut out = io::stdout().lock();
    for c in &checks {
        writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(0)
    } else {
        eprintln!("rootsub: failed: {}", failed.join(", "));
        Ok(EXIT_FAILURE)
    }
}

fn cmd_rules(source: &RuleSource) -> Result<u8, Failure> {
    let source = load(source)?;
    print!("{}", source.rules());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Approx { source, iters, digits, seed_counts, stop_places, ratio_index, format } => {
            cmd_approx(&source, iters, digits, seed_counts, stop_places, ratio_index, format)
        }
        Command::Expand { source, depth, length_cap, seed } => cmd_expand(&source, depth, length_cap, seed),
        Command::Verify { source, digits, depth, tol, length_cap, seed } => {
            let opts = VerifyOptions { digits, max_depth: Some(depth), tol, length_cap, max_iters: 100_000 };
            cmd_verify(&source, opts, seed)
        }
        Command::Rules { source } => cmd_rules(&source),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("rootsub: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("rootsub: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
