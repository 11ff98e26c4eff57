//! Command-line front end: Lyndon word listing, successor and membership
//! queries, irreducible polynomial enumeration, and update-count benchmarks.
//!
//! Exit codes: 0 success (and membership true), 1 membership false, 2 usage
//! error, 3 internal consistency failure.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lynfield::lyndon::{
    count_lyndon, enumerate_all, pathological_word, plain_next_of_length_n, LyndonEnumerator,
};
use lynfield::pipeline::{self, EnumConfig, EnumRecord, Mode, RootBasis};
use lynfield::suffix::is_lyndon_suffix_tree;
use lynfield::words::{is_lyndon_naive, Alphabet, Word};

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lynfield",
    version,
    about = "Lyndon words and irreducible polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lyndon word enumeration and membership
    #[command(subcommand)]
    Lyndon(LyndonCmd),
    /// Irreducible polynomial enumeration over F_p
    #[command(subcommand)]
    Irred(IrredCmd),
    /// Update-count benchmarks
    #[command(subcommand)]
    Bench(BenchCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchFormat {
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Polynomials,
    PolynomialsAndRoots,
    RootsOnly,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Polynomials => Mode::Polynomials,
            ModeArg::PolynomialsAndRoots => Mode::PolynomialsAndRoots,
            ModeArg::RootsOnly => Mode::RootsOnly,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Normal,
    Poly,
}

impl From<BasisArg> for RootBasis {
    fn from(b: BasisArg) -> RootBasis {
        match b {
            BasisArg::Normal => RootBasis::Normal,
            BasisArg::Poly => RootBasis::Poly,
        }
    }
}

#[derive(Subcommand)]
enum LyndonCmd {
    /// Stream the Lyndon words of length n in lexicographic order
    List {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Suppress records; print per-record latency statistics instead
        #[arg(long)]
        quiet: bool,
    },
    /// Print the next Lyndon word of length n after the given word
    Next {
        word: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
    /// Print the number of Lyndon words of length n
    Count {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
    /// Exit 0 if the word is a Lyndon word, 1 otherwise (suffix-tree test)
    Check {
        word: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// Cross-check the suffix-tree answer against the rotation test
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand)]
enum IrredCmd {
    /// Stream one record per monic irreducible polynomial of degree n
    List {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "polynomials-and-roots")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "normal")]
        basis: BasisArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Suppress records; print per-record latency statistics instead
        #[arg(long)]
        quiet: bool,
    },
    /// Print the number of monic irreducible polynomials of degree n
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
    },
    /// Run a full enumeration through the self-check harness
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct BenchCommon {
    #[arg(long, value_enum, default_value = "text")]
    format: BenchFormat,
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Full enumeration update counts against the constant-amortized bound
    Cat {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: BenchCommon,
    },
    /// Plain vs compressed successor cost on the word 0 1^k 0 1^(k+1)
    Pathological {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: BenchCommon,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn check_alphabet(q: u32) -> Result<Alphabet, ExitCode> {
    if q < 2 {
        return Err(usage_error(&format!(
            "alphabet size must be at least 2, got {q}"
        )));
    }
    Ok(Alphabet::new(q))
}

fn check_prime(p: u64) -> Result<(), ExitCode> {
    lynfield::field::PrimeField::new(p)
        .map(|_| ())
        .map_err(|e| usage_error(&e.to_string()))
}

fn check_length(n: usize) -> Result<(), ExitCode> {
    if n == 0 {
        return Err(usage_error("length must be at least 1"));
    }
    Ok(())
}

fn parse_word(text: &str, alphabet: Alphabet, n: usize) -> Result<Word, ExitCode> {
    let word = Word::parse(text, alphabet).map_err(|e| usage_error(&e.to_string()))?;
    if word.len() != n {
        return Err(usage_error(&format!(
            "word has length {}, expected n = {n}",
            word.len()
        )));
    }
    Ok(word)
}

/// Streams items one per line, flushing after each so downstream consumers
/// observe the per-record delay. With `quiet`, prints latency statistics
/// instead of the records.
fn stream_lines<I: Iterator<Item = String>>(items: I, quiet: bool) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if !quiet {
        for line in items {
            writeln!(out, "{line}").expect("stdout closed");
            out.flush().expect("stdout closed");
        }
        return;
    }
    let mut count = 0u64;
    let mut max_us = 0.0f64;
    let mut total_us = 0.0f64;
    let mut last = Instant::now();
    for _ in items {
        let us = last.elapsed().as_secs_f64() * 1e6;
        last = Instant::now();
        count += 1;
        total_us += us;
        if us > max_us {
            max_us = us;
        }
    }
    writeln!(
        out,
        "records={count} mean_us={:.2} max_us={:.2}",
        if count == 0 {
            0.0
        } else {
            total_us / count as f64
        },
        max_us
    )
    .expect("stdout closed");
}

fn lyndon_word_line(word: &Word, format: Format) -> String {
    match format {
        Format::Text => word.to_string(),
        Format::Jsonl => json!({ "word": word.to_string() }).to_string(),
    }
}

fn record_line(record: &EnumRecord, format: Format) -> String {
    match format {
        Format::Text => record.to_line(),
        Format::Jsonl => {
            let mut obj = json!({ "lyndon": record.lyndon.to_string() });
            let map = obj.as_object_mut().unwrap();
            if let Some(poly) = &record.polynomial {
                map.insert("poly".into(), json!(poly.coeffs()));
            }
            if let Some(roots) = &record.roots {
                map.insert("roots".into(), json!(roots));
                let basis = match record.root_basis {
                    RootBasis::Normal => "normal",
                    RootBasis::Poly => "poly",
                };
                map.insert("basis".into(), json!(basis));
            }
            obj.to_string()
        }
    }
}

fn run_lyndon(cmd: LyndonCmd) -> ExitCode {
    match cmd {
        LyndonCmd::List {
            q,
            n,
            limit,
            format,
            quiet,
        } => {
            let Ok(_) = check_alphabet(q) else {
                return ExitCode::from(EXIT_USAGE);
            };
            if let Err(code) = check_length(n) {
                return code;
            }
            let words = enumerate_all(n, q).take(limit.unwrap_or(usize::MAX));
            stream_lines(words.map(move |w| lyndon_word_line(&w, format)), quiet);
            ExitCode::SUCCESS
        }
        LyndonCmd::Next { word, q, n } => {
            let alphabet = match check_alphabet(q) {
                Ok(a) => a,
                Err(code) => return code,
            };
            if let Err(code) = check_length(n) {
                return code;
            }
            let word = match parse_word(&word, alphabet, n) {
                Ok(w) => w,
                Err(code) => return code,
            };
            if !is_lyndon_naive(&word) {
                return usage_error(&format!("{word} is not a Lyndon word"));
            }
            let mut e = LyndonEnumerator::from_word(&word, n);
            match e.next() {
                Some(next) => println!("{next}"),
                None => println!("exhausted"),
            }
            ExitCode::SUCCESS
        }
        LyndonCmd::Count { q, n } => {
            let Ok(_) = check_alphabet(q) else {
                return ExitCode::from(EXIT_USAGE);
            };
            if let Err(code) = check_length(n) {
                return code;
            }
            println!("{}", count_lyndon(n, q));
            ExitCode::SUCCESS
        }
        LyndonCmd::Check { word, q, n, verify } => {
            let alphabet = match check_alphabet(q) {
                Ok(a) => a,
                Err(code) => return code,
            };
            if let Err(code) = check_length(n) {
                return code;
            }
            let word = match parse_word(&word, alphabet, n) {
                Ok(w) => w,
                Err(code) => return code,
            };
            let answer = is_lyndon_suffix_tree(&word);
            if verify {
                let naive = is_lyndon_naive(&word);
                if naive != answer {
                    eprintln!(
                        "internal error: suffix-tree test says {answer}, rotation test says {naive}"
                    );
                    return ExitCode::from(EXIT_INCONSISTENT);
                }
            }
            if answer {
                println!("{word} is a Lyndon word");
                ExitCode::SUCCESS
            } else {
                println!("{word} is not a Lyndon word");
                ExitCode::from(EXIT_FALSE)
            }
        }
    }
}

fn run_irred(cmd: IrredCmd) -> ExitCode {
    match cmd {
        IrredCmd::List {
            p,
            n,
            mode,
            basis,
            seed,
            limit,
            format,
            quiet,
        } => {
            if let Err(code) = check_prime(p) {
                return code;
            }
            if let Err(code) = check_length(n) {
                return code;
            }
            let cfg = EnumConfig {
                p,
                n,
                mode: mode.into(),
                limit,
                seed,
                root_basis: basis.into(),
            };
            let pipeline = match pipeline::run(cfg) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INCONSISTENT);
                }
            };
            let mut failed = false;
            {
                let failed = &mut failed;
                let lines = pipeline.map_while(move |r| match r {
                    Ok(record) => Some(record_line(&record, format)),
                    Err(e) => {
                        eprintln!("error: {e}");
                        *failed = true;
                        None
                    }
                });
                stream_lines(lines, quiet);
            }
            if failed {
                ExitCode::from(EXIT_INCONSISTENT)
            } else {
                ExitCode::SUCCESS
            }
        }
        IrredCmd::Count { p, n } => {
            if let Err(code) = check_prime(p) {
                return code;
            }
            if let Err(code) = check_length(n) {
                return code;
            }
            println!("{}", count_lyndon(n, p as u32));
            ExitCode::SUCCESS
        }
        IrredCmd::Verify { p, n, seed } => {
            if let Err(code) = check_prime(p) {
                return code;
            }
            if let Err(code) = check_length(n) {
                return code;
            }
            let cfg = EnumConfig {
                seed,
                ..EnumConfig::new(p, n)
            };
            let pipeline = match pipeline::run(cfg.clone()) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INCONSISTENT);
                }
            };
            let ctx = pipeline.ctx().clone();
            let mut records = Vec::new();
            for item in pipeline {
                match item {
                    Ok(record) => records.push(record),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(EXIT_INCONSISTENT);
                    }
                }
            }
            let report = pipeline::verify_stream(&records, &ctx, &cfg, false);
            println!("{report}");
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INCONSISTENT)
            }
        }
    }
}

fn run_bench(cmd: BenchCmd) -> ExitCode {
    match cmd {
        BenchCmd::Cat { q, n, common } => {
            let Ok(_) = check_alphabet(q) else {
                return ExitCode::from(EXIT_USAGE);
            };
            if let Err(code) = check_length(n) {
                return code;
            }
            let mut e = enumerate_all(n, q);
            while e.next().is_some() {}
            let tally = e.tally();
            let words = tally.per_step.len();
            let bound = 1.0 + 3.0 * f64::from(q) / f64::from(q - 1).powi(2);
            match common.format {
                BenchFormat::Text => {
                    println!(
                        "n={n} q={q} words={words} total_updates={} amortized={:.4} bound={bound:.4}",
                        tally.total, tally.amortized
                    );
                }
                BenchFormat::Csv => {
                    println!("n,q,words,total_updates,amortized,bound");
                    println!(
                        "{n},{q},{words},{},{:.6},{bound:.6}",
                        tally.total, tally.amortized
                    );
                }
            }
            ExitCode::SUCCESS
        }
        BenchCmd::Pathological { k, common } => {
            if k == 0 {
                return usage_error("k must be at least 1");
            }
            let word = pathological_word(k);
            let n = 2 * k + 3;
            let (plain_next, plain_updates) = plain_next_of_length_n(&word, n);
            let mut e = LyndonEnumerator::from_word(&word, n);
            let compressed_next = e.next();
            let compressed_updates = e.update_count();
            if plain_next != compressed_next {
                eprintln!("internal error: plain and compressed successors disagree");
                return ExitCode::from(EXIT_INCONSISTENT);
            }
            match common.format {
                BenchFormat::Text => {
                    println!(
                        "k={k} n={n} plain_updates={plain_updates} compressed_updates={compressed_updates}"
                    );
                }
                BenchFormat::Csv => {
                    println!("k,n,plain_updates,compressed_updates");
                    println!("{k},{n},{plain_updates},{compressed_updates}");
                }
            }
            ExitCode::SUCCESS
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Lyndon(cmd) => run_lyndon(cmd),
        Command::Irred(cmd) => run_irred(cmd),
        Command::Bench(cmd) => run_bench(cmd),
    }
}
