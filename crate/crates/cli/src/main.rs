//! `chiseries`: validate Seifert matrices, compute `chi_f` and the torsion
//! series, fuzz S-equivalence moves and run the property self-check.
//!
//! Exit codes: 0 success, 1 semantic failure (invalid matrix, failed
//! check), 2 I/O or parse error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use chiseries::chi::{chi, structured_terms, torsion_polynomial};
use chiseries::genfun::{BiSeries, BiWord, Builtin};
use chiseries::random::{random_moves, rng_from_seed};
use chiseries::rational::parse_rational;
use chiseries::seifert::{parse_seifert, serialize_seifert, SeifertMatrix};
use chiseries::selfcheck;
use clap::{Parser, Subcommand};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "chiseries", version, about = "Seifert-matrix power-series link invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Seifert matrix axioms; violations are printed one per line.
    Validate { file: PathBuf },
    /// Print chi_f(A) truncated at the given degree.
    Chi {
        file: PathBuf,
        /// delta, phi, mono:<word> (e.g. mono:x.z.z.x) or list:<path>.
        #[arg(long = "f", default_value = "delta")]
        f: FSpec,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// Emit `[numerator, denominator, [letters]]` triples as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the normalized torsion series.
    Torsion {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// Apply random S1/S2 moves and print the resulting matrix.
    Move {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Run the randomized property suites.
    Selfcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        degree: usize,
        /// Corrupt one comparison; the run must then fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Debug)]
enum FSpec {
    Builtin(Builtin),
    Mono(BiWord),
    List(PathBuf),
}

impl FromStr for FSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(w) = s.strip_prefix("mono:") {
            return w.parse().map(FSpec::Mono).map_err(|e| e.to_string());
        }
        if let Some(p) = s.strip_prefix("list:") {
            return Ok(FSpec::List(p.into()));
        }
        s.parse()
            .map(FSpec::Builtin)
            .map_err(|_| format!("unknown series `{s}`: expected delta, phi, mono:<word> or list:<path>"))
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn semantic(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<chiseries::Error> for Failure {
    fn from(e: chiseries::Error) -> Self {
        match e {
            chiseries::Error::Parse(_) => Failure::input(e.to_string()),
            _ => Failure::semantic(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SeifertMatrix, Failure> {
    parse_seifert(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<SeifertMatrix, Failure> {
    let a = load(path)?;
    let violations = a.validate();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Failure::semantic(format!("{}: not a Seifert matrix\n{}", path.display(), lines.join("\n"))));
    }
    Ok(a)
}

/// One term per line, `<coefficient> <word>`; blank lines and `#` comments
/// are skipped.
fn load_series_list(path: &Path, degree: usize) -> Result<BiSeries, Failure> {
    let text = read(path)?;
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |e: String| Failure::input(format!("{}:{}: {e}", path.display(), i + 1));
        let (coef, word) =
            line.split_once(char::is_whitespace).ok_or_else(|| bad("expected `<coefficient> <word>`".into()))?;
        let c = parse_rational(coef).map_err(|e| bad(e.to_string()))?;
        let w: BiWord = word.parse().map_err(|e: chiseries::Error| bad(e.to_string()))?;
        terms.push((w, c));
    }
    Ok(BiSeries::from_terms(degree, terms))
}

fn series_for(spec: &FSpec, degree: usize) -> Result<BiSeries, Failure> {
    Ok(match spec {
        FSpec::Builtin(b) => BiSeries::builtin(*b, degree),
        FSpec::Mono(w) => BiSeries::monomial(w.clone(), degree),
        FSpec::List(p) => load_series_list(p, degree)?,
    })
}

fn print_lines(text: &str) {
    if !text.is_empty() {
        println!("{text}");
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file } => {
            let a = load(&file)?;
            let violations = a.validate();
            if violations.is_empty() {
                println!("ok: {} components, block sizes {:?}", a.components(), a.structure().sizes());
                return Ok(());
            }
            for v in &violations {
                println!("{v}");
            }
            Err(Failure::semantic(format!("{} violation(s)", violations.len())))
        }
        Command::Chi { file, f, degree, json } => {
            let a = load_valid(&file)?;
            let series = series_for(&f, degree)?;
            let result = chi(&series, &a, degree)?;
            if json {
                let triples: Vec<Value> = structured_terms(&result)
                    .into_iter()
                    .map(|(num, den, word)| {
                        let number = |v: String| Value::Number(v.parse().expect("integers are valid JSON numbers"));
                        Value::Array(vec![number(num.to_string()), number(den.to_string()), word.into()])
                    })
                    .collect();
                println!("{}", Value::Array(triples));
            } else {
                print_lines(&result.to_string());
            }
            Ok(())
        }
        Command::Torsion { file, degree } => {
            let a = load_valid(&file)?;
            print_lines(&torsion_polynomial(&a, degree)?.to_string());
            Ok(())
        }
        Command::Move { file, seed, count } => {
            let a = load_valid(&file)?;
            let b = random_moves(&mut rng_from_seed(seed), &a, count, 3);
            print!("{}", serialize_seifert(&b));
            Ok(())
        }
        Command::Selfcheck { seed, degree, inject_fault } => {
            let report = selfcheck::run(&selfcheck::Options { seed, degree, inject_fault });
            for suite in &report.suites {
                println!("{suite}");
            }
            let failed = report.suites.iter().filter(|s| !s.passed()).count();
            println!("{} suites, {failed} failed", report.suites.len());
            if failed > 0 {
                return Err(Failure::semantic("self-check failed"));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
