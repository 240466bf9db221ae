//! `rspin`: compute r-spin invariants, tropicalize Witten classes, and run
//! verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rspin::chambers::chamber_scan;
use rspin::invariants::{compute, integrality_quotient, MethodChoice};
use rspin::monodromy::numerical_partitions;
use rspin::rational::{format, int};
use rspin::tropical::{
    boomerang, check_balancing_face, check_balancing_origin, export_cycle, faces, import_cycle, TropicalCycle,
};
use rspin::verify::{run_suite, SUITES};
use rspin::{Error, MonodromyVector};

#[derive(Parser)]
#[command(name = "rspin", version, about = "Exact genus-zero r-spin invariants and their tropicalizations")]
struct Cli {
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Oracle,
    Auto,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Closed => MethodChoice::Closed,
            MethodArg::Oracle => MethodChoice::Oracle,
            MethodArg::Auto => MethodChoice::Auto,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Value of w_r at a numerical vector, e.g. "r=7;m=3,4,5,6,6".
    Compute {
        vector: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// All numerical vectors of length n up to permutation, sorted descending.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Cycle document of the tropicalized Witten class.
    Tropicalize {
        vector: String,
        /// Also list every weight multiplied by r (the only accepted value is "r").
        #[arg(long, num_args = 0..=1, default_missing_value = "r")]
        scale: Option<String>,
        /// For one-dimensional cycles, also print boomerangs at this anchor (1-based).
        #[arg(long)]
        anchor: Option<usize>,
    },
    /// Balancing checks on a cycle document ("-" reads standard input).
    Balance {
        file: String,
        /// Anchor mark (1-based) for one-dimensional cycles; default n.
        #[arg(long)]
        anchor: Option<usize>,
    },
    /// Chamber scan with verified chamber polynomials.
    Chambers {
        #[arg(long)]
        n: usize,
        #[arg(long = "r-max")]
        r_max: i64,
    },
    /// Run a verification suite ("all" runs every suite).
    Verify {
        suite: String,
        #[arg(long = "n-max", default_value_t = 6)]
        n_max: usize,
        #[arg(long = "r-max", default_value_t = 9)]
        r_max: i64,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn parse_vector(vector: &str) -> Result<MonodromyVector, Failure> {
    vector.parse().map_err(|e: Error| Failure::Usage(format!("{vector:?}: {e}")))
}

fn anchor_index(anchor: Option<usize>, n: usize) -> Result<usize, Failure> {
    match anchor.unwrap_or(n) {
        k if (1..=n).contains(&k) => Ok(k - 1),
        k => Err(Failure::Usage(format!("anchor {k} is not a mark of 1..={n}"))),
    }
}

fn cmd_compute(out: &mut impl Write, vector: &str, method: MethodArg) -> Outcome {
    let v = parse_vector(vector)?;
    let value = compute(&v, method.into())?;
    let normalized = integrality_quotient(&v, &value.value)?;
    writeln!(out, "{}", format(&value.value))?;
    writeln!(out, "normalized {normalized}")?;
    writeln!(out, "method {}", value.method)?;
    Ok(())
}

fn cmd_table(out: &mut impl Write, n: usize, r: i64, fmt: Format, method: MethodArg) -> Outcome {
    if n < 3 || r < 2 {
        return Err(Failure::Usage(format!("need n >= 3 and r >= 2, got n = {n}, r = {r}")));
    }
    if fmt == Format::Csv {
        let header: Vec<String> = (1..=n).map(|i| format!("m{i}")).collect();
        writeln!(out, "r,{},value", header.join(","))?;
    }
    for v in numerical_partitions(n, r) {
        let value = format(&compute(&v, method.into())?.value);
        let marks: Vec<String> = v.marks().iter().map(|m| m.to_string()).collect();
        match fmt {
            Format::Text => writeln!(out, "({}) → {value}", marks.join(","))?,
            Format::Csv => writeln!(out, "{r},{},{value}", marks.join(","))?,
            Format::JsonLines => {
                let record = serde_json::json!({ "r": r, "marks": v.marks(), "value": value });
                writeln!(out, "{record}")?
            }
        }
    }
    Ok(())
}

fn cmd_tropicalize(out: &mut impl Write, vector: &str, scale: Option<&str>, anchor: Option<usize>) -> Outcome {
    let v = parse_vector(vector)?;
    if let Some(s) = scale {
        if s != "r" {
            return Err(Failure::Usage(format!("--scale accepts only \"r\", got {s:?}")));
        }
    }
    let c = TropicalCycle::tropicalize(&v)?;
    write!(out, "{}", export_cycle(&c))?;
    if scale.is_some() {
        for (tree, w) in c.weights() {
            writeln!(out, "# scaled {tree} {}", format(&(w * int(v.r()))))?;
        }
    }
    if anchor.is_some() {
        if c.dim() != 1 {
            return Err(Failure::Usage(format!("--anchor needs a one-dimensional cycle, this one has dimension {}", c.dim())));
        }
        let k = anchor_index(anchor, v.n())?;
        for i in (0..v.n()).filter(|&i| i != k) {
            for j in (i + 1..v.n()).filter(|&j| j != k) {
                writeln!(out, "# boomerang {} {{{},{}}} {}", k + 1, i + 1, j + 1, format(&boomerang(&c, k, i, j)?))?;
            }
        }
    }
    Ok(())
}

fn cmd_balance(out: &mut impl Write, file: &str, anchor: Option<usize>) -> Outcome {
    let text = if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{file}: {e}")))?
    };
    let c = import_cycle(&text)?;
    let mut balanced = true;
    match c.dim() {
        0 => writeln!(out, "dimension 0: nothing to balance")?,
        1 => {
            let report = check_balancing_origin(&c, anchor_index(anchor, c.n())?)?;
            balanced = report.balanced;
            match &report.common_value {
                Some(b) => writeln!(out, "origin balanced, boomerang {}", format(b))?,
                None => writeln!(out, "origin UNBALANCED, boomerangs {}", report.residual)?,
            }
        }
        _ => {
            if anchor.is_some() {
                return Err(Failure::Usage("--anchor only applies to one-dimensional cycles".into()));
            }
            for tau in faces(&c) {
                let report = check_balancing_face(&c, &tau)?;
                balanced &= report.balanced;
                writeln!(out, "face {tau} {}", if report.balanced { "balanced" } else { "UNBALANCED" })?;
            }
        }
    }
    writeln!(out, "{}", if balanced { "balanced" } else { "unbalanced" })?;
    if balanced {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_chambers(out: &mut impl Write, n: usize, r_max: i64) -> Outcome {
    let scan = chamber_scan(n, r_max)?;
    write!(out, "{}", scan.report())?;
    let bad_strips = scan.check_strips()?;
    for a in &bad_strips {
        writeln!(out, "strip FAILED [{}] | [{}] across {}", a.low, a.high, a.wall)?;
    }
    writeln!(out, "adjacencies {} strip failures {}", scan.adjacencies().len(), bad_strips.len())?;
    if scan.verified() && bad_strips.is_empty() && scan.max_degree() <= (n as u32).saturating_sub(3) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_verify(out: &mut impl Write, suite: &str, n_max: usize, r_max: i64) -> Outcome {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut passed = true;
    for name in names {
        let result = run_suite(name, n_max, r_max)?;
        writeln!(out, "{result}")?;
        for f in &result.failures {
            writeln!(out, "  {f}")?;
        }
        passed &= result.passed();
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let outcome = match &cli.command {
        Command::Compute { vector, method } => cmd_compute(&mut out, vector, *method),
        Command::Table { n, r, format, method } => cmd_table(&mut out, *n, *r, *format, *method),
        Command::Tropicalize { vector, scale, anchor } => cmd_tropicalize(&mut out, vector, scale.as_deref(), *anchor),
        Command::Balance { file, anchor } => cmd_balance(&mut out, file, *anchor),
        Command::Chambers { n, r_max } => cmd_chambers(&mut out, *n, *r_max),
        Command::Verify { suite, n_max, r_max } => cmd_verify(&mut out, suite, *n_max, *r_max),
    };
    let flushed = out.flush();
    match outcome {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(2),
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
