//! `hyperstern` subcommands.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hyperstern_core::envelope::{
    convergence_report, maximal_order_constant, measure_strengthening_unrestricted,
    scan_normalized_max, verify_envelope, verify_h_recurrence, verify_records,
    verify_strengthening, Envelope, PowerLaw,
};
use hyperstern_core::linrep::stern_rep;
use hyperstern_core::oracle::{
    count_expansions, list_expansions, s_via_oracle, verify_engines, ExpansionCounter,
};
use hyperstern_core::stern::{
    self, check_case_identities, verify_embedding, SternTable, DEFAULT_TABULATION_LIMIT,
};
use hyperstern_core::{Base, BigCount, BigRational, Report};
use num_bigint::{BigInt, BigUint};

use crate::csv::CsvWriter;
use crate::rep_format;

/// Significant digits for high-precision columns in CSV output.
const CSV_DIGITS: usize = 30;

#[derive(Debug, Parser)]
#[command(
    name = "hyperstern",
    version,
    about = "Counts hyper-b-ary expansions and checks their extremal bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct BaseArg {
    /// Numeral base b >= 2
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    base: u32,
}

impl BaseArg {
    fn get(&self) -> Base {
        Base::new(self.base).expect("range-checked by clap")
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Recurrence,
    Matrix,
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Envelope,
    Strengthening,
    HRecurrence,
    Identities,
    Oracle,
    Embedding,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print s_b(n)
    Compute {
        #[command(flatten)]
        base: BaseArg,
        #[arg(value_parser = parse_count)]
        n: BigCount,
        /// Engine to use; by default recurrence and matrix are both run and compared
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// List the hyper-b-ary expansions of n, least significant coefficient first
    Enumerate {
        #[command(flatten)]
        base: BaseArg,
        #[arg(value_parser = parse_count)]
        n: BigCount,
        /// Maximum number of expansions to print
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Record positions a_k, F_k and their ratio to H, as CSV
    Records {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long = "kmax", value_parser = clap::value_parser!(u32).range(2..))]
        k_max: u32,
        /// Intervals [b^(k-2), b^(k-1)) are scanned exhaustively while b^(k-1) <= max
        #[arg(long = "max", default_value_t = 1_000_000)]
        scan_limit: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one verification suite
    Verify {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Range bound of the suite (n, m, j or x maximum)
        #[arg(long = "max")]
        max: u64,
        /// Random points for h-recurrence
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Seed for h-recurrence (required there)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the maximal-order constant c_b
    Constant {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..=50))]
        digits: u32,
    },
    /// Tabulate s_b(m), h(m) and s_b(m)/H(m) for 1 <= m <= max, as CSV
    Scan {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long = "max", value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a linear representation file at n, or check it against s_b
    #[command(name = "eval-rep")]
    EvalRep {
        file: PathBuf,
        #[arg(value_parser = parse_count)]
        n: Option<BigCount>,
        /// Compare against the recurrence for s_b on 0..=max
        #[arg(long = "max")]
        max: Option<u64>,
    },
}

fn parse_count(s: &str) -> Result<BigCount, String> {
    s.parse::<BigUint>()
        .map_err(|_| format!("`{s}` is not a nonnegative decimal integer"))
}

#[derive(Debug)]
pub enum Failure {
    /// A checked property did not hold.
    Verification(String),
    /// Bad arguments, unreadable input or capacity limits.
    Usage(String),
    Io(io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) | Failure::Io(_) => 2,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<hyperstern_core::Error> for Failure {
    fn from(e: hyperstern_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Verification(msg) => write!(f, "verification failed: {msg}"),
            Failure::Usage(msg) => write!(f, "{msg}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

/// Parses `args` (program name first), runs the command, and maps the outcome
/// to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    match run(cli, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("hyperstern: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn open_out<'a>(
    path: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> io::Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(stdout)),
    })
}

fn finish_report(report: &Report, err: &mut dyn Write) -> Result<(), Failure> {
    writeln!(err, "{report}")?;
    for v in report.violations.iter().take(10) {
        writeln!(err, "  {}: {}", v.at, v.detail)?;
    }
    if report.is_clean() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} violation(s) in suite {}",
            report.violations.len(),
            report.suite
        )))
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Compute { base, n, method } => compute(base.get(), &n, method, out),
        Command::Enumerate { base, n, cap } => enumerate(base.get(), &n, cap, out, err),
        Command::Records {
            base,
            k_max,
            scan_limit,
            out: path,
        } => records(
            base.get(),
            k_max,
            scan_limit,
            &mut *open_out(&path, out)?,
            err,
        ),
        Command::Verify {
            base,
            suite,
            max,
            trials,
            seed,
        } => verify(base.get(), suite, max, trials, seed, err),
        Command::Constant { base, digits } => constant(base.get(), digits as usize, out),
        Command::Scan {
            base,
            max,
            out: path,
        } => scan(base.get(), max, &mut *open_out(&path, out)?, err),
        Command::EvalRep { file, n, max } => eval_rep(&file, n, max, out, err),
    }
}

fn compute(
    base: Base,
    n: &BigCount,
    method: Option<Method>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let value = match method {
        Some(Method::Recurrence) => stern::s(base, n),
        Some(Method::Matrix) => to_count(stern_rep(base).evaluate_at(n))?,
        Some(Method::Oracle) => s_via_oracle(&mut ExpansionCounter::new(base), n),
        None => {
            let rec = stern::s(base, n);
            let mat = to_count(stern_rep(base).evaluate_at(n))?;
            if rec != mat {
                return Err(Failure::Verification(format!(
                    "recurrence gives {rec} but matrix product gives {mat}"
                )));
            }
            rec
        }
    };
    writeln!(out, "{value}")?;
    Ok(())
}

fn to_count(x: BigInt) -> Result<BigCount, Failure> {
    x.to_biguint()
        .ok_or_else(|| Failure::Verification(format!("negative count {x}")))
}

fn enumerate(
    base: Base,
    n: &BigCount,
    cap: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let listing = list_expansions(base, n, cap);
    let mut out = BufWriter::new(out);
    for e in &listing.expansions {
        writeln!(out, "{e}")?;
    }
    let count = count_expansions(base, n);
    writeln!(out, "count={count}")?;
    out.flush()?;
    if listing.truncated {
        writeln!(
            err,
            "truncated: printed {} of {count} expansions",
            listing.expansions.len()
        )?;
    }
    Ok(())
}

fn records(
    base: Base,
    k_max: u32,
    scan_limit: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let scan = verify_records(base, k_max, scan_limit)?;
    let rows = convergence_report(base, k_max)?;
    let mut csv = CsvWriter::new(out, &["k", "a_k", "F_k", "ratio_to_H", "h_minus_H"])?;
    let mut report = scan.report;
    for (entry, row) in scan.entries.iter().zip(&rows) {
        debug_assert_eq!(entry.k, row.k);
        csv.row(&[
            row.k.to_string(),
            row.a_k.to_string(),
            row.f_k.to_string(),
            row.ratio_to_h.to_decimal(CSV_DIGITS),
            row.h_minus_h.to_decimal(CSV_DIGITS),
        ])?;
        if let Some(ok) = row.matrix_check {
            report.check(
                ok,
                || format!("k={}", row.k),
                || "matrix product disagrees with F_k".into(),
            );
        }
        if row.k % 2 == 0 {
            let one = BigRational::from_integer(1.into());
            report.check(
                row.ratio_to_envelope() == one,
                || format!("k={}", row.k),
                || "s_b(a_k) != h(a_k) at an even record".into(),
            );
        }
    }
    csv.finish()?;
    finish_report(&report, err)
}

fn verify(
    base: Base,
    suite: Suite,
    max: u64,
    trials: u64,
    seed: Option<u64>,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let report = match suite {
        Suite::Envelope => verify_envelope(base, max)?,
        Suite::Strengthening => {
            let report = verify_strengthening(base, max);
            if max <= DEFAULT_TABULATION_LIMIT {
                let loose = measure_strengthening_unrestricted(base, max)?;
                writeln!(
                    err,
                    "info: without the zero-one digit restriction: checked={} exceeded={}",
                    loose.checked,
                    loose.violations.len()
                )?;
            }
            report
        }
        Suite::HRecurrence => {
            let seed =
                seed.ok_or_else(|| Failure::Usage("suite h-recurrence requires --seed".into()))?;
            let x_max = BigRational::from_integer(max.into());
            verify_h_recurrence(base, trials, &x_max, seed)
        }
        Suite::Identities => check_case_identities(base, max),
        Suite::Oracle => verify_engines(base, max)?,
        Suite::Embedding => verify_embedding(base, max),
    };
    finish_report(&report, err)
}

fn constant(base: Base, digits: usize, out: &mut dyn Write) -> Result<(), Failure> {
    let c = maximal_order_constant(base)?;
    writeln!(out, "{}", c.to_decimal(digits))?;
    Ok(())
}

fn scan(base: Base, n_max: u64, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let table = SternTable::new(base, n_max)?;
    let law = PowerLaw::new(base)?;
    let mut env = Envelope::new(base);
    let mut csv = CsvWriter::new(out, &["m", "s_b", "h_num", "h_den", "ratio_to_H"])?;
    let mut k = 0;
    let mut seg = env.segment(0);
    for m in 1..=n_max {
        let mr = BigRational::from_integer(m.into());
        while *env.knot(k + 1) <= mr {
            k += 1;
            seg = env.segment(k);
        }
        let h = seg.eval(&mr);
        let s = table.get(m);
        let ratio = s as f64 / law.eval_f64(m as f64);
        csv.row(&[
            m.to_string(),
            s.to_string(),
            h.numer().to_string(),
            h.denom().to_string(),
            ratio.to_string(),
        ])?;
    }
    let summary = scan_normalized_max(base, n_max)?;
    csv.row(&[
        "argmax".to_string(),
        summary.argmax.to_string(),
        String::new(),
        String::new(),
        summary.max_ratio.to_decimal(CSV_DIGITS),
    ])?;
    csv.finish()?;
    writeln!(
        err,
        "argmax={} max_ratio={} above_one={}",
        summary.argmax,
        summary.max_ratio.to_decimal(20),
        summary.exceeds_one
    )?;
    finish_report(&summary.envelope, err)
}

fn eval_rep(
    file: &PathBuf,
    n: Option<BigCount>,
    max: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    if n.is_none() && max.is_none() {
        return Err(Failure::Usage("eval-rep needs an index n or --max".into()));
    }
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let rep =
        rep_format::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    if let Some(n) = n {
        writeln!(out, "{}", rep.evaluate_at(&n))?;
    }
    if let Some(max) = max {
        let table = SternTable::new(rep.base(), max)?;
        let mut report = Report::new("eval-rep");
        for m in 0..=max {
            let got = rep.evaluate_at(&BigUint::from(m));
            let want = table.get(m);
            report.check(
                got == BigInt::from(want),
                || format!("n={m}"),
                || format!("representation gives {got}, s_b gives {want}"),
            );
        }
        finish_report(&report, err)?;
    }
    Ok(())
}
