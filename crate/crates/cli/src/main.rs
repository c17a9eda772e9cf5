//! `qbooth` — build, run, and verify Booth-recoded reversible multiplier
//! circuits from the command line.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qbooth::circuit::Circuit;
use qbooth::multiplier::{
    build_qbm, circuit_stats, qbm_multiply, MultiplierError, StatsRow, MAX_MULTIPLIER_WIDTH,
};
use qbooth::numeric::{
    booth_recode, classical_booth_multiply, from_twos_complement, render_trace, BitVec,
    NumericError, SignedWord,
};
use qbooth::verify::{verify_multiplier, SweepMode};

/// Widest operand the exhaustive verifier enumerates; beyond this the pair
/// count (4^n) makes seeded random sampling the supported mode.
const MAX_EXHAUSTIVE_WIDTH: usize = 6;

#[derive(Parser)]
#[command(name = "qbooth", version, about = "Booth-recoded reversible multiplier circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two signed integers through the reversible circuit.
    Multiply {
        /// Operand width in bits.
        #[arg(long)]
        width: usize,
        /// Multiplier (the recoded operand).
        #[arg(long, allow_negative_numbers = true)]
        x: i64,
        /// Multiplicand.
        #[arg(long, allow_negative_numbers = true)]
        y: i64,
    },
    /// Print the classical machine's per-cycle register table.
    Trace {
        #[arg(long)]
        width: usize,
        #[arg(long, allow_negative_numbers = true)]
        x: i64,
        #[arg(long, allow_negative_numbers = true)]
        y: i64,
    },
    /// Recode a binary chain over the digit alphabet {0, 1, N}.
    Recode {
        /// MSB-first chain of 0/1 characters.
        #[arg(long)]
        bits: String,
    },
    /// Build a circuit and write it out.
    Build {
        #[arg(long)]
        width: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BuildFormat::Qbc)]
        format: BuildFormat,
        #[arg(long, value_enum, default_value_t = Stage::Full)]
        stage: Stage,
    },
    /// Sweep operand pairs through the circuit and report pass/fail.
    Verify {
        #[arg(long)]
        width: usize,
        /// Check every operand pair (widths up to 6).
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Check this many seeded random pairs instead.
        #[arg(long, value_name = "K")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Structural metrics (qubits, gate counts, depth) per width.
    Stats {
        /// Inclusive width range `A..B`, or a single width.
        #[arg(long)]
        widths: String,
        #[arg(long, value_enum, default_value_t = StatsFormat::Text)]
        format: StatsFormat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildFormat {
    Qbc,
    Qasm3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    Encoder,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatsFormat {
    Csv,
    Text,
}

/// Failures mapped onto the exit-code contract: 1 usage, 2 operand range,
/// 3 I/O.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Range(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Range(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Range(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<NumericError> for CliError {
    fn from(err: NumericError) -> Self {
        CliError::Range(err.to_string())
    }
}

impl From<MultiplierError> for CliError {
    fn from(err: MultiplierError) -> Self {
        match err {
            MultiplierError::WidthZero | MultiplierError::WidthTooLarge { .. } => {
                CliError::Usage(err.to_string())
            }
            MultiplierError::Numeric(e) => e.into(),
            other => CliError::Range(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`qbooth ... | head`) instead of
    // panicking in println!.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version land here too; they are not failures.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}

fn check_width(width: usize) -> Result<(), CliError> {
    if width == 0 {
        return Err(CliError::Usage("width must be at least 1".into()));
    }
    if width > MAX_MULTIPLIER_WIDTH {
        return Err(CliError::Usage(format!(
            "width must be at most {MAX_MULTIPLIER_WIDTH}"
        )));
    }
    Ok(())
}

fn operands(width: usize, x: i64, y: i64) -> Result<(SignedWord, SignedWord), CliError> {
    check_width(width)?;
    Ok((SignedWord::new(x, width)?, SignedWord::new(y, width)?))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Multiply { width, x, y } => {
            let (x, y) = operands(width, x, y)?;
            let result = qbm_multiply(x, y)?;
            println!("{} ({})", result.product, result.result_bits());
            println!("ancillas: {}", result.cleanliness);
            Ok(())
        }
        Command::Trace { width, x, y } => {
            let (x, y) = operands(width, x, y)?;
            let (product, trace) = classical_booth_multiply(x, y);
            print!("{}", render_trace(&trace));
            println!("product: {} ({})", product, product.to_bits());
            Ok(())
        }
        Command::Recode { bits } => {
            let chain: BitVec = bits.parse()?;
            let digits = booth_recode(&chain);
            println!("{digits}");
            if chain.width() <= qbooth::numeric::MAX_WORD_WIDTH {
                let digit_value = digits.value();
                let chain_value = from_twos_complement(&chain);
                println!(
                    "digit value {} vs chain value {}: {}",
                    digit_value,
                    chain_value,
                    if digit_value == chain_value { "ok" } else { "MISMATCH" }
                );
            } else {
                println!("value check skipped: chain wider than 63 bits");
            }
            Ok(())
        }
        Command::Build {
            width,
            out,
            format,
            stage,
        } => {
            check_width(width)?;
            let circuit = build_stage(width, stage)?;
            let text = match format {
                BuildFormat::Qbc => circuit.to_qbc(),
                BuildFormat::Qasm3 => circuit
                    .to_qasm3()
                    .map_err(|e| CliError::Usage(e.to_string()))?,
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Verify {
            width,
            exhaustive: _, // the default; kept as a flag for explicit invocations
            random,
            seed,
        } => {
            check_width(width)?;
            let mode = match random {
                Some(samples) => SweepMode::Random { samples, seed },
                None => SweepMode::Exhaustive,
            };
            if mode == SweepMode::Exhaustive && width > MAX_EXHAUSTIVE_WIDTH {
                return Err(CliError::Usage(format!(
                    "exhaustive sweeps support widths up to {MAX_EXHAUSTIVE_WIDTH}; use --random K --seed S"
                )));
            }
            let report = verify_multiplier(width, mode)?;
            println!("{report}");
            Ok(())
        }
        Command::Stats { widths, format } => {
            let (lo, hi) = parse_width_range(&widths)?;
            check_width(lo)?;
            check_width(hi)?;
            let rows = circuit_stats(lo..=hi)?;
            match format {
                StatsFormat::Csv => print_stats_csv(&rows),
                StatsFormat::Text => print_stats_text(&rows),
            }
            Ok(())
        }
    }
}

fn build_stage(width: usize, stage: Stage) -> Result<Circuit, CliError> {
    match stage {
        Stage::Encoder => {
            let (circuit, _) = qbooth::encoder::build_booth_encoder(width)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(circuit)
        }
        Stage::Full => {
            let (circuit, _) = build_qbm(width)?;
            Ok(circuit)
        }
    }
}

/// Parses `A..B` (inclusive) or a bare width `A`.
fn parse_width_range(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("bad width range {text:?}; expected A..B"));
    match text.split_once("..") {
        Some((a, b)) => {
            let lo = a.trim().parse::<usize>().map_err(|_| bad())?;
            let hi = b.trim().parse::<usize>().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            Ok((lo, hi))
        }
        None => {
            let n = text.trim().parse::<usize>().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn print_stats_csv(rows: &[StatsRow]) {
    println!("n,qubits,x,cx,swap,cswap,mcx,depth");
    for row in rows {
        let c = row.counts;
        println!(
            "{},{},{},{},{},{},{},{}",
            row.n, row.qubits, c.x, c.cx, c.swap, c.cswap, c.mcx, row.depth
        );
    }
}

fn print_stats_text(rows: &[StatsRow]) {
    println!(
        "{:>4} {:>7} {:>6} {:>6} {:>6} {:>6} {:>6} {:>7}",
        "n", "qubits", "x", "cx", "swap", "cswap", "mcx", "depth"
    );
    for row in rows {
        let c = row.counts;
        println!(
            "{:>4} {:>7} {:>6} {:>6} {:>6} {:>6} {:>6} {:>7}",
            row.n, row.qubits, c.x, c.cx, c.swap, c.cswap, c.mcx, row.depth
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_range_parsing() {
        assert_eq!(parse_width_range("2..6").unwrap(), (2, 6));
        assert_eq!(parse_width_range("4").unwrap(), (4, 4));
        assert_eq!(parse_width_range("4..4").unwrap(), (4, 4));
        assert!(parse_width_range("6..2").is_err());
        assert!(parse_width_range("a..b").is_err());
        assert!(parse_width_range("").is_err());
    }
}
