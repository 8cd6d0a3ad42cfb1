//! Command-line front end.
//!
//! Exit status: 0 for valid input, a passing run or a clean decode; 1 for
//! invalid input or a counterexample; 2 for usage and input errors.

use std::fs;
use std::io::{BufRead, Write};
use std::num::NonZeroUsize;

use clap::{Parser, Subcommand, ValueEnum};

use crate::digits::{format_digit_string, parse_digit_string, Digit};
use crate::engine::{format_summary, Runner, SummaryStyle, DEFAULT_TRIALS};
use crate::error::Error;
use crate::mutate::{flip_bit, is_effective, Mutation, MutationKind};
use crate::postnet::{decode_message, detect_and_correct, encode_message, BitString, CorrectionStatus};
use crate::properties::{catalog, find};
use crate::schemes::{complete_check_digit, SchemeId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_SAMPLE_SIZE: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "checkdigit", version, about = "Check-digit schemes, error models and property runs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Airline,
    Routing,
    Luhn,
    Isbn10,
}

impl From<SchemeArg> for SchemeId {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Airline => SchemeId::Airline,
            SchemeArg::Routing => SchemeId::Routing,
            SchemeArg::Luhn => SchemeId::Luhn,
            SchemeArg::Isbn10 => SchemeId::Isbn10,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MutateOp {
    Substitute,
    Transpose,
    Flipbit,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Cgen,
    Json,
}

impl From<Format> for SummaryStyle {
    fn from(f: Format) -> Self {
        match f {
            Format::Cgen => SummaryStyle::CgenText,
            Format::Json => SummaryStyle::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a number against a scheme.
    Verify {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Digits to check, or "-" for stdin.
        #[arg(long)]
        digits: String,
    },
    /// Append the check digit to a body.
    Complete {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long)]
        digits: String,
        /// Insert '|' every N digits in the output.
        #[arg(long)]
        group: Option<NonZeroUsize>,
    },
    /// Apply one error to a digit or bit string.
    Mutate {
        #[arg(long, value_enum)]
        op: MutateOp,
        #[arg(long)]
        pos: usize,
        #[arg(long)]
        digit: Option<u8>,
        /// Digits for substitute/transpose, bits for flipbit; "-" reads stdin.
        #[arg(long, alias = "digits", alias = "bits")]
        input: String,
    },
    /// POSTNET-style digit code.
    Postnet {
        #[command(subcommand)]
        action: PostnetAction,
    },
    /// Catalog properties.
    Prop {
        #[command(subcommand)]
        action: PropAction,
    },
    /// Validate every line of a file ("-" for stdin).
    Corpus {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long)]
        path: String,
    },
}

#[derive(Debug, Subcommand)]
enum PostnetAction {
    Encode {
        #[arg(long)]
        digits: String,
    },
    Decode {
        #[arg(long)]
        bits: String,
    },
    Correct {
        #[arg(long)]
        bits: String,
    },
}

#[derive(Debug, Subcommand)]
enum PropAction {
    List,
    Run {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Cgen)]
        format: Format,
        #[arg(long)]
        workers: Option<usize>,
    },
    Exhaustive {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_SIZE)]
        sample_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Cgen)]
        format: Format,
        #[arg(long)]
        workers: Option<usize>,
    },
}

/// Standard streams, abstracted for tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn BufRead,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

enum Failure {
    Usage(String),
    Input(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { io.stderr.write_all(rendered.as_bytes()) } else { io.stdout.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, io) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}\n\nUsage: checkdigit <COMMAND>  (see --help)");
            EXIT_USAGE
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(io.stderr, "error: {e}");
            EXIT_USAGE
        }
        // the reader went away (e.g. piped into `head`); nothing left to say
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(io.stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_arg(value: &str, io: &mut Io<'_>) -> std::result::Result<String, Failure> {
    if value == "-" {
        let mut buf = String::new();
        io.stdin.read_to_string(&mut buf)?;
        Ok(buf.trim().to_string())
    } else {
        Ok(value.to_string())
    }
}

fn runner(workers: Option<usize>) -> Runner {
    match workers {
        Some(n) => Runner::new().workers(n),
        None => Runner::new(),
    }
}

fn execute(command: Command, io: &mut Io<'_>) -> CmdResult {
    match command {
        Command::Verify { scheme, digits } => {
            let text = read_arg(&digits, io)?;
            let ok = SchemeId::from(scheme).verify_text(&text)?;
            writeln!(io.stdout, "{}", if ok { "VALID" } else { "INVALID" })?;
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Complete { scheme, digits, group } => {
            let body = parse_digit_string(&read_arg(&digits, io)?)?;
            let done = complete_check_digit(scheme.into(), &body)?;
            match (&done, group) {
                (crate::schemes::Completed::Digits(ds), Some(_)) => {
                    writeln!(io.stdout, "{}", format_digit_string(ds, group))?
                }
                _ => writeln!(io.stdout, "{done}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Mutate { op, pos, digit, input } => {
            let text = read_arg(&input, io)?;
            let (before, after) = match op {
                MutateOp::Substitute => {
                    let d = digit.ok_or_else(|| Failure::Usage("--digit is required for substitute".into()))?;
                    let ds = parse_digit_string(&text)?;
                    let m = Mutation::new(MutationKind::Substitute { position: pos, digit: Digit::new(d)? }, ds.len())?;
                    (ds.to_string(), m.apply_digits(&ds)?.to_string())
                }
                MutateOp::Transpose => {
                    let ds = parse_digit_string(&text)?;
                    let m = Mutation::new(MutationKind::Transpose { position: pos }, ds.len())?;
                    (ds.to_string(), m.apply_digits(&ds)?.to_string())
                }
                MutateOp::Flipbit => {
                    let bits = BitString::parse(&text)?;
                    (bits.to_string(), flip_bit(&bits, pos)?.to_string())
                }
            };
            writeln!(io.stdout, "{after}")?;
            if !is_effective(&before, &after) {
                writeln!(io.stderr, "note: mutation left the input unchanged")?;
            }
            Ok(EXIT_OK)
        }
        Command::Postnet { action } => postnet(action, io),
        Command::Prop { action } => prop(action, io),
        Command::Corpus { scheme, path } => corpus_verify(scheme.into(), &path, io),
    }
}

fn postnet(action: PostnetAction, io: &mut Io<'_>) -> CmdResult {
    match action {
        PostnetAction::Encode { digits } => {
            let ds = parse_digit_string(&read_arg(&digits, io)?)?;
            writeln!(io.stdout, "{}", encode_message(&ds)?)?;
            Ok(EXIT_OK)
        }
        PostnetAction::Decode { bits } => {
            let bits = BitString::parse(&read_arg(&bits, io)?)?;
            match decode_message(&bits) {
                Ok(ds) => {
                    writeln!(io.stdout, "{ds}")?;
                    Ok(EXIT_OK)
                }
                Err(e @ Error::BadLength(_)) => Err(e.into()),
                Err(e) => {
                    writeln!(io.stdout, "CORRUPT {}: {e}", e.kind())?;
                    Ok(EXIT_FAIL)
                }
            }
        }
        PostnetAction::Correct { bits } => {
            let bits = BitString::parse(&read_arg(&bits, io)?)?;
            let report = detect_and_correct(&bits)?;
            let recovered = report.recovered.map(|d| d.to_string()).unwrap_or_default();
            match report.status {
                CorrectionStatus::Clean => {
                    writeln!(io.stdout, "CLEAN {recovered}")?;
                    Ok(EXIT_OK)
                }
                CorrectionStatus::CorrectedDigit { position, from, to } => {
                    writeln!(io.stdout, "CORRECTED block {position} {from} -> {to}: {recovered}")?;
                    Ok(EXIT_OK)
                }
                CorrectionStatus::Uncorrectable(reason) => {
                    writeln!(io.stdout, "UNCORRECTABLE {reason}")?;
                    Ok(EXIT_FAIL)
                }
            }
        }
    }
}

fn prop(action: PropAction, io: &mut Io<'_>) -> CmdResult {
    match action {
        PropAction::List => {
            for entry in catalog() {
                let vars: Vec<&str> = entry.property.bindings().iter().map(|(k, _)| k.as_str()).collect();
                writeln!(io.stdout, "{:<4} {:<30} ({}) expected: {}", entry.id, entry.slug, vars.join(", "), entry.expected)?;
            }
            Ok(EXIT_OK)
        }
        PropAction::Run { name, trials, seed, format, workers } => {
            if trials == 0 {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            let entry = find(&name)?;
            let summary = runner(workers).run_property(&entry.property, trials, seed)?;
            write!(io.stdout, "{}", with_newline(format_summary(&summary, format.into())))?;
            if summary.vacuous {
                writeln!(io.stderr, "warning: no generated example satisfied the hypotheses")?;
            }
            Ok(if summary.found_counterexample() { EXIT_FAIL } else { EXIT_OK })
        }
        PropAction::Exhaustive { name, sample_size, seed, format, workers } => {
            let entry = find(&name)?;
            let property = entry.exhaustive_property(sample_size, seed)?;
            let summary = runner(workers).run_exhaustive(&property)?;
            write!(io.stdout, "{}", with_newline(format_summary(&summary, format.into())))?;
            Ok(if summary.found_counterexample() { EXIT_FAIL } else { EXIT_OK })
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// One report line per non-comment, non-blank input line.
fn corpus_verify(scheme: SchemeId, path: &str, io: &mut Io<'_>) -> CmdResult {
    let text = if path == "-" {
        let mut buf = String::new();
        io.stdin.read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(path)?
    };
    let (mut valid, mut total) = (0usize, 0usize);
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        total += 1;
        let verdict = match scheme.verify_text(line) {
            Ok(true) => {
                valid += 1;
                "VALID".to_string()
            }
            Ok(false) => "INVALID".to_string(),
            Err(e) => format!("ERROR({}: {e})", e.kind()),
        };
        writeln!(io.stdout, "{}: {verdict}", i + 1)?;
    }
    writeln!(io.stdout, "valid {valid}/{total}")?;
    Ok(if valid == total { EXIT_OK } else { EXIT_FAIL })
}
