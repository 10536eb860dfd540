//! The `salem` command line: conversions, cylinder queries, the reference
//! value table, CSV sampling of the Salem function and the invariant runner.
//!
//! Parsing and validation produce a [`CommandRequest`]; [`run_command`]
//! executes it and returns the text to print together with the exit status
//! (0 success, 1 failed check, 2 usage error).

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};

use crate::cylinders::{alternating_measure, Cylinder};
use crate::digits::{parse_digits, DigitWord, Digits, PeriodicDigits};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::operators::{AlternatingScheme, DigitPermutation};
use crate::salem::{EncodeResult, ProbabilityVector};
use crate::suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "salem", version, about = "Exact Salem-type digit representations of [0, 1]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Digit probabilities, e.g. 1/2,1/3,1/6
    #[arg(long = "p", value_name = "FRACS", conflicts_with = "q")]
    pub p: Option<ProbabilityVector>,
    /// Uniform system over q digits
    #[arg(long = "q", value_name = "INT")]
    pub q: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Decimal places for rendered values
    #[arg(long, value_name = "INT", default_value_t = 12)]
    pub places: usize,
    /// Print exact fractions only
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Greedy digits of a rational x in [0, 1]
    Encode {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_name = "FRAC")]
        x: Rational,
        #[arg(long = "max-digits", value_name = "INT", default_value_t = 4096)]
        max_digits: usize,
    },
    /// Exact value of a digit string (a finite word w means w(0))
    Decode {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_name = "DIGITS")]
        digits: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Endpoints and measure of the cylinder with the given base
    Cylinder {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_name = "WORD")]
        base: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Image of a digit string under a digit permutation (default 0,2,1)
    Map {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_name = "IMGS")]
        perm: Option<DigitPermutation>,
        #[arg(long, value_name = "DIGITS")]
        digits: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Alternating flip of a base word or digit string
    Alternate {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_name = "odd|even", default_value = "odd")]
        flip: AlternatingScheme,
        #[arg(long, value_name = "WORD", conflicts_with = "digits", required_unless_present = "digits")]
        base: Option<String>,
        #[arg(long, value_name = "DIGITS")]
        digits: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reference table of the distance and measure witnesses
    Demo {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// CSV samples of the Salem function on the grid k/n
    Sample {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_name = "INT")]
        n: u64,
        #[arg(long, value_name = "INT", default_value_t = 12)]
        places: usize,
    },
    /// Run the randomized invariant suites
    Check {
        #[arg(long, value_name = "INT", default_value_t = 42)]
        seed: u64,
        #[arg(long, value_name = "INT", default_value_t = 200)]
        cases: usize,
    },
}

/// Decimal rendering options.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputMode {
    pub places: usize,
    pub exact: bool,
}

impl From<&OutputArgs> for OutputMode {
    fn from(a: &OutputArgs) -> Self {
        OutputMode { places: a.places, exact: a.exact }
    }
}

/// A validated command.
#[derive(Debug, Clone)]
pub enum CommandRequest {
    Encode { system: ProbabilityVector, x: Rational, max_digits: usize },
    Decode { system: ProbabilityVector, digits: Digits, output: OutputMode },
    Cylinder { system: ProbabilityVector, base: DigitWord, output: OutputMode },
    Map { system: ProbabilityVector, perm: DigitPermutation, digits: PeriodicDigits, output: OutputMode },
    Alternate { system: ProbabilityVector, scheme: AlternatingScheme, payload: Digits, output: OutputMode },
    Demo { output: OutputMode },
    Sample { system: ProbabilityVector, n: u64, places: usize },
    Check { seed: u64, cases: usize },
}

/// A usage problem, attributed to the flag that caused it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub flag: &'static str,
    pub message: String,
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid value for {}: {}", self.flag, self.message)
    }
}

fn usage(flag: &'static str, message: impl ToString) -> UsageError {
    UsageError { flag, message: message.to_string() }
}

impl SystemArgs {
    fn resolve(&self) -> std::result::Result<ProbabilityVector, UsageError> {
        match (&self.p, self.q) {
            (Some(p), _) => Ok(p.clone()),
            (None, Some(q)) => ProbabilityVector::uniform(q).map_err(|e| usage("--q", e)),
            (None, None) => Err(usage("--p", "one of --p or --q is required")),
        }
    }
}

fn digits_for(
    system: &ProbabilityVector,
    flag: &'static str,
    text: &str,
) -> std::result::Result<Digits, UsageError> {
    parse_digits(text, system.alphabet()).map_err(|e| usage(flag, e))
}

impl Command {
    /// Resolves the system and parses digit payloads against its alphabet.
    pub fn validate(&self) -> std::result::Result<CommandRequest, UsageError> {
        Ok(match self {
            Command::Encode { system, x, max_digits } => {
                let system = system.resolve()?;
                if !x.in_unit_interval() {
                    return Err(usage("--x", format!("{x} is outside [0, 1]")));
                }
                if *max_digits == 0 {
                    return Err(usage("--max-digits", "must be positive"));
                }
                CommandRequest::Encode { system, x: x.clone(), max_digits: *max_digits }
            }
            Command::Decode { system, digits, output } => {
                let system = system.resolve()?;
                let digits = digits_for(&system, "--digits", digits)?;
                CommandRequest::Decode { system, digits, output: output.into() }
            }
            Command::Cylinder { system, base, output } => {
                let system = system.resolve()?;
                let base = match digits_for(&system, "--base", base)? {
                    Digits::Word(w) => w,
                    Digits::Periodic(_) => return Err(usage("--base", "expected a finite word")),
                };
                CommandRequest::Cylinder { system, base, output: output.into() }
            }
            Command::Map { system, perm, digits, output } => {
                let system = system.resolve()?;
                let perm = match perm {
                    Some(perm) => perm.clone(),
                    None if system.base() == 3 => DigitPermutation::theta_standard(),
                    None => return Err(usage("--perm", "required unless the base is 3")),
                };
                system.alphabet().ensure_same(perm.alphabet()).map_err(|e| usage("--perm", e))?;
                let digits = digits_for(&system, "--digits", digits)?.to_periodic();
                CommandRequest::Map { system, perm, digits, output: output.into() }
            }
            Command::Alternate { system, flip, base, digits, output } => {
                let system = system.resolve()?;
                let payload = match (base, digits) {
                    (Some(base), _) => match digits_for(&system, "--base", base)? {
                        w @ Digits::Word(_) => w,
                        Digits::Periodic(_) => return Err(usage("--base", "expected a finite word")),
                    },
                    (None, Some(digits)) => {
                        Digits::Periodic(digits_for(&system, "--digits", digits)?.to_periodic())
                    }
                    (None, None) => return Err(usage("--base", "one of --base or --digits is required")),
                };
                CommandRequest::Alternate { system, scheme: *flip, payload, output: output.into() }
            }
            Command::Demo { output } => CommandRequest::Demo { output: output.into() },
            Command::Sample { system, n, places } => {
                let system = system.resolve()?;
                if *n == 0 {
                    return Err(usage("--n", "must be at least 1"));
                }
                CommandRequest::Sample { system, n: *n, places: *places }
            }
            Command::Check { seed, cases } => CommandRequest::Check { seed: *seed, cases: *cases },
        })
    }
}

/// Text and exit status of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput { status: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage_error(message: String) -> Self {
        CommandOutput { status: EXIT_USAGE, stdout: String::new(), stderr: message }
    }
}

fn value_line(out: &mut String, key: &str, value: &Rational, mode: OutputMode) {
    let _ = writeln!(out, "{key}={value}");
    if !mode.exact {
        let _ = writeln!(out, "{key}_decimal={}", value.to_decimal(mode.places));
    }
}

pub fn run_command(req: &CommandRequest) -> CommandOutput {
    match execute(req) {
        Ok(out) => out,
        Err(e) => CommandOutput::usage_error(format!("error: {e}\n")),
    }
}

fn execute(req: &CommandRequest) -> Result<CommandOutput> {
    let mut out = String::new();
    match req {
        CommandRequest::Encode { system, x, max_digits } => match system.encode(x, *max_digits)? {
            EncodeResult::Complete(d) => {
                let _ = writeln!(out, "kind=complete\ndigits={d}");
            }
            EncodeResult::Truncated { digits, remainder } => {
                let _ = writeln!(out, "kind=truncated\ndigits={digits}\nremainder={remainder}");
            }
        },
        CommandRequest::Decode { system, digits, output } => {
            let value = system.eval_periodic(&digits.to_periodic())?;
            let _ = writeln!(out, "{value}");
            if !output.exact {
                let _ = writeln!(out, "{}", value.to_decimal(output.places));
            }
        }
        CommandRequest::Cylinder { system, base, output } => {
            let c = Cylinder::new(system, base.clone())?;
            let _ = writeln!(out, "{c}");
            if !output.exact {
                let p = output.places;
                let _ = writeln!(
                    out,
                    "decimal: inf={}, sup={}, measure={}",
                    c.inf().to_decimal(p),
                    c.sup().to_decimal(p),
                    c.measure().to_decimal(p)
                );
            }
        }
        CommandRequest::Map { system, perm, digits, output } => {
            let _ = writeln!(out, "input={digits}\nimage={}", perm.permute_periodic(digits)?);
            value_line(&mut out, "f", &perm.f_map(system, digits)?, *output);
            if let Some(twin) = digits.twin_of() {
                let _ = writeln!(out, "twin={twin}\ntwin_image={}", perm.permute_periodic(&twin)?);
                value_line(&mut out, "twin_f", &perm.f_map(system, &twin)?, *output);
            }
        }
        CommandRequest::Alternate { system, scheme, payload, output } => match payload {
            Digits::Word(base) => {
                let flipped = scheme.flip_word(base);
                let _ = writeln!(out, "base={base}\nflipped={flipped}");
                value_line(&mut out, "measure", &system.weight(base)?, *output);
                value_line(&mut out, "alternating_measure", &alternating_measure(system, &flipped)?, *output);
            }
            Digits::Periodic(d) => {
                let flipped = scheme.flip_periodic(d);
                let _ = writeln!(out, "digits={d}\nflipped={flipped}");
                value_line(&mut out, "alternating_value", &system.eval_periodic(&flipped)?, *output);
            }
        },
        CommandRequest::Demo { output } => out = demo_table(*output)?,
        CommandRequest::Sample { system, n, places } => out = sample_csv(system, *n, *places)?,
        CommandRequest::Check { seed, cases } => {
            let report = suite::run_checks(*seed, *cases);
            let _ = writeln!(out, "{report}");
            let status = if report.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
            return Ok(CommandOutput { status, stdout: out, stderr: String::new() });
        }
    }
    Ok(CommandOutput::ok(out))
}

/// One row of the reference table.
pub struct DemoRow {
    pub quantity: &'static str,
    pub witness: String,
    pub value: Rational,
}

/// The six reference values: distance and measure before and after the
/// ternary swap, and the positive versus alternating cylinder measure.
pub fn demo_rows() -> Result<Vec<DemoRow>> {
    let distance_system: ProbabilityVector = "1/2,1/3,1/6".parse()?;
    let measure_system: ProbabilityVector = "1/4,1/2,1/4".parse()?;
    let theta = DigitPermutation::theta_standard();
    let q3 = distance_system.alphabet();

    let x1 = PeriodicDigits::parse("22(0)", q3)?;
    let x2 = PeriodicDigits::parse("21(0)", q3)?;
    let dx = (distance_system.eval_periodic(&x1)? - distance_system.eval_periodic(&x2)?).abs();
    let dy = (theta.f_map(&distance_system, &x1)? - theta.f_map(&distance_system, &x2)?).abs();

    let source = Cylinder::new(&measure_system, DigitWord::parse("11122", q3)?)?;
    let image = source.f_image(&theta)?;

    let positive = Cylinder::new(&distance_system, DigitWord::parse("121200", q3)?)?;
    let flipped = AlternatingScheme::OddPositions.flip_word(positive.base());
    let alternating = alternating_measure(&distance_system, &flipped)?;

    Ok(vec![
        DemoRow { quantity: "distance |x1-x2|", witness: format!("A: {x1} vs {x2}"), value: dx },
        DemoRow {
            quantity: "distance |f(x1)-f(x2)|",
            witness: format!(
                "A: {} vs {}",
                theta.permute_periodic(&x1)?,
                theta.permute_periodic(&x2)?
            ),
            value: dy,
        },
        DemoRow {
            quantity: "measure cylinder",
            witness: format!("B: {}", source.base()),
            value: source.measure().clone(),
        },
        DemoRow {
            quantity: "measure theta image",
            witness: format!("B: {}", image.base()),
            value: image.measure().clone(),
        },
        DemoRow {
            quantity: "measure positive cylinder",
            witness: format!("A: {}", positive.base()),
            value: positive.measure().clone(),
        },
        DemoRow {
            quantity: "measure alternating cylinder",
            witness: format!("A: {flipped} (odd flip)"),
            value: alternating,
        },
    ])
}

/// Fixed-width table of [`demo_rows`]. Systems are labelled A and B rather
/// than written out so that the only fractions in the output are the values.
pub fn demo_table(mode: OutputMode) -> Result<String> {
    let rows = demo_rows()?;
    let mut out = String::new();
    let _ = writeln!(out, "# system A: digit weights 3:2:1 over 0,1,2");
    let _ = writeln!(out, "# system B: digit weights 1:2:1 over 0,1,2");
    let _ = writeln!(out, "# theta swaps digits 1 and 2");
    let mut header = format!("{:<30} {:<28} {:<8}", "quantity", "witness", "exact");
    if !mode.exact {
        let _ = write!(header, " decimal");
    }
    let _ = writeln!(out, "{}", header.trim_end());
    for row in rows {
        let mut line = format!("{:<30} {:<28} {:<8}", row.quantity, row.witness, row.value.to_string());
        if !mode.exact {
            let _ = write!(line, " {}", row.value.to_decimal(mode.places));
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    Ok(out)
}

/// `x,S` rows for `x = k/n`, `k = 0..=n`. `S(k/n)` takes the ordinary
/// base-`q` digits of `k/n` (canonical, so `(0)` tails at `q`-rational
/// points) and evaluates them under `system`.
pub fn sample_csv(system: &ProbabilityVector, n: u64, places: usize) -> Result<String> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let uniform = ProbabilityVector::uniform(system.base())?;
    // k/n has at most n distinct base-q remainders.
    let budget = usize::try_from(n).unwrap_or(usize::MAX).saturating_add(1);
    let mut out = String::from("x,S\n");
    for k in 0..=n {
        let x = Rational::new(k, n)?;
        let digits = match uniform.encode(&x, budget)? {
            EncodeResult::Complete(d) => d,
            EncodeResult::Truncated { .. } => unreachable!("base-q expansion of k/n cycles within n digits"),
        };
        let s = system.eval_periodic(&digits)?;
        let _ = writeln!(out, "{},{}", x.to_decimal(places), s.to_decimal(places));
    }
    Ok(out)
}

/// Parses, validates and runs one invocation. `args` includes the program
/// name.
pub fn run<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput::usage_error(text)
            } else {
                CommandOutput::ok(text)
            };
        }
    };
    match cli.command.validate() {
        Ok(req) => run_command(&req),
        Err(e) => CommandOutput::usage_error(format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let mut full = vec!["salem"];
        full.extend_from_slice(args);
        let out = run(full);
        assert_eq!(out.status, EXIT_OK, "{args:?}: {}", out.stderr);
        out.stdout
    }

    fn run_status(args: &[&str]) -> CommandOutput {
        let mut full = vec!["salem"];
        full.extend_from_slice(args);
        run(full)
    }

    #[test]
    fn decode_example() {
        let out = run_ok(&["decode", "--p", "1/2,1/3,1/6", "--digits", "0(012)"]);
        assert_eq!(out.lines().next(), Some("1/5"));
        assert_eq!(out, "1/5\n0.200000000000\n");
        let exact = run_ok(&["decode", "--p", "1/2,1/3,1/6", "--digits", "0(012)", "--exact"]);
        assert_eq!(exact, "1/5\n");
        // A finite word is read as w(0).
        assert_eq!(run_ok(&["decode", "--q", "3", "--digits", "1", "--exact"]), "1/3\n");
    }

    #[test]
    fn cylinder_example() {
        let out = run_ok(&["cylinder", "--p", "1/4,1/2,1/4", "--base", "11122", "--exact"]);
        assert!(out.starts_with("inf="), "{out}");
        assert!(out.trim_end().ends_with("measure=1/128"), "{out}");
    }

    #[test]
    fn encode_examples() {
        let out = run_ok(&["encode", "--p", "1/2,1/3,1/6", "--x", "1/5"]);
        assert_eq!(out, "kind=complete\ndigits=0(012)\n");
        let out = run_ok(&["encode", "--p", "2/5,3/5", "--x", "1/7", "--max-digits", "3"]);
        assert!(out.starts_with("kind=truncated\ndigits="), "{out}");
        assert!(out.contains("remainder="));
    }

    #[test]
    fn map_example() {
        let out = run_ok(&["map", "--p", "1/2,1/3,1/6", "--digits", "22(0)", "--exact"]);
        assert!(out.contains("image=11(0)\nf=2/3\n"), "{out}");
        assert!(out.contains("twin=21(2)\n"), "{out}");
    }

    #[test]
    fn alternate_example() {
        let out = run_ok(&["alternate", "--p", "1/2,1/3,1/6", "--flip", "odd", "--base", "121200", "--exact"]);
        assert_eq!(
            out,
            "base=121200\nflipped=121220\nmeasure=1/1296\nalternating_measure=1/3888\n"
        );
        let out = run_ok(&["alternate", "--q", "3", "--flip", "even", "--digits", "(0)", "--exact"]);
        assert!(out.contains("flipped=(02)"), "{out}");
    }

    #[test]
    fn sample_examples() {
        let csv = run_ok(&["sample", "--p", "1/2,1/3,1/6", "--n", "1", "--places", "3"]);
        assert_eq!(csv, "x,S\n0.000,0.000\n1.000,1.000\n");
        let p: ProbabilityVector = "1/2,1/3,1/6".parse().unwrap();
        let csv = sample_csv(&p, 3, 6).unwrap();
        assert_eq!(csv, "x,S\n0.000000,0.000000\n0.333333,0.500000\n0.666667,0.833333\n1.000000,1.000000\n");
    }

    #[test]
    fn usage_errors_name_the_flag() {
        let cases: &[(&[&str], &str)] = &[
            (&["decode", "--p", "1/2,1/2,1/6", "--digits", "1"], "--p"),
            (&["decode", "--p", "1/2,1/3,1/6", "--digits", "3"], "--digits"),
            (&["decode", "--digits", "1"], "--p"),
            (&["cylinder", "--q", "3", "--base", "1(2)"], "--base"),
            (&["map", "--q", "3", "--perm", "0,0,1", "--digits", "1"], "--perm"),
            (&["map", "--q", "4", "--digits", "1"], "--perm"),
            (&["map", "--q", "3", "--perm", "1,0", "--digits", "1"], "--perm"),
            (&["encode", "--q", "3", "--x", "3/2"], "--x"),
            (&["encode", "--q", "3", "--x", "1/0"], "--x"),
            (&["alternate", "--q", "3", "--flip", "both", "--base", "1"], "--flip"),
            (&["sample", "--q", "3", "--n", "0"], "--n"),
            (&["frobnicate"], "frobnicate"),
        ];
        for (args, flag) in cases {
            let out = run_status(args);
            assert_eq!(out.status, EXIT_USAGE, "{args:?}");
            assert!(out.stderr.contains(flag), "{args:?}: {}", out.stderr);
        }
    }

    #[test]
    fn help_is_not_an_error() {
        let out = run_status(&["--help"]);
        assert_eq!(out.status, EXIT_OK);
        assert!(out.stdout.contains("encode"));
    }
}
