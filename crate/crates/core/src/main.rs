//! Command-line driver: protocol simulation, exhaustive channel
//! classification, instruction-table emission, and verification against the
//! bundled reference data.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use telechan::bases::ChannelSpec;
use telechan::classify::{classify_all, is_teleportable, InputClass};
use telechan::protocol::run_protocol;
use telechan::report::TableFormat;
use telechan::statevec::PureState;
use telechan::verify::{run_all, VerifyConfig};
use telechan::Error;

#[derive(Parser)]
#[command(
    name = "telechan",
    version,
    about = "Exact simulator and exhaustive verifier for teleporting two-qubit states through a three-particle channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the protocol on one input state and channel and print all eight
    /// measurement branches.
    Simulate(SimulateArgs),
    /// Report which channels teleport an input family (all seven families
    /// when none is named).
    Classify(ClassifyArgs),
    /// Emit the instruction table for one (channel, family) pair.
    EmitTable(EmitTableArgs),
    /// Re-derive every table and channel list and verify them against the
    /// bundled reference data.
    VerifyPaper(VerifyArgs),
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the document to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Input amplitudes for |00⟩,|01⟩,|10⟩,|11⟩ as comma-separated complex
    /// literals, e.g. "0.6,0,0,0.8" or "0.6,0,0,0.6+0.53i".
    #[arg(long)]
    input: String,
    /// Channel as eight characters over {+,0,-}, e.g. "+000000+".
    #[arg(long)]
    channel: String,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Input family: general, diag, anti-diag, left-col, right-col, top-row
    /// or bottom-row.
    class: Option<String>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct EmitTableArgs {
    /// Channel as eight characters over {+,0,-}.
    #[arg(long)]
    channel: String,
    /// Input family name.
    #[arg(long)]
    class: String,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct VerifyArgs {
    /// Base seed for the randomized criteria.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample count for the random-basis falsification scan.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Numerical tolerance for the fidelity, oracle, and equivalence checks.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[command(flatten)]
    output: OutputOpts,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    std::process::exit(code);
}

/// 2 for malformed user input, 1 for data/verification failures.
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidTable(_) | Error::TableMismatch(_) | Error::ReferenceData(_) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> telechan::Result<i32> {
    match cli.command {
        Cmd::Simulate(args) => cmd_simulate(&args),
        Cmd::Classify(args) => cmd_classify(&args),
        Cmd::EmitTable(args) => cmd_emit_table(&args),
        Cmd::VerifyPaper(args) => cmd_verify(&args),
    }
}

/// Parses "re", "imi", or "re±imi" (e.g. "0.6", "0.8i", "0.6-0.8i").
fn parse_complex(s: &str) -> telechan::Result<Complex64> {
    let bad = || Error::ComplexLiteral(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('I')) {
        // Split real and imaginary terms at the last sign that is neither
        // leading nor part of an exponent.
        for (k, ch) in body.char_indices().rev() {
            if (ch == '+' || ch == '-') && k > 0 {
                let prev = body[..k].chars().next_back().unwrap_or(' ');
                if prev != 'e' && prev != 'E' {
                    let re: f64 = body[..k].trim().parse().map_err(|_| bad())?;
                    let im_text = &body[k..];
                    let im: f64 = match im_text {
                        "+" => 1.0,
                        "-" => -1.0,
                        other => other.parse().map_err(|_| bad())?,
                    };
                    return Ok(Complex64::new(re, im));
                }
            }
        }
        let im: f64 = match body {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.trim().parse().map_err(|_| bad())?,
        };
        Ok(Complex64::new(0.0, im))
    } else {
        let re: f64 = t.parse().map_err(|_| bad())?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Parses the four comma-separated amplitudes (standard binary order) and
/// normalizes, warning when the literal norm is off by more than 1e-6.
fn parse_input(s: &str) -> telechan::Result<PureState> {
    let amps = s
        .split(',')
        .map(parse_complex)
        .collect::<telechan::Result<Vec<Complex64>>>()?;
    if amps.len() != 4 {
        return Err(Error::ComplexLiteral(format!(
            "expected 4 comma-separated amplitudes, got {}",
            amps.len()
        )));
    }
    let state = PureState::new(2, amps)?;
    if (state.norm() - 1.0).abs() > 1e-6 {
        eprintln!(
            "warning: input norm {:.6} is not 1; normalizing",
            state.norm()
        );
    }
    state.normalized()
}

fn parse_channel(s: &str) -> telechan::Result<ChannelSpec> {
    s.parse()
}

fn parse_class(s: &str) -> telechan::Result<InputClass> {
    s.parse()
}

/// Prints to stdout or writes to the requested file.
fn deliver(output: &OutputOpts, document: &str) -> telechan::Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, document).map_err(|e| {
            Error::ReferenceData(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{document}");
            Ok(())
        }
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

fn complex_pairs(amps: &[Complex64]) -> Vec<serde_json::Value> {
    amps.iter().map(|a| json!([a.re, a.im])).collect()
}

fn cmd_simulate(args: &SimulateArgs) -> telechan::Result<i32> {
    let input = parse_input(&args.input)?;
    let channel = parse_channel(&args.channel)?;
    let branches = run_protocol(&input, &channel, true)?;

    let document = match args.output.format {
        Format::Text => {
            let mut doc = String::new();
            let _ = writeln!(
                doc,
                "Input on particles (1,2), amplitudes (|00⟩, |01⟩, |10⟩, |11⟩): {}",
                input.amplitudes().iter().map(|&a| fmt_c(a)).collect::<Vec<_>>().join(", ")
            );
            let _ = writeln!(doc, "Channel {}: {}", channel, channel.expression());
            let _ = writeln!(doc);
            let _ = writeln!(
                doc,
                "{:<14} {:>12}   Bob's state (|00⟩, |01⟩, |10⟩, |11⟩)",
                "Outcome", "probability"
            );
            for b in &branches {
                let bob = match &b.bob_state {
                    Some(s) => s
                        .amplitudes()
                        .iter()
                        .map(|&a| fmt_c(a))
                        .collect::<Vec<_>>()
                        .join(", "),
                    None => "(impossible branch)".to_string(),
                };
                let _ = writeln!(doc, "{:<14} {:>12.6}   {bob}", b.outcome.label(), b.probability);
            }
            doc
        }
        Format::Json => {
            let branches_json: Vec<serde_json::Value> = branches
                .iter()
                .map(|b| {
                    json!({
                        "bell": b.outcome.bell.json_name(),
                        "canon": b.outcome.canon,
                        "probability": b.probability,
                        "bob_state": b.bob_state.as_ref().map(|s| complex_pairs(s.amplitudes())),
                        "raw": complex_pairs(&b.raw_amplitudes),
                    })
                })
                .collect();
            let mut doc = serde_json::to_string_pretty(&json!({
                "input": complex_pairs(input.amplitudes()),
                "channel": channel.to_string(),
                "branches": branches_json,
            }))
            .expect("valid JSON");
            doc.push('\n');
            doc
        }
    };
    deliver(&args.output, &document)?;
    Ok(0)
}

fn cmd_classify(args: &ClassifyArgs) -> telechan::Result<i32> {
    let classes: Vec<InputClass> = match &args.class {
        Some(name) => vec![parse_class(name)?],
        None => InputClass::ALL.to_vec(),
    };
    let reports: Vec<_> = classes.iter().map(|&c| classify_all(c)).collect();

    let document = match args.output.format {
        Format::Text => {
            let mut doc = String::new();
            for report in &reports {
                if report.pattern_count == 0 {
                    let _ = writeln!(
                        doc,
                        "class {} ({}): not teleportable through any channel",
                        report.class,
                        report.class.expression()
                    );
                } else {
                    let _ = writeln!(
                        doc,
                        "class {} ({}): teleportable through {} support patterns, {} signed channels",
                        report.class,
                        report.class.expression(),
                        report.pattern_count,
                        report.channel_count
                    );
                    for pattern in &report.support_patterns {
                        let names = pattern
                            .names
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(",");
                        let _ = writeln!(
                            doc,
                            "  {{{names}}}  canonical {}  signed variants {}",
                            pattern.canonical, pattern.signed_variants
                        );
                    }
                }
            }
            doc
        }
        Format::Json => {
            let classes_json: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "class": r.class.name(),
                        "pattern_count": r.pattern_count,
                        "channel_count": r.channel_count,
                        "patterns": r.support_patterns,
                    })
                })
                .collect();
            let mut doc =
                serde_json::to_string_pretty(&json!({ "classes": classes_json })).expect("valid JSON");
            doc.push('\n');
            doc
        }
    };
    deliver(&args.output, &document)?;
    Ok(0)
}

fn cmd_emit_table(args: &EmitTableArgs) -> telechan::Result<i32> {
    let channel = parse_channel(&args.channel)?;
    let class = parse_class(&args.class)?;
    match is_teleportable(class, &channel) {
        Some(table) => {
            table.validate()?;
            let format = match args.output.format {
                Format::Text => TableFormat::Text,
                Format::Json => TableFormat::Json,
            };
            deliver(&args.output, &table.emit(format))?;
            Ok(0)
        }
        None => {
            eprintln!(
                "class {class} cannot be teleported through channel {channel}: no catalog correction recovers every outcome"
            );
            Ok(1)
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> telechan::Result<i32> {
    if args.samples == 0 {
        eprintln!("error: --samples must be at least 1");
        return Ok(2);
    }
    if !(args.tolerance > 0.0) {
        eprintln!("error: --tolerance must be positive, got {}", args.tolerance);
        return Ok(2);
    }
    let config = VerifyConfig {
        seed: args.seed,
        samples: args.samples,
        tolerance: args.tolerance,
    };
    let report = run_all(&config);

    let document = match args.output.format {
        Format::Text => {
            let mut doc = String::new();
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(doc, "[{:>2}] {status}  {}: {}", c.id, c.name, c.detail);
            }
            let failed = report.failed_count();
            let _ = writeln!(
                doc,
                "{}/{} criteria passed{}",
                report.checks.len() - failed,
                report.checks.len(),
                if failed == 0 { String::new() } else { format!(", {failed} failed") }
            );
            doc
        }
        Format::Json => {
            let mut doc = serde_json::to_string_pretty(&json!({
                "criteria": report.checks,
                "passed": report.all_passed(),
            }))
            .expect("valid JSON");
            doc.push('\n');
            doc
        }
    };
    deliver(&args.output, &document)?;
    Ok(if report.all_passed() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals_parse() {
        assert_eq!(parse_complex("0.6").unwrap(), Complex64::new(0.6, 0.0));
        assert_eq!(parse_complex("-1.5").unwrap(), Complex64::new(-1.5, 0.0));
        assert_eq!(parse_complex("0.8i").unwrap(), Complex64::new(0.0, 0.8));
        assert_eq!(parse_complex("-0.8i").unwrap(), Complex64::new(0.0, -0.8));
        assert_eq!(parse_complex("0.6+0.8i").unwrap(), Complex64::new(0.6, 0.8));
        assert_eq!(parse_complex("0.6-0.8i").unwrap(), Complex64::new(0.6, -0.8));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), Complex64::new(1e-3, 2e-4));
        assert_eq!(parse_complex(" 1 ").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("2+i").unwrap(), Complex64::new(2.0, 1.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2").is_err());
    }

    #[test]
    fn input_parser_requires_four_amplitudes() {
        assert!(parse_input("1,0,0").is_err());
        assert!(parse_input("1,0,0,0,0").is_err());
        assert!(parse_input("0,0,0,0").is_err());
        let s = parse_input("0.6,0,0,0.8").unwrap();
        assert!((s.amp(0b00).re - 0.6).abs() < 1e-12);
        assert!((s.amp(0b11).re - 0.8).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_input_is_normalized() {
        let s = parse_input("3,0,0,4").unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-12);
        assert!((s.amp(0b00).re - 0.6).abs() < 1e-12);
    }
}
