//! `taut`: truth tables, tautology checks, proof synthesis and proof
//! verification from the command line.
//!
//! Exit status is 0 for a tautology or a valid proof, 1 for a
//! counterexample or an invalid proof, and 2 for usage or input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use tautology::calculus::json;
use tautology::{truth_table, verify, Formula, Notation, ParseError, SynthesisResult, Verdict};

#[derive(Parser)]
#[command(
    name = "taut",
    version,
    about = "Propositional tautologies: tables, checks and proofs"
)]
struct Cli {
    /// Render formulas with ¬ and ∨ instead of ! and |.
    #[arg(long, global = true)]
    unicode: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the truth table of a formula.
    Table {
        /// Formula text, or `-` to read it from standard input.
        formula: String,
    },
    /// Decide whether a formula is a tautology.
    Check { formula: String },
    /// Synthesize a proof of a tautology as JSON.
    Prove {
        formula: String,
        /// Write the proof here instead of standard output.
        #[arg(short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
        /// Verify the synthesized proof before writing it.
        #[arg(long)]
        self_check: bool,
        /// Emit the numbered plain-text listing instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Check a JSON proof file (`-` for standard input).
    Verify { proof: PathBuf },
}

const FAILURE: u8 = 1;
const ERROR: u8 = 2;

fn read_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")?;
        Ok(buf)
    } else {
        Ok(arg.to_owned())
    }
}

fn parse_formula(arg: &str) -> Result<Formula> {
    let text = read_input(arg)?;
    let text = text.trim_end_matches(['\n', '\r']);
    Formula::parse(text).map_err(|e| anyhow!(diagnostic(text, &e)))
}

fn diagnostic(text: &str, err: &ParseError) -> String {
    match err.position() {
        Some(pos) if !text.contains('\n') => {
            format!("{err}\n  {text}\n  {}^", " ".repeat(pos))
        }
        _ => err.to_string(),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let notation = if cli.unicode {
        Notation::Unicode
    } else {
        Notation::Ascii
    };
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Table { formula } => {
            let f = parse_formula(&formula)?;
            let table = truth_table(&f)?;
            out.write_all(table.render(notation).as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { formula } => {
            let f = parse_formula(&formula)?;
            match tautology::is_true(&f)? {
                Verdict::Tautology => {
                    writeln!(out, "tautology")?;
                    Ok(ExitCode::SUCCESS)
                }
                Verdict::Falsified(w) => {
                    writeln!(out, "counterexample: {w}")?;
                    Ok(ExitCode::from(FAILURE))
                }
            }
        }
        Command::Prove {
            formula,
            output,
            self_check,
            text,
        } => {
            let f = parse_formula(&formula)?;
            let proof = match tautology::prove(&f)? {
                SynthesisResult::Proved(proof) => proof,
                SynthesisResult::Refuted(w) => {
                    writeln!(out, "counterexample: {w}")?;
                    return Ok(ExitCode::from(FAILURE));
                }
            };
            if self_check {
                match verify(proof.clone()) {
                    Ok(vp) if vp.proved_formula() == &f => {}
                    Ok(vp) => bail!("self-check failed: proof ends in {}", vp.proved_formula()),
                    Err(errors) => bail!("self-check failed: {}", errors[0]),
                }
            }
            let body = if text {
                proof.render_text(notation)
            } else {
                let mut s = json::to_json(&proof);
                s.push('\n');
                s
            };
            match output {
                Some(path) => {
                    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?
                }
                None => out.write_all(body.as_bytes())?,
            }
            eprintln!("proof: {} steps", proof.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { proof } => {
            let input = if proof.as_os_str() == "-" {
                read_input("-")?
            } else {
                fs::read_to_string(&proof)
                    .with_context(|| format!("reading {}", proof.display()))?
            };
            let proof = json::from_json(&input)?;
            match verify(proof) {
                Ok(vp) => {
                    writeln!(
                        out,
                        "valid: proves {}",
                        vp.proved_formula().render_with(notation)
                    )?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(errors) => {
                    for e in &errors {
                        writeln!(out, "{e}")?;
                    }
                    writeln!(out, "invalid: {} error(s)", errors.len())?;
                    Ok(ExitCode::from(FAILURE))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}
