use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use abax_cli::analyze::{self, Format};
use abax_cli::compute::{run_compute, ComputeRequest, Op};
use abax_cli::convert::{run_convert, Notation};
use abax_cli::{api, color_from_env};
use abax_core::board::render;
use abax_core::codecs::parse_positional;
use abax_core::workbench::{load, Scaled};
use abax_core::{BaseConfig, BoardState, Error, Layout, Result, Trace, Variant};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "abax", version, about = "Counting-board arithmetic with exact values and replayable traces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one operation on the boards and print the result.
    #[command(allow_negative_numbers = true)]
    Compute {
        #[arg(long, default_value_t = 10)]
        base: u32,
        #[arg(long, default_value = "preferred")]
        variant: String,
        #[arg(long, value_enum)]
        op: Op,
        /// Significant digits of the result.
        #[arg(long)]
        digits: Option<usize>,
        /// demote-first, double-halve-first, or steps such as line,line,double-halve,line
        #[arg(long)]
        strategy: Option<String>,
        /// Enter the multiplier digit by digit instead of with the fewest pebbles.
        #[arg(long)]
        digitwise: bool,
        /// Write the trace as JSON lines to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Print the trace after the result.
        #[arg(long)]
        trace_inline: bool,
        #[arg(required = true)]
        operands: Vec<String>,
    },
    /// Convert a number between notations.
    #[command(allow_negative_numbers = true)]
    Convert {
        #[arg(long, value_enum)]
        from: Notation,
        #[arg(long, value_enum)]
        to: Notation,
        #[arg(long)]
        digits: Option<usize>,
        value: String,
    },
    /// Reports on pebble efficiency, operation counts and traces.
    Analyze {
        #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
        format: Format,
        #[command(subcommand)]
        what: Analysis,
    },
    /// Check a trace file by re-applying every move.
    Replay { path: PathBuf },
    /// Draw a board holding a value, or a snapshot file.
    #[command(allow_negative_numbers = true)]
    Render {
        #[arg(long, default_value_t = 10)]
        base: u32,
        #[arg(long, default_value = "preferred")]
        variant: String,
        #[arg(long, conflicts_with = "value")]
        snapshot: Option<PathBuf>,
        value: Option<String>,
    },
    /// Serve the JSON API on localhost.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Subcommand)]
enum Analysis {
    /// Largest count reachable with k pebbles, with and without subtractive pebbles.
    Efficiency {
        #[arg(long, default_value_t = 31)]
        max_k: u32,
    },
    /// Operation count of the quarter-squares table method.
    Cost {
        #[arg(long, default_value_t = 5)]
        operand_digits: u32,
        #[arg(long, default_value_t = 5)]
        result_digits: u32,
    },
    /// Chance of an embedded zero digit.
    Zeros {
        #[arg(long, default_value_t = 60)]
        base: u32,
        #[arg(long, default_value_t = 5)]
        digits: u32,
        #[arg(long, default_value_t = 15)]
        shown: usize,
    },
    /// Fewest pebbles for a whole number.
    Pebbles { n: u128 },
    /// Product by quarter squares.
    QuarterSquares {
        a: u64,
        b: u64,
        #[arg(long)]
        table_only: bool,
    },
    /// Move counts of a trace file.
    Trace { path: PathBuf },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Compute { base, variant, op, digits, strategy, digitwise, trace, trace_inline, operands } => {
            let req = ComputeRequest {
                base,
                variant: variant.parse()?,
                op,
                operands,
                digits,
                strategy,
                layout: if digitwise { Layout::Digitwise } else { Layout::Minimal },
            };
            let out = run_compute(&req)?;
            if let Some(path) = trace {
                std::fs::write(&path, out.trace_jsonl()).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            }
            let mut text = out.result.clone();
            if trace_inline {
                text.push('\n');
                text.push_str(out.trace_jsonl().trim_end());
            }
            Ok(text)
        }
        Command::Convert { from, to, digits, value } => run_convert(from, to, &value, digits),
        Command::Analyze { format, what } => {
            let report = match what {
                Analysis::Efficiency { max_k } => analyze::efficiency(max_k)?,
                Analysis::Cost { operand_digits, result_digits } => analyze::cost(operand_digits, result_digits)?,
                Analysis::Zeros { base, digits, shown } => analyze::zeros(base, digits, shown)?,
                Analysis::Pebbles { n } => analyze::pebbles(n),
                Analysis::QuarterSquares { a, b, table_only } => analyze::quarter_squares(a, b, table_only)?,
                Analysis::Trace { path } => analyze::trace(&Trace::parse_jsonl(&read(&path)?)?),
            };
            Ok(report.render(format))
        }
        Command::Replay { path } => {
            let traces = Trace::parse_jsonl(&read(&path)?)?;
            let mut events = 0;
            for t in &traces {
                t.replay()?;
                events += t.events.len();
            }
            Ok(format!("ok: {} segment(s), {events} event(s)", traces.len()))
        }
        Command::Render { base, variant, snapshot, value } => {
            let board = match (snapshot, value) {
                (Some(path), _) => serde_json::from_str::<BoardState>(&read(&path)?)
                    .map_err(|e| Error::Parse(format!("bad snapshot: {e}")))?,
                (None, v) => {
                    let config = BaseConfig::new(base, variant.parse::<Variant>()?)?;
                    let empty = BoardState::new(config);
                    match v {
                        Some(v) => load(&empty, &Scaled::from_positional(&parse_positional(&v, base)?.number)?)?,
                        None => empty,
                    }
                }
            };
            Ok(render(&board, color_from_env()).trim_end().to_string())
        }
        Command::Serve { port } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| Error::Invalid(e.to_string()))?;
            rt.block_on(api::serve(port)).map_err(|e| Error::Invalid(format!("server: {e}")))?;
            Ok(String::new())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            if !text.is_empty() {
                // A closed pipe (as with `| head`) is not an error here.
                let _ = writeln!(std::io::stdout(), "{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
