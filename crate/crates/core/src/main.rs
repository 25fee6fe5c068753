use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qsdesign::constructions::{corpus_entry, corpus_names};
use qsdesign::{analyze, parse_design};

/// Build and analyze quasi-symmetric 2-designs with exact arithmetic.
#[derive(Parser)]
#[command(name = "qsdesign", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named design from the built-in corpus as a block list.
    Construct {
        /// Corpus name; see --list.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// Output file (standard output if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print the corpus names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Profile a block-list file and certify it if quasi-symmetric.
    ///
    /// Exit status: 0 on a valid certificate or a clean rejection, 1 on an
    /// invalid certificate, 2 on unreadable or malformed input.
    Analyze {
        /// Block-list file; `-` or absent reads standard input.
        path: Option<PathBuf>,
        /// Emit the JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Largest strength to test (at least 2).
        #[arg(long, value_name = "N")]
        strength_cap: Option<usize>,
    },
}

const EXIT_INVALID: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Construct { name, output, list } => construct(name, output, list),
        Command::Analyze {
            path,
            json,
            strength_cap,
        } => analyze_cmd(path, json, strength_cap),
    }
}

fn construct(name: Option<String>, output: Option<PathBuf>, list: bool) -> ExitCode {
    if list {
        for n in corpus_names() {
            println!("{n}");
        }
        return ExitCode::SUCCESS;
    }
    let name = name.expect("clap requires a name without --list");
    let Some(entry) = corpus_entry(&name) else {
        eprintln!("unknown design '{name}'; available:");
        for n in corpus_names() {
            eprintln!("  {n}");
        }
        return ExitCode::from(EXIT_INPUT);
    };
    let text = entry.design.to_block_list();
    let written = match &output {
        Some(path) => fs::write(path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cannot write output: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn analyze_cmd(path: Option<PathBuf>, json: bool, strength_cap: Option<usize>) -> ExitCode {
    let from_stdin = path.as_ref().map_or(true, |p| p.as_os_str() == "-");
    let (name, text) = if from_stdin {
        let mut buf = String::new();
        if let Err(e) = io::stdin().read_to_string(&mut buf) {
            eprintln!("cannot read standard input: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
        ("<stdin>".to_string(), buf)
    } else {
        let path = path.expect("checked above");
        match fs::read_to_string(&path) {
            Ok(t) => (path.display().to_string(), t),
            Err(e) => {
                eprintln!("cannot read {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT);
            }
        }
    };
    let design = match parse_design(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{name}: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let report = match analyze(&design, &name, strength_cap) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{name}: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.is_consistent() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INVALID)
    }
}
