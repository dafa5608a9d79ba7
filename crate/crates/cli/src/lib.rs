//! Command-line front end for the finito toolkit.

pub mod commands;
pub mod document;

use std::process::ExitCode;

use clap::Parser;

use commands::{execute, Cli};

pub const EXIT_VIOLATED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli, &mut |w| eprintln!("warning: {w}")) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json serializes")
                );
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VIOLATED)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(EXIT_INPUT)
        }
    }
}
