//! `subdiv`: certificate-producing front end for the subdivision toolkit.

mod args;
mod io;
mod manifest;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use io::CliError;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { io::EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads.max(1)).build_global() {
        eprintln!("warning: {e}");
    }
    match manifest::execute(&cli, &argv[1..]) {
        Ok(out) => {
            print!("{}", out.rendered);
            ExitCode::from(out.code)
        }
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
