use std::io;
use std::process::ExitCode;

use clap::Parser;
use iepoly_cli::{configure_threads, exit, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    let (stdout, stderr) = (io::stdout(), io::stderr());
    let outcome = configure_threads(cli.global.jobs).and_then(|()| run(&cli, &mut stdout.lock(), &mut stderr.lock()));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
