use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hurwitz::cli::{run, Cli};
use hurwitz::Executor;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let exec = Executor::from_env();
    match run(&cli, &exec) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("hurwitz: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
