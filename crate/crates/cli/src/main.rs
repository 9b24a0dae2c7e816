use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use torsion_cli::{commands, Cli, Status};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TORSION_LOG", "warn")).init();
    // clap would exit with 2, which is reserved for verification failures.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { torsion_cli::error::EXIT_INPUT } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match commands::run(&cli.command, &mut out) {
        Ok(Status::Passed) => 0,
        Ok(s @ Status::Failed(_)) => {
            if let Status::Failed(reasons) = &s {
                for r in reasons {
                    eprintln!("verification failed: {r}");
                }
            }
            s.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
