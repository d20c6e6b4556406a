use std::io::Write;
use std::process::ExitCode;

use symreal::cli::{run, RunConfig, EXIT_USAGE};

fn main() -> ExitCode {
    let config = match RunConfig::from_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = run(&config);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status)
}
