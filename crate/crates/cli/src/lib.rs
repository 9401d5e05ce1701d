//! Front end for the `puregaps` binary. Everything lives in the library so
//! that tests can drive [`run`] without spawning a process.
//!
//! Exit codes: 0 success, 1 internal consistency or verification failure,
//! 2 usage, parse or validation error.

pub mod analysis;
pub mod args;
pub mod gammafile;
pub mod report;

mod commands;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::Parser;

pub use commands::CliError;

/// Sizes the global rayon pool from `PUREGAPS_THREADS` when it is set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("PUREGAPS_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("PUREGAPS_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

/// Parses `argv` and runs the command, returning the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return e.exit_code();
        }
    };
    let outcome = commands::execute(cli.command, out, err).and_then(|code| out.flush().map(|_| code).map_err(CliError::from));
    match outcome {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
