use std::io::Write;
use std::process::ExitCode;

use rigidity::cli::{self, Output};

fn main() -> ExitCode {
    let threads = std::env::var("RIGIDITY_THREADS").ok();
    let out = match cli::configure_threads(threads.as_deref()) {
        Err(e) => Output::error(&e),
        Ok(()) => match cli::parse(std::env::args_os()) {
            Ok(config) => cli::run(&config),
            Err(out) => out,
        },
    };
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(out.exit_code)
}
