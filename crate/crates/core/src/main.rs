use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = hcm_gabor::cli::run(std::env::args_os());
    if !outcome.stdout.is_empty() {
        let _ = writeln!(std::io::stdout().lock(), "{}", outcome.stdout.trim_end());
    }
    if !outcome.stderr.is_empty() {
        let _ = write!(std::io::stderr().lock(), "{}", outcome.stderr);
    }
    ExitCode::from(outcome.code)
}
