use std::process::ExitCode;

fn main() -> ExitCode {
    // a panic is an internal invariant violation: exit 2
    match std::panic::catch_unwind(|| ocrforge::cli::run(std::env::args_os())) {
        Ok(code) => ExitCode::from(code as u8),
        Err(_) => ExitCode::from(2),
    }
}
