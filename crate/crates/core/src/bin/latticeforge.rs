use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = latticeforge::cli::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(latticeforge::cli::EXIT_INPUT as u8);
    }
    let out = latticeforge::cli::run(std::env::args());
    // Ignore broken pipes on output.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
