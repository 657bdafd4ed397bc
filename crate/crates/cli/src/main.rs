use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    binomat_cli::init_threads();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = binomat_cli::run(std::env::args_os(), &mut out, &mut err);
    if out.flush().is_err() {
        return ExitCode::from(binomat_cli::EXIT_INTERNAL as u8);
    }
    ExitCode::from(code as u8)
}
