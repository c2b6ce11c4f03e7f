use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let status = match zeta_kit_cli::run(std::env::args_os(), &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("zeta-kit: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(status as u8)
}
