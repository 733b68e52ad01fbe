use std::io::{IsTerminal, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let color = ncproj_cli::color_from_env(std::io::stdout().is_terminal());
    let out = ncproj_cli::run(std::env::args_os().skip(1), color);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
