//! Command-line front end for `ncproj`.
//!
//! [`run`] is the whole program minus process plumbing, so tests can call it
//! directly and compare the exact bytes a user would see.

pub mod cli;
pub mod commands;
pub mod dsl;
pub mod literals;
mod render;

use clap::Parser;

use crate::cli::{Cli, Format};
use crate::commands::Failure;

pub use crate::dsl::{parse_presentation, Diagnostic, Severity, Span};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a process would print and return.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line; `args` excludes the program name.
pub fn run<I, S>(args: I, color: bool) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("ncproj")).chain(args.into_iter().map(Into::into));
    let parsed = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = if color { e.render().ansi().to_string() } else { e.render().to_string() };
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match commands::run(&parsed.group) {
        Ok(out) => {
            let stdout = match parsed.format {
                Format::Json => render::json(&out),
                Format::Table => render::table(&out, color),
            };
            Outcome { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(Failure::Parse { origin, diagnostic }) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: render::diagnostic(&origin, &diagnostic, color),
        },
        Err(Failure::Domain(msg)) => Outcome {
            code: EXIT_DOMAIN,
            stdout: String::new(),
            stderr: render::diagnostic("", &Diagnostic::error(msg, None), color),
        },
    }
}

/// ANSI output is on unless `NCPROJ_COLOR=0`, and only for terminals unless `NCPROJ_COLOR=1`.
pub fn color_from_env(is_terminal: bool) -> bool {
    match std::env::var("NCPROJ_COLOR").as_deref() {
        Ok("0") => false,
        Ok("1") => true,
        _ => is_terminal,
    }
}
