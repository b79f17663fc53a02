//! JSON front end for `hkit-core`.
//!
//! Every subcommand reads one input document (see [`schema::InputDocument`])
//! and prints one JSON report with sorted keys and `"num/den"` rationals.
//! Exit codes: 0 success, 2 negative verdict, 1 error.

pub mod commands;
pub mod schema;

use std::ffi::OsString;
use std::io::Read;

use clap::Parser;

pub use commands::{execute, Cli, CliError, Command, Flags, Report};
pub use schema::{format_input, parse_input, InputDocument, SchemaError, Term, Q};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

pub const SCHEMA_HELP: &str = r#"INPUT DOCUMENT (JSON, version 1)
  version       1
  variables     ["x1", ...]                      names of the n variables (y-variables for relation commands)
  p, q          integers, default 1              components of series / columns of A
  order         ["1", "2", ...]                  positive rational weights, default all 1
  trunc         D                                truncation degree (or --trunc)
  dividend      [term, ...]                      divide
  divisors      [[term, ...], ...]               divide
  generators    [[term, ...], ...]               diagram, stdbasis, member, complement, lambda, chevalley-estimate
  element       [term, ...]                      member
  l, r, rmax    integers                         (or --l, --r, --rmax)
  charts        [{"variables": [...], "A": [[[term]]] (p x q), "phi": [[term]] (n), "f": [[term]] (p, optional)}]
  point         ["b1", ...]                      (or --point b1,b2)
  fibre         [{"chart": 1, "coords": [...]}]  defaults to {b} when phi is the identity (or --fibre 1:a1,a2;1:c1,c2)
  grid          {"axes": [[...], ...]} or {"points": [[...], ...]}   (or --grid v1,v2;w1,w2)
  grid_fibres   [{"point": [...], "fibre": [...]}]
  stratum       {"origin": [...], "directions": [[...], ...]}        borel
  m             integer                          borel
  field         [{"alpha": [...], "poly": [term, ...]}]              borel, polynomials in the stratum parameters
  function      [term, ...]                      borel, alternative to field
TERM
  {"coeff": "3/2", "alpha": [1, 0], "j": 1}       j is 1-based and defaults to 1
"#;

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(msg: impl std::fmt::Display, with_help: bool) -> Self {
        let mut stderr = format!("error: {msg}\n");
        if with_help {
            stderr.push('\n');
            stderr.push_str(SCHEMA_HELP);
        }
        Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr,
        }
    }
}

fn read_input(flags: &Flags) -> Result<String, CliError> {
    let path = &flags.input;
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns what the binary would print.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: format!("{text}\n{SCHEMA_HELP}"),
                },
            };
        }
    };
    let flags = cli.command.flags();
    let result = read_input(flags)
        .and_then(|text| Ok(parse_input(&text)?))
        .and_then(|doc| execute(&cli.command, &doc));
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            let help = matches!(e, CliError::Usage(_) | CliError::Schema(_));
            return Outcome::error(e, help);
        }
    };
    let code = if report.negative { EXIT_NEGATIVE } else { EXIT_OK };
    let text = report.render();
    match &flags.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::error(format!("cannot write {}: {e}", path.display()), false),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}
