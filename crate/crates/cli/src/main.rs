mod args;
mod cache;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use attrarith::numeric::MIN_PRECISION;
use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.prec < MIN_PRECISION {
        eprintln!("error: --prec must be at least {MIN_PRECISION} bits");
        return ExitCode::from(2);
    }
    let prec = cli.prec;
    let outcome = match &cli.command {
        Command::Attract(a) => commands::attract(a, prec),
        Command::Certify(a) => commands::certify(a, prec),
        Command::Hcp(a) => commands::hcp(a),
        Command::Jval(a) => commands::jval(a, prec),
        Command::Weber(a) => commands::weber(a, prec),
        Command::Curve(a) => commands::curve(a, prec),
        Command::Resolve(a) => commands::resolve(a, prec),
        Command::Fermat(a) => commands::fermat(a, prec),
        Command::SkCheck(a) => commands::sk_check(a, prec),
        Command::Flow(a) => commands::flow(a, prec),
    };
    match outcome {
        Ok(out) if cli.csv => match out.table {
            Some(t) => emit(&t.render()),
            None => {
                eprintln!("error: `{}` has no tabular output; use --json", out.envelope.command);
                ExitCode::from(2)
            }
        },
        Ok(out) => {
            let mut text = serde_json::to_string_pretty(&out.envelope).expect("serializable envelope");
            text.push('\n');
            emit(&text)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Writes to stdout; a reader that hangs up early is not an error.
fn emit(text: &str) -> ExitCode {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: writing output: {e}");
            ExitCode::from(3)
        }
    }
}
