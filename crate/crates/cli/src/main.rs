use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hardy_cli::{Cli, CliError, Payload};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let outcome = cli.command.run()?;
    let output = cli.command.output();
    let text = outcome.record.render(output.format);
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not a failed check
            let _ = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush());
        }
    }
    if let Payload::Verify(report) = &outcome.record.payload {
        for check in report.failed_checks() {
            eprintln!(
                "failed: {} = {:e} (threshold {:e})",
                check.name, check.value, check.threshold
            );
        }
    }
    Ok(outcome.exit_code)
}
