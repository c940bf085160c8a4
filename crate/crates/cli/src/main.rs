use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use povm_coherence_cli::args::Cli;
use povm_coherence_cli::commands::Output;
use povm_coherence_cli::error::{CliError, EXIT_INPUT};
use povm_coherence_cli::run;

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let err = CliError::Usage(msg.trim_end().to_string());
            debug_assert_eq!(err.exit_code(), EXIT_INPUT);
            return fail(&err);
        }
    };
    let text = match run(&cli) {
        Ok(Output::Json(v)) => {
            let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
            s.push('\n');
            s
        }
        Ok(Output::Csv(s)) => s,
        Err(e) => return fail(&e),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
