use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use presym_cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    let out = report.render(cli.json);
    let written = if matches!(report.status, Status::InputError | Status::ResourceBound) && !cli.json {
        std::io::stderr().write_all(out.as_bytes())
    } else {
        std::io::stdout().write_all(out.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(report.status.code())
}
