use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cubic_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cubic_cli::run(&cli) {
        Ok(out) => {
            let format = cubic_cli::RunConfig::resolve(&cli.global).map(|c| c.format).unwrap_or(cubic_cli::args::Format::Text);
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.render(format).as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
