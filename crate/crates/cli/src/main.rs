use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use spatialmc_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default = if cli.verbose { "debug" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(default))
        .format_timestamp(None)
        .init();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = run(&cli, &mut out, &mut io::stderr());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
