use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use cftent::sweep::with_threads;
use cftent_cli::{run, Cli, CliError, EXIT_STRICT_FIT};

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let (table, strict_failure) = with_threads(cli.threads, || run(cli))??;
    match &cli.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(cli.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(strict_failure)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();
    match execute(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("error: fit residual exceeds the poor-fit threshold");
            ExitCode::from(EXIT_STRICT_FIT as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
