mod args;
mod commands;
mod error;
mod table;
mod validate;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{positive, Cli, Command};
use error::{CliError, CliResult};

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("ZRP_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Usage(format!("ZRP_THREADS must be an integer >= 1, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Phases { target, grid, out } => {
            let t = commands::load_target(&target)?;
            commands::phases(&t, &grid.ks()?)?.write(out.out.as_deref())
        }
        Command::Xsec { target, grid, nodes, out } => {
            let t = commands::load_target(&target)?;
            commands::xsec(&t, &grid.ks()?, nodes)?.write(out.out.as_deref())
        }
        Command::Angular { z, theta_steps, out } => commands::angular(&z, theta_steps)?.write(out.out.as_deref()),
        Command::Amplitude { target, grid, dir_steps, out } => {
            let t = commands::load_target(&target)?;
            commands::amplitude(&t, &grid.ks()?, dir_steps)?.write(out.out.as_deref())
        }
        Command::Figures { c2_r, k_min, k_max, k_steps, theta_steps, out } => {
            let ks = args::linspace(k_min, k_max, k_steps)?;
            commands::figures(&out, &ks, c2_r, theta_steps)
        }
        Command::Validate { tol, c2_r, nodes, out } => {
            let settings = validate::Settings { tol: positive("tol", tol)?, c2_r: positive("c2-r", c2_r)?, nodes };
            let rows = validate::run(&settings).map_err(|e| CliError::from_core("validate", e))?;
            validate::to_table(&rows).write(out.out.as_deref())?;
            let failed = rows.iter().filter(|r| r.status == validate::Status::Fail).count();
            if failed > 0 {
                return Err(CliError::Validation { failed });
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
