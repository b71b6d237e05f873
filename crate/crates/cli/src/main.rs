mod args;
mod commands;
mod envelope;

use std::io::{Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use ffcube_core::par;

use args::{Cli, Command, Format};
use commands::{Failure, Outcome};
use envelope::Envelope;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn run(cli: &Cli, threads: usize) -> Result<Outcome, Failure> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Scan(_)) {
        return Err(Failure::Usage(
            "--format csv is only available for scan".into(),
        ));
    }
    match &cli.command {
        Command::Field { p } => commands::field(*p),
        Command::Search { kind } => commands::search(kind),
        Command::Verify(a) => commands::verify(a),
        Command::Scan(a) => commands::scan(a, threads),
        Command::Bounds { input } => {
            let text = read_input(input)?;
            let saved: Envelope = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{} is not a report: {e}", input.display())))?;
            commands::bounds(&saved, &input.display().to_string())
        }
    }
}

fn render(cli: &Cli, out: &Outcome) -> Result<Vec<u8>, Failure> {
    match (cli.format, &out.csv) {
        (Format::Csv, Some(rows)) => {
            let mut w = csv::Writer::from_writer(vec![]);
            for r in rows {
                w.serialize(r).map_err(|e| Failure::Io(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Failure::Io(e.to_string()))
        }
        _ => {
            let mut text = serde_json::to_string_pretty(&out.envelope)
                .map_err(|e| Failure::Io(e.to_string()))?;
            text.push('\n');
            Ok(text.into_bytes())
        }
    }
}

fn emit(cli: &Cli, bytes: &[u8]) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

const THREADS_ENV: &str = "FFCUBE_THREADS";

/// `--threads`, else `$FFCUBE_THREADS`, else available parallelism.
fn thread_count(flag: Option<u32>) -> Result<usize, Failure> {
    if let Some(t) = flag {
        return Ok(t as usize);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => Err(Failure::Usage(format!(
                "{THREADS_ENV}={v:?} is not a positive integer"
            ))),
        },
        Err(_) => Ok(par::available_threads()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match thread_count(cli.threads) {
        Ok(t) => t,
        Err(f) => {
            eprintln!("error: {f}");
            return ExitCode::from(f.exit_code() as u8);
        }
    };
    let start = Instant::now();
    let result = par::with_threads(threads, || run(&cli, threads)).and_then(|mut out| {
        out.envelope.wall_time = start.elapsed().as_secs_f64();
        emit(&cli, &render(&cli, &out)?)?;
        Ok(out)
    });
    match result {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            if out.failed {
                eprintln!("error: one or more checks failed");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
