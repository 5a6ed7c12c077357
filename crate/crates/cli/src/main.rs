mod args;
mod paper;
mod render;

use std::io::{self, Write};
use std::net::{SocketAddr, ToSocketAddrs};
use std::process::ExitCode;

use clap::Parser;
use probnull_core::scenario::run_builtin_grid;
use probnull_core::{Error as CoreError, PosteriorRequest};
use probnull_server::AppState;

use args::{Cli, Command, ComputeArgs, GridArgs, GridFormat, ServeArgs};

/// Failures with their exit status: 2 for bad arguments, 1 for everything else.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn from_core(err: CoreError) -> Self {
        match err.field() {
            Some(field) => CliError::Usage(format!("invalid value for {}: {err}", flag_for(field))),
            None => CliError::Failure(err.to_string()),
        }
    }
}

fn flag_for(field: &str) -> &'static str {
    match field.split('.').next().unwrap_or(field) {
        "prior" => "--prior",
        "alpha" => "--alpha",
        "type2" => "--type2",
        "n" => "--n",
        "ci_level" => "--ci-level",
        _ => "arguments",
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Paper(args) => paper::run(&args.out_dir, args.n, args.seed.seed)
            .map(|written| eprintln!("wrote {written} files to {}", args.out_dir.display())),
        Command::Grid(args) => grid(args),
        Command::Serve(args) => serve(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn io_failure(err: io::Error) -> CliError {
    CliError::Failure(err.to_string())
}

fn compute(args: ComputeArgs) -> Result<(), CliError> {
    let request = PosteriorRequest {
        prior: args.prior,
        alpha: args.alpha,
        type2: args.type2,
        n: Some(args.n),
        seed: Some(args.seed.seed),
        ci_level: Some(args.ci_level),
    };
    let resolved = request
        .resolve(|| unreachable!("seed is always set"))
        .map_err(CliError::from_core)?;
    let response = resolved.compute().map_err(CliError::from_core)?;
    let mut out = io::stdout().lock();
    render::compute(&mut out, &response, args.format).map_err(io_failure)?;
    out.flush().map_err(io_failure)
}

fn grid(args: GridArgs) -> Result<(), CliError> {
    let grid = run_builtin_grid(args.n, args.seed.seed).map_err(CliError::from_core)?;
    let mut out = io::stdout().lock();
    match args.format {
        GridFormat::Csv => grid
            .write_csv(&mut out)
            .map_err(|e| CliError::Failure(e.to_string()))?,
        GridFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &grid.to_json())
                .map_err(|e| CliError::Failure(e.to_string()))?;
            writeln!(out).map_err(io_failure)?;
        }
    }
    out.flush().map_err(io_failure)
}

fn serve(args: ServeArgs) -> Result<(), CliError> {
    let port = u16::try_from(args.port)
        .map_err(|_| CliError::Failure(format!("port {} is out of range (0-65535)", args.port)))?;
    let addr: SocketAddr = (args.host.as_str(), port)
        .to_socket_addrs()
        .map_err(|e| CliError::Failure(format!("cannot resolve {}: {e}", args.host)))?
        .next()
        .ok_or_else(|| CliError::Failure(format!("no address for {}", args.host)))?;
    let runtime = tokio::runtime::Runtime::new().map_err(io_failure)?;
    runtime.block_on(async {
        let listener = probnull_server::bind(addr)
            .await
            .map_err(|e| CliError::Failure(format!("cannot bind {addr}: {e}")))?;
        let local = listener.local_addr().map_err(io_failure)?;
        match args.seed {
            Some(seed) => eprintln!("listening on http://{local} (root seed {seed})"),
            None => eprintln!("listening on http://{local}"),
        }
        probnull_server::serve(listener, AppState::new(args.seed))
            .await
            .map_err(io_failure)
    })
}
