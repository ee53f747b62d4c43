use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use nichols::harness::{exit_code, parse_input, run, Command, RunOptions};

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Text,
}

/// Exact computations with Nichols algebras of Yetter-Drinfeld modules.
#[derive(Parser)]
#[command(name = "nichols", version)]
struct Cli {
    /// dims, pairing-check, bosonization-check, omega-check, reflect, verify-ntn or weyl
    command: String,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    cutoff: Option<usize>,
    /// 1-based index of the pivot summand
    #[arg(long)]
    pivot: Option<usize>,
    #[arg(long)]
    max_vertices: Option<usize>,
    /// Defaults to $NICHOLS_CACHE_DIR; no caching if neither is set
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    emit: Emit,
    /// Worker threads; 1 disables internal parallelism
    #[arg(long)]
    threads: Option<usize>,
    /// Add wall-clock time to the document (breaks byte-identical output)
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = std::fs::read_to_string(&cli.input)
        .map_err(|e| nichols::Error::Input(format!("{}: {e}", cli.input.display())))
        .and_then(|text| parse_input(&text))
        .and_then(|input| {
            let command = Command::parse(&cli.command)?;
            let opts = RunOptions { cutoff: cli.cutoff, pivot: cli.pivot, max_vertices: cli.max_vertices, cache_dir: cli.cache_dir.clone(), timing: cli.timing };
            run(command, &input, &opts)
        });
    match &result {
        Ok(doc) => print!("{}", match cli.emit {
            Emit::Json => doc.to_json(),
            Emit::Text => doc.to_text(),
        }),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&result) as u8)
}
