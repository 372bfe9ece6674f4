use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use domfix_cli::{run, Command, Format, RunConfig, DEFAULT_BUDGET, DEFAULT_CAP, DEFAULT_LIMIT};

#[derive(Parser)]
#[command(
    name = "domfix",
    version,
    about = "Domination, prism fixers and witness permutations over graph6 corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Cmd {
    /// Domination number and a minimum dominating set per graph.
    Gamma,
    /// Prism-fixer status, symmetric γ-sets and their checks.
    Analyze,
    /// A permutation raising γ for every graph with an edge.
    Verify,
    /// graph6 of the prism under a permutation.
    Prism {
        /// Permutation in cycle notation, e.g. "(0 2 1)(3)".
        #[arg(long)]
        perm: String,
        /// Use this graph6 string instead of reading input.
        #[arg(long, conflicts_with = "input")]
        graph: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    /// graph6 input file, `-` for stdin; repeatable. Defaults to stdin.
    #[arg(long, short, global = true)]
    input: Vec<PathBuf>,
    /// Random permutations tried by the fallback search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Largest order that also gets a brute-force γ cross-check.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Maximum γ-sets enumerated per graph.
    #[arg(long, global = true, default_value_t = DEFAULT_LIMIT as u64, value_parser = clap::value_parser!(u64).range(1..))]
    limit: u64,
    /// Run seed, mixed with each graph's graph6 text.
    #[arg(long, global = true, env = "DOMFIX_SEED", default_value_t = 0)]
    seed: u64,
    /// Output format; the summary always goes to stderr.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Worker threads.
    #[arg(long, short, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inline = None;
    let command = match cli.command {
        Cmd::Gamma => Command::Gamma,
        Cmd::Analyze => Command::Analyze,
        Cmd::Verify => Command::Verify,
        Cmd::Prism { perm, graph } => {
            inline = graph;
            Command::Prism { perm }
        }
    };
    let c = cli.common;
    let config = RunConfig {
        inputs: c.input,
        command,
        budget: c.budget,
        cap: c.cap as usize,
        limit: c.limit as usize,
        seed: c.seed,
        format: match c.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        },
        jobs: c.jobs as usize,
    };

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut diag = io::stderr();
    let result = match inline {
        Some(g6) => domfix_cli::run_readers(
            &config,
            vec![("--graph".into(), Box::new(io::Cursor::new(g6.into_bytes())))],
            &mut out,
            &mut diag,
        ),
        None => run(&config, &mut out, &mut diag),
    };
    match result {
        Ok(summary) => ExitCode::from(summary.exit_code() as u8),
        Err(e) => {
            drop(out);
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
