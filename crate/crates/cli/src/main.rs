use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use naimark::{fixtures, Graph};

mod commands;
mod document;

use document::GraphDocument;

#[derive(Parser)]
#[command(
    name = "naimark",
    version,
    about = "Analyse graph algebras of finite directed graphs"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph file in JSON.
    file: Option<PathBuf>,
    /// Use a built-in graph instead of a file.
    #[arg(long, conflicts_with = "file")]
    fixture: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex classes, cycles, line points and components.
    Analyze(Input),
    /// Decide whether all irreducible representations are equivalent.
    /// Exits with 1 when they are not.
    Naimark(Input),
    /// Shift-tail classes of boundary paths and the trichotomy case.
    Classes(Input),
    /// An elementary composition series of an acyclic graph.
    Compseries(Input),
    /// The boundary-path representation of an acyclic graph.
    Rep(Input),
    /// Admissible pairs, quotients and ideal graphs.
    Ideals(Input),
    /// Graphviz rendering of the graph.
    ExportDot(Input),
    /// The graph in the JSON file format.
    ExportJson(Input),
    /// Compare the two characterisations across many graphs.
    Sweep {
        /// Check random graphs from this seed instead of the exhaustive list.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random graphs when a seed is given.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn load(input: &Input) -> Result<Graph, String> {
    match (&input.fixture, &input.file) {
        (Some(name), _) => fixtures::by_name(name).ok_or_else(|| {
            format!(
                "unknown fixture `{name}`; built-ins are {}",
                fixtures::NAMES.join(", ")
            )
        }),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let doc =
                GraphDocument::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            doc.to_graph()
                .map_err(|e| format!("{}: {e}", path.display()))
        }
        (None, None) => Err("give a graph file or --fixture <name>".into()),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let report = match &cli.command {
        Command::Sweep { seed, samples } => commands::sweep(*seed, *samples),
        Command::ExportDot(input) => {
            print!("{}", commands::export_dot(&load(input)?));
            return Ok(ExitCode::SUCCESS);
        }
        Command::ExportJson(input) => {
            print!("{}", commands::export_json(&load(input)?));
            return Ok(ExitCode::SUCCESS);
        }
        Command::Analyze(input) => commands::analyze(&load(input)?),
        Command::Naimark(input) => commands::naimark(&load(input)?),
        Command::Classes(input) => commands::classes(&load(input)?),
        Command::Compseries(input) => commands::compseries(&load(input)?),
        Command::Rep(input) => commands::rep(&load(input)?),
        Command::Ideals(input) => commands::ideals(&load(input)?),
    }
    .map_err(|e| e.to_string())?;
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report.json).expect("reports serialise")
        );
    } else {
        print!("{}", report.text);
    }
    Ok(if report.negative {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
