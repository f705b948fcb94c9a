use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use prodesc::problem::{load, InputError};
use prodesc::report::render_table;
use prodesc::run::{export_complexes, run, Command, Failure, Flags, Model, Outcome};
use prodesc::verify::verify_paper;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Output {
    #[default]
    Table,
    Json,
}

/// Continuous cohomology, pro-discrete cochains and descent `E₂` pages for
/// towers over profinite groups.
#[derive(Debug, Parser)]
#[command(name = "prodesc", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Problem file (JSON, schema "prodesc/1"); not needed for verify-paper.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    s_max: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<i64>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    output: Output,
    /// `E₂` model for the e2 command.
    #[arg(long, value_enum)]
    model: Option<Model>,
    /// Also write the cochain complexes of cohomology requests to this file as JSON matrices.
    #[arg(long, value_name = "PATH")]
    export_complexes: Option<PathBuf>,
    /// Print the wall-clock time of the run to stderr.
    #[arg(long)]
    timing: bool,
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    if cli.command == Command::VerifyPaper {
        return Ok(verify_paper());
    }
    let path = cli.input.as_ref().ok_or_else(|| {
        Failure::Input(InputError { location: "--input".into(), message: "a problem file is required".into() })
    })?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(InputError { location: path.display().to_string(), message: e.to_string() }))?;
    let problem = load(&text)?;
    let flags = Flags {
        s_max: cli.s_max,
        t_min: cli.t_min,
        t_max: cli.t_max,
        n_max: cli.n_max,
        depth: cli.depth,
        horizon: cli.horizon,
        model: cli.model,
    };
    if let Some(path) = &cli.export_complexes {
        if cli.command != Command::Cohomology {
            return Err(Failure::Input(InputError {
                location: "--export-complexes".into(),
                message: "only the cohomology command builds cochain complexes".into(),
            }));
        }
        let text = serde_json::to_string_pretty(&export_complexes(&problem, &flags)?).expect("JSON values serialize");
        std::fs::write(path, text + "\n")
            .map_err(|e| Failure::Input(InputError { location: path.display().to_string(), message: e.to_string() }))?;
    }
    run(&problem, cli.command, &flags)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = execute(&cli);
    if cli.timing {
        eprintln!("prodesc: {} took {:.3} s", cli.command.name(), started.elapsed().as_secs_f64());
    }
    match result {
        Ok(outcome) => {
            match cli.output {
                Output::Json => print!("{}", outcome.report.to_json()),
                Output::Table => print!("{}", render_table(&outcome.report)),
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(f) => {
            eprintln!("prodesc: {}", f);
            ExitCode::from(f.exit_code())
        }
    }
}
