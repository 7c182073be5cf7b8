//! `ifstopo` — build exact attractor covers, interrogate their topology,
//! run the Cantor collapse-quotient pipeline, and draw figures.
//!
//! Every number printed here comes from a library call; the binary only
//! parses arguments, routes values, and formats output. Exit codes:
//! 0 success, 2 invalid input, 3 resource limit, 4 refused on topological
//! grounds, 1 internal error.

mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ifs_topology::attractor::{
    iterate_attractor, max_cell_diameter, preset, IFSystem, DEFAULT_CELL_BUDGET,
};
use ifs_topology::geom::SquaredDist;
use ifs_topology::quotient::{iterate_quotients, Word};
use ifs_topology::rational::{format_rational, parse_rational, sig6, to_f64, Rational};
use ifs_topology::textio;
use ifs_topology::topology::find_arc;
use ifs_topology::Error;

const EXIT_INVALID: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_REFUSED: u8 = 4;

/// Largest quotient depth the exhaustive pair checks will take on.
const MAX_QUOTIENT_DEPTH: usize = 12;

#[derive(Parser)]
#[command(
    name = "ifstopo",
    version,
    about = "Exact-rational IFS attractor covers and finite-resolution topology checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the level-k cover and export its cells
    Attractor(AttractorArgs),
    /// Run every topological check and write a structured report
    Analyze(AnalyzeArgs),
    /// Build and verify collapse quotients of the cmts code space
    Quotient(QuotientArgs),
    /// Render a cover (optionally with an arc between two points) as SVG
    Render(RenderArgs),
    /// Print the consolidated analysis report to stdout
    Report(ReportArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Bundled system: cmts, sierpinski-carpet, sierpinski-gasket
    #[arg(long, conflicts_with = "ifs_file")]
    preset: Option<String>,

    /// System definition file (dim, ambient, diagonal map lines)
    #[arg(long)]
    ifs_file: Option<PathBuf>,
}

impl SystemArgs {
    fn load(&self) -> Result<Arc<IFSystem>, CliError> {
        let ifs = match (&self.preset, &self.ifs_file) {
            (Some(name), None) => preset(name)?,
            (None, Some(path)) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    CliError::from(Error::invalid(format!("cannot read {}: {e}", path.display())))
                })?;
                textio::parse_ifs(&text)?
            }
            _ => {
                return Err(Error::invalid("exactly one of --preset or --ifs-file is required").into())
            }
        };
        Ok(Arc::new(ifs))
    }
}

#[derive(Args)]
struct DepthArgs {
    /// Approximation level k (the cover has m^k cells)
    #[arg(long, default_value_t = 2)]
    depth: usize,

    /// Cell budget; commands refuse to allocate more than this many cells
    #[arg(long, env = "IFSTOPO_BUDGET", default_value_t = DEFAULT_CELL_BUDGET)]
    budget: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct AttractorArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    depth: DepthArgs,
    /// Write the cell export here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    depth: DepthArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct QuotientArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Code-space depth k (words over {1,2} of length k)
    #[arg(long, default_value_t = 5)]
    depth: usize,
    /// Prefix word of the clopen cylinder Y
    #[arg(long = "y-cylinder", default_value = "1")]
    y_cylinder: String,
    /// The point the complement of Y collapses to (first iteration only;
    /// defaults to the leftmost word of Y)
    #[arg(long = "q-word")]
    q_word: Option<String>,
    /// Number of quotient iterations
    #[arg(long, default_value_t = 1)]
    iterations: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    depth: DepthArgs,
    /// Two points "x[,y]" to join by an arc inside the cover
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    arc: Vec<String>,
    /// Write the SVG here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    depth: DepthArgs,
}

/// Library error plus the refusal case, which is the CLI's own.
enum CliError {
    Lib(Error),
    Refused(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::InvalidInput(_)) | CliError::Lib(Error::Unsupported(_)) => {
                EXIT_INVALID
            }
            CliError::Lib(Error::ResourceLimit(_)) => EXIT_RESOURCE,
            CliError::Lib(Error::Internal(_)) => 1,
            CliError::Refused(_) => EXIT_REFUSED,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Refused(msg) => msg.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Attractor(args) => cmd_attractor(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Quotient(args) => cmd_quotient(args),
        Command::Render(args) => cmd_render(args),
        Command::Report(args) => cmd_report(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| {
            CliError::from(Error::invalid(format!("cannot write {}: {e}", p.display())))
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_attractor(args: AttractorArgs) -> Result<(), CliError> {
    let ifs = args.system.load()?;
    let cells = iterate_attractor(&ifs, args.depth.depth, args.depth.budget)?;
    let export = textio::write_cells(&cells);
    write_output(args.out.as_deref(), &export)?;

    let diameter = SquaredDist::new(max_cell_diameter(&cells));
    let sum = ifs.lipschitz_sum();
    let summary = format!(
        "cells: {}\nmax_cell_diameter_squared: {} (~{})\nlipschitz_sum: {} (~{})\n",
        cells.len(),
        format_rational(&diameter.squared),
        sig6(diameter.approx()),
        format_rational(&sum),
        sig6(to_f64(&sum)),
    );
    if args.out.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let ifs = args.system.load()?;
    let report = textio::AnalysisReport::compute(&ifs, args.depth.depth, args.depth.budget)?;
    let rendered = match args.format {
        Format::Text => textio::analysis_to_text(&report),
        Format::Json => textio::analysis_to_json(&report),
    };
    write_output(args.out.as_deref(), &rendered)
}

fn cmd_quotient(args: QuotientArgs) -> Result<(), CliError> {
    let ifs = args.system.load()?;
    match ifs.name() {
        "cmts" => {}
        name @ ("sierpinski-carpet" | "sierpinski-gasket") => {
            return Err(CliError::Refused(format!(
                "refusing quotient for {name}: its approximations are connected, so no clopen \
                 split is available to collapse; the construction needs a totally disconnected \
                 space such as cmts"
            )));
        }
        name => {
            return Err(CliError::Refused(format!(
                "refusing quotient for {name}: the collapse construction is implemented for \
                 the cmts code space only"
            )));
        }
    }
    if args.depth > MAX_QUOTIENT_DEPTH {
        return Err(CliError::from(Error::ResourceLimit(format!(
            "quotient depth {} exceeds the supported maximum {MAX_QUOTIENT_DEPTH} \
             (pair checks grow as 4^depth)",
            args.depth
        ))));
    }

    let y_prefix: Word = args.y_cylinder.parse()?;
    let q = args
        .q_word
        .as_deref()
        .map(str::parse::<Word>)
        .transpose()?;
    let reports = iterate_quotients(args.iterations, args.depth, &y_prefix, q.as_ref())?;
    let rendered = match args.format {
        Format::Text => textio::quotient_to_text(&reports),
        Format::Json => textio::quotient_to_json(&reports),
    };
    write_output(args.out.as_deref(), &rendered)
}

fn parse_point(text: &str, dim: usize) -> Result<Vec<Rational>, CliError> {
    let coords = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dim {
        return Err(Error::invalid(format!(
            "point {text:?} has {} coordinates, the system is {dim}-dimensional",
            coords.len()
        ))
        .into());
    }
    Ok(coords)
}

fn cmd_render(args: RenderArgs) -> Result<(), CliError> {
    let ifs = args.system.load()?;
    let cells = iterate_attractor(&ifs, args.depth.depth, args.depth.budget)?;

    let polyline = match args.arc.as_slice() {
        [] => None,
        [p, q] => {
            let p = parse_point(p, ifs.dim())?;
            let q = parse_point(q, ifs.dim())?;
            match find_arc(&cells, &p, &q)? {
                Some(line) => Some(line),
                None => {
                    return Err(Error::invalid(
                        "the arc endpoints lie in different components; no arc exists",
                    )
                    .into())
                }
            }
        }
        _ => unreachable!("clap enforces exactly two arc values"),
    };

    let rendered = svg::render(&cells, polyline.as_ref());
    write_output(args.out.as_deref(), &rendered)
}

fn cmd_report(args: ReportArgs) -> Result<(), CliError> {
    let ifs = args.system.load()?;
    let report = textio::AnalysisReport::compute(&ifs, args.depth.depth, args.depth.budget)?;
    print!("{}", textio::analysis_to_text(&report));
    Ok(())
}
