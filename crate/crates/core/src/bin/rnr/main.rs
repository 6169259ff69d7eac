//! Command-line surface: classification, boundary sampling, census,
//! construction, and the non-join witness search.
//!
//! Exit codes: 0 ok, 2 input error, 3 numerical failure, 4 census
//! quarantine.

mod construct;
mod svg;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rnr::digraph::{decompose_directed_join, search_nonjoin_witness, Digraph};
use rnr::io::{from_digraph6, from_edge_list, to_digraph6, to_edge_list};
use rnr::range::{alpha_beta, boundary_sample, classify, restricted_spectrum};
use rnr::survey::{census_builtin, census_stream, CensusOptions, SurveyReport};
use rnr::Error;

use construct::parse_construct;

#[derive(Parser)]
#[command(name = "rnr", version, about = "Restricted numerical range of digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a digraph as normal, restricted-normal, pseudo-normal
    /// or non-polygonal, with range and connectivity data as JSON.
    Classify(ClassifyArgs),
    /// Sample the boundary of the restricted numerical range as CSV,
    /// optionally rendering an SVG overlay.
    Boundary(BoundaryArgs),
    /// Count digraph classes for a whole order (built-in enumeration up
    /// to order 5, digraph6 streams beyond).
    Survey(SurveyArgs),
    /// Build a digraph from a constructor expression and write it out.
    Construct(ConstructArgs),
    /// Randomized search for a restricted-normal digraph that is not a
    /// directed join.
    Search(SearchArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    /// digraph6 line format
    D6,
    /// edge-list text format
    Edges,
}

#[derive(Args)]
struct InputArgs {
    /// Read the digraph from this file
    #[arg(long, required_unless_present = "construct", conflicts_with = "construct")]
    input: Option<PathBuf>,
    /// Build the digraph from a constructor expression, e.g.
    /// "djoin(dicycle:3,dicycle:3)"
    #[arg(long)]
    construct: Option<String>,
    /// File format for --input
    #[arg(long, value_enum, default_value = "d6")]
    format: Format,
}

impl InputArgs {
    fn load(&self) -> Result<Digraph, Error> {
        if let Some(expr) = &self.construct {
            return parse_construct(expr);
        }
        let path = self.input.as_ref().expect("clap enforces one source");
        let text = fs::read_to_string(path)?;
        match self.format {
            Format::D6 => {
                let line = text
                    .lines()
                    .find(|l| !l.trim().is_empty())
                    .ok_or_else(|| Error::InvalidInput(format!("{} is empty", path.display())))?;
                from_digraph6(line, 1)
            }
            Format::Edges => from_edge_list(&text),
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Supporting-line slack for the polygonality test
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Args)]
struct BoundaryArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of sampled supporting angles
    #[arg(long, default_value_t = 256)]
    samples: usize,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render an SVG of the range here
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct SurveyArgs {
    /// Digraph order for the built-in enumeration (2..=5)
    #[arg(required_unless_present = "stream", conflicts_with = "stream")]
    order: Option<usize>,
    /// Classify an externally generated digraph6 stream instead
    #[arg(long)]
    stream: Option<PathBuf>,
    /// Supporting-line slack for the polygonality test
    #[arg(long)]
    eps: Option<f64>,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Dump pseudo-normal witnesses (digraph6, one per line) here
    #[arg(long)]
    witnesses: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Constructor expression, e.g. "inflate(thm39:3,2)"
    expr: String,
    /// Output format
    #[arg(long, value_enum, default_value = "d6")]
    format: Format,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Digraph order to search
    order: usize,
    /// Number of random candidates to try
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    /// RNG seed; runs are reproducible per seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Serialize)]
struct JoinSizes {
    head_size: usize,
    tail_size: usize,
}

#[derive(Serialize)]
struct ClassifyOutput {
    order: usize,
    class: String,
    balanced: bool,
    alpha: f64,
    beta: f64,
    imbalances: Vec<i64>,
    terminal_scc_count: usize,
    directed_join: Option<JoinSizes>,
}

fn write_or_print(target: &Option<PathBuf>, contents: &str) -> Result<(), Error> {
    match target {
        Some(path) => fs::write(path, contents)?,
        None => print!("{contents}"),
    }
    Ok(())
}

fn validate_eps(eps: Option<f64>) -> Result<Option<f64>, Error> {
    match eps {
        Some(e) if e.is_nan() || e <= 0.0 => Err(Error::InvalidInput(format!(
            "--eps must be positive, got {e}"
        ))),
        other => Ok(other),
    }
}

fn cmd_classify(args: &ClassifyArgs) -> Result<(), Error> {
    let eps = validate_eps(args.eps)?;
    let g = args.input.load()?;
    let label = classify(&g, eps)?;
    let (alpha, beta) = alpha_beta(&g)?;
    let join = decompose_directed_join(&g).map(|d| JoinSizes {
        head_size: d.head.order(),
        tail_size: d.tail.order(),
    });
    let out = ClassifyOutput {
        order: g.order(),
        class: label.as_str().to_string(),
        balanced: g.is_balanced(),
        alpha,
        beta,
        imbalances: g.degree_profile().imbalances,
        terminal_scc_count: g.scc_decomposition().terminal_count(),
        directed_join: join,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("classify output serializes")
    );
    Ok(())
}

fn cmd_boundary(args: &BoundaryArgs) -> Result<(), Error> {
    let g = args.input.load()?;
    let res = boundary_sample(&g, args.samples)?;
    let mut csv = String::from("theta,support,point_re,point_im\n");
    for (k, (p, h)) in res
        .boundary_points
        .iter()
        .zip(&res.support_values)
        .enumerate()
    {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / args.samples as f64;
        csv.push_str(&format!("{theta},{h},{},{}\n", p.re, p.im));
    }
    write_or_print(&args.out, &csv)?;
    if let Some(path) = &args.svg {
        let spectrum = restricted_spectrum(&g)?;
        fs::write(path, svg::render_svg(&res, spectrum.values()))?;
    }
    Ok(())
}

fn cmd_survey(args: &SurveyArgs) -> Result<(), Error> {
    let opts = CensusOptions {
        eps: validate_eps(args.eps)?,
        jobs: args.jobs,
        complement_pairing: true,
    };
    let report: SurveyReport = match &args.stream {
        Some(path) => census_stream(path, &opts)?,
        None => census_builtin(args.order.expect("clap enforces order"), &opts)?,
    };
    eprint!("{}", report.to_table());
    if let Some(path) = &args.witnesses {
        let mut text = String::new();
        for w in &report.pseudo_normal_witnesses {
            text.push_str(w);
            text.push('\n');
        }
        fs::write(path, text)?;
    }
    let json = format!("{}\n", report.to_json());
    write_or_print(&args.out, &json)?;
    Ok(())
}

fn cmd_construct(args: &ConstructArgs) -> Result<(), Error> {
    let g = parse_construct(&args.expr)?;
    let text = match args.format {
        Format::D6 => format!("{}\n", to_digraph6(&g)),
        Format::Edges => to_edge_list(&g),
    };
    write_or_print(&args.out, &text)
}

fn cmd_search(args: &SearchArgs) -> Result<(), Error> {
    match search_nonjoin_witness(args.order, args.budget, args.seed)? {
        Some(g) => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{}", to_digraph6(&g))?;
            writeln!(out, "# order: {}", g.order())?;
            writeln!(out, "# imbalances: {:?}", g.degree_profile().imbalances)?;
            writeln!(out, "# restricted-normal (exact identity): true")?;
            writeln!(out, "# directed-join split: none")?;
            writeln!(out, "# class: {}", classify(&g, None)?)?;
        }
        None => println!("none found in budget"),
    }
    Ok(())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NonConvergence(_) | Error::Numerical(_) => 3,
        Error::Quarantine(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::Boundary(args) => cmd_boundary(args),
        Command::Survey(args) => cmd_survey(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Search(args) => cmd_search(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if let Error::Quarantine(lines) = &err {
                for line in lines {
                    eprintln!("quarantined: {line}");
                }
            }
            ExitCode::from(exit_code_for(&err))
        }
    }
}
