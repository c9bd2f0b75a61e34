use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;

#[derive(Parser)]
#[command(name = "cliquefam", version, about = "Cliques with restricted intersections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an extremal construction.
    Construct(ConstructArgs),
    /// Count r-cliques of a graph.
    Count(CountArgs),
    /// Check an intersection property of a graph's r-cliques or a set family.
    Verify(VerifyArgs),
    /// Run the structural reductions on a graph.
    Analyze(AnalyzeArgs),
    /// Evaluate every applicable closed-form bound.
    Bounds(BoundsArgs),
    /// Exact extremal values by exhaustive search.
    Search(SearchArgs),
    /// Run the acceptance checks and print a pass/fail table.
    Repro(ReproArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Ap,
    Hm,
    Ekr,
    Single,
    Turan,
    Blowup,
    Complete,
    Frankl,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutFormat {
    G6,
    Json,
    Family,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Star,
    Ball,
}

#[derive(Args, Serialize)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Allowed intersection sizes, comma separated.
    #[arg(long = "L", value_name = "LIST")]
    #[serde(rename = "L")]
    pub l: Option<String>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, value_enum, default_value = "ball")]
    pub variant: Variant,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutFormat,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InFormat {
    Auto,
    G6,
    Family,
}

#[derive(Args, Serialize)]
pub struct InputArgs {
    /// Input file, or `-` for standard input.
    #[arg(long = "in", value_name = "PATH")]
    #[serde(rename = "in")]
    pub input: String,
    #[arg(long = "input-format", value_enum, default_value = "auto")]
    pub input_format: InFormat,
}

#[derive(Args, Serialize)]
pub struct CountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub r: usize,
    /// Include the cliques and per-vertex degrees.
    #[arg(long)]
    pub list: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    #[value(name = "l-intersecting")]
    LIntersecting,
    TIntersecting,
    Nontrivial,
    CoverFree,
    ModQ,
}

#[derive(Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub property: Property,
    #[command(flatten)]
    #[serde(flatten)]
    pub input: InputArgs,
    /// Clique size; read from the family header when omitted.
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long = "L", value_name = "LIST")]
    #[serde(rename = "L")]
    pub l: Option<String>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// Allowed residues mod q, comma separated.
    #[arg(long, value_name = "LIST")]
    pub residues: Option<String>,
}

#[derive(Args, Serialize)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub r: usize,
    #[arg(long = "L", value_name = "LIST")]
    #[serde(rename = "L")]
    pub l: Option<String>,
    /// Core of the sunflower to maximise, comma separated.
    #[arg(long = "sunflower-core", value_name = "LIST")]
    pub sunflower_core: Option<String>,
    /// Core size for the high-multiplicity core collection.
    #[arg(long = "sunflower-ell")]
    pub sunflower_ell: Option<usize>,
    /// Petal threshold for the core collection (default r²).
    #[arg(long = "sunflower-threshold")]
    pub sunflower_threshold: Option<usize>,
    #[arg(long = "atoms-d")]
    pub atoms_d: Option<usize>,
    #[arg(long = "prune-threshold")]
    pub prune_threshold: Option<usize>,
    #[arg(long = "cover-t")]
    pub cover_t: Option<usize>,
    /// Heaviness threshold (default ⌊r·n^(r−t−2)⌋).
    #[arg(long = "cover-threshold")]
    pub cover_threshold: Option<u128>,
    /// Check the five structure-theorem properties against `--L`.
    #[arg(long)]
    pub furedi: bool,
}

#[derive(Args, Serialize)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long = "L", value_name = "LIST")]
    #[serde(rename = "L")]
    pub l: String,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Psi,
    Phi,
    Coverfree,
}

#[derive(Args, Serialize)]
pub struct SearchArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long = "L", value_name = "LIST")]
    #[serde(rename = "L")]
    pub l: Option<String>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, env = "CLIQUEFAM_THREADS")]
    pub threads: Option<usize>,
    /// Largest vertex count for graph searches.
    #[arg(long = "max-n")]
    pub max_n: Option<usize>,
    /// Largest number of r-subsets for family searches.
    #[arg(long = "max-subsets")]
    pub max_subsets: Option<usize>,
    /// Write the witness here (graph6, or family text for phi).
    #[arg(long = "emit-witness", value_name = "PATH")]
    pub emit_witness: Option<String>,
}

#[derive(Args, Serialize)]
pub struct ReproArgs {
    /// Criterion ids or groups, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    #[arg(long, default_value_t = cliquefam::repro::ReproConfig::default().seed)]
    pub seed: u64,
    #[arg(long, env = "CLIQUEFAM_THREADS")]
    pub threads: Option<usize>,
    /// Print a JSON record instead of the table.
    #[arg(long)]
    pub json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(a) => commands::construct(a),
        Command::Count(a) => commands::count(a),
        Command::Verify(a) => commands::verify(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Search(a) => commands::search(a),
        Command::Repro(a) => commands::repro(a),
    };
    match outcome {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
