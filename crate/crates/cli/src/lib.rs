//! Command-line front end: tree files in, cdd/JSON/text out.
//!
//! Every command returns an [`Output`]; the binary prints it and exits with
//! its status code. Errors carry their own status (see [`CliError`]).

pub mod cdd;
pub mod commands;
pub mod error;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::CliError;

/// Exit status for a certification mismatch.
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pathpoly", version, about = "Path polytopes of trees: vertices, facets, gluing and certification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertices of the path polytope, one per pair of leaves.
    Vrep(VrepArgs),
    /// Halfspace description of the path polytope.
    Hrep(HrepArgs),
    /// Test whether a point lies in the path polytope.
    Member(MemberArgs),
    /// Check the closed forms against the convex hull oracle.
    Certify(CertifyArgs),
    /// Glue two trees along leaf edges.
    Glue(GlueArgs),
    /// Split a tree into stars with gluing instructions.
    Decompose(DecomposeArgs),
    /// Minimal halfspace description of a vertex set in EXT format.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VFormat {
    Ext,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HFormat {
    Ine,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct VrepArgs {
    /// Tree file (edge list or Newick).
    pub tree: PathBuf,
    #[arg(long, value_enum, default_value = "ext")]
    pub format: VFormat,
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HrepArgs {
    pub tree: PathBuf,
    /// Accept any tree, including ones with internal nodes of degree 2.
    #[arg(long)]
    pub general: bool,
    #[arg(long, value_enum, default_value = "ine")]
    pub format: HFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    pub tree: PathBuf,
    /// Point file: one rational per edge, in edge order.
    pub point: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["tree", "all_trees_up_to"])))]
pub struct CertifyArgs {
    pub tree: Option<PathBuf>,
    /// Certify every tree with at most this many edges.
    #[arg(long, value_name = "E")]
    pub all_trees_up_to: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct GlueArgs {
    pub tree1: PathBuf,
    /// Leaf edge of the first tree, as `a,b`.
    pub edge1: String,
    pub tree2: PathBuf,
    /// Leaf edge of the second tree, as `a,b`.
    pub edge2: String,
    /// Append the toric fiber product trace as comments.
    #[arg(long)]
    pub trace: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub tree: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Vertex file in EXT format.
    pub ext: PathBuf,
    #[arg(long, value_enum, default_value = "ine")]
    pub format: HFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Result of a successful command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    /// Text for standard output. Empty when written to a file.
    pub stdout: String,
    /// Diagnostics for standard error.
    pub stderr: String,
    pub code: i32,
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Vrep(a) => commands::vrep(&a),
        Command::Hrep(a) => commands::hrep(&a),
        Command::Member(a) => commands::member(&a),
        Command::Certify(a) => commands::certify(&a),
        Command::Glue(a) => commands::glue(&a),
        Command::Decompose(a) => commands::decompose(&a),
        Command::Oracle(a) => commands::oracle(&a),
    }
}

/// Parses `args` (program name first) and runs the command. Never panics on
/// bad arguments: help and version give status 0, usage errors status 1.
pub fn run_args<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { stdout: String::new(), stderr: text, code: 1 }
            } else {
                Output { stdout: text, stderr: String::new(), code: 0 }
            };
        }
    };
    match run(cli) {
        Ok(out) => out,
        Err(e) => Output { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}
