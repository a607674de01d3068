mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "stablab", version, about = "Central extensions, exterior squares and almost-representation experiments")]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the JSON document here instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of a finitely presented group.
    Group(GroupArgs),
    /// Computations on a central extension.
    Extension(ExtensionArgs),
    /// Run verification suites over the bundled catalogs.
    Verify(VerifyArgs),
    /// Rational cohomology of compact duals of symmetric spaces.
    Symspace(SymspaceArgs),
    /// Defects, perturbation solving and thresholds for unitary tuples.
    Stability(StabilityArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["multiplier", "abelianization", "exterior_square", "cohomology"])))]
pub struct GroupArgs {
    /// Presentation file in `.grp` format.
    pub file: PathBuf,
    /// Pick a block by name when the file holds several.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub multiplier: bool,
    #[arg(long)]
    pub abelianization: bool,
    #[arg(long)]
    pub exterior_square: bool,
    /// Degree and coefficients, e.g. `--cohomology 2 Z/2xZ/4`.
    #[arg(long, num_args = 2, value_names = ["DEG", "COEFFS"])]
    pub cohomology: Option<Vec<String>>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["pushforward", "transgression", "five_term"])))]
pub struct ExtensionArgs {
    /// Extension file: lines `name base kernel terms`.
    pub file: PathBuf,
    #[arg(long)]
    pub name: Option<String>,
    /// `TARGET:IMAGES`, e.g. `4:2` or `2,2:1,0;0,1`.
    #[arg(long, value_name = "BETA")]
    pub pushforward: Option<String>,
    #[arg(long, value_name = "COEFFS")]
    pub transgression: Option<String>,
    #[arg(long, value_name = "COEFFS")]
    pub five_term: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = ["multiplier", "miller", "split", "lemma-i", "five-term", "spectral", "symspace", "stability", "all"])]
    pub suite: String,
    #[arg(long, default_value_t = 16)]
    pub max_order: usize,
    /// Run cases one after another.
    #[arg(long)]
    pub sequential: bool,
    /// Include per-case details in the output.
    #[arg(long)]
    pub details: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["entry", "verdict", "list"])))]
pub struct SymspaceArgs {
    #[arg(long)]
    pub entry: Option<String>,
    /// Comma-separated factors, by entry name or group.
    #[arg(long, value_name = "FACTORS")]
    pub verdict: Option<String>,
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("action").args(["defect", "solve", "alpha", "quotient_transfer", "experiment"])))]
#[command(group(ArgGroup::new("source").args(["voiculescu", "group"])))]
pub struct StabilityArgs {
    #[arg(long)]
    pub defect: bool,
    #[arg(long)]
    pub solve: bool,
    /// Shift and clock pair of size N.
    #[arg(long, value_name = "N")]
    pub voiculescu: Option<usize>,
    /// Random representation of a catalog group (or `Z^2`), perturbed by `--delta`.
    #[arg(long, value_name = "NAME")]
    pub group: Option<String>,
    /// Threshold α(N) for the group in a `.grp` file.
    #[arg(long, value_name = "FILE")]
    pub alpha: Option<PathBuf>,
    /// Transfer through the quotient by the `normal` words of `--presentation`.
    #[arg(long)]
    pub quotient_transfer: bool,
    #[arg(long, value_name = "FILE", requires = "quotient_transfer")]
    pub presentation: Option<PathBuf>,
    /// Batch run from a `key = value` config file.
    #[arg(long, value_name = "FILE")]
    pub experiment: Option<PathBuf>,
    #[arg(long, default_value = "frobenius", value_name = "frobenius|hs|operator|schatten:P")]
    pub norm: String,
    #[arg(long, default_value_t = 4)]
    pub dimension: usize,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
}

fn render(doc: &Value, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(doc) } else { serde_json::to_string(doc) }.expect("JSON values serialize");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            if !e.render().to_string().contains("Usage:") {
                use clap::CommandFactory;
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return ExitCode::from(2);
        }
    };
    let (mut doc, code) = match commands::run(&cli) {
        Ok(outcome) => outcome,
        Err(commands::Failure::Usage(msg)) => {
            use clap::CommandFactory;
            let _ = Cli::command().error(clap::error::ErrorKind::ArgumentConflict, msg).print();
            return ExitCode::from(2);
        }
        Err(commands::Failure::Computation(e)) => (json!({"error": e.name(), "message": e.to_string()}), 1),
    };
    let obj = doc.as_object_mut().expect("documents are objects");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    let text = render(&doc, cli.pretty);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
