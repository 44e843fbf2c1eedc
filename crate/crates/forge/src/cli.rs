//! Argument parsing and dispatch. Reports go to standard output as JSON,
//! diagnostics and timings to standard error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fraction_forge_core::fractions::Side;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::commands::{self, CommandError, Mode, Outcome};
use crate::corpus::corpus_run;
use crate::dot;
use crate::io::{self, AnyInput, Source};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fraction-forge", version, about = "Calculus-of-fractions checks, localizations and graph homotopy probes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Calculus-of-fractions checks.
    #[command(subcommand)]
    Fractions(FractionsCmd),
    /// Localizations and their comparison.
    #[command(subcommand)]
    Localize(LocalizeCmd),
    /// The fraction space between two objects.
    Mapspace(MapspaceArgs),
    /// Discrete homotopy of graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Corpus runs.
    #[command(subcommand)]
    Corpus(CorpusCmd),
    /// Graphviz export.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Subcommand, Debug)]
pub enum FractionsCmd {
    /// Check the calculus of fractions on one side.
    Check(CheckArgs),
    /// Lifting against a single shape inclusion.
    Lift(LiftArgs),
}

#[derive(Subcommand, Debug)]
pub enum LocalizeCmd {
    Gz(GzArgs),
    Ex(ExArgs),
    Compare(CompareArgs),
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    A1(A1Args),
    NerveBox(NerveBoxArgs),
    PullbackProbe(PullbackArgs),
}

#[derive(Subcommand, Debug)]
pub enum CorpusCmd {
    Run(CorpusArgs),
}

#[derive(Subcommand, Debug)]
pub enum ExportCmd {
    Dot(DotArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "R", alias = "r")]
    R,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::L => Side::L,
            SideArg::R => Side::R,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Classical,
    Proper,
    Infty,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Emit JSON on standard output.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set, num_args = 0..=1, default_missing_value = "true")]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "proper")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "L")]
    pub side: SideArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "L")]
    pub side: SideArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct GzArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "L")]
    pub side: SideArg,
    #[arg(long)]
    pub emit_dot: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ExArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
    #[arg(long, value_enum, default_value = "L")]
    pub side: SideArg,
    #[arg(long)]
    pub emit_sset: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct MapspaceArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Source object (vertex name).
    #[arg(long)]
    pub from: String,
    /// Target object (vertex name).
    #[arg(long)]
    pub to: String,
    #[arg(long, value_enum, default_value = "L")]
    pub side: SideArg,
    #[arg(long, default_value_t = 1)]
    pub levels: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct A1Args {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub base: String,
    #[arg(long, default_value_t = 8)]
    pub oracle_bound: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct NerveBoxArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long = "box")]
    pub box_file: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub window: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct PullbackArgs {
    /// Graph map `G → K`.
    #[arg(long)]
    pub f: PathBuf,
    /// Graph map `H → K`.
    #[arg(long)]
    pub g: PathBuf,
    /// Probe vertex `{x, y, p1, p2}`.
    #[arg(long)]
    pub vertex: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub radius: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    /// Corpus directory.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct DotArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Draw the localization instead of the category.
    #[arg(long)]
    pub localized: bool,
    #[arg(long, value_enum, default_value = "L")]
    pub side: SideArg,
    /// Write to a file instead of standard output.
    #[arg(long)]
    pub emit_dot: Option<PathBuf>,
}

/// What a command produced: a JSON report, or raw text (DOT).
enum Output {
    Json(Outcome, bool),
    Text(String),
}

fn digest(path: &Path) -> Result<String, CommandError> {
    let bytes = std::fs::read(path).map_err(|source| io::InputError::Read {
        path: path.display().to_string(),
        source,
    })?;
    Ok(hex::encode(Sha256::digest(bytes)))
}

fn category_of(path: &Path) -> Result<io::CategoryFile, CommandError> {
    match io::load_any(path)? {
        AnyInput::Category(c) => Ok(c),
        AnyInput::SSet(_) => Err(CommandError::Usage(format!("{}: expected a category", path.display()))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CommandError> {
    std::fs::write(path, text).map_err(|source| {
        CommandError::Input(io::InputError::Read {
            path: path.display().to_string(),
            source,
        })
    })
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "C".into(), |s| s.to_string_lossy().into_owned())
}

/// Adds the command echo and input digests to a report.
fn stamp(mut o: Outcome, command: &str, inputs: &[&Path]) -> Result<Outcome, CommandError> {
    let digests: Vec<Value> = inputs.iter().map(|p| digest(p).map(Value::String)).collect::<Result<_, _>>()?;
    if let Value::Object(m) = &mut o.report {
        m.insert("command".into(), json!(command));
        m.insert("input_sha256".into(), json!(digests));
    }
    Ok(o)
}

fn execute(cmd: Command, stderr: &mut dyn Write) -> Result<Output, CommandError> {
    Ok(match cmd {
        Command::Fractions(FractionsCmd::Check(a)) => {
            let input = io::load_any(&a.input)?;
            let mode = match a.mode {
                ModeArg::Classical => Mode::Classical,
                ModeArg::Proper => Mode::Proper,
                ModeArg::Infty => Mode::Infty,
            };
            let o = commands::fractions_check(&input, mode, a.side.into())?;
            Output::Json(stamp(o, "fractions check", &[&a.input])?, a.common.json)
        }
        Command::Fractions(FractionsCmd::Lift(a)) => {
            let input = io::load_any(&a.input)?;
            let o = commands::fractions_lift(&input, a.side.into(), a.n, a.k)?;
            Output::Json(stamp(o, "fractions lift", &[&a.input])?, a.common.json)
        }
        Command::Localize(LocalizeCmd::Gz(a)) => {
            let c = category_of(&a.input)?;
            let (o, gz) = commands::localize_gz(&c.category, a.side.into())?;
            if let Some(p) = &a.emit_dot {
                write_file(p, &dot::gz_dot(&stem(&a.input), &c.category, &gz))?;
            }
            Output::Json(stamp(o, "localize gz", &[&a.input])?, a.common.json)
        }
        Command::Localize(LocalizeCmd::Ex(a)) => {
            let input = io::load_any(&a.input)?;
            let (o, ex) = commands::localize_ex(&input, a.side.into(), a.levels)?;
            if let Some(p) = &a.emit_sset {
                let raw = io::sset_to_raw(&ex.sset, None);
                write_file(p, &io::to_json(&raw))?;
            }
            Output::Json(stamp(o, "localize ex", &[&a.input])?, a.common.json)
        }
        Command::Localize(LocalizeCmd::Compare(a)) => {
            let c = category_of(&a.input)?;
            let o = commands::localize_compare(&c.category)?;
            Output::Json(stamp(o, "localize compare", &[&a.input])?, a.common.json)
        }
        Command::Mapspace(a) => {
            let input = io::load_any(&a.input)?;
            let o = commands::mapspace(&input, a.side.into(), &a.from, &a.to, a.levels)?;
            Output::Json(stamp(o, "mapspace", &[&a.input])?, a.common.json)
        }
        Command::Graph(GraphCmd::A1(a)) => {
            let (g, _) = io::load_graph(&a.input)?;
            let base = g
                .find(&a.base)
                .ok_or_else(|| CommandError::Usage(format!("no vertex named {:?}", a.base)))?;
            let o = commands::graph_a1(&g, base, a.oracle_bound)?;
            Output::Json(stamp(o, "graph a1", &[&a.input])?, a.common.json)
        }
        Command::Graph(GraphCmd::NerveBox(a)) => {
            let (g, _) = io::load_graph(&a.input)?;
            let (b, _, _) = io::box_from_source(&Source::read(&a.box_file)?, Some(&g))?;
            let o = commands::nerve_box(&g, &b, a.window)?;
            Output::Json(stamp(o, "graph nerve-box", &[&a.input, &a.box_file])?, a.common.json)
        }
        Command::Graph(GraphCmd::PullbackProbe(a)) => {
            let (g, k, f) = io::load_graph_map(&a.f)?;
            let (h, k2, gm) = io::load_graph_map(&a.g)?;
            if k.names() != k2.names() || k.edges() != k2.edges() {
                return Err(CommandError::Usage("the two maps have different targets".into()));
            }
            let v = io::pullback_vertex_from_source(&Source::read(&a.vertex)?, &g, &h, &k)?;
            let o = commands::pullback_probe((&g, &k, &f), (&h, &gm), &v, a.radius)?;
            Output::Json(stamp(o, "graph pullback-probe", &[&a.f, &a.g, &a.vertex])?, a.common.json)
        }
        Command::Corpus(CorpusCmd::Run(a)) => {
            let (ok, report) = corpus_run(&a.input)?;
            if let Some(w) = report["warnings"].as_array() {
                for w in w {
                    let _ = writeln!(stderr, "warning: {}", w.as_str().unwrap_or_default());
                }
            }
            Output::Json(Outcome { ok, report }, a.common.json)
        }
        Command::Export(ExportCmd::Dot(a)) => {
            let c = category_of(&a.input)?;
            let name = stem(&a.input);
            let text = if a.localized {
                let g = commands::gz(&c.category, a.side.into())?;
                dot::gz_dot(&name, &c.category, &g)
            } else {
                dot::category_dot(&name, &c.category)
            };
            match &a.emit_dot {
                Some(p) => {
                    write_file(p, &text)?;
                    Output::Text(String::new())
                }
                None => Output::Text(text),
            }
        }
    })
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let start = Instant::now();
    let result = execute(cli.command, stderr);
    let elapsed = start.elapsed().as_secs_f64();
    match result {
        Ok(Output::Json(o, emit)) => {
            if emit {
                let _ = write!(stdout, "{}", io::to_json(&o.report));
            }
            let _ = writeln!(stderr, "{} in {elapsed:.3}s", if o.ok { "ok" } else { "check failed" });
            if o.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Ok(Output::Text(t)) => {
            let _ = write!(stdout, "{t}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}
