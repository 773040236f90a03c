//! `coxnorm`: decompositions of parabolic normalizers in finite Coxeter groups.

mod cache;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coxnorm::coxeter::CoxeterGroup;
use coxnorm::decompose::{decompose, Decomposition};
use coxnorm::verify::{run_suite, Suite};
use coxnorm::{CoxeterLabel, Error};
use rayon::prelude::*;

/// Groups at least this large only run whole-table jobs with `--allow-long`.
const LONG_ORDER: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Parser)]
#[command(name = "coxnorm", version, about = "Normalizers of parabolic subgroups of finite Coxeter groups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Permit whole-table jobs on very large groups (E8).
    #[arg(long, global = true)]
    allow_long: bool,
    /// Directory for cached shape catalogs.
    #[arg(long, global = true, env = "COXNORM_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Worker threads for per-shape work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the normalizer of one parabolic subgroup.
    Decompose {
        group: String,
        /// Shape number, shape label, or simple subset such as `s1,s3`.
        selector: String,
    },
    /// Decompositions of every shape.
    Table { group: String },
    /// Parabolic concepts up to conjugacy.
    Concepts { group: String },
    /// The shape catalog.
    Shapes { group: String },
    /// Inclusion and orthogonal-closure graph on shapes.
    Graph { group: String },
    /// Conjugacy classes of involutions and their centralizers.
    Involutions { group: String },
    /// Run verification suites (all applicable suites when none is given).
    Verify {
        group: String,
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Verification,
    User(String),
    UnknownSelector(String, Box<CoxeterGroup>),
    Long(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidLabel(_) | Error::UnknownSelector(_) | Error::Precondition(_) => Failure::User(e.to_string()),
            Error::TooLong(_) => Failure::Long(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

struct Context {
    format: Format,
    allow_long: bool,
    cache_dir: Option<PathBuf>,
}

impl Context {
    fn group(&self, s: &str) -> Result<CoxeterGroup, Failure> {
        let label: CoxeterLabel = s.parse()?;
        Ok(cache::build_group(label, self.cache_dir.as_deref()))
    }

    fn refuse_long(&self, g: &CoxeterGroup, what: &str) -> Result<(), Failure> {
        if g.order() >= LONG_ORDER && !self.allow_long {
            return Err(Failure::Long(format!("{what} for {} needs --allow-long", g.label())));
        }
        Ok(())
    }

    fn reject_dot(&self) -> Result<(), Failure> {
        if self.format == Format::Dot {
            return Err(Failure::User("--format dot is only available for graph".into()));
        }
        Ok(())
    }
}

fn decompose_table(g: &CoxeterGroup) -> Result<Vec<Decomposition>, Failure> {
    let decs: coxnorm::Result<Vec<Decomposition>> = (0..g.catalog.len()).into_par_iter().map(|i| decompose(g, i)).collect();
    Ok(decs?)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let ctx = Context { format: cli.format, allow_long: cli.allow_long, cache_dir: cli.cache_dir };
    match cli.command {
        Command::Decompose { group, selector } => {
            ctx.reject_dot()?;
            let g = ctx.group(&group)?;
            let i = match g.catalog.select(&selector) {
                Ok(i) => i,
                Err(_) => return Err(Failure::UnknownSelector(selector, Box::new(g))),
            };
            let d = decompose(&g, i)?;
            Ok(render::decomposition(&g, &d, ctx.format))
        }
        Command::Table { group } => {
            ctx.reject_dot()?;
            let g = ctx.group(&group)?;
            ctx.refuse_long(&g, "table")?;
            let decs = decompose_table(&g)?;
            Ok(render::table(&g, &decs, ctx.format))
        }
        Command::Concepts { group } => {
            ctx.reject_dot()?;
            let g = ctx.group(&group)?;
            Ok(render::concepts(&g, &coxnorm::galois::parabolic_concepts(&g), ctx.format))
        }
        Command::Shapes { group } => {
            ctx.reject_dot()?;
            let g = ctx.group(&group)?;
            Ok(render::shapes(&g, ctx.format))
        }
        Command::Graph { group } => {
            let g = ctx.group(&group)?;
            Ok(render::graph(&coxnorm::galois::shape_closure_graph(&g), ctx.format))
        }
        Command::Involutions { group } => {
            ctx.reject_dot()?;
            let g = ctx.group(&group)?;
            ctx.refuse_long(&g, "involutions")?;
            Ok(render::involutions(&coxnorm::involution::involution_classes(&g)?, ctx.format))
        }
        Command::Verify { group, suites } => {
            ctx.reject_dot()?;
            let g = ctx.group(&group)?;
            ctx.refuse_long(&g, "verify")?;
            let explicit = !suites.is_empty();
            let suites: Vec<Suite> = if explicit {
                suites
            } else {
                Suite::ALL
                    .into_iter()
                    .filter(|s| !(s.is_enumerative() && g.order() > coxnorm::oracle::BRUTE_LIMIT as u64))
                    .filter(|s| *s != Suite::Fixtures || coxnorm::fixture::bundled(&g.label()).is_some())
                    .collect()
            };
            let needs_table = suites.iter().any(|s| matches!(s, Suite::Section8 | Suite::Fixtures | Suite::Structure));
            let decs = if needs_table { Some(decompose_table(&g)?) } else { None };
            let mut results = Vec::new();
            for s in suites {
                results.push((s, run_suite(&g, s, decs.as_deref())?));
            }
            let ok = results.iter().all(|(_, cs)| cs.iter().all(|c| c.passed()));
            let out = render::verification(&g, &results, ctx.format);
            if ok {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::UnknownSelector(sel, g)) => {
            eprintln!("error: unknown parabolic selector {sel:?} for {}; shapes are:", g.label());
            eprint!("{}", render::shapes(&g, Format::Text));
            ExitCode::from(2)
        }
        Err(Failure::Long(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
