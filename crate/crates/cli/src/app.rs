use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lorenz_core::flow::FlowParams;
use lorenz_core::jones::DEFAULT_CROSSING_LIMIT;
use lorenz_core::words::{CyclicWord, LinkWords};
use serde_json::Value;

use crate::atlas::{self, AtlasConfig, DEFAULT_MAX_LEN_CAP};
use crate::error::CliError;
use crate::output::{write_rows, Format};
use crate::query::{matches_all, Filter};
use crate::report::{self, Subject, Target};

#[derive(Debug, Parser)]
#[command(
    name = "lorenz",
    version,
    about = "Lorenz knots and links: words, braids, invariants, census"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Braid data and invariants of a word or link
    #[command(subcommand)]
    Word(WordCmd),
    /// Convert between words, Lorenz braids and T-link parameters
    Convert {
        /// Words (LRLRL ...) or T-link parameters (2,3;4,4 or [[2,3],[4,4]])
        #[arg(required = true)]
        input: Vec<String>,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Jones polynomial of words, a torus knot p,q, or T-link parameters
    Jones {
        #[arg(required = true)]
        input: Vec<String>,
        /// Refuse state sums with more crossings
        #[arg(long, default_value_t = DEFAULT_CROSSING_LIMIT)]
        max_crossings: usize,
    },
    /// Words as hyperbolic classes of PSL(2,Z)
    #[command(subcommand)]
    Modular(ModularCmd),
    /// Numerical Lorenz flow
    #[command(subcommand)]
    Flow(FlowCmd),
    /// Census of Lorenz knots
    #[command(subcommand)]
    Atlas(AtlasCmd),
}

#[derive(Debug, Subcommand)]
pub enum WordCmd {
    /// Several words describe one link
    Info {
        #[arg(required = true)]
        words: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModularCmd {
    /// Word to matrix
    Encode { word: CyclicWord },
    /// Matrix (a,b,c,d or [[a,b],[c,d]]) to word
    Decode {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Rademacher function by letter count and by Dedekind sums
    Rademacher { word: CyclicWord },
}

#[derive(Debug, Subcommand)]
pub enum FlowCmd {
    /// Symbolic itinerary at the local maxima of z
    Itinerary(ItineraryArgs),
}

#[derive(Debug, Args)]
pub struct ItineraryArgs {
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 40_000)]
    pub steps: usize,
    /// Initial state x,y,z
    #[arg(long, default_value = "1,1,1", allow_hyphen_values = true)]
    pub seed_state: String,
    /// Transient to skip, in time units
    #[arg(long, default_value_t = 15.0)]
    pub skip: f64,
    #[arg(long, default_value_t = 10.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 28.0)]
    pub rho: f64,
    #[arg(long, default_value_t = 8.0 / 3.0)]
    pub beta: f64,
    /// Also write the sampled trajectory as CSV (t,x,y,z)
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum AtlasCmd {
    /// Write the census as JSON lines
    Build {
        #[arg(long)]
        max_len: usize,
        /// Attach Jones polynomials to records with at most this many crossings
        #[arg(long)]
        jones_max_crossings: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN_CAP)]
        cap: usize,
    },
    /// Stream records matching every filter (field OP value)
    Query {
        atlas: PathBuf,
        filters: Vec<String>,
    },
}

fn create(path: &Path) -> Result<Box<dyn Write>, CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    Ok(Box::new(BufWriter::new(file)))
}

/// Runs a parsed command, writing to `--out` or to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut file_out;
    let out: &mut dyn Write = match &cli.out {
        Some(path) => {
            file_out = create(path)?;
            &mut file_out
        }
        None => stdout,
    };
    let emit = |rows: Vec<Value>, out: &mut dyn Write| -> Result<(), CliError> {
        write_rows(&rows, cli.format, &mut *out)?;
        out.flush()?;
        Ok(())
    };

    match cli.command {
        Command::Word(WordCmd::Info { words }) => {
            let link = LinkWords::parse(&words)?;
            emit(vec![report::word_info(&link)?], out)
        }
        Command::Convert { input, to } => {
            let subject = Subject::parse(&input)?;
            emit(vec![report::convert(&subject, to)?], out)
        }
        Command::Jones {
            input,
            max_crossings,
        } => emit(vec![report::jones(&input, max_crossings)?], out),
        Command::Modular(cmd) => {
            let v = match cmd {
                ModularCmd::Encode { word } => report::modular_encode(&word)?,
                ModularCmd::Decode { matrix } => {
                    report::modular_decode(&report::parse_matrix(&matrix)?)?
                }
                ModularCmd::Rademacher { word } => report::modular_rademacher(&word)?,
            };
            emit(vec![v], out)
        }
        Command::Flow(FlowCmd::Itinerary(args)) => {
            let params = FlowParams {
                sigma: args.sigma,
                rho: args.rho,
                beta: args.beta,
            };
            let seed = report::parse_state(&args.seed_state)?;
            let (v, traj) = report::flow_itinerary(&params, seed, args.dt, args.steps, args.skip)?;
            if let Some(path) = &args.trajectory {
                let mut w = create(path)?;
                traj.write_csv(&mut w)
                    .and_then(|_| w.flush())
                    .map_err(|e| CliError::io(path, e))?;
            }
            emit(vec![v], out)
        }
        Command::Atlas(AtlasCmd::Build {
            max_len,
            jones_max_crossings,
            cap,
        }) => {
            let config = AtlasConfig {
                max_len,
                jones_max_crossings,
                cap,
            };
            let records = atlas::build(&config)?;
            if cli.format == Format::Json {
                atlas::write_jsonl(&records, out)
            } else {
                let rows = records
                    .iter()
                    .map(serde_json::to_value)
                    .collect::<Result<Vec<_>, _>>();
                emit(rows.map_err(std::io::Error::other)?, out)
            }
        }
        Command::Atlas(AtlasCmd::Query {
            atlas: path,
            filters,
        }) => {
            let file = File::open(&path).map_err(|e| CliError::io(&path, e))?;
            let records = atlas::read_jsonl(BufReader::new(file))?;
            let filters: Vec<Filter> = filters
                .iter()
                .map(|f| Filter::parse(f))
                .collect::<Result<_, _>>()?;
            let rows = records
                .iter()
                .map(serde_json::to_value)
                .collect::<Result<Vec<_>, _>>();
            let rows = rows.map_err(std::io::Error::other)?;
            if let Some(template) = rows.first() {
                filters.iter().try_for_each(|f| f.check_field(template))?;
            }
            let hits: Vec<Value> = rows
                .into_iter()
                .filter(|r| matches_all(&filters, r))
                .collect();
            emit(hits, out)
        }
    }
}
