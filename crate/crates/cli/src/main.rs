mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Semantic frame parsing for software-engineering text.
#[derive(Parser)]
#[command(name = "seframe", version)]
struct Cli {
    /// Frame lexicon (JSON); the bundled one when absent.
    #[arg(long, global = true, env = "SEFRAME_LEXICON")]
    lexicon: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Workers {
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ViewFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Read a source manifest (or one source) into document JSONL.
    Ingest {
        /// TOML manifest with [[source]] tables.
        #[arg(long, conflicts_with_all = ["source", "kind"], required_unless_present = "source")]
        manifest: Option<PathBuf>,
        /// A single source file.
        #[arg(long, requires = "kind")]
        source: Option<PathBuf>,
        /// Source kind for --source, e.g. issue, qa_post, mailing_list.
        #[arg(long)]
        kind: Option<String>,
        /// Remove code blocks instead of keeping them fenced.
        #[arg(long)]
        drop_code: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Segment and tag documents, or validate externally produced parses.
    Parse {
        #[command(flatten)]
        io: Io,
        /// Input is interchange JSONL from another parser.
        #[arg(long)]
        import_external: bool,
        /// With --import-external: reject unknown fields, frames and elements.
        #[arg(long, requires = "import_external")]
        strict: bool,
        #[command(flatten)]
        workers: Workers,
    },
    /// Apply the frame catalog to parses.
    Decorate {
        #[command(flatten)]
        io: Io,
        /// Status table; execution_verbs.txt and fe_map.tsv are read from
        /// the same directory. The bundled catalog when absent.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Only remap frames the catalog lists for remapping.
        #[arg(long)]
        strict_remap: bool,
        #[command(flatten)]
        workers: Workers,
    },
    /// Frame counts over parses, as CSV.
    Distribution {
        #[command(flatten)]
        io: Io,
        /// Keep only the K most frequent frames.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Sample size for a finite population.
    SampleSize {
        #[arg(long)]
        population: u64,
        #[arg(long, default_value_t = 0.99)]
        confidence: f64,
        #[arg(long, default_value_t = 0.05)]
        margin: f64,
        #[arg(long, default_value_t = 0.5)]
        proportion: f64,
    },
    /// Draw sentences per frame; writes a JSONL manifest.
    Sample {
        #[command(flatten)]
        io: Io,
        /// Sentences per frame.
        #[arg(long)]
        per_frame: usize,
        /// Frames to sample, comma-separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "top")]
        frames: Vec<String>,
        /// Sample the K most frequent frames.
        #[arg(long)]
        top: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Assign evaluators to batches under overlap limits.
    AssignBatches {
        /// Evaluator ids, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        evaluators: Vec<String>,
        /// Number of batches (named b0, b1, ...).
        #[arg(long)]
        batches: usize,
        #[arg(long, default_value_t = 3)]
        per_batch: usize,
        #[arg(long, default_value_t = 2)]
        pair_limit: usize,
        #[arg(long, default_value_t = 1)]
        triple_limit: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Aggregate the judgments of a campaign.
    Report {
        /// Campaign definition (JSON).
        #[arg(long)]
        campaign: PathBuf,
        /// Judgments (JSONL).
        #[arg(long)]
        judgments: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show a sentence as labeled rows of targets and frame elements.
    Structure {
        #[command(flatten)]
        io: Io,
        /// Sentence id.
        #[arg(long)]
        sentence: String,
        /// Frame indices to overlay, comma-separated; by default every
        /// frame that does not overlap an earlier one.
        #[arg(long, value_delimiter = ',')]
        frames: Vec<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: ViewFormat,
    },
    /// Run the evaluation service.
    Serve {
        /// Journal file; created if missing and replayed on start.
        #[arg(long)]
        journal: PathBuf,
        /// Campaign definitions to register (JSON).
        #[arg(long)]
        campaign: Vec<PathBuf>,
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: String,
        /// Directory with the UI bundle.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        /// Secret for completion codes.
        #[arg(long, env = "SEFRAME_CODE_KEY", hide_env_values = true)]
        code_key: String,
        /// Status table for frame definitions; the bundled catalog when absent.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("seframe: {e:#}");
            if e.is::<commands::UsageError>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
