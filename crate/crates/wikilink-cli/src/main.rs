mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::ReportFormat;

#[derive(Parser)]
#[command(
    name = "wikilink",
    about = "Enrich a small wiki's link graph from a large wiki through an interlanguage title mapping",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Join page + langlinks SQL dumps into a title-mapping TSV
    BuildMapping {
        /// Large-wiki page table dump (uncompressed SQL)
        #[arg(long)]
        pages: PathBuf,
        /// Large-wiki langlinks table dump (uncompressed SQL)
        #[arg(long)]
        langlinks: PathBuf,
        /// Language code of the small wiki (e.g. sco)
        #[arg(long)]
        lang: String,
        /// Output directory for mapping.tsv
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Project large-wiki links onto the small wiki's node set
    Enrich {
        #[arg(long)]
        small: PathBuf,
        #[arg(long)]
        large: PathBuf,
        #[arg(long)]
        mapping: PathBuf,
        /// Output directory for enriched.jsonl and enrich_stats.json
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Union two graphs (vanilla + enriched) into a combined graph
    Combine {
        #[arg(long)]
        vanilla: PathBuf,
        #[arg(long)]
        enriched: PathBuf,
        /// Output directory for combined.jsonl and combine_delta.json
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Measure one graph, or compare vanilla/enriched/combined
    Analyze {
        /// Single graph to measure
        #[arg(long, conflicts_with_all = ["vanilla", "enriched", "combined"])]
        graph: Option<PathBuf>,
        #[arg(long, requires = "enriched", requires = "combined")]
        vanilla: Option<PathBuf>,
        #[arg(long)]
        enriched: Option<PathBuf>,
        #[arg(long)]
        combined: Option<PathBuf>,
        /// Where to write report files (printed to stdout regardless)
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Both)]
        format: FormatArg,
    },
    /// Run the whole pipeline: (build-mapping) -> enrich -> combine -> analyze
    Pipeline(PipelineArgs),
    /// Generate a seeded synthetic corpus (small + large graph + mapping)
    Fixture {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        small_size: usize,
        #[arg(long)]
        large_size: usize,
        /// Fraction of small pages covered by the mapping, in [0, 1]
        #[arg(long)]
        overlap: f64,
        /// Mean out-degree of the large graph
        #[arg(long)]
        mean_degree: f64,
        /// Output directory for small.jsonl, large.jsonl, mapping.tsv
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct PipelineArgs {
    /// Small-wiki graph JSONL (omit when running from --seed)
    #[arg(long, required_unless_present = "seed")]
    small: Option<PathBuf>,
    /// Large-wiki graph JSONL (omit when running from --seed)
    #[arg(long, required_unless_present = "seed")]
    large: Option<PathBuf>,
    /// Title-mapping TSV (alternative to the SQL dump pair)
    #[arg(long, conflicts_with_all = ["pages", "langlinks", "lang"])]
    mapping: Option<PathBuf>,
    /// Large-wiki page table dump, used with --langlinks and --lang
    #[arg(long, requires = "langlinks", requires = "lang")]
    pages: Option<PathBuf>,
    #[arg(long)]
    langlinks: Option<PathBuf>,
    #[arg(long)]
    lang: Option<String>,
    /// Generate the input corpus from this seed instead of reading files
    #[arg(long, conflicts_with_all = ["small", "large", "mapping", "pages", "langlinks", "lang"])]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1000, requires = "seed")]
    small_size: usize,
    #[arg(long, default_value_t = 5000, requires = "seed")]
    large_size: usize,
    #[arg(long, default_value_t = 0.7, requires = "seed")]
    overlap: f64,
    #[arg(long, default_value_t = 25.0, requires = "seed")]
    mean_degree: f64,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Both)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
    Both,
}

impl From<FormatArg> for ReportFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Text => ReportFormat::Text,
            FormatArg::Both => ReportFormat::Both,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::BuildMapping {
            pages,
            langlinks,
            lang,
            out_dir,
        } => commands::build_mapping(&pages, &langlinks, &lang, &out_dir),
        Command::Enrich {
            small,
            large,
            mapping,
            out_dir,
        } => commands::enrich(&small, &large, &mapping, &out_dir),
        Command::Combine {
            vanilla,
            enriched,
            out_dir,
        } => commands::combine(&vanilla, &enriched, &out_dir),
        Command::Analyze {
            graph,
            vanilla,
            enriched,
            combined,
            out_dir,
            format,
        } => match (graph, vanilla, enriched, combined) {
            (Some(graph), None, None, None) => {
                commands::analyze_single(&graph, out_dir.as_deref(), format.into())
            }
            (None, Some(v), Some(e), Some(c)) => {
                commands::analyze_triple(&v, &e, &c, out_dir.as_deref(), format.into())
            }
            _ => {
                eprintln!("error: pass either --graph, or all of --vanilla/--enriched/--combined");
                return ExitCode::from(2);
            }
        },
        Command::Pipeline(args) => commands::pipeline(&args.into()),
        Command::Fixture {
            seed,
            small_size,
            large_size,
            overlap,
            mean_degree,
            out_dir,
        } => commands::fixture(seed, small_size, large_size, overlap, mean_degree, &out_dir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

impl From<PipelineArgs> for commands::PipelineConfig {
    fn from(args: PipelineArgs) -> Self {
        commands::PipelineConfig {
            small: args.small,
            large: args.large,
            mapping: args.mapping,
            pages: args.pages,
            langlinks: args.langlinks,
            lang: args.lang,
            seed: args.seed,
            small_size: args.small_size,
            large_size: args.large_size,
            overlap: args.overlap,
            mean_degree: args.mean_degree,
            out_dir: args.out_dir,
            format: args.format.into(),
        }
    }
}
