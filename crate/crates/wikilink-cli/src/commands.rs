//! Subcommand implementations.
//!
//! Every artifact is written atomically (temp file + rename) with sorted,
//! deterministic serialization, so rerunning a command on the same inputs
//! reproduces the output tree byte for byte.
//!
//! Exit codes: 0 success, 2 parse error, 3 I/O error, 4 semantic error
//! (mismatched node universes, invalid parameters).

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use wikilink::analysis::{
    self, metrics_to_json, render_metrics_text, render_text_report, report_to_json,
};
use wikilink::graph::GraphError;
use wikilink::ingest::{
    self, build_mapping as join_dumps, load_graph_jsonl, load_mapping_tsv, parse_sql_dump,
    write_graph_jsonl, write_mapping_tsv, DumpTable, IngestError,
};
use wikilink::{generate_fixture, AnalysisError, FixtureError, PageGraph, TitleMapping};

#[derive(Debug)]
pub enum CliError {
    /// Unparseable input data.
    Parse(String),
    /// Filesystem trouble.
    Io(String),
    /// Inputs parsed but don't make sense together.
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Io(_) => 3,
            CliError::Semantic(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) | CliError::Io(msg) | CliError::Semantic(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl From<IngestError> for CliError {
    fn from(err: IngestError) -> Self {
        match err {
            IngestError::Io(io) => CliError::Io(io.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(err: GraphError) -> Self {
        CliError::Semantic(err.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(err: AnalysisError) -> Self {
        CliError::Semantic(err.to_string())
    }
}

impl From<FixtureError> for CliError {
    fn from(err: FixtureError) -> Self {
        CliError::Semantic(err.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
    Both,
}

pub struct PipelineConfig {
    pub small: Option<PathBuf>,
    pub large: Option<PathBuf>,
    pub mapping: Option<PathBuf>,
    pub pages: Option<PathBuf>,
    pub langlinks: Option<PathBuf>,
    pub lang: Option<String>,
    pub seed: Option<u64>,
    pub small_size: usize,
    pub large_size: usize,
    pub overlap: f64,
    pub mean_degree: f64,
    pub out_dir: PathBuf,
    pub format: ReportFormat,
}

pub fn build_mapping(
    pages: &Path,
    langlinks: &Path,
    lang: &str,
    out_dir: &Path,
) -> Result<(), CliError> {
    let (mapping, stats) = load_mapping_from_dumps(pages, langlinks, lang)?;
    std::fs::create_dir_all(out_dir)?;
    write_mapping_file(&mapping, &out_dir.join("mapping.tsv"))?;
    println!(
        "mapping: kept {} pairs, discarded {} conflicts, {} dangling langlinks",
        stats.pairs_kept, stats.conflicts_discarded, stats.dangling_langlinks
    );
    Ok(())
}

pub fn enrich(
    small: &Path,
    large: &Path,
    mapping: &Path,
    out_dir: &Path,
) -> Result<(), CliError> {
    let small_graph = load_graph(small)?;
    let large_graph = load_graph(large)?;
    let mapping = load_mapping(mapping)?;
    let (enriched, stats) = wikilink::enrich(&small_graph, &large_graph, &mapping);
    std::fs::create_dir_all(out_dir)?;
    write_graph_file(&enriched, &out_dir.join("enriched.jsonl"))?;
    write_json_file(
        &serde_json::to_value(stats).expect("stats serialize"),
        &out_dir.join("enrich_stats.json"),
    )?;
    println!(
        "enrich: {}/{} pages mapped, {} edges created",
        stats.pages_mapped, stats.pages_total, stats.edges_created
    );
    Ok(())
}

pub fn combine(vanilla: &Path, enriched: &Path, out_dir: &Path) -> Result<(), CliError> {
    let vanilla_graph = load_graph(vanilla)?;
    let enriched_graph = load_graph(enriched)?;
    let (combined, delta) = vanilla_graph.combine(&enriched_graph);
    std::fs::create_dir_all(out_dir)?;
    write_graph_file(&combined, &out_dir.join("combined.jsonl"))?;
    write_json_file(
        &serde_json::to_value(delta).expect("delta serialize"),
        &out_dir.join("combine_delta.json"),
    )?;
    println!(
        "combine: {} edges added, {} nodes added",
        delta.added_edges, delta.added_nodes
    );
    Ok(())
}

pub fn analyze_single(
    graph: &Path,
    out_dir: Option<&Path>,
    format: ReportFormat,
) -> Result<(), CliError> {
    let metrics = analysis::metrics(&load_graph(graph)?);
    let json = metrics_to_json(&metrics);
    let text = render_metrics_text(&metrics);
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        if format != ReportFormat::Text {
            write_json_file(&json, &dir.join("metrics.json"))?;
        }
        if format != ReportFormat::Json {
            write_text_file(&text, &dir.join("metrics.txt"))?;
        }
    }
    match format {
        ReportFormat::Json => println!("{}", pretty(&json)),
        ReportFormat::Text | ReportFormat::Both => print!("{text}"),
    }
    Ok(())
}

pub fn analyze_triple(
    vanilla: &Path,
    enriched: &Path,
    combined: &Path,
    out_dir: Option<&Path>,
    format: ReportFormat,
) -> Result<(), CliError> {
    let vanilla_graph = load_graph(vanilla)?;
    let enriched_graph = load_graph(enriched)?;
    let combined_graph = load_graph(combined)?;
    let report = compare_graphs(&vanilla_graph, &enriched_graph, &combined_graph)?;
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        write_report(&report, dir, format)?;
    }
    print_report(&report, format);
    Ok(())
}

pub fn pipeline(config: &PipelineConfig) -> Result<(), CliError> {
    let out_dir = &config.out_dir;

    // Gather all inputs before writing anything, so a missing file leaves no
    // outputs behind.
    let (small_graph, large_graph, mapping, built_mapping) = match config.seed {
        Some(seed) => {
            let (small, large, mapping) = generate_fixture(
                seed,
                config.small_size,
                config.large_size,
                config.overlap,
                config.mean_degree,
            )?;
            (small, large, mapping, true)
        }
        None => {
            let small_path = config.small.as_deref().expect("clap enforces --small");
            let large_path = config.large.as_deref().expect("clap enforces --large");
            let sources = match (&config.mapping, &config.pages, &config.langlinks, &config.lang) {
                (Some(tsv), None, None, None) => MappingSource::Tsv(tsv.clone()),
                (None, Some(pages), Some(langlinks), Some(lang)) => {
                    MappingSource::Dumps(pages.clone(), langlinks.clone(), lang.clone())
                }
                _ => {
                    return Err(CliError::Semantic(
                        "pass either --mapping, or --pages/--langlinks/--lang".to_owned(),
                    ))
                }
            };
            let small = load_graph(small_path)?;
            let large = load_graph(large_path)?;
            match sources {
                MappingSource::Tsv(path) => (small, large, load_mapping(&path)?, false),
                MappingSource::Dumps(pages, langlinks, lang) => {
                    let (mapping, stats) = load_mapping_from_dumps(&pages, &langlinks, &lang)?;
                    println!(
                        "mapping: kept {} pairs, discarded {} conflicts, {} dangling langlinks",
                        stats.pairs_kept, stats.conflicts_discarded, stats.dangling_langlinks
                    );
                    (small, large, mapping, true)
                }
            }
        }
    };

    std::fs::create_dir_all(out_dir)?;
    if config.seed.is_some() {
        write_graph_file(&small_graph, &out_dir.join("small.jsonl"))?;
        write_graph_file(&large_graph, &out_dir.join("large.jsonl"))?;
    }
    if built_mapping {
        write_mapping_file(&mapping, &out_dir.join("mapping.tsv"))?;
    }

    let (enriched, stats) = wikilink::enrich(&small_graph, &large_graph, &mapping);
    write_graph_file(&enriched, &out_dir.join("enriched.jsonl"))?;
    write_json_file(
        &serde_json::to_value(stats).expect("stats serialize"),
        &out_dir.join("enrich_stats.json"),
    )?;
    println!(
        "enrich: {}/{} pages mapped, {} edges created",
        stats.pages_mapped, stats.pages_total, stats.edges_created
    );

    let (combined, delta) = small_graph.combine(&enriched);
    write_graph_file(&combined, &out_dir.join("combined.jsonl"))?;
    write_json_file(
        &serde_json::to_value(delta).expect("delta serialize"),
        &out_dir.join("combine_delta.json"),
    )?;
    println!(
        "combine: {} edges added, {} nodes added",
        delta.added_edges, delta.added_nodes
    );

    let report = compare_graphs(&small_graph, &enriched, &combined)?;
    write_report(&report, out_dir, config.format)?;
    print_report(&report, config.format);
    Ok(())
}

pub fn fixture(
    seed: u64,
    small_size: usize,
    large_size: usize,
    overlap: f64,
    mean_degree: f64,
    out_dir: &Path,
) -> Result<(), CliError> {
    let (small, large, mapping) =
        generate_fixture(seed, small_size, large_size, overlap, mean_degree)?;
    std::fs::create_dir_all(out_dir)?;
    write_graph_file(&small, &out_dir.join("small.jsonl"))?;
    write_graph_file(&large, &out_dir.join("large.jsonl"))?;
    write_mapping_file(&mapping, &out_dir.join("mapping.tsv"))?;
    println!(
        "fixture: small {} nodes / {} edges, large {} nodes / {} edges, mapping {} pairs",
        small.node_count(),
        small.edge_count(),
        large.node_count(),
        large.edge_count(),
        mapping.len()
    );
    Ok(())
}

enum MappingSource {
    Tsv(PathBuf),
    Dumps(PathBuf, PathBuf, String),
}

/// Normalizes enriched and combined onto the vanilla node universe, measures
/// all three, and compares.
fn compare_graphs(
    vanilla: &PageGraph,
    enriched: &PageGraph,
    combined: &PageGraph,
) -> Result<analysis::ComparisonReport, CliError> {
    let universe: Vec<_> = vanilla.nodes().cloned().collect();
    let (enriched, _) = enriched.normalize(universe.clone())?;
    let (combined, _) = combined.normalize(universe)?;
    Ok(analysis::compare(
        analysis::metrics(vanilla),
        analysis::metrics(&enriched),
        analysis::metrics(&combined),
    )?)
}

fn print_report(report: &analysis::ComparisonReport, format: ReportFormat) {
    match format {
        ReportFormat::Json => println!("{}", pretty(&report_to_json(report))),
        ReportFormat::Text | ReportFormat::Both => print!("{}", render_text_report(report)),
    }
}

fn write_report(
    report: &analysis::ComparisonReport,
    dir: &Path,
    format: ReportFormat,
) -> Result<(), CliError> {
    if format != ReportFormat::Text {
        write_json_file(&report_to_json(report), &dir.join("report.json"))?;
    }
    if format != ReportFormat::Json {
        write_text_file(&render_text_report(report), &dir.join("report.txt"))?;
    }
    Ok(())
}

fn load_graph(path: &Path) -> Result<PageGraph, CliError> {
    let file = open(path)?;
    load_graph_jsonl(BufReader::new(file))
        .map_err(|e| annotate(e.into(), path))
}

fn load_mapping(path: &Path) -> Result<TitleMapping, CliError> {
    let file = open(path)?;
    let loaded = load_mapping_tsv(BufReader::new(file)).map_err(|e| annotate(e.into(), path))?;
    Ok(loaded.mapping)
}

fn load_mapping_from_dumps(
    pages: &Path,
    langlinks: &Path,
    lang: &str,
) -> Result<(TitleMapping, ingest::MappingBuildStats), CliError> {
    let page_records = parse_sql_dump(BufReader::new(open(pages)?), DumpTable::Page)
        .map_err(|e| annotate(e.into(), pages))?;
    let link_records = parse_sql_dump(BufReader::new(open(langlinks)?), DumpTable::Langlinks)
        .map_err(|e| annotate(e.into(), langlinks))?;
    let page_rows: Vec<_> = page_records
        .into_iter()
        .filter_map(ingest::DumpRecord::into_page)
        .collect();
    let link_rows: Vec<_> = link_records
        .into_iter()
        .filter_map(ingest::DumpRecord::into_lang_link)
        .collect();
    Ok(join_dumps(&page_rows, &link_rows, lang))
}

fn open(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn annotate(err: CliError, path: &Path) -> CliError {
    let with_path = |msg: String| format!("{}: {msg}", path.display());
    match err {
        CliError::Parse(msg) => CliError::Parse(with_path(msg)),
        CliError::Io(msg) => CliError::Io(with_path(msg)),
        CliError::Semantic(msg) => CliError::Semantic(with_path(msg)),
    }
}

fn write_graph_file(graph: &PageGraph, path: &Path) -> Result<(), CliError> {
    atomic_write(path, |writer| write_graph_jsonl(graph, writer))
}

fn write_mapping_file(mapping: &TitleMapping, path: &Path) -> Result<(), CliError> {
    atomic_write(path, |writer| write_mapping_tsv(mapping, writer))
}

fn write_json_file(value: &serde_json::Value, path: &Path) -> Result<(), CliError> {
    write_text_file(&format!("{}\n", pretty(value)), path)
}

fn write_text_file(text: &str, path: &Path) -> Result<(), CliError> {
    atomic_write(path, |writer| writer.write_all(text.as_bytes()))
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json rendering is infallible")
}

/// Writes through a temp file in the target directory and renames into
/// place, so a crash mid-write never leaves a partial artifact.
fn atomic_write<F>(path: &Path, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut BufWriter<&mut File>) -> std::io::Result<()>,
{
    let dir = path.parent().ok_or_else(|| {
        CliError::Io(format!("{}: no parent directory", path.display()))
    })?;
    let mut temp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut writer = BufWriter::new(temp.as_file_mut());
        write(&mut writer)?;
        writer.flush()?;
    }
    temp.persist(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(())
}
