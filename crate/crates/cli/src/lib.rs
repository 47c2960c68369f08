//! `analyze` and `census` behind the `dcgroup` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use dcgroup::census::{analyze_spec, theorem_census, CensusEntry, CensusOptions, CensusReport, GroupReport};
use dcgroup::constructors::GroupSpec;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Spec {
        path: PathBuf,
        source: dcgroup::Error,
    },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit code: every error here is a usage or input error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct Flags {
    pub lattice_cap: usize,
    pub fast_only: bool,
    /// 0 lets the pool pick.
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            lattice_cap: dcgroup::lattice::DEFAULT_LATTICE_CAP,
            fast_only: false,
            jobs: 0,
            out: None,
            format: Format::Json,
        }
    }
}

impl Flags {
    fn options(&self) -> CensusOptions {
        CensusOptions {
            lattice_cap: self.lattice_cap,
            fast_only: self.fast_only,
            ..CensusOptions::default()
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool, CliError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| CliError::Pool(e.to_string()))
    }
}

pub fn parse_group_spec(path: &Path) -> Result<GroupSpec, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    GroupSpec::from_json(&text).map_err(|source| CliError::Spec {
        path: path.to_path_buf(),
        source,
    })
}

/// SHA-256 of the canonical JSON form of a spec, in hex.
pub fn spec_hash(spec: &GroupSpec) -> String {
    hex::encode(Sha256::digest(spec.to_canonical_json().as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub version: String,
    pub spec_hash: String,
    pub spec: GroupSpec,
    pub report: GroupReport,
}

impl AnalysisReport {
    pub fn has_failures(&self) -> bool {
        !self.report.failed_claims().is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusMember {
    pub id: String,
    pub spec_hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusOutput {
    pub tool: String,
    pub version: String,
    pub lattice_cap: usize,
    pub fast_only: bool,
    pub corpus: Vec<CorpusMember>,
    pub census: CensusReport,
}

/// Group id used in reports: the file stem of the spec.
pub fn group_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn run_analyze(spec_path: &Path, flags: &Flags) -> Result<AnalysisReport, CliError> {
    let spec = parse_group_spec(spec_path)?;
    let id = group_id(spec_path);
    let opts = flags.options();
    let report = flags
        .pool()?
        .install(|| analyze_spec(&id, &spec, &opts))
        .map_err(|source| CliError::Spec {
            path: spec_path.to_path_buf(),
            source,
        })?;
    Ok(AnalysisReport {
        tool: "dcgroup".into(),
        version: VERSION.into(),
        spec_hash: spec_hash(&spec),
        spec,
        report,
    })
}

/// Spec files (`*.json`) of a corpus directory, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn run_census(corpus_dir: &Path, flags: &Flags) -> Result<CensusOutput, CliError> {
    let mut entries = Vec::new();
    let mut corpus = Vec::new();
    let mut unreadable = Vec::new();
    for path in corpus_files(corpus_dir)? {
        let id = group_id(&path);
        match parse_group_spec(&path) {
            Ok(spec) => {
                corpus.push(CorpusMember {
                    id: id.clone(),
                    spec_hash: spec_hash(&spec),
                });
                entries.push(CensusEntry { id, spec });
            }
            Err(e) => unreadable.push((id, e.to_string())),
        }
    }
    let opts = flags.options();
    let mut census = flags.pool()?.install(|| theorem_census(&entries, &opts));
    for (id, reason) in unreadable {
        census.record_skipped_spec(id, reason);
    }
    Ok(CensusOutput {
        tool: "dcgroup".into(),
        version: VERSION.into(),
        lattice_cap: flags.lattice_cap,
        fast_only: flags.fast_only,
        corpus,
        census,
    })
}

pub const CSV_COLUMNS: [&str; 10] = [
    "group_id",
    "order",
    "p",
    "d",
    "cl",
    "dl",
    "dprime_type",
    "is_dc",
    "method",
    "claims_failed",
];

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_row(g: &GroupReport) -> Vec<String> {
    let inv = &g.invariants;
    let method = g
        .dc
        .method
        .and_then(|m| serde_json::to_value(m).ok())
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    let failed: Vec<String> = g.failed_claims().into_iter().map(|c| c.id()).collect();
    vec![
        g.id.clone(),
        inv.order.to_string(),
        opt(inv.p),
        opt(inv.d),
        opt(inv.cl),
        opt(inv.dl),
        inv.derived_type_label(),
        opt(g.dc.is_dc),
        method,
        failed.join(";"),
    ]
}

/// One summary row per group.
pub fn summary_csv<'a>(groups: impl IntoIterator<Item = &'a GroupReport>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS)?;
    for g in groups {
        w.write_record(csv_row(g))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Writes `text` to `out`, or to stdout.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(io_err(path)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(io_err(Path::new("<stdout>"))),
    }
}
