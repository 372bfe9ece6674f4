//! Batch driver behind the `domfix` binary.
//!
//! Input is read as graph6 lines, processed in chunks on a rayon pool and
//! written back in input order, so output never depends on `--jobs`.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use rayon::prelude::*;
use serde::Serialize;

use domfix::adversary::{find_witness, Outcome, WitnessConfig, WitnessReport};
use domfix::domination::{gamma_bruteforce_capped, gamma_exact};
use domfix::fixer::{analyze, FixerAnalysis};
use domfix::graph6::is_graph_line;
use domfix::{build_prism, parse_graph6, write_graph6, Graph, Permutation};

pub const DEFAULT_BUDGET: u64 = domfix::adversary::DEFAULT_FALLBACK_BUDGET;
pub const DEFAULT_CAP: usize = 12;
pub const DEFAULT_LIMIT: usize = domfix::fixer::DEFAULT_ENUMERATION_LIMIT;
const CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Gamma,
    Analyze,
    Verify,
    /// Prism under a permutation given in cycle notation.
    Prism {
        perm: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gamma => "gamma",
            Command::Analyze => "analyze",
            Command::Verify => "verify",
            Command::Prism { .. } => "prism",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Empty means stdin; `-` also means stdin.
    pub inputs: Vec<PathBuf>,
    pub command: Command,
    pub budget: u64,
    /// Graphs up to this order also get a brute-force γ cross-check.
    pub cap: usize,
    pub limit: usize,
    pub seed: u64,
    pub format: Format,
    pub jobs: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            inputs: Vec::new(),
            command,
            budget: DEFAULT_BUDGET,
            cap: DEFAULT_CAP,
            limit: DEFAULT_LIMIT,
            seed: 0,
            format: Format::Json,
            jobs: 1,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        for (name, value) in [
            ("budget", self.budget as usize),
            ("cap", self.cap),
            ("limit", self.limit),
            ("jobs", self.jobs),
        ] {
            if value == 0 {
                bail!("--{name} must be at least 1");
            }
        }
        Ok(())
    }
}

/// Per-graph seed: FNV-1a of the graph6 text mixed with the run seed, so a
/// graph gets the same stream wherever it sits in the input.
pub fn graph_seed(graph6: &str, seed: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in graph6.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ seed
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub records: u64,
    pub parse_errors: u64,
    pub failures: u64,
    pub violations: u64,
    pub not_found: u64,
    pub truncated: u64,
    pub prism_fixers: u64,
    pub routes: BTreeMap<String, u64>,
}

impl Summary {
    /// 1 if any violation, else 2 if any line failed, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 {
            1
        } else if self.parse_errors > 0 || self.failures > 0 {
            2
        } else {
            0
        }
    }

    fn render(&self, command: &str) -> String {
        let mut s = format!(
            "{command}: {} records, {} parse errors, {} failures",
            self.records, self.parse_errors, self.failures
        );
        if command == "verify" {
            s += &format!(
                ", {} violations, {} not found",
                self.violations, self.not_found
            );
            for (route, count) in &self.routes {
                s += &format!("\n  {route}: {count}");
            }
        }
        if command == "analyze" {
            s += &format!(
                ", {} prism fixers, {} truncated",
                self.prism_fixers, self.truncated
            );
        }
        s
    }
}

#[derive(Debug, Serialize)]
struct GammaRecord {
    line: usize,
    graph6: String,
    n: usize,
    m_edges: usize,
    gamma: usize,
    witness: Vec<usize>,
    oracle_checked: bool,
}

#[derive(Debug, Serialize)]
struct AnalyzeRecord {
    line: usize,
    graph6: String,
    n: usize,
    m_edges: usize,
    gamma: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    analysis: Option<FixerAnalysis>,
}

#[derive(Debug, Serialize)]
struct VerifyRecord {
    line: usize,
    graph6: String,
    n: usize,
    m_edges: usize,
    gamma: usize,
    prism_fixer: Option<bool>,
    route: &'static str,
    permutation_cycles: String,
    gamma_prism: usize,
    violation: bool,
    outcome: Outcome,
    detail: serde_json::Value,
}

#[derive(Debug, Serialize)]
struct PrismRecord {
    line: usize,
    graph6: String,
    n: usize,
    permutation_cycles: String,
    prism: String,
}

#[derive(Debug)]
enum Record {
    Gamma(GammaRecord),
    Analyze(AnalyzeRecord),
    Verify(VerifyRecord),
    Prism(PrismRecord),
}

#[derive(Debug)]
enum LineResult {
    Record(Box<Record>),
    ParseError {
        line: usize,
        message: String,
    },
    Failure {
        line: usize,
        graph6: String,
        message: String,
    },
}

fn bool_text(b: bool) -> String {
    b.to_string()
}

fn join(items: &[usize]) -> String {
    items
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

impl Record {
    fn json(&self) -> String {
        match self {
            Record::Gamma(r) => serde_json::to_string(r),
            Record::Analyze(r) => serde_json::to_string(r),
            Record::Verify(r) => serde_json::to_string(r),
            Record::Prism(r) => serde_json::to_string(r),
        }
        .expect("records serialize")
    }

    fn csv_header(command: &Command) -> &'static [&'static str] {
        match command {
            Command::Gamma => &[
                "line",
                "graph6",
                "n",
                "m_edges",
                "gamma",
                "witness",
                "oracle_checked",
            ],
            Command::Analyze => &[
                "line",
                "graph6",
                "n",
                "m_edges",
                "gamma",
                "gamma_prism",
                "prism_fixer",
                "symmetric_sets",
                "truncated",
                "classification",
                "invariants_ok",
                "hartnell_rall_c_ok",
                "intersection_pairs_checked",
                "intersection_failures",
                "note",
            ],
            Command::Verify => &[
                "line",
                "graph6",
                "n",
                "m_edges",
                "gamma",
                "prism_fixer",
                "route",
                "permutation_cycles",
                "gamma_prism",
                "violation",
                "outcome",
                "detail",
            ],
            Command::Prism { .. } => &["line", "graph6", "n", "permutation_cycles", "prism"],
        }
    }

    fn csv_row(&self) -> Vec<String> {
        match self {
            Record::Gamma(r) => vec![
                r.line.to_string(),
                r.graph6.clone(),
                r.n.to_string(),
                r.m_edges.to_string(),
                r.gamma.to_string(),
                join(&r.witness),
                bool_text(r.oracle_checked),
            ],
            Record::Analyze(r) => {
                let a = r.analysis.as_ref();
                let opt = |f: &dyn Fn(&FixerAnalysis) -> String| a.map(f).unwrap_or_default();
                vec![
                    r.line.to_string(),
                    r.graph6.clone(),
                    r.n.to_string(),
                    r.m_edges.to_string(),
                    r.gamma.to_string(),
                    opt(&|a| a.gamma_prism.to_string()),
                    opt(&|a| bool_text(a.prism_fixer)),
                    opt(&|a| a.symmetric_sets.len().to_string()),
                    opt(&|a| bool_text(a.truncated)),
                    opt(&|a| {
                        a.classification
                            .as_ref()
                            .map(|c| c.label().to_string())
                            .unwrap_or_default()
                    }),
                    opt(&|a| bool_text(a.invariants.iter().all(|i| i.all()))),
                    opt(&|a| bool_text(a.hartnell_rall_c.iter().all(|&c| c))),
                    opt(&|a| a.intersection_pairs_checked.to_string()),
                    opt(&|a| a.intersection_failures.to_string()),
                    r.note.unwrap_or_default().to_string(),
                ]
            }
            Record::Verify(r) => vec![
                r.line.to_string(),
                r.graph6.clone(),
                r.n.to_string(),
                r.m_edges.to_string(),
                r.gamma.to_string(),
                r.prism_fixer.map(bool_text).unwrap_or_default(),
                r.route.to_string(),
                r.permutation_cycles.clone(),
                r.gamma_prism.to_string(),
                bool_text(r.violation),
                serde_json::to_value(r.outcome)
                    .unwrap()
                    .as_str()
                    .unwrap()
                    .to_string(),
                r.detail.to_string(),
            ],
            Record::Prism(r) => vec![
                r.line.to_string(),
                r.graph6.clone(),
                r.n.to_string(),
                r.permutation_cycles.clone(),
                r.prism.clone(),
            ],
        }
    }

    fn text(&self) -> String {
        match self {
            Record::Gamma(r) => format!(
                "{:>6}  {}  n={} m={} gamma={} witness={{{}}}",
                r.line,
                r.graph6,
                r.n,
                r.m_edges,
                r.gamma,
                join(&r.witness)
            ),
            Record::Analyze(r) => match (&r.analysis, r.note) {
                (Some(a), _) => format!(
                    "{:>6}  {}  n={} gamma={} prism_gamma={} fixer={} symmetric_sets={}{} class={}",
                    r.line,
                    r.graph6,
                    r.n,
                    r.gamma,
                    a.gamma_prism,
                    a.prism_fixer,
                    a.symmetric_sets.len(),
                    if a.truncated { " (truncated)" } else { "" },
                    a.classification.as_ref().map_or("-", |c| c.label()),
                ),
                (None, note) => format!(
                    "{:>6}  {}  n={} gamma={}  {}",
                    r.line,
                    r.graph6,
                    r.n,
                    r.gamma,
                    note.unwrap_or_default()
                ),
            },
            Record::Verify(r) => format!(
                "{:>6}  {}  n={} gamma={} -> {}  {} {}  {}",
                r.line,
                r.graph6,
                r.n,
                r.gamma,
                r.gamma_prism,
                r.route,
                r.permutation_cycles,
                serde_json::to_value(r.outcome).unwrap().as_str().unwrap(),
            ),
            Record::Prism(r) => r.prism.clone(),
        }
    }

    fn tally(&self, summary: &mut Summary) {
        summary.records += 1;
        match self {
            Record::Analyze(r) => {
                if let Some(a) = &r.analysis {
                    summary.prism_fixers += a.prism_fixer as u64;
                    summary.truncated += a.truncated as u64;
                }
            }
            Record::Verify(r) => {
                *summary.routes.entry(r.route.to_string()).or_default() += 1;
                match r.outcome {
                    Outcome::TheoremViolation => summary.violations += 1,
                    Outcome::NotFound => summary.not_found += 1,
                    _ => {}
                }
            }
            _ => {}
        }
    }
}

fn process(config: &RunConfig, line: usize, text: &str) -> LineResult {
    let graph6 = text.to_string();
    let g = match parse_graph6(text) {
        Ok(g) => g,
        Err(e) => {
            return LineResult::ParseError {
                line,
                message: e.to_string(),
            }
        }
    };
    match process_graph(config, line, graph6.clone(), &g) {
        Ok(record) => LineResult::Record(Box::new(record)),
        Err(e) => LineResult::Failure {
            line,
            graph6,
            message: e.to_string(),
        },
    }
}

fn process_graph(
    config: &RunConfig,
    line: usize,
    graph6: String,
    g: &Graph,
) -> domfix::Result<Record> {
    let (n, m_edges) = (g.order(), g.size());
    match &config.command {
        Command::Gamma => {
            let cert = gamma_exact(g);
            let oracle_checked = n <= config.cap;
            if oracle_checked {
                let oracle = gamma_bruteforce_capped(g, config.cap)?;
                if oracle.gamma != cert.gamma {
                    return Err(domfix::Error::CrossCheck(format!(
                        "branch and bound gives {}, brute force {}",
                        cert.gamma, oracle.gamma
                    )));
                }
            }
            Ok(Record::Gamma(GammaRecord {
                line,
                graph6,
                n,
                m_edges,
                gamma: cert.gamma,
                witness: cert.witness.to_vec(),
                oracle_checked,
            }))
        }
        Command::Analyze => {
            let gamma = gamma_exact(g).gamma;
            let (note, analysis) = if n < 2 {
                (Some("trivial graph"), None)
            } else if !g.is_connected() {
                (Some("routed to component analysis"), None)
            } else {
                (None, Some(analyze(g, config.limit)?))
            };
            Ok(Record::Analyze(AnalyzeRecord {
                line,
                graph6,
                n,
                m_edges,
                gamma,
                note,
                analysis,
            }))
        }
        Command::Verify => {
            let witness_config = WitnessConfig {
                budget: config.budget,
                seed: graph_seed(&graph6, config.seed),
                limit: config.limit,
            };
            let report: WitnessReport = find_witness(g, &witness_config)?;
            Ok(Record::Verify(VerifyRecord {
                line,
                graph6,
                n,
                m_edges,
                gamma: report.gamma_g,
                prism_fixer: report.prism_fixer,
                route: report.route.name(),
                permutation_cycles: report.permutation.to_cycle_string(),
                gamma_prism: report.gamma_prism,
                violation: report.violation(),
                outcome: report.outcome,
                detail: serde_json::to_value(&report.detail).expect("detail serializes"),
            }))
        }
        Command::Prism { perm } => {
            let pi = Permutation::parse_cycles(n, perm)?;
            let prism = build_prism(g, &pi)?;
            Ok(Record::Prism(PrismRecord {
                line,
                graph6,
                n,
                permutation_cycles: pi.to_cycle_string(),
                prism: write_graph6(prism.graph()),
            }))
        }
    }
}

fn csv_line<I, T>(fields: I) -> io::Result<Vec<u8>>
where
    I: IntoIterator<Item = T>,
    T: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields)?;
    w.into_inner().map_err(|e| e.into_error())
}

/// Writes records in input order and keeps the running summary.
struct Sink<'a> {
    format: Format,
    command: Command,
    out: &'a mut dyn Write,
    diag: &'a mut dyn Write,
    summary: Summary,
}

impl<'a> Sink<'a> {
    fn new(
        config: &RunConfig,
        out: &'a mut dyn Write,
        diag: &'a mut dyn Write,
    ) -> io::Result<Self> {
        if config.format == Format::Csv {
            out.write_all(&csv_line(Record::csv_header(&config.command))?)?;
        }
        Ok(Sink {
            format: config.format,
            command: config.command.clone(),
            out,
            diag,
            summary: Summary::default(),
        })
    }

    fn push(&mut self, source: &str, result: LineResult) -> io::Result<()> {
        match result {
            LineResult::Record(record) => {
                record.tally(&mut self.summary);
                match self.format {
                    Format::Json => writeln!(self.out, "{}", record.json())?,
                    Format::Text => writeln!(self.out, "{}", record.text())?,
                    Format::Csv => self.out.write_all(&csv_line(record.csv_row())?)?,
                }
            }
            LineResult::ParseError { line, message } => {
                self.summary.parse_errors += 1;
                writeln!(self.diag, "{source}:{line}: {message}")?;
            }
            LineResult::Failure {
                line,
                graph6,
                message,
            } => {
                self.summary.failures += 1;
                writeln!(self.diag, "{source}:{line}: {graph6}: {message}")?;
            }
        }
        Ok(())
    }

    fn finish(self) -> io::Result<Summary> {
        self.out.flush()?;
        writeln!(self.diag, "{}", self.summary.render(self.command.name()))?;
        Ok(self.summary)
    }
}

/// Reads one line as bytes; invalid UTF-8 becomes replacement characters and
/// then fails graph6 parsing on its own line.
fn read_line(reader: &mut dyn BufRead, buf: &mut Vec<u8>) -> io::Result<Option<String>> {
    buf.clear();
    if reader.read_until(b'\n', buf)? == 0 {
        return Ok(None);
    }
    Ok(Some(String::from_utf8_lossy(buf).into_owned()))
}

fn run_source(
    config: &RunConfig,
    pool: &rayon::ThreadPool,
    source: &str,
    reader: &mut dyn BufRead,
    sink: &mut Sink<'_>,
) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    let mut line_no = 0;
    loop {
        let mut chunk = Vec::with_capacity(CHUNK);
        while chunk.len() < CHUNK {
            let Some(line) =
                read_line(reader, &mut buf).with_context(|| format!("reading {source}"))?
            else {
                break;
            };
            line_no += 1;
            if is_graph_line(&line) {
                chunk.push((line_no, line.trim().to_string()));
            }
        }
        if chunk.is_empty() {
            return Ok(());
        }
        let results: Vec<LineResult> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(line, text)| process(config, *line, text))
                .collect()
        });
        for result in results {
            sink.push(source, result)?;
        }
    }
}

/// Runs `config` over in-memory sources; used by the binary and the tests.
pub fn run_readers(
    config: &RunConfig,
    sources: Vec<(String, Box<dyn BufRead + '_>)>,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> anyhow::Result<Summary> {
    config.validate()?;
    if let Command::Prism { perm } = &config.command {
        // Syntax errors surface once up front; range errors depend on n.
        Permutation::parse_cycles(domfix::MAX_VERTICES, perm)
            .with_context(|| format!("invalid permutation {perm:?}"))?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .context("building thread pool")?;
    let mut sink = Sink::new(config, out, diag)?;
    for (name, mut reader) in sources {
        run_source(config, &pool, &name, reader.as_mut(), &mut sink)?;
    }
    Ok(sink.finish()?)
}

/// Opens the configured inputs (stdin when none) and runs.
pub fn run(
    config: &RunConfig,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> anyhow::Result<Summary> {
    let stdin = io::stdin();
    let mut sources: Vec<(String, Box<dyn BufRead>)> = Vec::new();
    if config.inputs.is_empty() {
        sources.push(("<stdin>".into(), Box::new(stdin.lock())));
    }
    for path in &config.inputs {
        if path.as_os_str() == "-" {
            sources.push(("<stdin>".into(), Box::new(stdin.lock())));
        } else {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            sources.push((path.display().to_string(), Box::new(BufReader::new(file))));
        }
    }
    run_readers(config, sources, out, diag)
}
