//! The `graceful` command line.
//!
//! Flags take precedence over environment variables (`GRACEFUL_JOBS`,
//! `GRACEFUL_MAX_N`), which take precedence over built-in defaults.
//!
//! Enumeration commands stream their objects to `--out` (or stdout) from a
//! single writer and write a JSON manifest to `<out>.manifest.json` (or
//! stderr when writing to stdout).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};

use crate::error::Error;
use crate::io::{
    dot_named, edge_list_text, matrix_text, parse_graph, Checksum, GraphJson, Manifest,
};
use crate::matrix::{GracefulMatrix, LabeledGraph};
use crate::oracle::{check_conjecture, Limits};
use crate::propagation::{
    enumerate_graceful, multi_propagate_all, propagate_single, propagate_single_all, SingleChoice,
};
use crate::tree::{
    enumerate_tree_classes, filter_graceful_trees, has_cycle, is_connected, is_tree,
    isolated_vertices, propagate_tree, propagate_tree_all, AttachChoice, LabeledTree, TreeCode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Report whether a matrix or edge list is gracefully labeled.
    Verify,
    /// Single-vertex propagation of a graceful matrix.
    Propagate1,
    /// Multiple-vertex propagation over every diagonal selection.
    #[value(name = "propagateK")]
    PropagateK,
    /// Attach-and-relabel propagation of a tree.
    PropagateTree,
    /// All graceful matrices of dimension --n.
    EnumGraceful,
    /// All unlabeled trees on --n vertices, as canonical codes.
    EnumTrees,
    /// Graceful matrices of dimension --n whose graphs are trees.
    FilterTrees,
    /// Search a graceful labeling for every tree up to --n-max vertices.
    CheckConjecture,
    /// Convert a graph to another format.
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Matrix,
    Edgelist,
    Dot,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "graceful",
    version,
    about = "Propagate and enumerate graceful graphs and trees"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Vertex count (enumerations; vertex count of an edge-list input).
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of appended vertices for propagateK.
    #[arg(long = "ne")]
    pub n_e: Option<usize>,
    /// Single choice for propagate1 / propagate-tree; all choices if absent.
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "GRACEFUL_JOBS", default_value_t = 0)]
    pub jobs: usize,
    /// Overrides every resource guard (defaults: matrices 10, trees 12,
    /// conjecture 11).
    #[arg(long = "max-n", env = "GRACEFUL_MAX_N")]
    pub max_n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Usage,
    Input,
    Range,
    Refused,
    Io,
    Failed,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        match self {
            ExitKind::Usage => 2,
            ExitKind::Input => 3,
            ExitKind::Range => 4,
            ExitKind::Refused => 5,
            ExitKind::Io => 6,
            ExitKind::Failed => 7,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            kind: ExitKind::Usage,
            message: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Parse { .. }
            | Error::InvalidTreeCode(_)
            | Error::SelfLoop(_)
            | Error::DuplicateEdge(..)
            | Error::EndpointOutOfRange { .. }
            | Error::NotGraceful
            | Error::NotATree => ExitKind::Input,
            Error::EmptyGraph
            | Error::OffsetOutOfRange { .. }
            | Error::ChoiceOutOfRange { .. }
            | Error::InvalidSelection(_) => ExitKind::Range,
            Error::LimitExceeded { .. } => ExitKind::Refused,
        };
        CliError {
            kind,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            kind: ExitKind::Io,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

impl RunConfig {
    pub fn limits(&self) -> Limits {
        self.max_n.map(Limits::uniform).unwrap_or_default()
    }

    /// Rejects missing parameters and flags the command does not use.
    pub fn validate(&self) -> CliResult<()> {
        use Command::*;
        let given = [
            ("--n", self.n.is_some()),
            ("--ne", self.n_e.is_some()),
            ("--i", self.i.is_some()),
            ("--n-max", self.n_max.is_some()),
            ("--in", self.input.is_some()),
        ];
        let (required, optional): (&[&str], &[&str]) = match self.command {
            Verify => (&["--in"], &["--n"]),
            Propagate1 => (&["--in"], &["--n", "--i"]),
            PropagateK => (&["--in", "--ne"], &["--n"]),
            PropagateTree => (&["--in"], &["--i"]),
            EnumGraceful | EnumTrees | FilterTrees => (&["--n"], &[]),
            CheckConjecture => (&["--n-max"], &[]),
            Export => (&["--in"], &["--n"]),
        };
        for (flag, present) in given {
            let needed = required.contains(&flag);
            if needed && !present {
                return Err(CliError::usage(format!(
                    "{:?} requires {flag}",
                    self.command
                )));
            }
            if present && !needed && !optional.contains(&flag) {
                return Err(CliError::usage(format!(
                    "{flag} does not apply to {:?}",
                    self.command
                )));
            }
        }
        if self.command == Verify && self.format.is_some() {
            return Err(CliError::usage("--format does not apply to Verify"));
        }
        if self.command == CheckConjecture && !matches!(self.format, None | Some(Format::Json)) {
            return Err(CliError::usage("check-conjecture only writes JSON"));
        }
        if self.n_e == Some(0) {
            return Err(Error::InvalidSelection("--ne must be at least 1".into()).into());
        }
        Ok(())
    }
}

/// Runs one command. `stdout`/`stderr` receive whatever is not written to
/// `--out`.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start {} workers: {e}", config.jobs)))?;
    dispatch(config, &pool, stdout, stderr)
}

fn dispatch(
    config: &RunConfig,
    pool: &rayon::ThreadPool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<()> {
    let limits = config.limits();
    let start = Instant::now();
    match config.command {
        Command::Verify => {
            let g = read_input(config)?;
            let mut out = open_out(config.out.as_deref(), stdout)?;
            let isolated: Vec<String> = isolated_vertices(&g)
                .iter()
                .map(|v| v.to_string())
                .collect();
            writeln!(out, "graceful: {}", g.is_graceful())?;
            writeln!(out, "tree: {}", is_tree(&g))?;
            writeln!(out, "connected: {}", is_connected(&g))?;
            writeln!(out, "cycle: {}", has_cycle(&g))?;
            writeln!(out, "isolated: {}", isolated.join(" "))?;
            out.flush()?;
            Ok(())
        }
        Command::Export => {
            let g = read_input(config)?;
            let mut out = open_out(config.out.as_deref(), stdout)?;
            let mut em = Emitter::new(&mut out, config.format.unwrap_or(Format::Dot));
            em.graph(&g)?;
            em.finish()?;
            Ok(())
        }
        Command::Propagate1 => {
            let parent = read_graceful(config)?;
            let children = match config.i {
                Some(i) => vec![propagate_single(&parent, SingleChoice(i))?],
                None => propagate_single_all(&parent),
            };
            emit_matrices(
                config,
                stdout,
                stderr,
                "2.1",
                parent.n(),
                None,
                &children,
                start,
            )
        }
        Command::PropagateK => {
            let parent = read_graceful(config)?;
            let n_e = config.n_e.expect("validated");
            limits.check_matrix(parent.n() + n_e)?;
            let children = multi_propagate_all(&parent, n_e);
            emit_matrices(
                config,
                stdout,
                stderr,
                "2.3",
                parent.n(),
                Some(n_e),
                &children,
                start,
            )
        }
        Command::EnumGraceful => {
            let n = config.n.expect("validated");
            limits.check_matrix(n)?;
            let all = pool.install(|| enumerate_graceful(n))?;
            emit_matrices(config, stdout, stderr, "2.1", n, None, &all, start)
        }
        Command::FilterTrees => {
            let n = config.n.expect("validated");
            limits.check_matrix(n)?;
            let trees = pool.install(|| filter_graceful_trees(n))?;
            emit_matrices(config, stdout, stderr, "2.1", n, None, &trees, start)
        }
        Command::PropagateTree => {
            let tree = LabeledTree::new(read_input(config)?)?;
            limits.check_tree(tree.n() + 1)?;
            let children = match config.i {
                Some(i) => vec![propagate_tree(&tree, AttachChoice(i))?],
                None => propagate_tree_all(&tree),
            };
            let mut out = open_out(config.out.as_deref(), stdout)?;
            let mut em = Emitter::new(&mut out, config.format.unwrap_or(Format::Edgelist));
            for t in &children {
                em.graph(t.graph())?;
            }
            let (count, checksum) = em.finish()?;
            write_manifest(
                config,
                stderr,
                "3.1",
                tree.n(),
                None,
                count,
                checksum,
                start,
            )
        }
        Command::EnumTrees => {
            let n = config.n.expect("validated");
            limits.check_tree(n)?;
            let classes = pool.install(|| enumerate_tree_classes(n))?;
            let mut out = open_out(config.out.as_deref(), stdout)?;
            let (count, checksum) = match config.format {
                None => {
                    let mut sum = Checksum::new();
                    for code in classes.keys() {
                        writeln!(out, "{code}")?;
                        sum.update(code.as_str());
                    }
                    out.flush()?;
                    (classes.len(), sum.hex())
                }
                Some(fmt) => {
                    let mut em = Emitter::new(&mut out, fmt);
                    for (code, t) in &classes {
                        em.tree_class(code, t.graph())?;
                    }
                    em.finish()?
                }
            };
            write_manifest(config, stderr, "3.1", n, None, count, checksum, start)
        }
        Command::CheckConjecture => {
            let n_max = config.n_max.expect("validated");
            let report = pool.install(|| check_conjecture(n_max, &limits))?;
            let mut out = open_out(config.out.as_deref(), stdout)?;
            serde_json::to_writer_pretty(&mut out, &report).map_err(io::Error::other)?;
            writeln!(out)?;
            out.flush()?;
            if report.all_graceful() {
                Ok(())
            } else {
                Err(CliError {
                    kind: ExitKind::Failed,
                    message: format!(
                        "{} trees without a graceful labeling: {}",
                        report.failures.len(),
                        report.failures.join(", ")
                    ),
                })
            }
        }
    }
}

fn read_input(config: &RunConfig) -> CliResult<LabeledGraph> {
    let path = config.input.as_ref().expect("validated");
    let text = std::fs::read_to_string(path)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    Ok(parse_graph(&text, config.n)?)
}

fn read_graceful(config: &RunConfig) -> CliResult<GracefulMatrix> {
    Ok(GracefulMatrix::new(read_input(config)?.to_matrix())?)
}

fn open_out<'a>(path: Option<&Path>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                io::Error::new(e.kind(), format!("{}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(stdout)),
    })
}

#[allow(clippy::too_many_arguments)]
fn emit_matrices(
    config: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    algorithm: &str,
    n: usize,
    n_e: Option<usize>,
    matrices: &[GracefulMatrix],
    start: Instant,
) -> CliResult<()> {
    let mut out = open_out(config.out.as_deref(), stdout)?;
    let mut em = Emitter::new(&mut out, config.format.unwrap_or(Format::Matrix));
    for m in matrices {
        em.graph(&m.to_graph())?;
    }
    let (count, checksum) = em.finish()?;
    drop(out);
    write_manifest(config, stderr, algorithm, n, n_e, count, checksum, start)
}

#[allow(clippy::too_many_arguments)]
fn write_manifest(
    config: &RunConfig,
    stderr: &mut dyn Write,
    algorithm: &str,
    n: usize,
    n_e: Option<usize>,
    count: usize,
    checksum: String,
    start: Instant,
) -> CliResult<()> {
    let manifest = Manifest {
        algorithm: algorithm.to_string(),
        n,
        n_e,
        count,
        checksum,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(io::Error::other)?;
    match &config.out {
        Some(p) => std::fs::write(manifest_path(p), json + "\n")?,
        None => writeln!(stderr, "{json}")?,
    }
    Ok(())
}

/// `<out>.manifest.json`
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Streams objects in one format, counting them and hashing the matrix
/// text of each graph (or the code of each tree class) in order, so the
/// checksum does not depend on the output format.
struct Emitter<'a, W: Write + ?Sized> {
    out: &'a mut W,
    format: Format,
    count: usize,
    sum: Checksum,
}

impl<'a, W: Write + ?Sized> Emitter<'a, W> {
    fn new(out: &'a mut W, format: Format) -> Self {
        Emitter {
            out,
            format,
            count: 0,
            sum: Checksum::new(),
        }
    }

    fn separator(&mut self) -> io::Result<()> {
        match (self.format, self.count) {
            (Format::Json, 0) => self.out.write_all(b"[\n"),
            (Format::Json, _) => self.out.write_all(b",\n"),
            (_, 0) => Ok(()),
            _ => self.out.write_all(b"\n"),
        }
    }

    fn body(&mut self, g: &LabeledGraph, json: serde_json::Value) -> io::Result<()> {
        match self.format {
            Format::Matrix => self.out.write_all(matrix_text(&g.to_matrix()).as_bytes()),
            Format::Edgelist => self.out.write_all(edge_list_text(g).as_bytes()),
            Format::Dot => self
                .out
                .write_all(dot_named(&format!("g{}", self.count + 1), g).as_bytes()),
            Format::Json => serde_json::to_writer(&mut *self.out, &json).map_err(io::Error::other),
        }
    }

    fn graph(&mut self, g: &LabeledGraph) -> io::Result<()> {
        self.separator()?;
        let json = serde_json::to_value(GraphJson::from(g)).map_err(io::Error::other)?;
        self.body(g, json)?;
        self.sum.update(&matrix_text(&g.to_matrix()));
        self.count += 1;
        Ok(())
    }

    fn tree_class(&mut self, code: &TreeCode, g: &LabeledGraph) -> io::Result<()> {
        self.separator()?;
        let mut json = serde_json::to_value(GraphJson::from(g)).map_err(io::Error::other)?;
        json["code"] = serde_json::Value::String(code.to_string());
        self.body(g, json)?;
        self.sum.update(code.as_str());
        self.count += 1;
        Ok(())
    }

    fn finish(self) -> io::Result<(usize, String)> {
        if self.format == Format::Json {
            let tail: &[u8] = if self.count == 0 { b"[]\n" } else { b"\n]\n" };
            self.out.write_all(tail)?;
        }
        self.out.flush()?;
        Ok((self.count, self.sum.hex()))
    }
}
