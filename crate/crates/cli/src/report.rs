//! Report lines, exit codes and file helpers shared by the commands.

use hubsolve_core::graph::{parse_graph, Graph};
use hubsolve_core::hub::{greedy_hub, parse_hub, tight_hub, validate_hub, HubDecomposition};
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

/// Why a command stopped without a verdict.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: hubsolve_core::Error,
    },
    #[error(transparent)]
    Core(#[from] hubsolve_core::Error),
    #[error("witness failed verification: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(e) | CliError::Input { source: e, .. } if e.is_cap() => ExitCode::from(3),
            CliError::Verification(_) => ExitCode::from(4),
            _ => ExitCode::from(2),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// The answer a command reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn word(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
        }
    }

    pub fn exit_code(self) -> ExitCode {
        match self {
            Verdict::Yes => ExitCode::SUCCESS,
            Verdict::No => ExitCode::from(1),
        }
    }
}

/// `key=value` lines, printed together once the command has finished.
#[derive(Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn kv(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key}={value}"));
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.kv("verdict", v.word());
    }

    pub fn print(&self) {
        for l in &self.lines {
            println!("{l}");
        }
    }
}

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and parses a file, naming the file in parse errors.
pub fn load<T>(
    path: &Path,
    parse: impl FnOnce(&str) -> hubsolve_core::Result<T>,
) -> CliResult<T> {
    parse(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_graph(path: &Path) -> CliResult<Graph> {
    load(path, parse_graph)
}

/// The hub from `path`, or the greedy hub for `(sigma, delta)` with its
/// bounds tightened when no file is given.
pub fn load_hub(
    g: &Graph,
    path: Option<&Path>,
    sigma: usize,
    delta: usize,
) -> CliResult<HubDecomposition> {
    match path {
        Some(p) => {
            let spec = load(p, parse_hub)?;
            validate_hub(g, &spec.vertices, spec.sigma, spec.delta).map_err(|source| {
                CliError::Input {
                    path: p.to_path_buf(),
                    source,
                }
            })
        }
        None => Ok(tight_hub(g, &greedy_hub(g, sigma, delta))),
    }
}

/// Path of the hub file written next to a graph file.
pub fn hub_path(graph: &Path) -> PathBuf {
    let mut s = graph.as_os_str().to_owned();
    s.push(".hub");
    PathBuf::from(s)
}

pub fn create_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

/// Comma-separated 1-based ids.
pub fn ids(vs: impl IntoIterator<Item = usize>) -> String {
    join(vs.into_iter().map(|v| v + 1))
}

pub fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Vertex colors, 1-based, with `-` for deleted vertices.
pub fn colors(assignment: &[Option<u8>]) -> String {
    join(assignment.iter().map(|c| match c {
        Some(c) => (c + 1).to_string(),
        None => "-".to_string(),
    }))
}

pub fn verified(r: Result<(), String>) -> CliResult<()> {
    r.map_err(CliError::Verification)
}
