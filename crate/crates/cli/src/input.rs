//! Reading graphs and layouts from files or standard input.

use std::io::Read;
use std::path::{Path, PathBuf};

use mixlay_core::formats::{read_graphs, FormatError};
use mixlay_core::{Graph, LayoutError, MixedLayout};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed corpus: {0}")]
    MalformedCorpus(#[from] FormatError),
    #[error("expected one graph, found {0}")]
    GraphCount(usize),
    #[error("bad layout: {0}")]
    Layout(#[from] LayoutError),
    #[error("bad query {0:?}, expected `stacks:queues`")]
    Query(String),
    #[error("witness {} failed re-verification", path.display())]
    Witness { path: PathBuf },
}

fn stdin_path() -> PathBuf {
    PathBuf::from("<stdin>")
}

/// Reads a whole file, or standard input for `None` and `-`.
pub fn read_input(path: Option<&Path>) -> Result<Vec<u8>, HarnessError> {
    let mut buf = Vec::new();
    match path {
        Some(p) if p != Path::new("-") => {
            buf = std::fs::read(p).map_err(|source| HarnessError::Io {
                path: p.to_path_buf(),
                source,
            })?;
        }
        _ => {
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|source| HarnessError::Io { path: stdin_path(), source })?;
        }
    }
    Ok(buf)
}

/// Every graph in the input, in graph6, planar_code or JSON.
pub fn load_graphs(path: Option<&Path>) -> Result<Vec<Graph>, HarnessError> {
    Ok(read_graphs(&read_input(path)?)?)
}

/// The single graph in the input.
pub fn load_graph(path: Option<&Path>) -> Result<Graph, HarnessError> {
    let mut graphs = load_graphs(path)?;
    match graphs.len() {
        1 => Ok(graphs.pop().expect("one graph")),
        k => Err(HarnessError::GraphCount(k)),
    }
}

pub fn load_layout(path: &Path) -> Result<MixedLayout, HarnessError> {
    let bytes = read_input(Some(path))?;
    let text = String::from_utf8_lossy(&bytes);
    Ok(MixedLayout::from_json_str(&text)?)
}

pub fn write_output(path: &Path, contents: &[u8]) -> Result<(), HarnessError> {
    std::fs::write(path, contents).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}
