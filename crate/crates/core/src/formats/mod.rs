//! Graph interchange formats: graph6, planar_code and a JSON edge list.

mod graph6;
mod planar_code;

pub use graph6::{parse_graph6, parse_graph6_file, to_graph6};
pub use planar_code::{parse_planar_code, write_planar_code, PlaneGraph};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("truncated record: {0}")]
    TruncatedRecord(String),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// `{"n": 4, "edges": [[0,1], ...], "labels": [...]}`; labels are optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&Graph> for EdgeListJson {
    fn from(g: &Graph) -> Self {
        EdgeListJson {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&e| e.into()).collect(),
            labels: g.labels().map(<[String]>::to_vec),
        }
    }
}

impl TryFrom<EdgeListJson> for Graph {
    type Error = GraphError;

    fn try_from(j: EdgeListJson) -> Result<Self, GraphError> {
        let g = Graph::from_edge_list(j.n, j.edges.iter().map(|&[u, v]| (u, v)))?;
        match j.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

pub fn parse_json_graph(text: &str) -> Result<Graph, FormatError> {
    let j: EdgeListJson = serde_json::from_str(text)?;
    Ok(Graph::try_from(j)?)
}

pub fn to_json_graph(g: &Graph) -> String {
    serde_json::to_string(&EdgeListJson::from(g)).expect("edge lists serialize")
}

/// Which encoding a byte buffer appears to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Graph6,
    PlanarCode,
    Json,
}

pub fn detect_encoding(bytes: &[u8]) -> Encoding {
    let trimmed = bytes.trim_ascii_start();
    if trimmed.starts_with(b"{") || trimmed.starts_with(b"[") {
        Encoding::Json
    } else if bytes.starts_with(b">>planar_code") {
        Encoding::PlanarCode
    } else if bytes.starts_with(b">>graph6<<")
        || bytes.iter().all(|b| (63..=126).contains(b) || b.is_ascii_whitespace())
    {
        Encoding::Graph6
    } else {
        Encoding::PlanarCode
    }
}

/// Reads every graph in `bytes`, whatever the encoding. JSON input may be a
/// single edge list or an array of them. planar_code embeddings are dropped;
/// use [`parse_planar_code`] to keep them.
pub fn read_graphs(bytes: &[u8]) -> Result<Vec<Graph>, FormatError> {
    match detect_encoding(bytes) {
        Encoding::Graph6 => parse_graph6_file(bytes),
        Encoding::PlanarCode => Ok(parse_planar_code(bytes)?.into_iter().map(|p| p.graph).collect()),
        Encoding::Json => {
            let text = std::str::from_utf8(bytes).map_err(|e| FormatError::MalformedHeader(e.to_string()))?;
            if text.trim_start().starts_with('[') {
                let list: Vec<EdgeListJson> = serde_json::from_str(text)?;
                list.into_iter().map(|j| Ok(Graph::try_from(j)?)).collect()
            } else {
                Ok(vec![parse_json_graph(text)?])
            }
        }
    }
}
