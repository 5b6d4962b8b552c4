//! The `.uhg` text format.
//!
//! ```text
//! # 3-uniform hyperstar of size 2
//! 5 3
//! 1 2 3
//! 1 4 5
//! ```
//!
//! Line one holds `n k`, every further nonempty line one edge of `k`
//! 1-based vertices. `#` comments run to end of line.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::hypergraph::{BuildError, Hypergraph};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: BuildError,
    },
    #[error("missing \"n k\" header")]
    MissingHeader,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn parse(text: &str) -> Result<Hypergraph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let nums = fields
            .iter()
            .map(|f| {
                f.parse::<usize>().map_err(|_| ParseError::Syntax {
                    line,
                    msg: format!("expected a nonnegative integer, found {f:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(ParseError::Syntax {
                        line,
                        msg: format!("header must be \"n k\", found {} fields", nums.len()),
                    });
                }
                header = Some((nums[0], nums[1], line));
            }
            Some(_) => {
                edges.push(nums);
                edge_lines.push(line);
            }
        }
    }

    let (n, k, header_line) = header.ok_or(ParseError::MissingHeader)?;
    Hypergraph::build(n, k, &edges).map_err(|source| {
        let line = match &source {
            BuildError::EdgeWrongArity { edge, .. } | BuildError::VertexOutOfRange { edge, .. } => {
                edge_lines[*edge]
            }
            BuildError::DuplicateEdge { edge, .. } => edge_lines[*edge],
            BuildError::BadUniformity(_) | BuildError::TooFewVertices { .. } | BuildError::EmptyEdgeSet => {
                header_line
            }
        };
        ParseError::Invalid { line, source }
    })
}

/// Canonical text: sorted edges, sorted vertices, no comments.
pub fn serialize(g: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.k());
    for e in g.edges() {
        let mut first = true;
        for &v in e {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Hypergraph, ParseError> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write_file(g: &Hypergraph, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, serialize(g))
}
