//! Edge-list readers.
//!
//! Lines are whitespace separated. Blank lines and lines starting with `#` or
//! `%` are skipped. Node labels are arbitrary tokens, numbered densely in
//! order of first appearance.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use fsnet_core::empirical::TemporalEdgeList;
use fsnet_core::{Graph, NodeId};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
}

/// Static graph with the cleaning counts.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

/// Time-stamped additions, kept in file order.
#[derive(Debug, Clone)]
pub struct LoadedEvents {
    pub list: TemporalEdgeList,
    pub labels: Vec<String>,
    pub self_loops: usize,
}

#[derive(Default)]
struct Labels {
    index: HashMap<String, NodeId>,
    names: Vec<String>,
}

impl Labels {
    fn id(&mut self, token: &str) -> NodeId {
        if let Some(&id) = self.index.get(token) {
            return id;
        }
        let id = self.names.len() as NodeId;
        self.index.insert(token.to_owned(), id);
        self.names.push(token.to_owned());
        id
    }
}

fn open(path: &Path) -> Result<BufReader<File>, LoadError> {
    File::open(path).map(BufReader::new).map_err(|source| LoadError::Read { path: path.to_owned(), source })
}

/// Calls `f(line_number, tokens)` for every data line.
fn for_each_line<R: BufRead>(
    reader: R,
    path: &Path,
    mut f: impl FnMut(usize, &[&str]) -> Result<(), String>,
) -> Result<(), LoadError> {
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| LoadError::Read { path: path.to_owned(), source })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        f(i + 1, &tokens).map_err(|message| LoadError::Parse { path: path.to_owned(), line: i + 1, message })?;
    }
    Ok(())
}

/// Reads `u v [ignored...]` lines into a simple graph. A line with a single
/// label declares an isolated node. Columns past the second (weights, times)
/// are ignored, so a temporal file collapses to its static graph.
pub fn read_edge_list<R: BufRead>(reader: R, path: &Path) -> Result<LoadedGraph, LoadError> {
    let mut labels = Labels::default();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut self_loops = 0;
    for_each_line(reader, path, |_, tokens| {
        let u = labels.id(tokens[0]);
        if let Some(v) = tokens.get(1) {
            let v = labels.id(v);
            if u == v {
                self_loops += 1;
            } else {
                edges.push((u.min(v), u.max(v)));
            }
        }
        Ok(())
    })?;
    let total = edges.len();
    edges.sort_unstable();
    edges.dedup();
    let duplicate_edges = total - edges.len();
    let graph = Graph::from_edges(labels.names.len(), edges).expect("cleaned edges are simple");
    Ok(LoadedGraph { graph, labels: labels.names, duplicate_edges, self_loops })
}

pub fn load_edge_list(path: &Path) -> Result<LoadedGraph, LoadError> {
    read_edge_list(open(path)?, path)
}

/// Reads `u v t` lines. Times must be finite and non-decreasing; with
/// `sort` set, events are stably sorted by time instead.
pub fn read_temporal<R: BufRead>(reader: R, path: &Path, sort: bool) -> Result<LoadedEvents, LoadError> {
    let mut labels = Labels::default();
    let mut events: Vec<(NodeId, NodeId, f64)> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    for_each_line(reader, path, |line, tokens| {
        if tokens.len() < 3 {
            return Err(format!("expected `u v t`, found {} column(s)", tokens.len()));
        }
        let t: f64 = tokens[2].parse().map_err(|_| format!("timestamp `{}` is not a number", tokens[2]))?;
        if !t.is_finite() {
            return Err(format!("timestamp `{}` is not finite", tokens[2]));
        }
        if !sort {
            if let Some(&(_, _, prev)) = events.last() {
                if t < prev {
                    return Err(format!("timestamp {t} is earlier than the previous event ({prev})"));
                }
            }
        }
        let u = labels.id(tokens[0]);
        let v = labels.id(tokens[1]);
        events.push((u, v, t));
        lines.push(line);
        Ok(())
    })?;
    if sort {
        events.sort_by(|a, b| a.2.total_cmp(&b.2));
    }
    let list = TemporalEdgeList::new(events, Some(labels.names.len())).map_err(|e| LoadError::Parse {
        path: path.to_owned(),
        line: match e {
            fsnet_core::Error::UnsortedEvents { index } => lines.get(index).copied().unwrap_or(0),
            _ => 0,
        },
        message: e.to_string(),
    })?;
    let self_loops = list.dropped_loops();
    Ok(LoadedEvents { list, labels: labels.names, self_loops })
}

pub fn load_temporal(path: &Path, sort: bool) -> Result<LoadedEvents, LoadError> {
    read_temporal(open(path)?, path, sort)
}

/// Static graph of every pair that ever appears.
pub fn collapse(events: &LoadedEvents) -> LoadedGraph {
    let mut edges: Vec<(NodeId, NodeId)> = events.list.events().iter().map(|&(u, v, _)| (u.min(v), u.max(v))).collect();
    let total = edges.len();
    edges.sort_unstable();
    edges.dedup();
    LoadedGraph {
        graph: Graph::from_edges(events.labels.len(), edges.iter().copied()).expect("loops were dropped"),
        labels: events.labels.clone(),
        duplicate_edges: total - edges.len(),
        self_loops: events.self_loops,
    }
}
