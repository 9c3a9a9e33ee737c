//! Versioned JSON persistence and DOT rendering of exchange graphs.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::seedcore::{SeedJson, SeedKey};
use crate::semifield::{RationalFunction, SemifieldValue};

use super::graph::{ExchangeGraph, GraphNode, GraphStats};
use super::ExploreError;

pub const GRAPH_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
struct NodeFile {
    key: String,
    seed: SeedJson,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    version: u64,
    #[serde(rename = "type")]
    type_label: String,
    rank: usize,
    semifield: String,
    complete: bool,
    nodes: Vec<NodeFile>,
    edges: Vec<(String, usize, String)>,
    xvars: Vec<SemifieldValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    avars: Vec<RationalFunction>,
    stats: GraphStats,
}

pub fn graph_to_json(g: &ExchangeGraph) -> String {
    let file = GraphFile {
        version: GRAPH_VERSION,
        type_label: g.type_label.clone(),
        rank: g.rank,
        semifield: g.semifield.clone(),
        complete: g.complete,
        nodes: g.nodes.iter().map(|n| NodeFile { key: n.key.to_hex(), seed: n.seed.clone() }).collect(),
        edges: g.edges.iter().map(|&(u, k, v)| (g.nodes[u].key.to_hex(), k, g.nodes[v].key.to_hex())).collect(),
        xvars: g.xvars.clone(),
        avars: g.avars.clone(),
        stats: g.stats.clone(),
    };
    serde_json::to_string(&file).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<ExchangeGraph, ExploreError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| ExploreError::Corrupt(e.to_string()))?;
    let found =
        value.get("version").and_then(|v| v.as_u64()).ok_or_else(|| ExploreError::Corrupt("missing version".into()))?;
    if found != GRAPH_VERSION {
        return Err(ExploreError::Version { found, expected: GRAPH_VERSION });
    }
    let file: GraphFile = serde_json::from_value(value).map_err(|e| ExploreError::Corrupt(e.to_string()))?;
    let mut nodes = Vec::with_capacity(file.nodes.len());
    let mut index = HashMap::new();
    for (i, n) in file.nodes.into_iter().enumerate() {
        let key = SeedKey::from_hex(&n.key).map_err(|e| ExploreError::Corrupt(format!("key {}: {e}", n.key)))?;
        n.seed.matrix().map_err(|e| ExploreError::Corrupt(format!("node {i}: {e}")))?;
        if index.insert(n.key, i).is_some() {
            return Err(ExploreError::Corrupt(format!("duplicate node {i}")));
        }
        nodes.push(GraphNode { key, seed: n.seed });
    }
    if nodes.windows(2).any(|w| w[0].key >= w[1].key) {
        return Err(ExploreError::Corrupt("nodes not sorted by key".into()));
    }
    let lookup = |k: &str| index.get(k).copied().ok_or_else(|| ExploreError::Corrupt(format!("unknown node {k}")));
    let mut edges = Vec::with_capacity(file.edges.len());
    for (u, k, v) in &file.edges {
        if *k >= file.rank {
            return Err(ExploreError::Corrupt(format!("direction {k} out of range")));
        }
        edges.push((lookup(u)?, *k, lookup(v)?));
    }
    Ok(ExchangeGraph {
        type_label: file.type_label,
        rank: file.rank,
        semifield: file.semifield,
        nodes,
        edges,
        xvars: file.xvars,
        avars: file.avars,
        complete: file.complete,
        stats: file.stats,
    })
}

pub fn save_graph(g: &ExchangeGraph, path: &Path) -> Result<(), ExploreError> {
    std::fs::write(path, graph_to_json(g))
        .map_err(|source| ExploreError::Io { path: path.display().to_string(), source })
}

pub fn load_graph(path: &Path) -> Result<ExchangeGraph, ExploreError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ExploreError::Io { path: path.display().to_string(), source })?;
    graph_from_json(&text)
}

/// Undirected DOT: nodes labeled by a key prefix, edges by their (one-based) directions
/// at both ends.
pub fn to_dot(g: &ExchangeGraph) -> String {
    let mut out = String::new();
    let name = if g.type_label.is_empty() { "exchange" } else { g.type_label.as_str() };
    writeln!(out, "graph \"{name}\" {{").unwrap();
    for (i, n) in g.nodes.iter().enumerate() {
        // nodes are numbered in discovery order; the full key is kept as a tooltip
        writeln!(out, "  n{i} [label=\"{}\", tooltip=\"{}\"];", i + 1, n.key.to_hex()).unwrap();
    }
    let mut back: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &(u, k, v) in &g.edges {
        back.entry((u, v)).or_default().push(k);
    }
    let mut pairs: Vec<(usize, usize)> = back.keys().copied().filter(|&(u, v)| u <= v).collect();
    pairs.sort_unstable();
    for (u, v) in pairs {
        let fwd = &back[&(u, v)];
        let rev = back.get(&(v, u)).cloned().unwrap_or_default();
        for (i, k) in fwd.iter().enumerate() {
            if u == v && i % 2 == 1 {
                continue;
            }
            let label = match rev.get(i) {
                Some(j) if u != v && j != k => format!("{}/{}", k + 1, j + 1),
                _ => format!("{}", k + 1),
            };
            writeln!(out, "  n{u} -- n{v} [label=\"{label}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
