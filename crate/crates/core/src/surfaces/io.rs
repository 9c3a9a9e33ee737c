//! Triangulation JSON, flip-graph DOT and the quadrilateral census CSV.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::arcs::{MarkedPolygon, TaggedArc};
use super::quads::QuadrilateralWithDiagonal;
use super::triangulation::{FlipGraph, Surface, Triangulation};
use super::SurfaceError;

pub const TRIANGULATION_VERSION: u64 = 1;

/// `{"version":1, "polygon":{…}, "arcs":[[…], …]}`: one list of arcs per orbit, in label order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub version: u64,
    pub polygon: MarkedPolygon,
    pub arcs: Vec<Vec<TaggedArc>>,
}

pub fn triangulation_to_json(s: &Surface, t: &Triangulation) -> String {
    let doc = TriangulationJson {
        version: TRIANGULATION_VERSION,
        polygon: s.polygon,
        arcs: t.orbits.iter().map(|&o| s.orbit(o)).collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

/// Parses and validates a triangulation, rebuilding the surface it lives on.
pub fn triangulation_from_json(text: &str) -> Result<(Surface, Triangulation), SurfaceError> {
    let doc: TriangulationJson = serde_json::from_str(text).map_err(|e| SurfaceError::Corrupt(e.to_string()))?;
    if doc.version != TRIANGULATION_VERSION {
        return Err(SurfaceError::Corrupt(format!("version {} (expected {TRIANGULATION_VERSION})", doc.version)));
    }
    let s = Surface::new(doc.polygon)?;
    let mut orbits = Vec::new();
    for orbit in &doc.arcs {
        let first = orbit.first().ok_or_else(|| SurfaceError::Corrupt("empty orbit".into()))?;
        let o = s.orbit_id(first).ok_or_else(|| SurfaceError::NotAnArc(first.to_string(), s.polygon.to_string()))?;
        if s.orbit(o) != *orbit {
            return Err(SurfaceError::Corrupt(format!("{orbit:?} is not a full orbit")));
        }
        orbits.push(o);
    }
    let t = Triangulation { orbits };
    s.check(&t)?;
    Ok((s, t))
}

fn label(s: &Surface, t: &Triangulation) -> String {
    t.key()
        .iter()
        .map(|&o| s.orbit(o).iter().map(|a| a.to_string()).collect::<Vec<_>>().join("|"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Undirected flip graph; nodes are named by their sorted arcs.
pub fn flip_graph_dot(s: &Surface, g: &FlipGraph) -> String {
    let mut out = format!("graph \"{}\" {{\n", s.polygon);
    for (i, t) in g.nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", label(s, t));
    }
    for (u, row) in g.adj.iter().enumerate() {
        for &v in row {
            if u < v {
                let _ = writeln!(out, "  n{u} -- n{v};");
            }
        }
    }
    out.push_str("}\n");
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Columns `key,diagonal,triangulations`.
pub fn quads_csv(census: &BTreeMap<QuadrilateralWithDiagonal, usize>) -> String {
    let mut out = String::from("key,diagonal,triangulations\n");
    for (q, count) in census {
        let _ = writeln!(out, "{},{},{count}", csv_field(&q.key()), csv_field(&q.diagonal_key()));
    }
    out
}
