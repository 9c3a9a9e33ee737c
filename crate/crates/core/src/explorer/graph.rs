//! Exported exchange graphs: exact seeds in canonical labeling, sorted by key.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::seedcore::{canonical_key_labels, ExchangeMatrix, SeedJson, SeedKey, DEFAULT_RANK_BOUND};
use crate::semifield::{RationalFunction, SemifieldValue};

use super::bfs::{RawGraph, UNKNOWN};
use super::ExploreError;

#[derive(Clone, Debug, PartialEq)]
pub struct GraphNode {
    pub key: SeedKey,
    pub seed: SeedJson,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub nodes: usize,
    /// Undirected edges, counted with multiplicity (half the labeled incidences).
    pub edges: usize,
    pub xvars: usize,
    /// Largest numerator or denominator (in terms) among exported X-variables.
    pub max_poly_terms: usize,
    pub max_total_degree: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeGraph {
    /// Dynkin label such as `A3`, or `custom` for user-supplied roots.
    pub type_label: String,
    pub rank: usize,
    pub semifield: String,
    pub nodes: Vec<GraphNode>,
    /// `(u, k, v)`: mutating node `u` in (canonical) direction `k` gives node `v`.
    pub edges: Vec<(usize, usize, usize)>,
    pub xvars: Vec<SemifieldValue>,
    /// Distinct cluster variables, only for A-patterns.
    pub avars: Vec<RationalFunction>,
    pub complete: bool,
    pub stats: GraphStats,
}

/// A node seed written out exactly, in its stored labeling.
pub struct Exported {
    pub b: ExchangeMatrix,
    pub x: Vec<SemifieldValue>,
    pub a: Option<Vec<RationalFunction>>,
}

fn labels(e: &Exported) -> Vec<Vec<u8>> {
    (0..e.b.rank())
        .map(|i| {
            let mut out = Vec::new();
            if let Some(a) = &e.a {
                a[i].encode(&mut out);
            }
            e.x[i].encode(&mut out);
            out
        })
        .collect()
}

fn encoded(v: &SemifieldValue) -> Vec<u8> {
    let mut out = Vec::new();
    v.encode(&mut out);
    out
}

pub(crate) fn sorted_distinct<T: Clone>(values: impl Iterator<Item = T>, enc: impl Fn(&T) -> Vec<u8>) -> Vec<T> {
    let mut seen: HashMap<Vec<u8>, T> = HashMap::new();
    for v in values {
        seen.entry(enc(&v)).or_insert(v);
    }
    let mut out: Vec<(Vec<u8>, T)> = seen.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, v)| v).collect()
}

/// Recomputes exact keys, relabels every node canonically and sorts nodes by key.
pub fn export_graph<T: Sync>(
    raw: &RawGraph<T>,
    convert: impl Fn(&T) -> Exported + Sync,
    type_label: &str,
    semifield: &str,
) -> Result<ExchangeGraph, ExploreError> {
    let exported: Vec<Exported> = raw.seeds.par_iter().map(&convert).collect();
    let keyed: Vec<(SeedKey, Vec<usize>)> = exported
        .par_iter()
        .map(|e| canonical_key_labels(&e.b, &labels(e), DEFAULT_RANK_BOUND))
        .collect::<Result<_, _>>()?;
    let mut order: Vec<usize> = (0..exported.len()).collect();
    order.sort_by(|&i, &j| keyed[i].0.cmp(&keyed[j].0));
    for w in order.windows(2) {
        if keyed[w[0]].0 == keyed[w[1]].0 {
            return Err(ExploreError::KeyCollision(keyed[w[0]].0.to_hex()));
        }
    }
    let mut new_of = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new;
    }
    let rank = exported.first().map(|e| e.b.rank()).unwrap_or(0);
    let nodes: Vec<GraphNode> = order
        .iter()
        .map(|&old| {
            let e = &exported[old];
            let perm = &keyed[old].1;
            let b = e.b.permuted(perm);
            let x: Vec<SemifieldValue> = perm.iter().map(|&i| e.x[i].clone()).collect();
            let a = e.a.as_ref().map(|a| perm.iter().map(|&i| a[i].clone()).collect());
            GraphNode {
                key: keyed[old].0.clone(),
                seed: SeedJson { b: b.entries().to_vec(), d: b.symmetrizer().to_vec(), x, a },
            }
        })
        .collect();
    let mut edges = Vec::new();
    for (old, row) in raw.adj.iter().enumerate() {
        for (p, &k) in keyed[old].1.iter().enumerate() {
            if row[k] != UNKNOWN {
                edges.push((new_of[old], p, new_of[row[k]]));
            }
        }
    }
    edges.sort_unstable();

    let xvars = sorted_distinct(exported.iter().flat_map(|e| e.x.iter().cloned()), encoded);
    let avars = sorted_distinct(exported.iter().flat_map(|e| e.a.iter().flatten().cloned()), |r| {
        let mut out = Vec::new();
        r.encode(&mut out);
        out
    });
    let mut stats = GraphStats { nodes: nodes.len(), edges: edges.len() / 2, xvars: xvars.len(), ..Default::default() };
    for v in &xvars {
        if let SemifieldValue::Universal(r) = v {
            stats.max_poly_terms = stats.max_poly_terms.max(r.num().len()).max(r.den().len());
            stats.max_total_degree = stats.max_total_degree.max(r.num().total_degree()).max(r.den().total_degree());
        }
    }
    Ok(ExchangeGraph {
        type_label: type_label.to_string(),
        rank,
        semifield: semifield.to_string(),
        nodes,
        edges,
        xvars,
        avars,
        complete: raw.is_complete(),
        stats,
    })
}

impl ExchangeGraph {
    pub fn node_index(&self, key: &SeedKey) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.key.cmp(key)).ok()
    }

    /// `targets[u][k]`, or `None` where the search stopped early.
    pub fn targets(&self) -> Vec<Vec<Option<usize>>> {
        let mut t = vec![vec![None; self.rank]; self.nodes.len()];
        for &(u, k, v) in &self.edges {
            t[u][k] = Some(v);
        }
        t
    }

    /// Every node has `rank` labeled edges.
    pub fn is_regular(&self) -> bool {
        self.targets().iter().all(|row| row.iter().all(|t| t.is_some()))
    }

    /// The labeled edge relation is symmetric: `u -k-> v` implies `v -j-> u` for some `j`,
    /// with matching multiplicities.
    pub fn is_symmetric(&self) -> bool {
        let mut count: HashMap<(usize, usize), i64> = HashMap::new();
        for &(u, _, v) in &self.edges {
            *count.entry((u, v)).or_default() += 1;
            *count.entry((v, u)).or_default() -= 1;
        }
        count.values().all(|&c| c == 0)
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let nb = self.neighbors();
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &nb[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Neighbor lists of the underlying undirected multigraph (one entry per labeled edge).
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.nodes.len()];
        for &(u, _, v) in &self.edges {
            nb[u].push(v);
        }
        for l in &mut nb {
            l.sort_unstable();
        }
        nb
    }

    /// Distinct unordered pairs of adjacent nodes.
    pub fn simple_edge_count(&self) -> usize {
        self.edges.iter().map(|&(u, _, v)| (u.min(v), u.max(v))).collect::<BTreeSet<_>>().len()
    }
}

fn refine(nb: &[Vec<usize>], colors: &mut [usize]) {
    let total = colors.len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..total)
            .map(|u| {
                let mut s: Vec<usize> = nb[u].iter().map(|&v| colors[v]).collect();
                s.sort_unstable();
                (colors[u], s)
            })
            .collect();
        let mut uniq: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        uniq.sort();
        uniq.dedup();
        let before = colors.iter().collect::<HashSet<_>>().len();
        for u in 0..total {
            colors[u] = uniq.binary_search(&&sigs[u]).unwrap();
        }
        if uniq.len() == before {
            return;
        }
    }
}

struct Matcher<'a> {
    nb1: &'a [Vec<usize>],
    nb2: &'a [Vec<usize>],
    mult1: HashMap<(usize, usize), usize>,
    mult2: HashMap<(usize, usize), usize>,
    c1: &'a [usize],
    c2: &'a [usize],
    order: Vec<usize>,
    map: Vec<usize>,
    inv: Vec<usize>,
}

impl Matcher<'_> {
    fn consistent(&self, u: usize, cand: usize) -> bool {
        let mapped1 = self.nb1[u].iter().filter(|&&w| self.map[w] != UNKNOWN).count();
        let mapped2 = self.nb2[cand].iter().filter(|&&w| self.inv[w] != UNKNOWN).count();
        mapped1 == mapped2
            && self.nb1[u].iter().all(|&w| {
                let mw = self.map[w];
                mw == UNKNOWN || self.mult2.get(&(cand, mw)) == self.mult1.get(&(u, w))
            })
    }

    fn run(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let u = self.order[i];
        for cand in 0..self.c2.len() {
            if self.inv[cand] != UNKNOWN || self.c2[cand] != self.c1[u] || !self.consistent(u, cand) {
                continue;
            }
            self.map[u] = cand;
            self.inv[cand] = u;
            if self.run(i + 1) {
                return true;
            }
            self.map[u] = UNKNOWN;
            self.inv[cand] = UNKNOWN;
        }
        false
    }
}

fn multiplicities(nb: &[Vec<usize>]) -> HashMap<(usize, usize), usize> {
    let mut m = HashMap::new();
    for (u, l) in nb.iter().enumerate() {
        for &v in l {
            *m.entry((u, v)).or_default() += 1;
        }
    }
    m
}

/// Isomorphism of the underlying undirected multigraphs (direction labels ignored):
/// cheap invariants, then joint color refinement, then a backtracking search.
pub fn graphs_isomorphic(g1: &ExchangeGraph, g2: &ExchangeGraph) -> Result<bool, ExploreError> {
    if !g1.complete || !g2.complete {
        return Err(ExploreError::PartialGraph);
    }
    let (n1, n2) = (g1.nodes.len(), g2.nodes.len());
    if n1 != n2 || g1.edges.len() != g2.edges.len() {
        return Ok(false);
    }
    let nb1 = g1.neighbors();
    let nb2 = g2.neighbors();
    let mut joint: Vec<Vec<usize>> = nb1.clone();
    joint.extend(nb2.iter().map(|l| l.iter().map(|&v| v + n1).collect()));
    let mut colors: Vec<usize> = joint.iter().map(|l| l.len()).collect();
    refine(&joint, &mut colors);
    let (c1, c2) = colors.split_at(n1);
    let mut h1 = c1.to_vec();
    let mut h2 = c2.to_vec();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return Ok(false);
    }
    // BFS order keeps each new node adjacent to already mapped ones
    let mut order = Vec::with_capacity(n1);
    let mut seen = vec![false; n1];
    for s in 0..n1 {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &nb1[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    let mut m = Matcher {
        nb1: &nb1,
        nb2: &nb2,
        mult1: multiplicities(&nb1),
        mult2: multiplicities(&nb2),
        c1,
        c2,
        order,
        map: vec![UNKNOWN; n1],
        inv: vec![UNKNOWN; n2],
    };
    Ok(m.run(0))
}
