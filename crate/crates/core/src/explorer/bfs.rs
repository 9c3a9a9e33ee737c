//! Level-synchronous breadth-first search over a seed pattern.
//!
//! Each level is expanded in parallel (mutation plus key computation), then new
//! seeds are inserted serially in `(node, direction)` order. A node keeps the
//! first labeled seed that reached it, so its directions are stable labels.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::seedcore::{SeedError, SeedKey};

/// One way of walking a pattern: how to mutate a seed and how to key it.
pub trait Pattern: Sync {
    type Seed: Clone + Send + Sync;

    fn rank(&self, seed: &Self::Seed) -> usize;
    fn mutate(&self, seed: &Self::Seed, k: usize) -> Result<Self::Seed, SeedError>;
    /// Key of the unlabeled seed, valid for the current [`Pattern::epoch`].
    fn key(&self, seed: &Self::Seed) -> Result<SeedKey, SeedError>;

    fn epoch(&self) -> u64 {
        0
    }

    fn normalize(&self, seed: &Self::Seed) -> Self::Seed {
        seed.clone()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Limits {
    pub max_nodes: Option<usize>,
    pub max_seconds: Option<f64>,
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits::default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitHit {
    Nodes,
    Seconds,
}

pub const UNKNOWN: usize = usize::MAX;

/// Search result before export: node seeds in discovery order and `adj[u][k]`.
#[derive(Clone, Debug)]
pub struct RawGraph<T> {
    pub seeds: Vec<T>,
    pub adj: Vec<Vec<usize>>,
    pub limit: Option<LimitHit>,
    pub elapsed: Duration,
}

impl<T> RawGraph<T> {
    pub fn is_complete(&self) -> bool {
        self.limit.is_none()
    }

    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }
}

fn keyed<P: Pattern>(p: &P, seeds: &[P::Seed]) -> Result<Vec<SeedKey>, SeedError> {
    seeds.par_iter().map(|s| p.key(s)).collect()
}

pub fn explore_raw<P: Pattern>(p: &P, root: &P::Seed, limits: Limits) -> Result<RawGraph<P::Seed>, SeedError> {
    let start = Instant::now();
    let n = p.rank(root);
    let mut epoch = p.epoch();
    let root = p.normalize(root);
    let mut index: HashMap<SeedKey, usize> = HashMap::new();
    index.insert(p.key(&root)?, 0);
    let mut seeds = vec![root];
    let mut adj = vec![vec![UNKNOWN; n]];
    let mut frontier = vec![0usize];
    let mut limit = None;

    'levels: while !frontier.is_empty() {
        if let Some(s) = limits.max_seconds {
            if start.elapsed().as_secs_f64() > s {
                limit = Some(LimitHit::Seconds);
                break;
            }
        }
        let adj_ref = &adj;
        let tasks: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&u| (0..n).filter(move |&k| adj_ref[u][k] == UNKNOWN).map(move |k| (u, k)))
            .collect();
        let mut found: Vec<(usize, usize, P::Seed, SeedKey)> = tasks
            .par_iter()
            .map(|&(u, k)| {
                let s = p.mutate(&seeds[u], k)?;
                let key = p.key(&s)?;
                Ok((u, k, s, key))
            })
            .collect::<Result<_, SeedError>>()?;

        // Factor-basis splits invalidate encodings; bring everything to the new epoch.
        while p.epoch() != epoch {
            epoch = p.epoch();
            seeds = seeds.par_iter().map(|s| p.normalize(s)).collect();
            let keys = keyed(p, &seeds)?;
            index = keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
            found = found
                .into_par_iter()
                .map(|(u, k, s, _)| {
                    let s = p.normalize(&s);
                    let key = p.key(&s)?;
                    Ok((u, k, s, key))
                })
                .collect::<Result<_, SeedError>>()?;
        }

        let mut next = Vec::new();
        for (u, k, s, key) in found {
            if let Some(&v) = index.get(&key) {
                adj[u][k] = v;
                continue;
            }
            if limits.max_nodes.is_some_and(|m| seeds.len() >= m) {
                limit = Some(LimitHit::Nodes);
                break 'levels;
            }
            let v = seeds.len();
            index.insert(key, v);
            seeds.push(s);
            let mut row = vec![UNKNOWN; n];
            // the new seed is μ_k of u's labeled seed, so μ_k leads straight back
            row[k] = u;
            adj.push(row);
            adj[u][k] = v;
            next.push(v);
        }
        frontier = next;
    }

    if p.epoch() != epoch {
        seeds = seeds.par_iter().map(|s| p.normalize(s)).collect();
    }
    Ok(RawGraph { seeds, adj, limit, elapsed: start.elapsed() })
}
