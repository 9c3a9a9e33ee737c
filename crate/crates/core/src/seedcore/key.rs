//! Canonical keys of seeds up to simultaneous relabeling.
//!
//! Each index gets a label (the encoding of its cluster entries). Indices are split
//! into classes by an equitable refinement on labels and matrix entries, and only
//! permutations inside classes are searched, with branch-and-bound on the matrix.

use std::fmt;

use crate::semifield::Semifield;

use super::matrix::ExchangeMatrix;
use super::seed::{ASeed, XSeed};
use super::SeedError;

pub const DEFAULT_RANK_BOUND: usize = 9;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey(pub Vec<u8>);

impl SeedKey {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, hex::FromHexError> {
        Ok(SeedKey(hex::decode(s)?))
    }
}

impl fmt::Display for SeedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for SeedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.to_hex();
        write!(f, "SeedKey({}{})", &h[..h.len().min(16)], if h.len() > 16 { "…" } else { "" })
    }
}

fn rank_signatures<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut uniq: Vec<T> = sigs.to_vec();
    uniq.sort();
    uniq.dedup();
    sigs.iter().map(|s| uniq.binary_search(s).unwrap()).collect()
}

/// Permutation-invariant classes of indices (equal class for any two indices an
/// automorphism-free relabeling could swap).
fn refine_classes(b: &ExchangeMatrix, labels: &[Vec<u8>]) -> Vec<usize> {
    let n = b.rank();
    let init: Vec<(Vec<u8>, Vec<i64>, Vec<i64>)> = (0..n)
        .map(|i| {
            let mut row: Vec<i64> = (0..n).filter(|&j| j != i).map(|j| b.get(i, j)).collect();
            let mut col: Vec<i64> = (0..n).filter(|&j| j != i).map(|j| b.get(j, i)).collect();
            row.sort_unstable();
            col.sort_unstable();
            (labels[i].clone(), row, col)
        })
        .collect();
    let mut class = rank_signatures(&init);
    loop {
        let sigs: Vec<(usize, Vec<(usize, i64, i64)>)> = (0..n)
            .map(|i| {
                let mut nb: Vec<(usize, i64, i64)> = (0..n)
                    .filter(|&j| j != i && b.get(i, j) != 0)
                    .map(|j| (class[j], b.get(i, j), b.get(j, i)))
                    .collect();
                nb.sort_unstable();
                (class[i], nb)
            })
            .collect();
        let next = rank_signatures(&sigs);
        let before = class.iter().max().map(|m| m + 1).unwrap_or(0);
        let after = next.iter().max().map(|m| m + 1).unwrap_or(0);
        class = next;
        if after == before {
            return class;
        }
    }
}

struct Search<'a> {
    b: &'a ExchangeMatrix,
    slot_class: Vec<usize>,
    class: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    seq: Vec<i64>,
    best: Option<(Vec<i64>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, p: usize) {
        let n = self.b.rank();
        if p == n {
            let better = match &self.best {
                None => true,
                Some((bs, _)) => self.seq < *bs,
            };
            if better {
                self.best = Some((self.seq.clone(), self.perm.clone()));
            }
            return;
        }
        for cand in 0..n {
            if self.used[cand] || self.class[cand] != self.slot_class[p] {
                continue;
            }
            let mark = self.seq.len();
            for q in 0..p {
                let o = self.perm[q];
                self.seq.push(self.b.get(cand, o));
                self.seq.push(self.b.get(o, cand));
            }
            let prune = match &self.best {
                Some((bs, _)) => self.seq[..] > bs[..self.seq.len()],
                None => false,
            };
            if !prune {
                self.used[cand] = true;
                self.perm.push(cand);
                self.run(p + 1);
                self.perm.pop();
                self.used[cand] = false;
            }
            self.seq.truncate(mark);
        }
    }
}

/// Minimal encoding over class-preserving permutations; also returns the permutation
/// (`perm[p]` is the original index placed at position `p`).
pub fn canonical_key_labels(
    b: &ExchangeMatrix,
    labels: &[Vec<u8>],
    bound: usize,
) -> Result<(SeedKey, Vec<usize>), SeedError> {
    let n = b.rank();
    if n > bound {
        return Err(SeedError::RankBound { rank: n, bound });
    }
    let class = refine_classes(b, labels);
    let mut slot_class = class.clone();
    slot_class.sort_unstable();
    let mut s =
        Search { b, slot_class, class, perm: Vec::with_capacity(n), used: vec![false; n], seq: Vec::new(), best: None };
    s.run(0);
    let (_, perm) = s.best.expect("at least one permutation");
    let mut out = Vec::new();
    out.push(n as u8);
    for &i in &perm {
        out.extend_from_slice(&(labels[i].len() as u32).to_be_bytes());
        out.extend_from_slice(&labels[i]);
    }
    for &i in &perm {
        for &j in &perm {
            out.extend_from_slice(&b.get(i, j).to_be_bytes());
        }
    }
    Ok((SeedKey(out), perm))
}

pub fn x_labels<S: Semifield>(s: &S, seed: &XSeed<S::Elem>) -> Vec<Vec<u8>> {
    seed.x
        .iter()
        .map(|v| {
            let mut out = Vec::new();
            s.encode(v, &mut out);
            out
        })
        .collect()
}

pub fn canonical_key_x<S: Semifield>(s: &S, seed: &XSeed<S::Elem>) -> Result<(SeedKey, Vec<usize>), SeedError> {
    canonical_key_labels(&seed.b, &x_labels(s, seed), DEFAULT_RANK_BOUND)
}

pub fn canonical_key_a<S: Semifield, F: Semifield>(
    s: &S,
    f: &F,
    seed: &ASeed<F::Elem, S::Elem>,
) -> Result<(SeedKey, Vec<usize>), SeedError> {
    let labels: Vec<Vec<u8>> = (0..seed.rank())
        .map(|i| {
            let mut out = Vec::new();
            f.encode(&seed.a[i], &mut out);
            s.encode(&seed.x[i], &mut out);
            out
        })
        .collect();
    canonical_key_labels(&seed.b, &labels, DEFAULT_RANK_BOUND)
}
