//! Exchange matrices, labeled seeds, mutation, the hat construction and canonical keys.
//!
//! Indices are zero-based throughout the library; the command line is one-based.

pub mod dynkin;
pub mod key;
pub mod matrix;
pub mod seed;

use serde::{Deserialize, Serialize};

use crate::semifield::{RationalFunction, SemifieldValue};

pub use dynkin::{binom, dynkin_initial_matrix, DynkinFamily, DynkinType};
pub use key::{canonical_key_a, canonical_key_labels, canonical_key_x, SeedKey, DEFAULT_RANK_BOUND};
pub use matrix::{cartan_counterpart, find_skew_symmetrizer, CartanMatrix, ExchangeMatrix};
pub use seed::{mutate_x, APattern, ASeed, XSeed};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeedError {
    #[error("direction {k} out of range for rank {rank}")]
    Index { k: usize, rank: usize },
    #[error("matrix of rank {rank} given {len} entries")]
    Shape { rank: usize, len: usize },
    #[error("cluster of length {len} for rank {rank}")]
    Length { rank: usize, len: usize },
    #[error("matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("invalid Dynkin type {0}")]
    InvalidType(String),
    #[error("rank {rank} exceeds the canonicalization bound {bound}")]
    RankBound { rank: usize, bound: usize },
    #[error("seed values do not belong to one semifield: {0}")]
    Semifield(#[from] crate::semifield::SemifieldError),
}

/// JSON form of a seed with exact values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedJson {
    #[serde(rename = "B")]
    pub b: Vec<i64>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    pub x: Vec<SemifieldValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<RationalFunction>>,
}

impl SeedJson {
    pub fn from_x(seed: &XSeed<SemifieldValue>) -> Self {
        SeedJson { b: seed.b.entries().to_vec(), d: seed.b.symmetrizer().to_vec(), x: seed.x.clone(), a: None }
    }

    pub fn from_a(seed: &ASeed<RationalFunction, SemifieldValue>) -> Self {
        SeedJson {
            b: seed.b.entries().to_vec(),
            d: seed.b.symmetrizer().to_vec(),
            x: seed.x.clone(),
            a: Some(seed.a.clone()),
        }
    }

    pub fn matrix(&self) -> Result<ExchangeMatrix, SeedError> {
        let n = self.x.len();
        let m = ExchangeMatrix::new(n, self.b.clone())?;
        if m.symmetrizer() != self.d.as_slice() {
            // any positive multiple of the minimal witness is acceptable
            let ok = self.d.len() == n
                && (0..n).all(|i| (0..n).all(|j| self.d[i] * m.get(i, j) == -self.d[j] * m.get(j, i)))
                && self.d.iter().all(|&v| v > 0);
            if !ok {
                return Err(SeedError::NotSkewSymmetrizable);
            }
        }
        Ok(m)
    }

    pub fn to_x(&self) -> Result<XSeed<SemifieldValue>, SeedError> {
        XSeed::new(self.matrix()?, self.x.clone())
    }
}
