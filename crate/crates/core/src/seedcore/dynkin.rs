//! Finite-type Cartan matrices and bipartite initial exchange matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::{CartanMatrix, ExchangeMatrix};
use super::SeedError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for DynkinFamily {
    type Err = SeedError;

    fn from_str(s: &str) -> Result<Self, SeedError> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => DynkinFamily::A,
            "B" => DynkinFamily::B,
            "C" => DynkinFamily::C,
            "D" => DynkinFamily::D,
            "E" => DynkinFamily::E,
            "F" => DynkinFamily::F,
            "G" => DynkinFamily::G,
            _ => return Err(SeedError::InvalidType(s.to_string())),
        })
    }
}

/// A validated Dynkin type such as `D5` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinType {
    pub family: DynkinFamily,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: DynkinFamily, rank: usize) -> Result<Self, SeedError> {
        let ok = match family {
            DynkinFamily::A => rank >= 1,
            DynkinFamily::B | DynkinFamily::C | DynkinFamily::D => rank >= 2,
            DynkinFamily::E => (6..=8).contains(&rank),
            DynkinFamily::F => rank == 4,
            DynkinFamily::G => rank == 2,
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(SeedError::InvalidType(format!("{family:?}{rank}")))
        }
    }

    pub fn parse(family: &str, rank: usize) -> Result<Self, SeedError> {
        Self::new(family.parse()?, rank)
    }

    pub fn is_classical(&self) -> bool {
        matches!(self.family, DynkinFamily::A | DynkinFamily::B | DynkinFamily::C | DynkinFamily::D)
    }

    /// Undirected edges `(i, j, a_ij, a_ji)` of the diagram, zero-based.
    fn edges(&self) -> Vec<(usize, usize, i64, i64)> {
        let n = self.rank;
        let path = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1, -1, -1)).collect::<Vec<_>>();
        match self.family {
            DynkinFamily::A => path(n),
            DynkinFamily::B => {
                let mut e = path(n);
                // the short simple root is the last one
                e[n - 2] = (n - 2, n - 1, -1, -2);
                e
            }
            DynkinFamily::C => {
                let mut e = path(n);
                e[n - 2] = (n - 2, n - 1, -2, -1);
                e
            }
            DynkinFamily::D => {
                if n == 2 {
                    return Vec::new();
                }
                let mut e = path(n - 1);
                e.push((n - 3, n - 1, -1, -1));
                e
            }
            DynkinFamily::E => {
                let mut e = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
                e.extend((2..n - 1).map(|i| (i, i + 1, -1, -1)));
                e
            }
            DynkinFamily::F => vec![(0, 1, -1, -1), (1, 2, -2, -1), (2, 3, -1, -1)],
            DynkinFamily::G => vec![(0, 1, -1, -3)],
        }
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        let n = self.rank;
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j, aij, aji) in self.edges() {
            rows[i][j] = aij;
            rows[j][i] = aji;
        }
        CartanMatrix::from_rows(&rows)
    }

    /// Published X-variable counts of the universal pattern (`principal = false`)
    /// and of the principal-coefficient pattern.
    pub fn expected_xvars(&self, principal: bool) -> u64 {
        let n = self.rank as u64;
        match (self.family, principal) {
            (DynkinFamily::A, false) => 2 * binom(n + 3, 4),
            (DynkinFamily::A, true) => n * (n + 1),
            (DynkinFamily::B | DynkinFamily::C, false) => n * (n + 1) * (n * n + 2) / 3,
            (DynkinFamily::B | DynkinFamily::C, true) => 2 * n * n,
            (DynkinFamily::D, false) => n * (n - 1) * (n * n + 4 * n - 6) / 3,
            (DynkinFamily::D, true) => 2 * n * (n - 1),
            (DynkinFamily::E, false) => [770, 2100, 6240][self.rank - 6],
            (DynkinFamily::E, true) => [72, 126, 240][self.rank - 6],
            (DynkinFamily::F, false) => 196,
            (DynkinFamily::F, true) => 48,
            (DynkinFamily::G, false) => 16,
            (DynkinFamily::G, true) => 12,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Bipartite orientation of the Dynkin diagram: vertices of the first color class
/// are sources, `|b_ij| = -a_ij`.
pub fn dynkin_initial_matrix(t: DynkinType) -> ExchangeMatrix {
    let a = t.cartan_matrix();
    let n = t.rank;
    let mut color = vec![usize::MAX; n];
    for s in 0..n {
        if color[s] != usize::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i != j && a.get(i, j) != 0 && color[j] == usize::MAX {
                    color[j] = 1 - color[i];
                    queue.push_back(j);
                }
            }
        }
    }
    let mut b = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j && a.get(i, j) != 0 {
                let m = -a.get(i, j);
                b[i * n + j] = if color[i] == 0 { m } else { -m };
            }
        }
    }
    ExchangeMatrix::new(n, b).expect("Cartan matrices of finite type are symmetrizable")
}
