//! Skew-symmetrizable exchange matrices, matrix mutation and Cartan counterparts.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use super::SeedError;

/// Square integer matrix together with a positive diagonal `D` making `DB` skew-symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    b: Vec<i64>,
    d: Vec<i64>,
}

/// Minimal positive integer `D` with `d_i b_ij = -d_j b_ji`, or `None`.
pub fn find_skew_symmetrizer(n: usize, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(b.len(), n * n);
    let at = |i: usize, j: usize| b[i * n + j];
    for i in 0..n {
        if at(i, i) != 0 {
            return None;
        }
        for j in 0..n {
            if at(i, j).signum() != -at(j, i).signum() {
                return None;
            }
        }
    }
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        let mut comp = vec![root];
        d[root] = Some(Ratio::from_integer(1));
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if at(i, j) == 0 {
                    continue;
                }
                // d_j = d_i * b_ij / (-b_ji)
                let dj = d[i].unwrap() * Ratio::new(at(i, j), -at(j, i));
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => return None,
                    Some(_) => {}
                }
            }
        }
        // Clear denominators, then divide by the common factor within the component.
        let l = comp.iter().fold(1i64, |acc, &i| acc.lcm(d[i].unwrap().denom()));
        let ints: Vec<i64> = comp.iter().map(|&i| (d[i].unwrap() * l).to_integer()).collect();
        let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, &v) in comp.iter().zip(&ints) {
            d[i] = Some(Ratio::from_integer(v / g));
        }
    }
    Some(d.into_iter().map(|x| x.unwrap().to_integer()).collect())
}

impl ExchangeMatrix {
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self, SeedError> {
        if entries.len() != n * n {
            return Err(SeedError::Shape { rank: n, len: entries.len() });
        }
        let d = find_skew_symmetrizer(n, &entries).ok_or(SeedError::NotSkewSymmetrizable)?;
        Ok(ExchangeMatrix { n, b: entries, d })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, SeedError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SeedError::Shape { rank: n, len: rows.iter().map(|r| r.len()).sum() });
        }
        Self::new(n, rows.concat())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[i64] {
        &self.b
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn check_index(&self, k: usize) -> Result<(), SeedError> {
        if k < self.n {
            Ok(())
        } else {
            Err(SeedError::Index { k, rank: self.n })
        }
    }

    /// Matrix mutation in direction `k` (zero-based).
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        self.check_index(k)?;
        let n = self.n;
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                let v = if i == k || j == k {
                    -self.get(i, j)
                } else {
                    let (bik, bkj) = (self.get(i, k), self.get(k, j));
                    if bik * bkj > 0 {
                        self.get(i, j) + bik * bkj.abs()
                    } else {
                        self.get(i, j)
                    }
                };
                b[i * n + j] = v;
            }
        }
        Ok(ExchangeMatrix { n, b, d: self.d.clone() })
    }

    /// Simultaneous relabeling: entry `(p, q)` of the result is `b[perm[p]][perm[q]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut b = vec![0; n * n];
        for p in 0..n {
            for q in 0..n {
                b[p * n + q] = self.get(perm[p], perm[q]);
            }
        }
        ExchangeMatrix { n, b, d: perm.iter().map(|&i| self.d[i]).collect() }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExchangeMatrix{:?}", self.rows())
    }
}

/// Integer matrix with `2` on the diagonal and nonpositive entries elsewhere.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CartanMatrix {
    n: usize,
    a: Vec<i64>,
}

impl CartanMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let a = rows.concat();
        assert_eq!(a.len(), n * n);
        CartanMatrix { n, a }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut a = vec![0; n * n];
        for p in 0..n {
            for q in 0..n {
                a[p * n + q] = self.get(perm[p], perm[q]);
            }
        }
        CartanMatrix { n, a }
    }

    /// Equality up to simultaneous permutation of rows and columns (brute force, small rank).
    pub fn equivalent(&self, other: &CartanMatrix) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        permutations_any(&mut perm, 0, &mut |p| self.permuted(p) == *other)
    }
}

pub(crate) fn permutations_any(perm: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if start == perm.len() {
        return f(perm);
    }
    for i in start..perm.len() {
        perm.swap(start, i);
        if permutations_any(perm, start + 1, f) {
            perm.swap(start, i);
            return true;
        }
        perm.swap(start, i);
    }
    false
}

/// `a_ii = 2`, `a_ij = -|b_ij|`.
pub fn cartan_counterpart(b: &ExchangeMatrix) -> CartanMatrix {
    let n = b.rank();
    let a = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| if i == j { 2 } else { -b.get(i, j).abs() })
        .collect();
    CartanMatrix { n, a }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_examples() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        let m = b.mutate(0).unwrap();
        assert_eq!(m.rows(), vec![vec![0, -1, 0], vec![1, 0, 1], vec![0, -1, 0]]);
        assert_eq!(m.mutate(0).unwrap(), b);
        let b = ExchangeMatrix::from_rows(&[vec![0, 2], vec![-1, 0]]).unwrap();
        assert_eq!(b.mutate(1).unwrap().rows(), vec![vec![0, -2], vec![1, 0]]);
        assert!(matches!(b.mutate(2), Err(SeedError::Index { .. })));
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(find_skew_symmetrizer(2, &[0, 1, -1, 0]), Some(vec![1, 1]));
        assert_eq!(find_skew_symmetrizer(2, &[0, 2, -1, 0]), Some(vec![1, 2]));
        assert_eq!(find_skew_symmetrizer(2, &[0, 1, 1, 0]), None);
        // inconsistent cycle
        assert_eq!(find_skew_symmetrizer(3, &[0, 1, -1, -1, 0, 2, 1, -1, 0]), None);
    }

    #[test]
    fn cartan() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 2], vec![-1, 0]]).unwrap();
        assert_eq!(cartan_counterpart(&b).rows(), vec![vec![2, -2], vec![-1, 2]]);
        let z = ExchangeMatrix::new(3, vec![0; 9]).unwrap();
        assert_eq!(cartan_counterpart(&z).rows(), vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
    }
}
