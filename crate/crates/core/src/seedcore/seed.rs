//! Labeled X- and A-seeds, their mutations and the hat construction.

use crate::semifield::Semifield;

use super::matrix::ExchangeMatrix;
use super::SeedError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct XSeed<E> {
    pub b: ExchangeMatrix,
    pub x: Vec<E>,
}

impl<E: Clone> XSeed<E> {
    pub fn new(b: ExchangeMatrix, x: Vec<E>) -> Result<Self, SeedError> {
        if x.len() != b.rank() {
            return Err(SeedError::Length { rank: b.rank(), len: x.len() });
        }
        Ok(XSeed { b, x })
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }

    /// Same seed with indices reordered: position `p` takes old index `perm[p]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        XSeed { b: self.b.permuted(perm), x: perm.iter().map(|&i| self.x[i].clone()).collect() }
    }
}

/// `x_j (x_k^{sgn(-b_kj)} ⊕ 1)^{-b_kj}` for `j != k`, `x_k^{-1}` at `k`.
pub fn mutate_x<S: Semifield>(s: &S, seed: &XSeed<S::Elem>, k: usize) -> Result<XSeed<S::Elem>, SeedError> {
    seed.b.check_index(k)?;
    let n = seed.rank();
    let xk = &seed.x[k];
    let mut plus: Option<S::Elem> = None; // x_k ⊕ 1
    let mut minus: Option<S::Elem> = None; // x_k^{-1} ⊕ 1
    let mut x = Vec::with_capacity(n);
    for j in 0..n {
        if j == k {
            x.push(s.inv(xk));
            continue;
        }
        let bkj = seed.b.get(k, j);
        if bkj == 0 {
            x.push(seed.x[j].clone());
            continue;
        }
        let p = plus.get_or_insert_with(|| s.oplus(xk, &s.one())).clone();
        // x_k^{-1} ⊕ 1 = (x_k ⊕ 1) x_k^{-1} by distributivity
        let base = if bkj < 0 { p } else { minus.get_or_insert_with(|| s.div(&p, xk)).clone() };
        x.push(s.mul(&seed.x[j], &s.pow(&base, -bkj)));
    }
    Ok(XSeed { b: seed.b.mutate(k)?, x })
}

/// Labeled A-seed: cluster `a` in an ambient field `F`, coefficients `x` in a semifield.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ASeed<A, E> {
    pub b: ExchangeMatrix,
    pub a: Vec<A>,
    pub x: Vec<E>,
}

impl<A: Clone, E: Clone> ASeed<A, E> {
    pub fn new(b: ExchangeMatrix, a: Vec<A>, x: Vec<E>) -> Result<Self, SeedError> {
        if a.len() != b.rank() {
            return Err(SeedError::Length { rank: b.rank(), len: a.len() });
        }
        if x.len() != b.rank() {
            return Err(SeedError::Length { rank: b.rank(), len: x.len() });
        }
        Ok(ASeed { b, a, x })
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        ASeed {
            b: self.b.permuted(perm),
            a: perm.iter().map(|&i| self.a[i].clone()).collect(),
            x: perm.iter().map(|&i| self.x[i].clone()).collect(),
        }
    }

    pub fn x_seed(&self) -> XSeed<E> {
        XSeed { b: self.b.clone(), x: self.x.clone() }
    }
}

/// The pair of A-seed arithmetic contexts: coefficients in `S`, cluster variables in
/// the field `F` (whose `oplus` must be ordinary addition), with `embed: S -> F`.
pub struct APattern<'a, S: Semifield, F: Semifield> {
    pub coeffs: &'a S,
    pub field: &'a F,
    pub embed: &'a (dyn Fn(&S::Elem) -> F::Elem + Sync),
}

impl<'a, S: Semifield, F: Semifield> APattern<'a, S, F> {
    /// The two monomials `∏_{b_ik>0} a_i^{b_ik}` and `∏_{b_ik<0} a_i^{-b_ik}`.
    pub fn exchange_monomials(&self, seed: &ASeed<F::Elem, S::Elem>, k: usize) -> (F::Elem, F::Elem) {
        let f = self.field;
        let (mut p, mut m) = (f.one(), f.one());
        for i in 0..seed.rank() {
            let bik = seed.b.get(i, k);
            if bik > 0 {
                p = f.mul(&p, &f.pow(&seed.a[i], bik));
            } else if bik < 0 {
                m = f.mul(&m, &f.pow(&seed.a[i], -bik));
            }
        }
        (p, m)
    }

    pub fn mutate(&self, seed: &ASeed<F::Elem, S::Elem>, k: usize) -> Result<ASeed<F::Elem, S::Elem>, SeedError> {
        seed.b.check_index(k)?;
        let f = self.field;
        let (p, m) = self.exchange_monomials(seed, k);
        let xk = &seed.x[k];
        let num = f.oplus(&f.mul(&(self.embed)(xk), &p), &m);
        let den = f.mul(&(self.embed)(&self.coeffs.oplus(xk, &self.coeffs.one())), &seed.a[k]);
        let mut a = seed.a.clone();
        a[k] = f.div(&num, &den);
        let xs = mutate_x(self.coeffs, &seed.x_seed(), k)?;
        Ok(ASeed { b: xs.b, a, x: xs.x })
    }

    /// `x̂_j = x_j ∏_i a_i^{b_ij}` as an X-seed in the ambient field.
    pub fn hat(&self, seed: &ASeed<F::Elem, S::Elem>) -> XSeed<F::Elem> {
        let f = self.field;
        let n = seed.rank();
        let x = (0..n)
            .map(|j| {
                let mut v = (self.embed)(&seed.x[j]);
                for i in 0..n {
                    let bij = seed.b.get(i, j);
                    if bij != 0 {
                        v = f.mul(&v, &f.pow(&seed.a[i], bij));
                    }
                }
                v
            })
            .collect();
        XSeed { b: seed.b.clone(), x }
    }
}
