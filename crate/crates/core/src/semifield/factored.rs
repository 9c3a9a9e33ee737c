//! Factored rational functions over a shared coprime basis.
//!
//! A value is `c · x^m · ∏ b_i^{e_i}` with `c` rational, `m` an integer exponent vector
//! and `b_i` elements of a [`FactorBasis`]. Products and inverses never touch
//! polynomials; a sum strips the common part, expands the two cofactors and reduces
//! the result against the basis by trial division. Full gcds only run when a new
//! polynomial shares a factor with an existing basis element.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::gcd::{cert_point, gcd_primitive};
use super::modular;
use super::poly::{Exps, Polynomial};
use super::ratfunc::RationalFunction;
use super::value::Semifield;

pub type FactorExps = SmallVec<[(u32, i32); 6]>;

struct Entry {
    poly: Polynomial,
    degrees: Vec<u32>,
    lead: Exps,
    trail: Exps,
    /// Univariate image in each variable at `cert_point(v, 0)`; empty when absent.
    images: Vec<Vec<u64>>,
    refined: Option<FactorExps>,
}

#[derive(Default)]
struct BasisInner {
    entries: Vec<Entry>,
    active: Vec<u32>,
    lookup: HashMap<Polynomial, u32>,
}

/// Pairwise-coprime primitive polynomials with positive leading coefficient and no
/// monomial factor. Concurrent reads, exclusive inserts.
pub struct FactorBasis {
    nvars: usize,
    points: Vec<Vec<u64>>,
    inner: RwLock<BasisInner>,
    splits: AtomicU64,
}

/// Result of reducing a polynomial against the basis without inserting anything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReduction {
    /// Signed integer content.
    pub content: BigInt,
    pub mono: Exps,
    pub exps: Vec<(u32, i32)>,
    /// Primitive, positive leading coefficient, not divisible by any basis element.
    pub cofactor: Polynomial,
}

struct Images<'a> {
    p: &'a Polynomial,
    points: &'a [Vec<u64>],
    cache: Vec<Option<Vec<u64>>>,
}

impl<'a> Images<'a> {
    fn new(p: &'a Polynomial, points: &'a [Vec<u64>]) -> Self {
        Images { p, points, cache: vec![None; p.nvars()] }
    }

    fn get(&mut self, v: usize) -> &[u64] {
        if self.cache[v].is_none() {
            self.cache[v] = Some(self.p.univariate_image(v, &self.points[v]));
        }
        self.cache[v].as_deref().unwrap()
    }
}

fn exps_divide(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

impl FactorBasis {
    pub fn new(nvars: usize) -> Self {
        let points = (0..nvars).map(|v| cert_point(nvars, v, 0)).collect();
        FactorBasis { nvars, points, inner: RwLock::new(BasisInner::default()), splits: AtomicU64::new(0) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of element splits so far; values built before a split need renormalizing.
    pub fn epoch(&self) -> u64 {
        self.splits.load(Ordering::Acquire)
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn poly(&self, idx: u32) -> Polynomial {
        self.inner.read().unwrap().entries[idx as usize].poly.clone()
    }

    /// Active elements in index order.
    pub fn elements(&self) -> Vec<(u32, Polynomial)> {
        let g = self.inner.read().unwrap();
        let mut v: Vec<(u32, Polynomial)> = g.active.iter().map(|&i| (i, g.entries[i as usize].poly.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    fn make_entry(&self, poly: Polynomial) -> Entry {
        let degrees = poly.degrees();
        let lead = poly.terms()[0].0.clone();
        let trail = poly.terms()[poly.len() - 1].0.clone();
        let images = (0..self.nvars)
            .map(|v| if degrees[v] > 0 { poly.univariate_image(v, &self.points[v]) } else { Vec::new() })
            .collect();
        Entry { poly, degrees, lead, trail, images, refined: None }
    }

    fn may_divide(e: &Entry, r: &Polynomial, rdeg: &[u32], rimg: &mut Images<'_>) -> bool {
        if e.degrees.iter().zip(rdeg).any(|(a, b)| a > b) {
            return false;
        }
        if !exps_divide(&e.lead, &r.terms()[0].0) || !exps_divide(&e.trail, &r.terms()[r.len() - 1].0) {
            return false;
        }
        if let Some(v) = e.degrees.iter().position(|&d| d > 0) {
            let bi = &e.images[v];
            if !bi.is_empty() && !modular::rem(rimg.get(v), bi).is_empty() {
                return false;
            }
        }
        true
    }

    fn trial(&self, g: &BasisInner, mut r: Polynomial) -> (Vec<(u32, i32)>, Polynomial) {
        let mut out = Vec::new();
        if r.is_constant() {
            return (out, r);
        }
        if let Some(&i) = g.lookup.get(&r) {
            return (vec![(i, 1)], Polynomial::one(self.nvars));
        }
        for &idx in &g.active {
            if r.is_constant() {
                break;
            }
            let e = &g.entries[idx as usize];
            let mut k = 0;
            loop {
                let rdeg = r.degrees();
                let divisible = {
                    let mut imgs = Images::new(&r, &self.points);
                    Self::may_divide(e, &r, &rdeg, &mut imgs)
                };
                if !divisible {
                    break;
                }
                match r.div_exact(&e.poly) {
                    Some(q) => {
                        r = q;
                        k += 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                out.push((idx, k));
            }
        }
        (out, r)
    }

    /// Splits `p = content · x^mono · ∏ b^e · cofactor` against the current basis.
    pub fn factor_reduce(&self, p: &Polynomial) -> FactorReduction {
        assert!(!p.is_zero(), "factor_reduce of the zero polynomial");
        let mono = p.monomial_content();
        let (content, prim) = p.div_monomial(&mono).primitive_part();
        let g = self.inner.read().unwrap();
        let (exps, cofactor) = self.trial(&g, prim);
        FactorReduction { content, mono, exps, cofactor }
    }

    /// Factors a primitive, positive, monomial-free polynomial over the basis,
    /// inserting (and splitting) as needed. The result may mention refined indices
    /// only if another thread splits concurrently; callers normalize.
    pub fn factor(&self, p: Polynomial) -> FactorExps {
        if p.is_constant() {
            return FactorExps::new();
        }
        let (mut exps, cof) = {
            let g = self.inner.read().unwrap();
            self.trial(&g, p)
        };
        if !cof.is_constant() {
            let mut g = self.inner.write().unwrap();
            let more = self.factor_locked(&mut g, cof);
            exps.extend(more);
        }
        merge(exps)
    }

    fn factor_locked(&self, g: &mut BasisInner, p: Polynomial) -> Vec<(u32, i32)> {
        let (mut exps, cof) = self.trial(g, p);
        if !cof.is_constant() {
            exps.extend(self.insert_locked(g, cof));
        }
        exps
    }

    fn coprime_by_images(&self, e: &Entry, rdeg: &[u32], rimg: &mut Images<'_>) -> bool {
        for v in 0..self.nvars {
            if rdeg[v] == 0 || e.degrees[v] == 0 {
                continue;
            }
            let ri = rimg.get(v);
            if ri.len() != rdeg[v] as usize + 1 {
                return false;
            }
            if modular::gcd(ri, &e.images[v]).len() != 1 {
                return false;
            }
        }
        true
    }

    fn insert_locked(&self, g: &mut BasisInner, r: Polynomial) -> Vec<(u32, i32)> {
        let rdeg = r.degrees();
        let mut split: Option<(u32, Polynomial)> = None;
        {
            let mut imgs = Images::new(&r, &self.points);
            for &idx in &g.active {
                let e = &g.entries[idx as usize];
                if self.coprime_by_images(e, &rdeg, &mut imgs) {
                    continue;
                }
                let c = gcd_primitive(&r, &e.poly);
                if !c.is_constant() {
                    split = Some((idx, c));
                    break;
                }
            }
        }
        match split {
            None => {
                let idx = g.entries.len() as u32;
                g.lookup.insert(r.clone(), idx);
                let entry = self.make_entry(r);
                g.entries.push(entry);
                g.active.push(idx);
                vec![(idx, 1)]
            }
            Some((idx, c)) => {
                let b = g.entries[idx as usize].poly.clone();
                let h = b.div_exact(&c).expect("gcd divides basis element");
                g.active.retain(|&i| i != idx);
                g.lookup.remove(&b);
                let mut parts = self.factor_locked(g, c);
                parts.extend(self.factor_locked(g, h));
                g.entries[idx as usize].refined = Some(merge(parts));
                self.splits.fetch_add(1, Ordering::AcqRel);
                self.factor_locked(g, r)
            }
        }
    }

    fn expand_index(g: &BasisInner, idx: u32, e: i32, out: &mut Vec<(u32, i32)>) {
        match &g.entries[idx as usize].refined {
            None => out.push((idx, e)),
            Some(parts) => {
                for &(j, k) in parts {
                    Self::expand_index(g, j, e * k, out);
                }
            }
        }
    }

    /// Rewrites factor lists in terms of active elements only.
    pub fn normalize_exps(&self, f: &FactorExps) -> FactorExps {
        if self.epoch() == 0 {
            return f.clone();
        }
        let g = self.inner.read().unwrap();
        if f.iter().all(|(i, _)| g.entries[*i as usize].refined.is_none()) {
            return f.clone();
        }
        let mut out = Vec::new();
        for &(i, e) in f {
            Self::expand_index(&g, i, e, &mut out);
        }
        merge(out)
    }

    /// Product of `b_i^{e_i}` over the given nonnegative exponents.
    pub fn expand(&self, f: &[(u32, i32)]) -> Polynomial {
        let g = self.inner.read().unwrap();
        let mut acc = Polynomial::one(self.nvars);
        for &(i, e) in f {
            debug_assert!(e >= 0);
            acc = &acc * &g.entries[i as usize].poly.pow(e as u32);
        }
        acc
    }

    pub fn max_element_terms(&self) -> usize {
        let g = self.inner.read().unwrap();
        g.active.iter().map(|&i| g.entries[i as usize].poly.len()).max().unwrap_or(0)
    }
}

fn merge(mut v: Vec<(u32, i32)>) -> FactorExps {
    v.sort_unstable_by_key(|e| e.0);
    let mut out = FactorExps::new();
    for (i, e) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += e,
            _ => out.push((i, e)),
        }
        if out.last().is_some_and(|l| l.1 == 0) {
            out.pop();
        }
    }
    out
}

/// `coeff · x^mono · ∏ basis^factors`, nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Factored {
    pub coeff: BigRational,
    pub mono: SmallVec<[i32; 8]>,
    pub factors: FactorExps,
}

impl Factored {
    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.mono.iter().all(|&e| e == 0) && self.factors.is_empty()
    }
}

/// Universal semifield (equivalently, the field of rational functions on nonzero
/// values) realized on [`Factored`] values sharing one basis.
#[derive(Clone)]
pub struct FactoredField {
    basis: Arc<FactorBasis>,
}

impl FactoredField {
    pub fn new(nvars: usize) -> Self {
        FactoredField { basis: Arc::new(FactorBasis::new(nvars)) }
    }

    pub fn basis(&self) -> &Arc<FactorBasis> {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.basis.nvars
    }

    pub fn generator(&self, i: usize) -> Factored {
        let mut mono: SmallVec<[i32; 8]> = SmallVec::from_elem(0, self.nvars());
        mono[i] = 1;
        Factored { coeff: BigRational::one(), mono, factors: FactorExps::new() }
    }

    pub fn constant(&self, c: BigRational) -> Factored {
        assert!(!c.is_zero());
        Factored { coeff: c, mono: SmallVec::from_elem(0, self.nvars()), factors: FactorExps::new() }
    }

    pub fn normalize(&self, a: &Factored) -> Factored {
        let f = self.basis.normalize_exps(&a.factors);
        if f == a.factors {
            a.clone()
        } else {
            Factored { coeff: a.coeff.clone(), mono: a.mono.clone(), factors: f }
        }
    }

    fn from_poly(&self, p: &Polynomial) -> Factored {
        let mono = p.monomial_content();
        let (content, prim) = p.div_monomial(&mono).primitive_part();
        let factors = self.basis.factor(prim);
        let f = Factored {
            coeff: BigRational::from_integer(content),
            mono: mono.iter().map(|&e| e as i32).collect(),
            factors,
        };
        self.normalize(&f)
    }

    pub fn from_rational_function(&self, r: &RationalFunction) -> Factored {
        assert!(!r.is_zero(), "factored values are nonzero");
        let n = self.from_poly(r.num());
        let d = self.from_poly(r.den());
        self.mul(&n, &self.inv(&d))
    }

    /// Splits a value into numerator and denominator polynomials. The pair is already
    /// reduced because basis elements are coprime to each other and to monomials.
    pub fn to_rational_function(&self, a: &Factored) -> RationalFunction {
        let a = self.normalize(a);
        let n = self.nvars();
        let pos: Vec<(u32, i32)> = a.factors.iter().filter(|f| f.1 > 0).copied().collect();
        let neg: Vec<(u32, i32)> = a.factors.iter().filter(|f| f.1 < 0).map(|&(i, e)| (i, -e)).collect();
        let mp: Exps = a.mono.iter().map(|&e| e.max(0) as u32).collect();
        let mn: Exps = a.mono.iter().map(|&e| (-e).max(0) as u32).collect();
        let num = self.basis.expand(&pos).mul_term(&mp, a.coeff.numer());
        let den = self.basis.expand(&neg).mul_term(&mn, a.coeff.denom());
        debug_assert_eq!(num.nvars(), n);
        RationalFunction::from_reduced_unchecked(num, den)
    }

    /// Sum of two values; panics if it vanishes (never the case for subtraction-free inputs).
    pub fn add(&self, a: &Factored, b: &Factored) -> Factored {
        let a = self.normalize(a);
        let b = self.normalize(b);
        let n = self.nvars();
        let gm: SmallVec<[i32; 8]> = a.mono.iter().zip(b.mono.iter()).map(|(x, y)| *x.min(y)).collect();
        let mut gf: Vec<(u32, i32)> = Vec::new();
        let (mut ra, mut rb): (Vec<(u32, i32)>, Vec<(u32, i32)>) = (Vec::new(), Vec::new());
        let (mut i, mut j) = (0, 0);
        while i < a.factors.len() || j < b.factors.len() {
            let ia = a.factors.get(i).map(|f| f.0).unwrap_or(u32::MAX);
            let ib = b.factors.get(j).map(|f| f.0).unwrap_or(u32::MAX);
            let (idx, ea, eb) = if ia == ib {
                i += 1;
                j += 1;
                (ia, a.factors[i - 1].1, b.factors[j - 1].1)
            } else if ia < ib {
                i += 1;
                (ia, a.factors[i - 1].1, 0)
            } else {
                j += 1;
                (ib, 0, b.factors[j - 1].1)
            };
            let m = ea.min(eb);
            if m != 0 {
                gf.push((idx, m));
            }
            if ea - m > 0 {
                ra.push((idx, ea - m));
            }
            if eb - m > 0 {
                rb.push((idx, eb - m));
            }
        }
        let l = a.coeff.denom().lcm(b.coeff.denom());
        let ca = a.coeff.numer() * (&l / a.coeff.denom());
        let cb = b.coeff.numer() * (&l / b.coeff.denom());
        let ma: Exps = a.mono.iter().zip(gm.iter()).map(|(x, g)| (x - g) as u32).collect();
        let mb: Exps = b.mono.iter().zip(gm.iter()).map(|(x, g)| (x - g) as u32).collect();
        let pa = self.basis.expand(&ra).mul_term(&ma, &ca);
        let pb = self.basis.expand(&rb).mul_term(&mb, &cb);
        let s = &pa + &pb;
        assert!(!s.is_zero(), "sum of factored values vanished");
        debug_assert_eq!(s.nvars(), n);
        let sf = self.from_poly(&s);
        let g = Factored { coeff: BigRational::new(BigInt::one(), l), mono: gm, factors: merge(gf) };
        self.mul(&g, &sf)
    }
}

impl Semifield for FactoredField {
    type Elem = Factored;

    fn one(&self) -> Factored {
        self.constant(BigRational::one())
    }

    fn mul(&self, a: &Factored, b: &Factored) -> Factored {
        let mut v: Vec<(u32, i32)> = a.factors.iter().copied().collect();
        v.extend(b.factors.iter().copied());
        let f = Factored {
            coeff: &a.coeff * &b.coeff,
            mono: a.mono.iter().zip(b.mono.iter()).map(|(x, y)| x + y).collect(),
            factors: merge(v),
        };
        self.normalize(&f)
    }

    fn inv(&self, a: &Factored) -> Factored {
        Factored {
            coeff: a.coeff.recip(),
            mono: a.mono.iter().map(|e| -e).collect(),
            factors: a.factors.iter().map(|&(i, e)| (i, -e)).collect(),
        }
    }

    fn oplus(&self, a: &Factored, b: &Factored) -> Factored {
        self.add(a, b)
    }

    fn epoch(&self) -> u64 {
        self.basis.epoch()
    }

    fn normalize(&self, a: &Factored) -> Factored {
        FactoredField::normalize(self, a)
    }

    fn pow(&self, a: &Factored, e: i64) -> Factored {
        let e32 = e as i32;
        let f = Factored {
            coeff: num_traits::pow::Pow::pow(&a.coeff, e32),
            mono: a.mono.iter().map(|x| x * e32).collect(),
            factors: if e32 == 0 { FactorExps::new() } else { a.factors.iter().map(|&(i, k)| (i, k * e32)).collect() },
        };
        self.normalize(&f)
    }

    fn encode(&self, a: &Factored, out: &mut Vec<u8>) {
        let a = self.normalize(a);
        for part in [a.coeff.numer(), a.coeff.denom()] {
            let b = part.to_signed_bytes_be();
            out.extend_from_slice(&(b.len() as u32).to_be_bytes());
            out.extend_from_slice(&b);
        }
        for e in &a.mono {
            out.extend_from_slice(&e.to_be_bytes());
        }
        out.extend_from_slice(&(a.factors.len() as u32).to_be_bytes());
        for (i, e) in &a.factors {
            out.extend_from_slice(&i.to_be_bytes());
            out.extend_from_slice(&e.to_be_bytes());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::poly::{int, x};

    #[test]
    fn trial_division_examples() {
        let basis = FactorBasis::new(1);
        let a = x(1, 0);
        let xp1 = &a + &int(1, 1);
        let xp2 = &a + &int(1, 2);
        basis.factor(xp1.clone());
        let r = basis.factor_reduce(&(&(&xp1 * &xp1) * &xp2));
        assert_eq!(r.exps, vec![(0, 2)]);
        assert_eq!(r.cofactor, xp2);
        let r = basis.factor_reduce(&int(1, 1));
        assert!(r.exps.is_empty() && r.cofactor.is_one());
        let r = basis.factor_reduce(&(&(&(&a * &a) + &(&int(1, 3) * &a)) + &int(1, 2)));
        assert_eq!(r.exps, vec![(0, 1)]);
        assert_eq!(r.cofactor, xp2);
    }

    #[test]
    fn insertion_splits_shared_factor() {
        let basis = FactorBasis::new(2);
        let (a, b) = (x(2, 0), x(2, 1));
        let p = &a + &b;
        let q = &a + &int(2, 1);
        basis.factor(&p * &q);
        assert_eq!(basis.len(), 1);
        let f = basis.factor(&q * &(&b + &int(2, 1)));
        assert_eq!(basis.epoch(), 1);
        assert_eq!(basis.len(), 3);
        let f = basis.normalize_exps(&f);
        assert_eq!(basis.expand(&f), &q * &(&b + &int(2, 1)));
        let els = basis.elements();
        for i in 0..els.len() {
            for j in i + 1..els.len() {
                assert!(crate::semifield::gcd::poly_gcd(&els[i].1, &els[j].1).unwrap().is_one());
            }
        }
    }

    #[test]
    fn add_matches_rational_functions() {
        let f = FactoredField::new(2);
        let (a, b) = (f.generator(0), f.generator(1));
        let s = f.add(&f.div(&a, &b), &f.one());
        let t = f.add(&f.inv(&s), &a);
        let r = f.to_rational_function(&t);
        let x1 = RationalFunction::generator(2, 0);
        let x2 = RationalFunction::generator(2, 1);
        let one = RationalFunction::one(2);
        let expect = x1.div(&x2).unwrap().add(&one).unwrap().inv().unwrap().add(&x1).unwrap();
        assert_eq!(r, expect);
        assert_eq!(f.from_rational_function(&expect), f.normalize(&t));
    }
}
