//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Terms are kept sorted in descending graded-lex order (total degree first,
//! then lexicographic with `x1 > x2 > ...`), so the first term is the leading one.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::modular;
use super::SemifieldError;

pub type Exps = SmallVec<[u32; 8]>;

/// Graded-lex comparison of exponent vectors.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct GrlexKey(Exps);

impl Ord for GrlexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

impl PartialOrd for GrlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Exps, BigInt)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(SmallVec::from_elem(0, nvars), c)] }
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e: Exps = SmallVec::from_elem(0, nvars);
        e[i] = 1;
        Polynomial { nvars, terms: vec![(e, BigInt::one())] }
    }

    pub fn monomial(exps: &[u32], c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(exps.len());
        }
        Polynomial { nvars: exps.len(), terms: vec![(Exps::from_slice(exps), c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, SemifieldError>
    where
        I: IntoIterator<Item = (Exps, BigInt)>,
    {
        let mut acc: HashMap<Exps, BigInt> = HashMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(SemifieldError::Dimension { expected: nvars, found: e.len() });
            }
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Ok(Self::from_map(nvars, acc))
    }

    fn from_map(nvars: usize, acc: HashMap<Exps, BigInt>) -> Self {
        let mut terms: Vec<(Exps, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
        Polynomial { nvars, terms }
    }

    /// Assumes `terms` are already sorted descending and nonzero.
    fn from_sorted(nvars: usize, terms: Vec<(Exps, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| grlex(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exps, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.first().is_some_and(|(_, c)| c.is_one())
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Exps, BigInt)> {
        self.terms.first()
    }

    pub fn lc(&self) -> BigInt {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.nvars];
        for (e, _) in &self.terms {
            for (dv, &ev) in d.iter_mut().zip(e.iter()) {
                *dv = (*dv).max(ev);
            }
        }
        d
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    fn check_dims(&self, other: &Self) -> Result<(), SemifieldError> {
        if self.nvars != other.nvars {
            Err(SemifieldError::Dimension { expected: self.nvars, found: other.nvars })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SemifieldError> {
        self.check_dims(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SemifieldError> {
        self.check_dims(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SemifieldError> {
        self.check_dims(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                grlex(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted(self.nvars, out)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Exps, BigInt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let p = ca * cb;
                match acc.get_mut(&e) {
                    Some(c) => *c += p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// Multiplication by a single term keeps the order, so no re-sort is needed.
    pub fn mul_term(&self, exps: &[u32], c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms =
            self.terms.iter().map(|(e, k)| (e.iter().zip(exps.iter()).map(|(x, y)| x + y).collect(), k * c)).collect();
        Self::from_sorted(self.nvars, terms)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let zero: Exps = SmallVec::from_elem(0, self.nvars);
        self.mul_term(&zero, c)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        let terms = self.terms.iter().map(|(e, k)| (e.clone(), k / c)).collect();
        Self::from_sorted(self.nvars, terms)
    }

    /// Primitive part with positive leading coefficient, together with the signed content removed.
    pub fn primitive_part(&self) -> (BigInt, Self) {
        if self.is_zero() {
            return (BigInt::zero(), self.clone());
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        (c.clone(), self.div_scalar(&c))
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Exps {
        let mut m: Exps = match self.terms.first() {
            Some((e, _)) => e.clone(),
            None => return SmallVec::from_elem(0, self.nvars),
        };
        for (e, _) in &self.terms[1..] {
            for (mv, &ev) in m.iter_mut().zip(e.iter()) {
                *mv = (*mv).min(ev);
            }
        }
        m
    }

    /// Divides by the monomial `x^m`; the caller guarantees every term is divisible.
    pub fn div_monomial(&self, m: &[u32]) -> Self {
        if m.iter().all(|&x| x == 0) {
            return self.clone();
        }
        let terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(m.iter()).map(|(x, y)| x - y).collect(), c.clone())).collect();
        Self::from_sorted(self.nvars, terms)
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if other.terms.len() == 1 {
            let (eb, cb) = &other.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                if e.iter().zip(eb.iter()).any(|(x, y)| x < y) {
                    return None;
                }
                let (q, r) = c.div_rem(cb);
                if !r.is_zero() {
                    return None;
                }
                terms.push((e.iter().zip(eb.iter()).map(|(x, y)| x - y).collect(), q));
            }
            return Some(Self::from_sorted(self.nvars, terms));
        }
        let (da, db) = (self.degrees(), other.degrees());
        if da.iter().zip(db.iter()).any(|(a, b)| a < b) {
            return None;
        }
        let (lb, cb) = &other.terms[0];
        // Divisibility of the trailing terms is a cheap necessary condition.
        let (ta, tb) = (&self.terms[self.terms.len() - 1], &other.terms[other.terms.len() - 1]);
        if ta.0.iter().zip(tb.0.iter()).any(|(x, y)| x < y) || !(&ta.1 % &tb.1).is_zero() {
            return None;
        }
        let mut rem: BTreeMap<GrlexKey, BigInt> =
            self.terms.iter().map(|(e, c)| (GrlexKey(e.clone()), c.clone())).collect();
        let mut quot: Vec<(Exps, BigInt)> = Vec::new();
        while let Some((k, c)) = rem.pop_last() {
            let e = k.0;
            if e.iter().zip(lb.iter()).any(|(x, y)| x < y) {
                return None;
            }
            let (q, r) = c.div_rem(cb);
            if !r.is_zero() {
                return None;
            }
            let qe: Exps = e.iter().zip(lb.iter()).map(|(x, y)| x - y).collect();
            for (eb, cbt) in &other.terms[1..] {
                let te: Exps = qe.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let key = GrlexKey(te);
                let delta = &q * cbt;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quot.push((qe, q));
        }
        Some(Self::from_sorted(self.nvars, quot))
    }

    /// Coefficients in variable `v`: entry `d` is the coefficient of `x_v^d`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exps, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let d = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            buckets[d].push((e2, c.clone()));
        }
        // Removing one variable from a grlex-sorted list can break the order.
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
                Self::from_sorted(self.nvars, t)
            })
            .collect()
    }

    /// Inverse of [`Polynomial::coeffs_in`].
    pub fn from_coeffs_in(nvars: usize, v: usize, coeffs: &[Polynomial]) -> Self {
        let mut acc: HashMap<Exps, BigInt> = HashMap::new();
        for (d, p) in coeffs.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut e2 = e.clone();
                e2[v] += d as u32;
                *acc.entry(e2).or_insert_with(BigInt::zero) += c;
            }
        }
        Self::from_map(nvars, acc)
    }

    /// Evaluation modulo the fixed prime at a point of residues.
    pub fn eval_mod(&self, pt: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = modular::reduce(c);
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = modular::mul(t, modular::pow(pt[i], ei as u64));
                }
            }
            acc = modular::add(acc, t);
        }
        acc
    }

    /// Univariate image in `x_v` mod p, with every other variable substituted from `pt`.
    /// Index `d` of the result is the coefficient of `x_v^d`.
    pub fn univariate_image(&self, v: usize, pt: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut t = modular::reduce(c);
            for (i, &ei) in e.iter().enumerate() {
                if i != v && ei > 0 {
                    t = modular::mul(t, modular::pow(pt[i], ei as u64));
                }
            }
            let d = e[v] as usize;
            out[d] = modular::add(out[d], t);
        }
        modular::trim(&mut out);
        out
    }

    pub fn eval_rational(&self, pt: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t *= num_traits::pow(pt[i].clone(), ei as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Plain-data form used for serialization: `[coefficient, exponents]` in grlex order.
    pub fn to_pairs(&self) -> Vec<(String, Vec<u32>)> {
        self.terms.iter().map(|(e, c)| (c.to_string(), e.to_vec())).collect()
    }

    pub fn from_pairs(nvars: usize, pairs: &[(String, Vec<u32>)]) -> Result<Self, SemifieldError> {
        let mut terms = Vec::with_capacity(pairs.len());
        for (c, e) in pairs {
            let c: BigInt = c.parse().map_err(|_| SemifieldError::Parse(c.clone()))?;
            terms.push((Exps::from_slice(e), c));
        }
        Self::from_terms(nvars, terms)
    }

    /// Prefix-free byte encoding (used inside canonical seed keys).
    pub fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.terms.len() as u32).to_be_bytes());
        for (e, c) in &self.terms {
            for &x in e.iter() {
                out.extend_from_slice(&x.to_be_bytes());
            }
            let bytes = c.to_signed_bytes_be();
            out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
            out.extend_from_slice(&bytes);
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, x) })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

/// Deserialization needs the variable count, which is taken from the first term;
/// the zero polynomial deserializes with zero variables and is widened by callers.
impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(String, Vec<u32>)> = Vec::deserialize(d)?;
        let nvars = pairs.first().map(|p| p.1.len()).unwrap_or(0);
        Polynomial::from_pairs(nvars, &pairs).map_err(D::Error::custom)
    }
}

impl Polynomial {
    /// Re-declares the zero polynomial with `nvars` variables; other values must already match.
    pub fn with_nvars(self, nvars: usize) -> Result<Self, SemifieldError> {
        if self.is_zero() {
            Ok(Self::zero(nvars))
        } else if self.nvars == nvars {
            Ok(self)
        } else {
            Err(SemifieldError::Dimension { expected: nvars, found: self.nvars })
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$f(rhs).expect("polynomial dimension mismatch")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs).expect("polynomial dimension mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// Small helper for tests and examples: `x_i` as an owned polynomial.
pub fn x(nvars: usize, i: usize) -> Polynomial {
    Polynomial::var(nvars, i)
}

pub fn int(nvars: usize, c: i64) -> Polynomial {
    Polynomial::constant(nvars, BigInt::from(c))
}
