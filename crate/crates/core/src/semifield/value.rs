//! Tagged semifield values and the generic [`Semifield`] interface used by seeds.

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::ratfunc::{rf_canonicalize, RationalFunction};
use super::tropical::LaurentMonomial;
use super::SemifieldError;

/// One element of a semifield; every value in a pattern shares the variant.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemifieldValue {
    Universal(RationalFunction),
    Tropical(LaurentMonomial),
    /// The one-element semifield `{1}` with `1 ⊕ 1 = 1` (coefficient-free patterns).
    Trivial,
}

impl SemifieldValue {
    pub fn variant_name(&self) -> &'static str {
        match self {
            SemifieldValue::Universal(_) => "universal",
            SemifieldValue::Tropical(_) => "tropical",
            SemifieldValue::Trivial => "trivial",
        }
    }

    pub fn ngens(&self) -> usize {
        match self {
            SemifieldValue::Universal(r) => r.nvars(),
            SemifieldValue::Tropical(m) => m.ngens(),
            SemifieldValue::Trivial => 0,
        }
    }

    pub fn as_universal(&self) -> Option<&RationalFunction> {
        match self {
            SemifieldValue::Universal(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_tropical(&self) -> Option<&LaurentMonomial> {
        match self {
            SemifieldValue::Tropical(m) => Some(m),
            _ => None,
        }
    }

    pub fn encode(&self, out: &mut Vec<u8>) {
        match self {
            SemifieldValue::Universal(r) => {
                out.push(1);
                r.encode(out);
            }
            SemifieldValue::Tropical(m) => {
                out.push(2);
                m.encode(out);
            }
            SemifieldValue::Trivial => out.push(3),
        }
    }

    pub fn kind(&self) -> SemifieldKind {
        match self {
            SemifieldValue::Universal(r) => SemifieldKind::Universal { nvars: r.nvars() },
            SemifieldValue::Tropical(m) => SemifieldKind::Tropical { ngens: m.ngens() },
            SemifieldValue::Trivial => SemifieldKind::Trivial,
        }
    }
}

impl fmt::Display for SemifieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemifieldValue::Universal(r) => write!(f, "{r}"),
            SemifieldValue::Tropical(m) => write!(f, "{m}"),
            SemifieldValue::Trivial => write!(f, "1"),
        }
    }
}

impl fmt::Debug for SemifieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({self})", self.variant_name())
    }
}

fn mismatch(a: &SemifieldValue, b: &SemifieldValue) -> SemifieldError {
    SemifieldError::Variant { left: a.variant_name(), right: b.variant_name() }
}

pub fn sf_mul(a: &SemifieldValue, b: &SemifieldValue) -> Result<SemifieldValue, SemifieldError> {
    use SemifieldValue::*;
    match (a, b) {
        (Universal(x), Universal(y)) => Ok(Universal(x.mul(y)?)),
        (Tropical(x), Tropical(y)) => Ok(Tropical(x.mul(y)?)),
        (Trivial, Trivial) => Ok(Trivial),
        _ => Err(mismatch(a, b)),
    }
}

pub fn sf_inv(a: &SemifieldValue) -> Result<SemifieldValue, SemifieldError> {
    use SemifieldValue::*;
    match a {
        Universal(x) => Ok(Universal(x.inv()?)),
        Tropical(x) => Ok(Tropical(x.inv())),
        Trivial => Ok(Trivial),
    }
}

pub fn sf_oplus(a: &SemifieldValue, b: &SemifieldValue) -> Result<SemifieldValue, SemifieldError> {
    use SemifieldValue::*;
    match (a, b) {
        (Universal(x), Universal(y)) => Ok(Universal(x.add(y)?)),
        (Tropical(x), Tropical(y)) => Ok(Tropical(x.oplus(y)?)),
        (Trivial, Trivial) => Ok(Trivial),
        _ => Err(mismatch(a, b)),
    }
}

pub fn sf_pow(a: &SemifieldValue, e: i64) -> Result<SemifieldValue, SemifieldError> {
    use SemifieldValue::*;
    match a {
        Universal(x) => Ok(Universal(x.pow(e)?)),
        Tropical(x) => Ok(Tropical(x.pow(e))),
        Trivial => Ok(Trivial),
    }
}

/// Arithmetic context for seed values.
///
/// Implementations fix the semifield once; values handed to them are assumed to
/// belong to it (seed constructors validate this), so operations are infallible.
pub trait Semifield: Send + Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn oplus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Prefix-free canonical encoding; equal encodings iff equal values.
    fn encode(&self, a: &Self::Elem, out: &mut Vec<u8>);

    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let mut base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// Counter that changes whenever stored values may need [`Semifield::normalize`].
    fn epoch(&self) -> u64 {
        0
    }

    /// Brings a value built under an older epoch into current canonical form.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemifieldKind {
    Universal { nvars: usize },
    Tropical { ngens: usize },
    Trivial,
}

/// The reference implementation on [`SemifieldValue`]: every operation canonicalizes.
#[derive(Clone, Copy, Debug)]
pub struct Exact {
    pub kind: SemifieldKind,
}

impl Exact {
    pub fn universal(nvars: usize) -> Self {
        Exact { kind: SemifieldKind::Universal { nvars } }
    }

    pub fn tropical(ngens: usize) -> Self {
        Exact { kind: SemifieldKind::Tropical { ngens } }
    }

    pub fn trivial() -> Self {
        Exact { kind: SemifieldKind::Trivial }
    }

    pub fn generator(&self, i: usize) -> SemifieldValue {
        match self.kind {
            SemifieldKind::Universal { nvars } => SemifieldValue::Universal(RationalFunction::generator(nvars, i)),
            SemifieldKind::Tropical { ngens } => SemifieldValue::Tropical(LaurentMonomial::generator(ngens, i)),
            SemifieldKind::Trivial => SemifieldValue::Trivial,
        }
    }

    pub fn check(&self, v: &SemifieldValue) -> Result<(), SemifieldError> {
        if v.kind() == self.kind {
            Ok(())
        } else {
            Err(SemifieldError::Variant { left: v.variant_name(), right: kind_name(self.kind) })
        }
    }
}

fn kind_name(k: SemifieldKind) -> &'static str {
    match k {
        SemifieldKind::Universal { .. } => "universal",
        SemifieldKind::Tropical { .. } => "tropical",
        SemifieldKind::Trivial => "trivial",
    }
}

impl Semifield for Exact {
    type Elem = SemifieldValue;

    fn one(&self) -> SemifieldValue {
        match self.kind {
            SemifieldKind::Universal { nvars } => SemifieldValue::Universal(RationalFunction::one(nvars)),
            SemifieldKind::Tropical { ngens } => SemifieldValue::Tropical(LaurentMonomial::one(ngens)),
            SemifieldKind::Trivial => SemifieldValue::Trivial,
        }
    }

    fn mul(&self, a: &SemifieldValue, b: &SemifieldValue) -> SemifieldValue {
        sf_mul(a, b).expect("values belong to this semifield")
    }

    fn inv(&self, a: &SemifieldValue) -> SemifieldValue {
        sf_inv(a).expect("values belong to this semifield")
    }

    fn oplus(&self, a: &SemifieldValue, b: &SemifieldValue) -> SemifieldValue {
        sf_oplus(a, b).expect("values belong to this semifield")
    }

    fn pow(&self, a: &SemifieldValue, e: i64) -> SemifieldValue {
        sf_pow(a, e).expect("values belong to this semifield")
    }

    fn encode(&self, a: &SemifieldValue, out: &mut Vec<u8>) {
        a.encode(out);
    }
}

/// Builds a universal value from a numerator/denominator pair (convenience for tests).
pub fn universal(num: super::poly::Polynomial, den: super::poly::Polynomial) -> Result<SemifieldValue, SemifieldError> {
    Ok(SemifieldValue::Universal(rf_canonicalize(num, den)?))
}
