//! Reduced rational functions over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::gcd::poly_gcd;
use super::modular;
use super::poly::Polynomial;
use super::SemifieldError;

/// `num / den` with `gcd(num, den) = 1` (integer content included) and positive
/// leading coefficient of `den`. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

pub fn rf_canonicalize(num: Polynomial, den: Polynomial) -> Result<RationalFunction, SemifieldError> {
    if num.nvars() != den.nvars() {
        return Err(SemifieldError::Dimension { expected: num.nvars(), found: den.nvars() });
    }
    if den.is_zero() {
        return Err(SemifieldError::DivisionByZero);
    }
    let n = num.nvars();
    if num.is_zero() {
        return Ok(RationalFunction { num, den: Polynomial::one(n) });
    }
    let g = poly_gcd(&num, &den)?;
    let (mut num, mut den) = if g.is_one() {
        (num, den)
    } else {
        (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
    };
    if den.lc().is_negative() {
        num = num.neg();
        den = den.neg();
    }
    Ok(RationalFunction { num, den })
}

/// `(p / gcd, q / gcd)`.
fn cancel(p: &Polynomial, q: &Polynomial) -> Result<(Polynomial, Polynomial), SemifieldError> {
    let g = poly_gcd(p, q)?;
    if g.is_one() {
        return Ok((p.clone(), q.clone()));
    }
    Ok((p.div_exact(&g).expect("gcd divides"), q.div_exact(&g).expect("gcd divides")))
}

fn sign_normalized(num: Polynomial, den: Polynomial) -> RationalFunction {
    if den.lc().is_negative() {
        RationalFunction { num: num.neg(), den: den.neg() }
    } else {
        RationalFunction { num, den }
    }
}

impl RationalFunction {
    /// Trusts the caller that the pair is already reduced and sign-normalized.
    pub fn from_reduced_unchecked(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero() && den.lc().is_positive());
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: Polynomial::one(n) }
    }

    pub fn generator(nvars: usize, i: usize) -> Self {
        Self::from_poly(Polynomial::var(nvars, i))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::from_poly(Polynomial::constant(nvars, BigInt::from(c)))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Both factors are reduced, so only the cross gcds `(a, d)` and `(c, b)` of
    /// `a/b · c/d` can cancel.
    pub fn mul(&self, other: &Self) -> Result<Self, SemifieldError> {
        if self.nvars() != other.nvars() {
            return Err(SemifieldError::Dimension { expected: self.nvars(), found: other.nvars() });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(RationalFunction::zero(self.nvars()));
        }
        let (a, d) = cancel(&self.num, &other.den)?;
        let (c, b) = cancel(&other.num, &self.den)?;
        Ok(sign_normalized(a.try_mul(&c)?, b.try_mul(&d)?))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SemifieldError> {
        self.mul(&other.inv()?)
    }

    /// With `g = gcd(b, d)`, `a/b + c/d = (a d' + c b') / (b' d' g)`; a common factor
    /// of the new numerator and denominator can only divide `g`.
    pub fn add(&self, other: &Self) -> Result<Self, SemifieldError> {
        if self.nvars() != other.nvars() {
            return Err(SemifieldError::Dimension { expected: self.nvars(), found: other.nvars() });
        }
        if self.den == other.den {
            return rf_canonicalize(self.num.try_add(&other.num)?, self.den.clone());
        }
        let g = poly_gcd(&self.den, &other.den)?;
        if g.is_one() {
            let n = self.num.try_mul(&other.den)?.try_add(&other.num.try_mul(&self.den)?)?;
            if n.is_zero() {
                return Ok(RationalFunction::zero(self.nvars()));
            }
            return Ok(sign_normalized(n, self.den.try_mul(&other.den)?));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let t = self.num.try_mul(&d1)?.try_add(&other.num.try_mul(&b1)?)?;
        if t.is_zero() {
            return Ok(RationalFunction::zero(self.nvars()));
        }
        let (t, g) = cancel(&t, &g)?;
        Ok(sign_normalized(t, b1.try_mul(&d1)?.try_mul(&g)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SemifieldError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, SemifieldError> {
        if self.num.is_zero() {
            return Err(SemifieldError::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RationalFunction { num, den })
    }

    pub fn pow(&self, e: i64) -> Result<Self, SemifieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        // Powers of a reduced fraction stay reduced; only the sign needs care.
        let (num, den) = (base.num.pow(k), base.den.pow(k));
        Ok(RationalFunction { num, den })
    }

    /// Evaluation at a rational point; `None` when the denominator vanishes.
    pub fn eval(&self, pt: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval_rational(pt);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_rational(pt) / d)
        }
    }

    /// Residue mod p at a point; `None` when the denominator vanishes there.
    pub fn eval_mod(&self, pt: &[u64]) -> Option<u64> {
        let d = self.den.eval_mod(pt);
        if d == 0 {
            None
        } else {
            Some(modular::mul(self.num.eval_mod(pt), modular::inv(d)))
        }
    }

    /// Total degree of numerator and denominator, and the largest coefficient size in bits.
    pub fn size_stats(&self) -> (u32, u32, u64) {
        (self.num.total_degree(), self.den.total_degree(), self.num.max_coeff_bits().max(self.den.max_coeff_bits()))
    }

    pub fn encode(&self, out: &mut Vec<u8>) {
        self.num.encode(out);
        self.den.encode(out);
    }

    /// Substitutes each variable by the given rational function (all in a common ring).
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<RationalFunction, SemifieldError> {
        let ev = |p: &Polynomial| -> Result<RationalFunction, SemifieldError> {
            let m = images.first().map(|r| r.nvars()).unwrap_or(0);
            let mut acc = RationalFunction::from_poly(Polynomial::zero(m));
            for (e, c) in p.terms() {
                let mut t = RationalFunction::from_poly(Polynomial::constant(m, c.clone()));
                for (i, &ei) in e.iter().enumerate() {
                    if ei > 0 {
                        t = t.mul(&images[i].pow(ei as i64)?)?;
                    }
                }
                acc = acc.add(&t)?;
            }
            Ok(acc)
        };
        ev(&self.num)?.div(&ev(&self.den)?)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.len() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct RfJson {
    num: Polynomial,
    den: Polynomial,
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RfJson { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = RfJson::deserialize(d)?;
        let n = j.num.nvars().max(j.den.nvars());
        let num = j.num.with_nvars(n).map_err(D::Error::custom)?;
        let den = j.den.with_nvars(n).map_err(D::Error::custom)?;
        rf_canonicalize(num, den).map_err(D::Error::custom)
    }
}

impl RationalFunction {
    /// Re-declares the variable count of a constant value (needed after deserialization).
    pub fn with_nvars(self, n: usize) -> Result<Self, SemifieldError> {
        if self.nvars() == n {
            return Ok(self);
        }
        let widen = |p: &Polynomial| -> Result<Polynomial, SemifieldError> {
            match p.constant_value() {
                Some(c) => Ok(Polynomial::constant(n, c)),
                None => Err(SemifieldError::Dimension { expected: n, found: p.nvars() }),
            }
        };
        Ok(RationalFunction { num: widen(&self.num)?, den: widen(&self.den)? })
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunction { num: Polynomial::zero(nvars), den: Polynomial::one(nvars) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::poly::{int, x};

    #[test]
    fn sum_of_cubes_reduces() {
        let (a, b) = (x(2, 0), x(2, 1));
        let num = &(&(&a * &a) * &a) + &(&(&b * &b) * &b);
        let r = rf_canonicalize(num, &a + &b).unwrap();
        let expect = &(&(&a * &a) - &(&a * &b)) + &(&b * &b);
        assert_eq!(r.num(), &expect);
        assert!(r.den().is_one());
    }

    #[test]
    fn content_and_sign() {
        let a = x(1, 0);
        let r = rf_canonicalize(&(&int(1, 2) * &a) + &int(1, 2), int(1, 4)).unwrap();
        assert_eq!(r.num(), &(&a + &int(1, 1)));
        assert_eq!(r.den(), &int(1, 2));
        let r = rf_canonicalize(&a + &int(1, 1), int(1, -1)).unwrap();
        assert_eq!(r.num(), &(&a.neg() - &int(1, 1)));
        assert!(r.den().is_one());
    }

    #[test]
    fn zero_denominator() {
        assert!(matches!(rf_canonicalize(int(1, 1), Polynomial::zero(1)), Err(SemifieldError::DivisionByZero)));
    }

    #[test]
    fn json_roundtrip() {
        let a = x(2, 0);
        let r = rf_canonicalize(&a + &int(2, 1), x(2, 1)).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":[["1",[1,0]],["1",[0,0]]],"den":[["1",[0,1]]]}"#);
        let back: RationalFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
