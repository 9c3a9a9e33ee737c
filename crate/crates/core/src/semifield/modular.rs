//! Arithmetic modulo a fixed 62-bit prime, plus dense univariate polynomials over it.
//!
//! Used for fingerprints and for rigorous negative certificates (non-divisibility,
//! coprimality), never to decide a positive answer on its own.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Largest prime below 2^62.
pub const P: u64 = 4_611_686_018_427_387_847;

pub fn reduce(c: &BigInt) -> u64 {
    if let Some(v) = c.to_i64() {
        return v.rem_euclid(P as i64) as u64;
    }
    c.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits in u64")
}

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> u64 {
    assert!(a % P != 0, "inverse of zero mod p");
    pow(a, P - 2)
}

/// Strips trailing zero coefficients (highest degree last).
pub fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree of a trimmed dense polynomial; `None` for zero.
pub fn degree(p: &[u64]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb_inv = inv(b[db]);
    while r.len() > db {
        let dr = r.len() - 1;
        let q = mul(r[dr], lb_inv);
        let shift = dr - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = sub(r[shift + i], mul(q, bi));
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd of two univariate polynomials mod p.
pub fn gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let li = inv(l);
        for c in x.iter_mut() {
            *c = mul(*c, li);
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_is_62_bit() {
        assert!(P < 1 << 62 && P > 1 << 61);
        assert_eq!(mul(inv(12345), 12345), 1);
    }

    #[test]
    fn univariate_gcd() {
        // (x+1)(x+2) and (x+1)(x+3)
        let a = vec![2, 3, 1];
        let b = vec![3, 4, 1];
        assert_eq!(gcd(&a, &b), vec![1, 1]);
        assert_eq!(rem(&a, &[1, 1]), Vec::<u64>::new());
    }
}
