//! Multivariate gcd over the integers.
//!
//! A modular image test first tries to certify coprimality (the common case by far);
//! otherwise a recursive primitive remainder sequence runs in one shared variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modular;
use super::poly::{Exps, Polynomial};
use super::SemifieldError;

/// Evaluation points for the coprimality certificate: one point per (variable, attempt).
pub fn cert_point(nvars: usize, v: usize, attempt: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0F1_u64 ^ ((v as u64) << 20) ^ (attempt << 40));
    (0..nvars).map(|_| rng.gen_range(1..modular::P)).collect()
}

/// `true` only when `a` and `b` are provably coprime up to an integer constant.
///
/// For each variable `v` occurring in both, the images at a point where the leading
/// coefficient of `a` in `v` does not vanish must have a constant univariate gcd.
/// A common factor of positive degree in `v` would survive such a specialization.
pub fn certify_coprime(a: &Polynomial, b: &Polynomial) -> bool {
    let n = a.nvars();
    let (da, db) = (a.degrees(), b.degrees());
    'vars: for v in 0..n {
        if da[v] == 0 || db[v] == 0 {
            continue;
        }
        for attempt in 0..3 {
            let pt = cert_point(n, v, attempt);
            let ia = a.univariate_image(v, &pt);
            if ia.len() != da[v] as usize + 1 {
                continue;
            }
            let ib = b.univariate_image(v, &pt);
            if modular::gcd(&ia, &ib).len() == 1 {
                continue 'vars;
            }
            return false;
        }
        return false;
    }
    true
}

/// Gcd including the integer content and the common monomial factor.
/// The result has positive leading coefficient.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, SemifieldError> {
    if a.nvars() != b.nvars() {
        return Err(SemifieldError::Dimension { expected: a.nvars(), found: b.nvars() });
    }
    if a.is_zero() && b.is_zero() {
        return Err(SemifieldError::UndefinedGcd);
    }
    if a.is_zero() {
        return Ok(normalize_sign(b.clone()));
    }
    if b.is_zero() {
        return Ok(normalize_sign(a.clone()));
    }
    let n = a.nvars();
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let m: Exps = ma.iter().zip(mb.iter()).map(|(x, y)| *x.min(y)).collect();
    let c = a.content().gcd(&b.content());
    let (_, pa) = a.div_monomial(&ma).primitive_part();
    let (_, pb) = b.div_monomial(&mb).primitive_part();
    let g = gcd_primitive(&pa, &pb);
    Ok(g.mul_term(&m, &c).with_nvars(n).expect("same variable count"))
}

fn normalize_sign(p: Polynomial) -> Polynomial {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Gcd of two nonzero primitive polynomials; primitive with positive leading coefficient.
pub fn gcd_primitive(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    let a = normalize_sign(a.clone());
    let b = normalize_sign(b.clone());
    if a == b {
        return a;
    }
    // Monomial factors are handled separately so the remainder sequence stays small.
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let m: Exps = ma.iter().zip(mb.iter()).map(|(x, y)| *x.min(y)).collect();
    let has_mono = m.iter().any(|&x| x > 0);
    let (a, b) = if ma.iter().any(|&x| x > 0) || mb.iter().any(|&x| x > 0) {
        (a.div_monomial(&ma), b.div_monomial(&mb))
    } else {
        (a, b)
    };
    let core = gcd_no_monomial(&a, &b);
    if has_mono {
        core.mul_term(&m, &BigInt::one())
    } else {
        core
    }
}

fn gcd_no_monomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    if a.len() <= b.len() {
        if b.div_exact(a).is_some() {
            return a.clone();
        }
    } else if a.div_exact(b).is_some() {
        return b.clone();
    }
    if certify_coprime(a, b) {
        return Polynomial::one(n);
    }
    let (da, db) = (a.degrees(), b.degrees());
    // Prefer the shared variable of smallest combined degree.
    let v = match (0..n).filter(|&v| da[v] > 0 && db[v] > 0).min_by_key(|&v| (da[v] + db[v], v)) {
        Some(v) => v,
        None => return Polynomial::one(n),
    };
    let (ca, pa) = content_in(a, v);
    let (cb, pb) = content_in(b, v);
    let c = gcd_primitive(&ca, &cb);
    let g = prs(pa, pb, v);
    normalize_sign(&c * &g)
}

/// Content with respect to `v` (a polynomial free of `v`) and the matching primitive part.
pub fn content_in(p: &Polynomial, v: usize) -> (Polynomial, Polynomial) {
    let n = p.nvars();
    let coeffs = p.coeffs_in(v);
    let mut g: Option<Polynomial> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let next = match g {
            None => normalize_sign(c.primitive_part().1),
            Some(ref h) => gcd_primitive(h, &c.primitive_part().1),
        };
        let done = next.is_constant();
        g = Some(next);
        if done {
            break;
        }
    }
    let g = g.unwrap_or_else(|| Polynomial::one(n));
    if g.is_constant() {
        let (_, pp) = p.primitive_part();
        return (Polynomial::one(n), pp);
    }
    let q = p.div_exact(&g).expect("content divides");
    (g, normalize_sign(q.primitive_part().1))
}

fn lc_in(p: &Polynomial, v: usize) -> Polynomial {
    p.coeffs_in(v).pop().expect("nonzero polynomial")
}

/// Pseudo-remainder of `a` by `b` in variable `v`.
pub fn prem(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let n = a.nvars();
    let db = b.degree_in(v);
    let lb = lc_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = lc_in(&r, v);
        let mut shift: Exps = smallvec::SmallVec::from_elem(0, n);
        shift[v] = dr - db;
        let t = (&lr * b).mul_term(&shift, &BigInt::one());
        r = &(&lb * &r) - &t;
    }
    r
}

/// Primitive remainder sequence for polynomials primitive in `v`.
fn prs(a: Polynomial, b: Polynomial, v: usize) -> Polynomial {
    let n = a.nvars();
    let (mut r0, mut r1) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        if r1.degree_in(v) == 0 {
            return Polynomial::one(n);
        }
        let r = prem(&r0, &r1, v);
        if r.is_zero() {
            return normalize_sign(r1);
        }
        if r.degree_in(v) == 0 {
            return Polynomial::one(n);
        }
        r0 = r1;
        r1 = content_in(&r, v).1;
    }
}

/// Least common multiple with positive leading coefficient.
pub fn poly_lcm(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, SemifieldError> {
    let g = poly_gcd(a, b)?;
    let prod = a.try_mul(b)?;
    let l = prod.div_exact(&g).expect("gcd divides the product");
    Ok(normalize_sign(l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::poly::{int, x};

    #[test]
    fn difference_of_squares_and_square() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = &(&a * &a) - &(&b * &b);
        let q = &(&(&a * &a) + &(&int(2, 2) * &(&a * &b))) + &(&b * &b);
        assert_eq!(poly_gcd(&p, &q).unwrap(), &a + &b);
    }

    #[test]
    fn unit_and_content() {
        let a = x(1, 0);
        let p = &(&a * &a) + &int(1, 3);
        assert_eq!(poly_gcd(&p, &int(1, 1)).unwrap(), int(1, 1));
        let six_x = &int(1, 6) * &a;
        let four_x2 = &int(1, 4) * &(&a * &a);
        assert_eq!(poly_gcd(&six_x, &four_x2).unwrap(), &int(1, 2) * &a);
    }

    #[test]
    fn both_zero_rejected() {
        assert!(matches!(poly_gcd(&Polynomial::zero(2), &Polynomial::zero(2)), Err(SemifieldError::UndefinedGcd)));
    }

    #[test]
    fn hidden_common_factor_three_vars() {
        let n = 3;
        let (a, b, c) = (x(n, 0), x(n, 1), x(n, 2));
        let g = &(&(&a * &b) + &c) + &int(n, 1);
        let f1 = &(&a + &(&b * &c)) * &g;
        let f2 = &(&(&c * &c) + &a) * &g;
        assert_eq!(poly_gcd(&f1, &f2).unwrap(), g);
        assert!(!certify_coprime(&f1, &f2));
        assert!(certify_coprime(&(&a + &b), &(&b + &c)));
    }
}
