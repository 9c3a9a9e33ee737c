//! Property suites: mutation involutions, hats against X-mutation, flips against
//! matrix mutation, semifield axioms, positivity and locality.

use std::collections::HashMap;
use std::sync::OnceLock;

use clusterx::explorer::{explore_dynkin, Coefficients, Limits};
use clusterx::seedcore::{dynkin_initial_matrix, mutate_x, APattern, ASeed, DynkinType, ExchangeMatrix, XSeed};
use clusterx::semifield::{Exact, LaurentMonomial, RationalFunction, Semifield, SemifieldValue};
use clusterx::surfaces::{MarkedPolygon, Surface};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

const TYPES: &[(&str, usize)] =
    &[("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 4), ("G", 2), ("F", 4)];

fn dynkin() -> impl Strategy<Value = DynkinType> {
    prop::sample::select(TYPES).prop_map(|(f, n)| DynkinType::parse(f, n).unwrap())
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Skew-symmetrizable `B = S D` from a skew-symmetric `S` and a positive diagonal `D`.
fn exchange_matrix() -> impl Strategy<Value = ExchangeMatrix> {
    (1usize..=5).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(-2i64..=2, n * (n - 1) / 2), prop::collection::vec(1i64..=2, n)).prop_map(
            |(n, upper, d)| {
                let mut s = vec![0i64; n * n];
                let mut it = upper.into_iter();
                for i in 0..n {
                    for j in i + 1..n {
                        let v = it.next().unwrap();
                        s[i * n + j] = v;
                        s[j * n + i] = -v;
                    }
                }
                let b = (0..n * n).map(|e| s[e] * d[e % n]).collect();
                ExchangeMatrix::new(n, b).unwrap()
            },
        )
    })
}

fn walk(s: &Exact, mut seed: XSeed<SemifieldValue>, steps: &[usize]) -> XSeed<SemifieldValue> {
    for &k in steps {
        seed = mutate_x(s, &seed, k % seed.rank()).unwrap();
    }
    seed
}

fn universal_root(t: DynkinType) -> (Exact, XSeed<SemifieldValue>) {
    let n = t.rank;
    let s = Exact::universal(n);
    let root = XSeed::new(dynkin_initial_matrix(t), (0..n).map(|i| s.generator(i)).collect()).unwrap();
    (s, root)
}

/// A-seed with principal coefficients, cluster variables in `Q(a_1..a_n, t_1..t_n)`.
struct Principal {
    n: usize,
    coeffs: Exact,
    field: Exact,
}

impl Principal {
    fn new(n: usize) -> Self {
        Principal { n, coeffs: Exact::tropical(n), field: Exact::universal(2 * n) }
    }

    fn embed(&self, v: &SemifieldValue) -> SemifieldValue {
        let m = v.as_tropical().unwrap();
        let f = &self.field;
        m.exps().iter().enumerate().fold(f.one(), |acc, (j, &e)| f.mul(&acc, &f.pow(&f.generator(self.n + j), e)))
    }

    fn run<R>(&self, body: impl FnOnce(&APattern<'_, Exact, Exact>) -> R) -> R {
        let embed = |v: &SemifieldValue| self.embed(v);
        body(&APattern { coeffs: &self.coeffs, field: &self.field, embed: &embed })
    }

    fn root(&self, b: ExchangeMatrix) -> ASeed<SemifieldValue, SemifieldValue> {
        let n = self.n;
        ASeed::new(
            b,
            (0..n).map(|i| self.field.generator(i)).collect(),
            (0..n).map(|i| self.coeffs.generator(i)).collect(),
        )
        .unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn matrix_mutation_is_involutive(b in exchange_matrix(), k in 0usize..5) {
        let k = k % b.rank();
        let once = b.mutate(k).unwrap();
        prop_assert_eq!(once.mutate(k).unwrap(), b.clone());
        // the symmetrizer survives mutation
        let d = b.symmetrizer().to_vec();
        let n = b.rank();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(d[i] * once.get(i, j), -d[j] * once.get(j, i));
            }
        }
    }

    #[test]
    fn tropical_x_mutation_is_involutive(b in exchange_matrix(), k in 0usize..5, exps in prop::collection::vec(-4i64..=4, 15)) {
        let n = b.rank();
        let s = Exact::tropical(3);
        let x: Vec<SemifieldValue> =
            (0..n).map(|i| SemifieldValue::Tropical(LaurentMonomial::new(exps[3 * i..3 * i + 3].to_vec()))).collect();
        let seed = XSeed::new(b, x).unwrap();
        let k = k % n;
        let back = mutate_x(&s, &mutate_x(&s, &seed, k).unwrap(), k).unwrap();
        prop_assert_eq!(back, seed);
    }

    #[test]
    fn universal_x_mutation_is_involutive(t in dynkin(), steps in prop::collection::vec(0usize..8, 0..6), k in 0usize..8) {
        let (s, root) = universal_root(t);
        let seed = walk(&s, root, &steps);
        let k = k % t.rank;
        let back = mutate_x(&s, &mutate_x(&s, &seed, k).unwrap(), k).unwrap();
        prop_assert_eq!(back, seed);
    }

    #[test]
    fn universal_x_mutation_on_random_matrices(b in exchange_matrix(), k in 0usize..5, j in 0usize..5) {
        let n = b.rank();
        let s = Exact::universal(n);
        let seed = XSeed::new(b, (0..n).map(|i| s.generator(i)).collect()).unwrap();
        let (k, j) = (k % n, j % n);
        let once = mutate_x(&s, &seed, k).unwrap();
        prop_assert_eq!(mutate_x(&s, &once, k).unwrap(), seed.clone());
        if n > 1 {
            let twice = mutate_x(&s, &once, j).unwrap();
            prop_assert_eq!(mutate_x(&s, &mutate_x(&s, &twice, j).unwrap(), k).unwrap(), seed);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn a_mutation_is_involutive(t in dynkin(), steps in prop::collection::vec(0usize..8, 0..4), k in 0usize..8) {
        let p = Principal::new(t.rank);
        p.run(|pat| {
            let mut seed = p.root(dynkin_initial_matrix(t));
            for &m in &steps {
                seed = pat.mutate(&seed, m % t.rank).unwrap();
            }
            let k = k % t.rank;
            let back = pat.mutate(&pat.mutate(&seed, k).unwrap(), k).unwrap();
            prop_assert_eq!(back, seed);
            Ok(())
        })?;
    }

    #[test]
    fn hats_commute_with_mutation(t in dynkin(), steps in prop::collection::vec(0usize..8, 0..4), k in 0usize..8) {
        let p = Principal::new(t.rank);
        p.run(|pat| {
            let mut seed = p.root(dynkin_initial_matrix(t));
            for &m in &steps {
                seed = pat.mutate(&seed, m % t.rank).unwrap();
            }
            let k = k % t.rank;
            let lhs = pat.hat(&pat.mutate(&seed, k).unwrap());
            let rhs = mutate_x(&p.field, &pat.hat(&seed), k).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })?;
    }
}

/// A subtraction-free expression in the generators with a direct evaluator.
#[derive(Clone, Debug)]
enum Expr {
    Gen(usize),
    Const(i64),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
}

const NVARS: usize = 3;

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(0..NVARS).prop_map(Expr::Gen), (1i64..=3).prop_map(Expr::Const)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
        ]
    })
}

fn build(s: &Exact, e: &Expr) -> SemifieldValue {
    match e {
        Expr::Gen(i) => s.generator(*i),
        Expr::Const(c) => SemifieldValue::Universal(RationalFunction::constant(NVARS, *c)),
        Expr::Mul(a, b) => s.mul(&build(s, a), &build(s, b)),
        Expr::Div(a, b) => s.div(&build(s, a), &build(s, b)),
        Expr::Add(a, b) => s.oplus(&build(s, a), &build(s, b)),
    }
}

fn direct(e: &Expr, pt: &[BigRational]) -> BigRational {
    match e {
        Expr::Gen(i) => pt[*i].clone(),
        Expr::Const(c) => BigRational::from_integer(BigInt::from(*c)),
        Expr::Mul(a, b) => direct(a, pt) * direct(b, pt),
        Expr::Div(a, b) => direct(a, pt) / direct(b, pt),
        Expr::Add(a, b) => direct(a, pt) + direct(b, pt),
    }
}

fn positive_point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((1i64..=9, 1i64..=9), n).prop_map(|v| v.into_iter().map(|(p, q)| ratio(p, q)).collect())
}

fn eval(v: &SemifieldValue, pt: &[BigRational]) -> BigRational {
    v.as_universal().unwrap().eval(pt).expect("denominator nonzero at a positive point")
}

fn monomial() -> impl Strategy<Value = SemifieldValue> {
    prop::collection::vec(-5i64..=5, NVARS).prop_map(|e| SemifieldValue::Tropical(LaurentMonomial::new(e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn universal_semifield_axioms(a in expr(), b in expr(), c in expr(), pt in positive_point(NVARS)) {
        let s = Exact::universal(NVARS);
        let (x, y, z) = (build(&s, &a), build(&s, &b), build(&s, &c));
        prop_assert_eq!(eval(&x, &pt), direct(&a, &pt));
        prop_assert_eq!(s.mul(&x, &y), s.mul(&y, &x));
        prop_assert_eq!(s.oplus(&x, &y), s.oplus(&y, &x));
        prop_assert_eq!(s.mul(&s.mul(&x, &y), &z), s.mul(&x, &s.mul(&y, &z)));
        prop_assert_eq!(s.oplus(&s.oplus(&x, &y), &z), s.oplus(&x, &s.oplus(&y, &z)));
        prop_assert_eq!(s.mul(&x, &s.oplus(&y, &z)), s.oplus(&s.mul(&x, &y), &s.mul(&x, &z)));
        prop_assert_eq!(s.mul(&x, &s.inv(&x)), s.one());
        prop_assert_eq!(s.pow(&x, 3), s.mul(&x, &s.mul(&x, &x)));
        prop_assert_eq!(s.pow(&x, -2), s.inv(&s.mul(&x, &x)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn tropical_semifield_axioms(x in monomial(), y in monomial(), z in monomial()) {
        let s = Exact::tropical(NVARS);
        prop_assert_eq!(s.mul(&x, &y), s.mul(&y, &x));
        prop_assert_eq!(s.oplus(&x, &y), s.oplus(&y, &x));
        prop_assert_eq!(s.mul(&s.mul(&x, &y), &z), s.mul(&x, &s.mul(&y, &z)));
        prop_assert_eq!(s.oplus(&s.oplus(&x, &y), &z), s.oplus(&x, &s.oplus(&y, &z)));
        prop_assert_eq!(s.mul(&x, &s.oplus(&y, &z)), s.oplus(&s.mul(&x, &y), &s.mul(&x, &z)));
        prop_assert_eq!(s.mul(&x, &s.inv(&x)), s.one());
        // ⊕ is the coordinatewise minimum of exponents
        let (ex, ey) = (x.as_tropical().unwrap().exps().to_vec(), y.as_tropical().unwrap().exps().to_vec());
        let min: Vec<i64> = ex.iter().zip(&ey).map(|(a, b)| *a.min(b)).collect();
        prop_assert_eq!(s.oplus(&x, &y), SemifieldValue::Tropical(LaurentMonomial::new(min)));
    }
}

fn xvar_tables() -> &'static HashMap<String, Vec<SemifieldValue>> {
    static TABLES: OnceLock<HashMap<String, Vec<SemifieldValue>>> = OnceLock::new();
    TABLES.get_or_init(|| {
        TYPES
            .iter()
            .map(|&(f, n)| {
                let t = DynkinType::parse(f, n).unwrap();
                let g = explore_dynkin(t, Coefficients::Universal, Limits::unlimited()).unwrap();
                (t.to_string(), g.xvars)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn universal_xvars_are_positive(t in dynkin(), pt in positive_point(4)) {
        let pt = &pt[..t.rank];
        for v in &xvar_tables()[&t.to_string()] {
            let val = eval(v, pt);
            prop_assert!(val.is_positive(), "{} at {:?} is {}", v, pt, val);
        }
    }

    #[test]
    fn locality_on_random_triangulations(
        kind in prop::sample::select(vec![("plain", 7usize), ("punctured", 4), ("punctured", 5), ("folded-plain", 8), ("folded-punctured", 4)]),
        steps in prop::collection::vec(0usize..8, 0..12),
    ) {
        let surface = Surface::new(MarkedPolygon::parse(kind.0, kind.1).unwrap()).unwrap();
        let n = surface.rank();
        let s = Exact::universal(n);
        let mut tri = surface.initial_triangulation();
        let mut seed = XSeed::new(surface.exchange_matrix(&tri), (0..n).map(|i| s.generator(i)).collect()).unwrap();
        for &k in &steps {
            let k = k % n;
            tri = surface.flip(&tri, k).unwrap().0;
            seed = mutate_x(&s, &seed, k).unwrap();
        }
        let quiver = surface.quiver(&tri);
        for k in 0..n {
            let flipped = surface.orbit(tri.orbits[k]);
            let (next, _) = surface.flip(&tri, k).unwrap();
            let next_quiver = surface.quiver(&next);
            let mutated = mutate_x(&s, &seed, k).unwrap();
            for j in (0..n).filter(|&j| j != k) {
                let q = surface.quadrilateral_from(&tri, &quiver, j);
                if flipped.iter().any(|a| q.quad.contains(a)) {
                    continue;
                }
                prop_assert_eq!(&mutated.x[j], &seed.x[j]);
                prop_assert_eq!(&surface.quadrilateral_from(&next, &next_quiver, j), &q);
            }
        }
    }
}

/// Every flip of every triangulation against matrix mutation, and flips are involutions.
#[test]
fn flips_commute_with_matrix_mutation() {
    let polygons = [
        MarkedPolygon::Plain(4),
        MarkedPolygon::Plain(7),
        MarkedPolygon::Plain(8),
        MarkedPolygon::Punctured(3),
        MarkedPolygon::Punctured(4),
        MarkedPolygon::Punctured(5),
        MarkedPolygon::FoldedPlain(6),
        MarkedPolygon::FoldedPlain(8),
        MarkedPolygon::FoldedPunctured(3),
        MarkedPolygon::FoldedPunctured(4),
    ];
    for p in polygons {
        let s = Surface::new(p).unwrap();
        let g = s.enumerate_triangulations(100_000).unwrap();
        let mut checked = 0;
        for t in &g.nodes {
            let b = s.exchange_matrix(t);
            for k in 0..t.rank() {
                let (next, _) = s.flip(t, k).unwrap();
                assert_eq!(s.exchange_matrix(&next), b.mutate(k).unwrap(), "{p}: flip {k} of {:?}", t.orbits);
                assert_eq!(&s.flip(&next, k).unwrap().0, t, "{p}");
                checked += 1;
            }
        }
        assert_eq!(checked, g.len() * s.rank());
    }
}
