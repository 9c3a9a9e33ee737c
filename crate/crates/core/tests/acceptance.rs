//! Acceptance suite: one line per criterion, written past the test harness's
//! output capture so it appears in every `cargo test` log.
//!
//! Expected values are recomputed here from closed forms, not read from the
//! library. E7 and E8 universal counts run only with `CLUSTERX_ALLOW_LONG=1`.

use std::io::Write;
use std::time::Instant;

use clusterx::explorer::{
    count_xvars, count_xvars_from, exchange_graphs_coincide, exchangeable_pairs, explore_dynkin, Coefficients, Limits,
};
use clusterx::geometric::verify_distinctness;
use clusterx::seedcore::{dynkin_initial_matrix, mutate_x, DynkinType, ExchangeMatrix, XSeed};
use clusterx::semifield::{rf_canonicalize, Exact, Polynomial, Semifield, SemifieldValue};
use clusterx::surfaces::{closed_form_quad_count, half_disk_census, verify_bijection, MarkedPolygon, Surface};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

const LIMIT: usize = 250_000;

fn ty(f: &str, n: usize) -> DynkinType {
    DynkinType::parse(f, n).unwrap()
}

fn report(n: u32, ok: bool, what: &str, detail: &str, start: Instant) {
    let line = format!(
        "criterion {n}: {} {what} [{detail}] ({:.1}s)\n",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn long_runs() -> bool {
    std::env::var("CLUSTERX_ALLOW_LONG").is_ok_and(|v| v == "1")
}

fn c(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn universal_expected(f: &str, n: u64) -> u64 {
    match f {
        "A" => 2 * c(n + 3, 4),
        "B" | "C" => n * (n + 1) * (n * n + 2) / 3,
        "D" => n * (n - 1) * (n * n + 4 * n - 6) / 3,
        "E" => [770, 2100, 6240][n as usize - 6],
        "F" => 196,
        "G" => 16,
        _ => unreachable!(),
    }
}

fn principal_expected(f: &str, n: u64) -> u64 {
    match f {
        "A" => n * (n + 1),
        "B" | "C" => 2 * n * n,
        "D" => 2 * n * (n - 1),
        "E" => [72, 126, 240][n as usize - 6],
        "F" => 48,
        "G" => 12,
        _ => unreachable!(),
    }
}

const TABLE_TYPES: &[(&str, usize)] = &[
    ("A", 2),
    ("A", 3),
    ("A", 4),
    ("A", 5),
    ("A", 6),
    ("B", 2),
    ("B", 3),
    ("B", 4),
    ("C", 2),
    ("C", 3),
    ("C", 4),
    ("D", 4),
    ("D", 5),
    ("G", 2),
    ("F", 4),
    ("E", 6),
];

fn census(n: u32, coeffs: Coefficients, expected: fn(&str, u64) -> u64, extra: &[(&str, usize)]) {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut done = 0;
    for &(f, r) in TABLE_TYPES.iter().chain(extra) {
        let got = count_xvars(ty(f, r), coeffs, Limits::unlimited()).unwrap().count as u64;
        let want = expected(f, r as u64);
        if got != want {
            bad.push(format!("{f}{r}: {got} != {want}"));
        }
        done += 1;
    }
    let skipped = if coeffs == Coefficients::Universal && !long_runs() {
        "; E7, E8 skipped without CLUSTERX_ALLOW_LONG=1"
    } else {
        ""
    };
    let detail = if bad.is_empty() { format!("{done} types exact{skipped}") } else { bad.join(", ") };
    report(n, bad.is_empty(), &format!("{coeffs} X-variable counts"), &detail, start);
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_1_universal_counts() {
    let long: &[(&str, usize)] = if long_runs() { &[("E", 7), ("E", 8)] } else { &[] };
    census(1, Coefficients::Universal, universal_expected, long);
}

#[test]
fn criterion_2_principal_counts() {
    census(2, Coefficients::Principal, principal_expected, &[("E", 7), ("E", 8)]);
}

fn rf(num: Polynomial, den: Polynomial) -> SemifieldValue {
    SemifieldValue::Universal(rf_canonicalize(num, den).unwrap())
}

#[test]
fn criterion_3_degenerate_initial_cluster() {
    let start = Instant::now();
    let x = |i: usize| Polynomial::var(3, i);
    let one = || Polynomial::one(3);
    let b = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
    let e = Exact::universal(3);
    let s1 = XSeed::new(b.clone(), vec![rf(one(), x(1)), rf(x(0), x(2)), rf(x(1), one())]).unwrap();
    let s2 = XSeed::new(b, (0..3).map(|i| e.generator(i)).collect()).unwrap();
    let n1 = count_xvars_from(&s1, Limits::unlimited()).unwrap().count;
    let n2 = count_xvars_from(&s2, Limits::unlimited()).unwrap().count;
    // first mutations, term by term
    let m1 = mutate_x(&e, &s1, 0).unwrap();
    let m2 = mutate_x(&e, &s2, 0).unwrap();
    let plus = &one() + &x(1);
    let m1_ok = m1.x == vec![rf(x(1), one()), rf(x(0), &x(2) * &plus), rf(x(1), one())];
    let m2_ok = m2.x == vec![rf(one(), x(0)), rf(&x(0) * &x(1), &one() + &x(0)), rf(x(2), one())];
    let ok = n1 == 18 && n2 == 30 && m1_ok && m2_ok;
    let detail = format!("degenerate cluster {n1}, generic cluster {n2}, first mutations match: {}", m1_ok && m2_ok);
    report(3, ok, "A3 pattern with a degenerate initial cluster", &detail, start);
    assert!(ok);
}

#[test]
fn criterion_4_quadrilateral_counts() {
    let start = Instant::now();
    let mut polygons = Vec::new();
    for n in 1..=6 {
        polygons.push(MarkedPolygon::Plain(n + 3));
    }
    for n in 3..=6 {
        polygons.push(MarkedPolygon::Punctured(n));
    }
    for n in 1..=4 {
        polygons.push(MarkedPolygon::FoldedPlain(2 * n + 2));
    }
    // B_n starts at rank 2
    for n in 2..=4 {
        polygons.push(MarkedPolygon::FoldedPunctured(n + 1));
    }
    let mut bad = Vec::new();
    for p in &polygons {
        let got = Surface::new(*p).unwrap().enumerate_quadrilaterals(LIMIT).unwrap().len() as u64;
        let want = 2 * closed_form_quad_count(*p).unwrap();
        if got != want {
            bad.push(format!("{p}: {got} != {want}"));
        }
    }
    for n in 1..=4usize {
        let h = half_disk_census(n, LIMIT).unwrap();
        // |Q1| = (C(2n+2, 4) - C(n+1, 2)) / 2, recomputed here
        let q1 = (c(2 * n as u64 + 2, 4) - c(n as u64 + 1, 2)) / 2;
        if !h.passed() || h.q1 as u64 != q1 {
            bad.push(format!("half disk n={n}: Q1 {} (want {q1}), report {h:?}", h.q1));
        }
    }
    let detail = if bad.is_empty() { format!("{} polygons, half-disk n=1..4", polygons.len()) } else { bad.join("; ") };
    report(4, bad.is_empty(), "quadrilateral counts against closed forms", &detail, start);
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_5_bijection() {
    let start = Instant::now();
    let types = [("A", 2), ("A", 3), ("A", 4), ("A", 5), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 4), ("D", 5)];
    let mut bad = Vec::new();
    for (f, n) in types {
        let r = verify_bijection(ty(f, n), LIMIT).unwrap();
        if !r.passed() {
            bad.push(format!("{f}{n}: {:?}", r.counterexamples));
        }
    }
    let detail = if bad.is_empty() { format!("{} types", types.len()) } else { bad.join("; ") };
    report(5, bad.is_empty(), "quadrilaterals with diagonal <-> X-variables", &detail, start);
    assert!(bad.is_empty(), "{bad:?}");
}

/// Deterministic sweep of the property suites over whole exchange and flip graphs;
/// the randomized versions live in `properties.rs`.
#[test]
fn criterion_6_property_sweep() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut cases = 0usize;
    for (f, n) in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)] {
        let t = ty(f, n);
        let e = Exact::universal(n);
        let g = explore_dynkin(t, Coefficients::Universal, Limits::unlimited()).unwrap();
        let root = XSeed::new(dynkin_initial_matrix(t), (0..n).map(|i| e.generator(i)).collect()).unwrap();
        // involutivity along a spanning walk: every seed reached by a path from the root
        let mut frontier = vec![root];
        for _ in 0..3 {
            let mut next = Vec::new();
            for s in &frontier {
                for k in 0..n {
                    let m = mutate_x(&e, s, k).unwrap();
                    if mutate_x(&e, &m, k).unwrap() != *s || s.b.mutate(k).unwrap().mutate(k).unwrap() != s.b {
                        bad.push(format!("{t}: mutation {k} is not an involution"));
                    }
                    cases += 1;
                    next.push(m);
                }
            }
            frontier = next;
        }
        // positivity of every X-variable at a positive point
        let pt: Vec<BigRational> =
            (0..n).map(|i| BigRational::new(BigInt::from(i as i64 + 2), BigInt::from(3))).collect();
        for v in &g.xvars {
            let val = v.as_universal().unwrap().eval(&pt);
            if !val.is_some_and(|x| x.is_positive()) {
                bad.push(format!("{t}: {v} is not positive"));
            }
            cases += 1;
        }
    }
    // flips against matrix mutation over whole flip graphs, and locality
    for t in [ty("A", 4), ty("B", 3), ty("C", 3), ty("D", 5)] {
        let r = verify_bijection(t, LIMIT).unwrap();
        if !(r.flip_commutes && r.locality) {
            bad.push(format!("{t}: {:?}", r.counterexamples));
        }
        cases += r.triangulations * t.rank;
    }
    // semifield axioms on the generators and a few sums
    let e = Exact::universal(3);
    let vals: Vec<SemifieldValue> = vec![
        e.generator(0),
        e.generator(1),
        e.oplus(&e.generator(2), &e.one()),
        e.inv(&e.oplus(&e.generator(0), &e.generator(1))),
    ];
    for a in &vals {
        for b in &vals {
            for c in &vals {
                let dist = e.mul(a, &e.oplus(b, c)) == e.oplus(&e.mul(a, b), &e.mul(a, c));
                let assoc = e.oplus(&e.oplus(a, b), c) == e.oplus(a, &e.oplus(b, c));
                if !(dist && assoc && e.mul(a, b) == e.mul(b, a) && e.mul(a, &e.inv(a)) == e.one()) {
                    bad.push("semifield axiom".into());
                }
                cases += 1;
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{cases} cases, zero failures; randomized suites in properties.rs")
    } else {
        bad.join("; ")
    };
    report(6, bad.is_empty(), "mutation, flip, semifield, positivity and locality properties", &detail, start);
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_7_exchangeable_pairs() {
    let start = Instant::now();
    let types = [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 4), ("G", 2)];
    let mut bad = Vec::new();
    for (f, n) in types {
        let got = exchangeable_pairs(ty(f, n), Limits::unlimited()).unwrap().ordered as u64;
        let want = universal_expected(f, n as u64);
        if got != want {
            bad.push(format!("{f}{n}: {got} != {want}"));
        }
    }
    let detail = if bad.is_empty() { format!("{} types", types.len()) } else { bad.join(", ") };
    report(7, bad.is_empty(), "ordered exchangeable pairs equal universal X-counts", &detail, start);
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_8_exchange_graph_coincidence() {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for (f, n) in [("A", 3), ("B", 3), ("D", 4)] {
        let r = exchange_graphs_coincide(ty(f, n), Limits::unlimited()).unwrap();
        ok &= r.coincide;
        parts.push(format!("{f}{n} {}/{} vs {}/{}", r.a_nodes, r.a_edges, r.x_nodes, r.x_edges));
    }
    report(8, ok, "A- and X-exchange graphs coincide", &parts.join(", "), start);
    assert!(ok, "{parts:?}");
}

#[test]
fn criterion_9_geometric_distinctness() {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for (f, n) in [("A", 3), ("A", 4), ("B", 3), ("C", 3), ("D", 4)] {
        let r = verify_distinctness(ty(f, n), 100, 1, LIMIT).unwrap();
        ok &= r.passed() && r.unseparated.is_empty();
        parts.push(format!("{f}{n} {}/{}", r.separated, r.pairs_total));
    }
    report(9, ok, "Plücker realizations pairwise distinct", &parts.join(", "), start);
    assert!(ok, "{parts:?}");
}
