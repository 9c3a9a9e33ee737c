use clusterx::explorer::*;
use clusterx::seedcore::{dynkin_initial_matrix, mutate_x, DynkinType, ExchangeMatrix, XSeed};
use clusterx::semifield::{Exact, LaurentMonomial, Polynomial, Semifield, SemifieldValue};

fn ty(f: &str, n: usize) -> DynkinType {
    DynkinType::parse(f, n).unwrap()
}

fn rf(num: Polynomial, den: Polynomial) -> SemifieldValue {
    SemifieldValue::Universal(clusterx::semifield::rf_canonicalize(num, den).unwrap())
}

fn x(i: usize) -> Polynomial {
    Polynomial::var(3, i)
}

fn one() -> Polynomial {
    Polynomial::one(3)
}

fn example_matrix() -> ExchangeMatrix {
    ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap()
}

fn s1() -> XSeed<SemifieldValue> {
    XSeed::new(example_matrix(), vec![rf(one(), x(1)), rf(x(0), x(2)), rf(x(1), one())]).unwrap()
}

fn s2() -> XSeed<SemifieldValue> {
    let s = Exact::universal(3);
    XSeed::new(example_matrix(), (0..3).map(|i| s.generator(i)).collect()).unwrap()
}

#[test]
fn a2_pentagon() {
    let g = explore_dynkin(ty("A", 2), Coefficients::Universal, Limits::unlimited()).unwrap();
    assert_eq!(g.nodes.len(), 5);
    assert_eq!(g.xvars.len(), 10);
    assert!(g.is_regular() && g.is_symmetric() && g.is_connected());
    assert_eq!(g.simple_edge_count(), 5);
}

#[test]
fn example_degenerate_seeds() {
    let e = Exact::universal(3);
    let m1 = mutate_x(&e, &s1(), 0).unwrap();
    let plus = &one() + &x(1);
    assert_eq!(m1.x, vec![rf(x(1), one()), rf(x(0), &x(2) * &plus), rf(x(1), one())]);
    let m2 = mutate_x(&e, &s2(), 0).unwrap();
    assert_eq!(m2.x, vec![rf(one(), x(0)), rf(&x(0) * &x(1), &one() + &x(0)), rf(x(2), one())]);

    assert_eq!(count_xvars_from(&s1(), Limits::unlimited()).unwrap().count, 18);
    assert_eq!(count_xvars_from(&s2(), Limits::unlimited()).unwrap().count, 30);
}

#[test]
fn small_counts() {
    let lim = Limits::unlimited();
    assert_eq!(count_xvars(ty("A", 3), Coefficients::Universal, lim).unwrap().count, 30);
    assert_eq!(count_xvars(ty("A", 3), Coefficients::Principal, lim).unwrap().count, 12);
    assert_eq!(count_xvars(ty("G", 2), Coefficients::Universal, lim).unwrap().count, 16);
    assert_eq!(count_xvars(ty("B", 2), Coefficients::Universal, lim).unwrap().count, 12);
}

#[test]
fn pairs_and_unique_exchange() {
    let lim = Limits::unlimited();
    assert_eq!(exchangeable_pairs(ty("A", 2), lim).unwrap().ordered, 10);
    assert_eq!(exchangeable_pairs(ty("A", 3), lim).unwrap().ordered, 30);
    assert_eq!(exchangeable_pairs(ty("G", 2), lim).unwrap().ordered, 16);
    for t in [ty("A", 3), ty("B", 3), ty("C", 3), ty("D", 4)] {
        let r = unique_exchange(t, ACoefficients::Principal, lim).unwrap();
        assert!(r.passed(), "{t}: {r:?}");
    }
    // without coefficients both ends of the A3 path exchange via a_2 + 1
    let free = unique_exchange(ty("A", 3), ACoefficients::Free, lim).unwrap();
    assert!(!free.well_defined);
}

#[test]
fn coincidence_and_isomorphism() {
    let lim = Limits::unlimited();
    let r = exchange_graphs_coincide(ty("A", 3), lim).unwrap();
    assert!(r.coincide, "{r:?}");
    assert_eq!(r.a_nodes, 14);

    let a = explore_a(ty("A", 3), ACoefficients::Free, lim).unwrap();
    let xg = explore_dynkin(ty("A", 3), Coefficients::Universal, lim).unwrap();
    assert!(graphs_isomorphic(&a, &a).unwrap());
    assert!(graphs_isomorphic(&a, &xg).unwrap());
    let ones =
        XSeed::new(dynkin_initial_matrix(ty("A", 3)), vec![SemifieldValue::Tropical(LaurentMonomial::one(3)); 3])
            .unwrap();
    let trop = explore_x(&ones, lim, "A3").unwrap();
    assert!(trop.nodes.len() < a.nodes.len());
    assert!(!graphs_isomorphic(&a, &trop).unwrap());
}

#[test]
fn limits_return_partial_graphs() {
    let lim = Limits { max_nodes: Some(3), max_seconds: None };
    match count_xvars(ty("A", 3), Coefficients::Universal, lim) {
        Err(ExploreError::Limit { hit: LimitHit::Nodes, partial }) => {
            assert_eq!(partial.nodes.len(), 3);
            assert!(!partial.complete);
            assert!(matches!(graphs_isomorphic(&partial, &partial), Err(ExploreError::PartialGraph)));
        }
        other => panic!("expected limit error, got {other:?}"),
    }
}

#[test]
fn root_independence() {
    let g = explore_dynkin(ty("A", 3), Coefficients::Universal, Limits::unlimited()).unwrap();
    for node in g.nodes.iter().step_by(4) {
        let root = node.seed.to_x().unwrap();
        assert_eq!(count_xvars_from(&root, Limits::unlimited()).unwrap().count, 30);
    }
}

#[test]
fn json_round_trip_and_errors() {
    let g = explore_dynkin(ty("A", 2), Coefficients::Universal, Limits::unlimited()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.json");
    save_graph(&g, &path).unwrap();
    assert_eq!(load_graph(&path).unwrap(), g);

    let text = graph_to_json(&g);
    assert!(matches!(graph_from_json(&text[..text.len() / 2]), Err(ExploreError::Corrupt(_))));
    let future = text.replacen("\"version\":1", "\"version\":2", 1);
    assert!(matches!(graph_from_json(&future), Err(ExploreError::Version { found: 2, .. })));
    assert!(matches!(load_graph(&dir.path().join("missing.json")), Err(ExploreError::Io { .. })));

    let dot = to_dot(&g);
    assert_eq!(dot.matches(" -- ").count(), 5);
    assert_eq!(dot.matches("[label=").count(), 10);
}

#[test]
fn principal_dominated_by_universal() {
    for t in [ty("A", 3), ty("B", 3), ty("D", 4), ty("G", 2)] {
        let u = count_xvars(t, Coefficients::Universal, Limits::unlimited()).unwrap().count;
        let p = count_xvars(t, Coefficients::Principal, Limits::unlimited()).unwrap().count;
        assert!(p <= u, "{t}");
    }
}

#[test]
fn xvars_closed_under_inversion() {
    let g = explore_dynkin(ty("A", 3), Coefficients::Universal, Limits::unlimited()).unwrap();
    let s = Exact::universal(3);
    for v in &g.xvars {
        assert!(g.xvars.contains(&s.inv(v)), "{v}");
    }
}
