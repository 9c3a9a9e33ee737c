use std::collections::BTreeSet;

use clusterx::explorer::{explore_a, ACoefficients, Limits};
use clusterx::seedcore::{cartan_counterpart, DynkinType};
use clusterx::surfaces::*;

const LIMIT: usize = DEFAULT_TRIANGULATION_LIMIT;

fn ty(f: &str, n: usize) -> DynkinType {
    DynkinType::parse(f, n).unwrap()
}

fn chord(i: usize, j: usize) -> TaggedArc {
    TaggedArc::direct(i, j)
}

#[test]
fn arc_counts() {
    assert_eq!(all_arcs(MarkedPolygon::Plain(6)).unwrap().len(), 9);
    for n in 3..8 {
        assert_eq!(all_arcs(MarkedPolygon::Punctured(n)).unwrap().len(), n * n);
    }
    for n in 1..5 {
        assert_eq!(all_arcs(MarkedPolygon::FoldedPlain(2 * n + 2)).unwrap().len(), n * (n + 1));
        assert_eq!(
            all_arcs(MarkedPolygon::FoldedPunctured(n + 1)).unwrap_or_default().len(),
            if n >= 2 { n * (n + 1) } else { 0 }
        );
    }
}

#[test]
fn compatibility_examples() {
    let p6 = MarkedPolygon::Plain(6);
    assert!(!compatible(&chord(1, 3), &chord(2, 4), p6).unwrap());
    assert!(compatible(&chord(1, 3), &chord(3, 5), p6).unwrap());
    let p4 = MarkedPolygon::Punctured(4);
    let r = |i, tag| TaggedArc::Radius { i, tag };
    assert!(!compatible(&r(1, Tag::Plain), &r(2, Tag::Notched), p4).unwrap());
    assert!(compatible(&r(2, Tag::Plain), &r(2, Tag::Notched), p4).unwrap());
    let around = TaggedArc::Chord { i: 2, j: 4, winding: Winding::Around };
    assert!(!compatible(&chord(1, 3), &around, p4).unwrap());
    assert!(compatible(&chord(1, 2), &chord(1, 2), p6).is_err());

    let lift = |a: TaggedArc| lift_to_double_cover(&a, 4).iter().map(|c| (c.a, c.b)).collect::<Vec<_>>();
    assert_eq!(lift(chord(1, 3)), vec![(1, 3), (5, 7)]);
    assert_eq!(lift(TaggedArc::Chord { i: 1, j: 2, winding: Winding::Around }), vec![(1, 6), (5, 2)]);
    assert_eq!(lift_to_double_cover(&r(2, Tag::Plain), 4)[0], LiftedChord { a: 2, b: 6, tag: Some(Tag::Plain) });
}

#[test]
fn plain_hexagon_flips_and_quads() {
    let s = Surface::new(MarkedPolygon::Plain(6)).unwrap();
    let t = s.triangulation_from_arcs(&[chord(1, 3), chord(1, 4), chord(1, 5)]).unwrap();
    let (t2, new) = s.flip(&t, 0).unwrap();
    assert_eq!(s.orbit(new), vec![chord(2, 4)]);
    assert_eq!(s.flip(&t2, 0).unwrap().0, t);
    let q = s.quadrilateral(&t, 1).unwrap();
    assert_eq!(
        q.quad,
        vec![chord(1, 3), chord(1, 5), TaggedArc::BoundarySegment { i: 3 }, TaggedArc::BoundarySegment { i: 4 }]
    );
    assert_eq!(q.vertices(6), vec![1, 3, 4, 5]);
    assert_eq!(s.enumerate_triangulations(LIMIT).unwrap().len(), 14);

    let p5 = Surface::new(MarkedPolygon::Plain(5)).unwrap();
    let b = p5.exchange_matrix(&p5.initial_triangulation());
    assert_eq!(b.get(0, 1).abs(), 1);
}

#[test]
fn triangulation_counts_match_seed_counts() {
    for (p, t) in [
        (MarkedPolygon::Punctured(3), ty("D", 3)),
        (MarkedPolygon::Punctured(4), ty("D", 4)),
        (MarkedPolygon::FoldedPlain(6), ty("C", 2)),
        (MarkedPolygon::FoldedPlain(8), ty("C", 3)),
        (MarkedPolygon::FoldedPunctured(4), ty("B", 3)),
    ] {
        let s = Surface::new(p).unwrap();
        let g = s.enumerate_triangulations(LIMIT).unwrap();
        let a = explore_a(t, ACoefficients::Free, Limits::unlimited()).unwrap();
        assert_eq!(g.len(), a.nodes.len(), "{p}");
        for node in &g.nodes {
            assert_eq!(node.rank(), p.rank());
        }
    }
}

#[test]
fn flips_commute_with_matrix_mutation() {
    for p in [
        MarkedPolygon::Plain(7),
        MarkedPolygon::Punctured(3),
        MarkedPolygon::Punctured(5),
        MarkedPolygon::FoldedPlain(8),
        MarkedPolygon::FoldedPunctured(4),
    ] {
        let s = Surface::new(p).unwrap();
        let g = s.enumerate_triangulations(LIMIT).unwrap();
        for (u, t) in g.nodes.iter().enumerate() {
            let b = s.exchange_matrix(t);
            for k in 0..t.rank() {
                let (next, _) = s.flip(t, k).unwrap();
                assert_eq!(s.exchange_matrix(&next), b.mutate(k).unwrap(), "{p} node {u} direction {k}");
                assert_eq!(next.key(), g.nodes[g.adj[u][k]].key());
            }
        }
    }
}

#[test]
fn cartan_types_of_surfaces() {
    for (p, t) in [
        (MarkedPolygon::Punctured(4), ty("D", 4)),
        (MarkedPolygon::Punctured(5), ty("D", 5)),
        (MarkedPolygon::FoldedPunctured(4), ty("B", 3)),
        (MarkedPolygon::FoldedPlain(8), ty("C", 3)),
        (MarkedPolygon::Plain(7), ty("A", 4)),
    ] {
        let s = Surface::new(p).unwrap();
        let g = s.enumerate_triangulations(LIMIT).unwrap();
        let target = t.cartan_matrix();
        assert!(
            g.nodes.iter().any(|n| cartan_counterpart(&s.exchange_matrix(n)).equivalent(&target)),
            "{p} is not {t}"
        );
    }
}

#[test]
fn quadrilateral_counts() {
    let check = |p: MarkedPolygon| {
        let s = Surface::new(p).unwrap();
        let census = s.enumerate_quadrilaterals(LIMIT).unwrap();
        assert_eq!(census.len() as u64, 2 * closed_form_quad_count(p).unwrap(), "{p}");
    };
    for m in 4..=8 {
        check(MarkedPolygon::Plain(m));
    }
    for n in 3..=5 {
        check(MarkedPolygon::Punctured(n));
    }
    for n in 1..=3 {
        check(MarkedPolygon::FoldedPlain(2 * n + 2));
    }
    for n in 2..=3 {
        check(MarkedPolygon::FoldedPunctured(n + 1));
    }
}

#[test]
fn closed_forms() {
    assert_eq!(closed_form_quad_count(MarkedPolygon::Plain(7)).unwrap(), 35);
    assert_eq!(closed_form_quad_count(MarkedPolygon::Punctured(5)).unwrap(), 130);
    assert_eq!(closed_form_quad_count(MarkedPolygon::Punctured(4)).unwrap(), 52);
    assert_eq!(closed_form_quad_count(MarkedPolygon::FoldedPunctured(4)).unwrap(), 22);
    assert_eq!(closed_form_quad_count(MarkedPolygon::FoldedPlain(6)).unwrap(), 6);
    for n in 1..8u64 {
        let folded = closed_form_quad_count(MarkedPolygon::FoldedPlain(2 * n as usize + 2)).unwrap();
        assert_eq!(folded, n * (n + 1) * (n * n + 2) / 6);
    }
}

#[test]
fn half_disk_classification() {
    for n in 1..=3 {
        let r = half_disk_census(n, LIMIT).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn bijection_small() {
    for t in [ty("A", 2), ty("A", 3), ty("B", 2), ty("C", 2), ty("D", 4)] {
        let r = verify_bijection(t, LIMIT).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn digon_quadrilateral_contains_other_radii() {
    let s = Surface::new(MarkedPolygon::Punctured(4)).unwrap();
    let r = |i, tag| TaggedArc::Radius { i, tag };
    let around = TaggedArc::Chord { i: 1, j: 3, winding: Winding::Around };
    let t = s.triangulation_from_arcs(&[r(1, Tag::Plain), r(1, Tag::Notched), chord(1, 3), around]).unwrap();
    let q = s.quadrilateral(&t, 0).unwrap();
    assert!(q.digon_case);
    let set: BTreeSet<_> = q.quad.iter().copied().collect();
    assert_eq!(set, BTreeSet::from([chord(1, 3), around, r(1, Tag::Notched), r(3, Tag::Plain)]));
}

#[test]
fn json_and_dot() {
    let s = Surface::new(MarkedPolygon::FoldedPunctured(4)).unwrap();
    let t = s.initial_triangulation();
    let text = triangulation_to_json(&s, &t);
    let (s2, t2) = triangulation_from_json(&text).unwrap();
    assert_eq!((s2.polygon, t2), (s.polygon, t));
    assert!(triangulation_from_json(&text[..10]).is_err());
    let p6 = Surface::new(MarkedPolygon::Plain(6)).unwrap();
    let dot = flip_graph_dot(&p6, &p6.enumerate_triangulations(LIMIT).unwrap());
    assert_eq!(dot.matches("[label=").count(), 14);
    assert_eq!(dot.matches(" -- ").count(), 21);
    let csv = quads_csv(&p6.enumerate_quadrilaterals(LIMIT).unwrap());
    assert_eq!(csv.lines().count(), 31);
}
