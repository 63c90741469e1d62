//! Structural invariants on random gluings.

use octaspine::census::{canonical_form, is_isomorphic, Isomorphism};
use octaspine::geometry::{certify, volume_report, CertificateKind};
use octaspine::homology::{h1_double, h1_double_with, h1_meridinal_filling, AbelianGroup};
use octaspine::tri::{
    dual_polyhedron, dual_triangulation, edge_classes, edge_classes_with, parse, random_triangulation,
    serialize, vertex_links, TieBreak, Triangulation,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn gluing(seed: u64, n: usize) -> Triangulation {
    random_triangulation(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn valence_multiset(t: &Triangulation) -> Vec<(usize, bool)> {
    let mut v: Vec<_> = edge_classes(t).iter().map(|c| (c.valence, c.orientable)).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(config(10_000))]

    #[test]
    fn valences_sum_to_six_n(seed: u64, n in 1usize..=8) {
        let t = gluing(seed, n);
        let total: usize = edge_classes(&t).iter().map(|c| c.valence).sum();
        prop_assert_eq!(total, 6 * n);
    }
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn parse_is_involutive_and_round_trips(seed: u64, n in 1usize..=8) {
        let t = gluing(seed, n);
        let text = serialize(&t);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(serialize(&back), text);
        for tet in 0..n {
            for f in 0..4u8 {
                let g = back.gluing(tet, f);
                prop_assert!(g.to != octaspine::FaceEnd::new(tet, f));
                let h = back.gluing(g.to.tet, g.to.face);
                prop_assert_eq!(h.to, octaspine::FaceEnd::new(tet, f));
                prop_assert_eq!(h.perm.compose(g.perm), octaspine::Perm4::IDENTITY);
            }
        }
    }

    #[test]
    fn orbits_partition_edges_and_corners(seed: u64, n in 1usize..=8) {
        let t = gluing(seed, n);
        let mut hit = vec![[0u8; 6]; n];
        for c in edge_classes(&t) {
            prop_assert_eq!(c.wedges.len(), c.valence);
            let expected = if c.orientable { c.valence } else { 2 * c.valence };
            prop_assert_eq!(c.boundary_word.len(), expected);
            for w in &c.wedges {
                hit[w.tet][w.edge as usize] += 1;
            }
        }
        prop_assert!(hit.iter().flatten().all(|&x| x == 1));
        let mut corners = vec![[0u8; 4]; n];
        let links = vertex_links(&t);
        for l in &links {
            prop_assert!(l.euler_characteristic <= 2);
            prop_assert_eq!(
                l.euler_characteristic,
                l.triangles as i64 - l.edges as i64 + l.vertices as i64
            );
            for &(tet, v) in &l.corners {
                corners[tet][v as usize] += 1;
            }
        }
        prop_assert!(corners.iter().flatten().all(|&x| x == 1));
        prop_assert_eq!(links.iter().map(|l| l.triangles).sum::<usize>(), 4 * n);
    }

    #[test]
    fn invariants_are_constant_on_classes(seed: u64, n in 1usize..=5, tie: u64) {
        let t = gluing(seed, n);
        let iso = Isomorphism::random(n, &mut ChaCha8Rng::seed_from_u64(seed ^ 0x9e37));
        let r = iso.apply(&t);
        prop_assert!(iso.verify(&t, &r));
        prop_assert_eq!(valence_multiset(&t), valence_multiset(&r));
        prop_assert_eq!(h1_double(&t), h1_double(&r));
        prop_assert_eq!(h1_double(&t), h1_double_with(&r, TieBreak::Seeded(tie)));
        let sorted_report = |t: &Triangulation| {
            let mut v = volume_report(t);
            v.cusp_horoball_volumes.sort_by(f64::total_cmp);
            v
        };
        prop_assert_eq!(sorted_report(&t), sorted_report(&r));
        let mut l1: Vec<i64> = vertex_links(&t).iter().map(|l| l.euler_characteristic).collect();
        let mut l2: Vec<i64> = vertex_links(&r).iter().map(|l| l.euler_characteristic).collect();
        l1.sort();
        l2.sort();
        prop_assert_eq!(l1, l2);
        prop_assert_eq!(canonical_form(&t).signature, canonical_form(&r).signature);
        prop_assert!(is_isomorphic(&t, &r).is_some());
    }

    #[test]
    fn seeded_walks_give_the_same_partition(seed: u64, n in 1usize..=6, tie: u64) {
        let t = gluing(seed, n);
        let key = |tie| {
            let mut v: Vec<Vec<(usize, u8)>> = edge_classes_with(&t, tie)
                .iter()
                .map(|c| {
                    let mut w: Vec<_> = c.wedges.iter().map(|w| (w.tet, w.edge)).collect();
                    w.sort();
                    w
                })
                .collect();
            v.sort();
            v
        };
        prop_assert_eq!(key(TieBreak::Canonical), key(TieBreak::Seeded(tie)));
    }

    #[test]
    fn homology_shape(seed: u64, n in 1usize..=6) {
        let t = gluing(seed, n);
        let h = h1_double(&t);
        prop_assert!(h.free_rank > n);
        prop_assert_eq!(h1_meridinal_filling(&t), AbelianGroup::free(n + 1));
    }

    #[test]
    fn duality_round_trip(seed: u64, n in 1usize..=6) {
        let t = gluing(seed, n);
        let p = dual_polyhedron(&t);
        prop_assert_eq!(p.vertex_count, n);
        prop_assert_eq!(p.edges.len(), 2 * n);
        prop_assert!(p.degrees().iter().all(|&d| d == 4));
        let back = dual_triangulation(&p).unwrap();
        prop_assert!(is_isomorphic(&t, &back).is_some());
    }

    #[test]
    fn certificates_are_consistent_and_monotone(s1: u64, s2: u64, n in 1usize..=6, m in 1usize..=6) {
        let (a, b) = (gluing(s1, n), gluing(s2, m));
        let (ca, cb) = (certify(&a), certify(&b));
        prop_assert!(ca.verify());
        prop_assert!(cb.verify());
        if ca.min_valence <= cb.min_valence {
            prop_assert!(ca.kind <= cb.kind);
        }
        if ca.kind == CertificateKind::NoneBelow6 {
            prop_assert!(ca.claims.is_empty());
        }
    }
}
