//! Census checks against brute force: every labeled gluing of n ≤ 2
//! tetrahedra, quotiented by explicit relabeling.

use octaspine::census::{
    automorphisms, automorphisms_brute_force, canonical_form, enumerate, is_isomorphic,
    CensusOptions, Isomorphism,
};
use octaspine::tri::{dual_polyhedron, dual_triangulation, FaceEnd, Triangulation};
use octaspine::Perm4;
use std::collections::HashSet;

/// All labeled connected gluings of `n` tetrahedra.
fn all_labeled(n: usize) -> Vec<Triangulation> {
    fn rec(
        n: usize,
        used: &mut Vec<bool>,
        pairs: &mut Vec<(FaceEnd, FaceEnd, Perm4)>,
        out: &mut Vec<Triangulation>,
    ) {
        let Some(a) = used.iter().position(|u| !u) else {
            if let Ok(t) = Triangulation::from_pairs(n, pairs.iter().copied()) {
                out.push(t);
            }
            return;
        };
        used[a] = true;
        for b in a + 1..4 * n {
            if used[b] {
                continue;
            }
            used[b] = true;
            let (fa, fb) = (FaceEnd::new(a / 4, (a % 4) as u8), FaceEnd::new(b / 4, (b % 4) as u8));
            for &p in Perm4::all() {
                if p.apply(fa.face) == fb.face {
                    pairs.push((fa, fb, p));
                    rec(n, used, pairs, out);
                    pairs.pop();
                }
            }
            used[b] = false;
        }
        used[a] = false;
    }
    let mut out = Vec::new();
    rec(n, &mut vec![false; 4 * n], &mut Vec::new(), &mut out);
    out
}

fn key(t: &Triangulation) -> Vec<u8> {
    let mut k = Vec::new();
    for tet in 0..t.n() {
        for f in 0..4 {
            let g = t.gluing(tet, f);
            k.push(g.to.tet as u8);
            k.push(g.to.face);
            k.extend(g.perm.images());
        }
    }
    k
}

fn all_relabelings(n: usize) -> Vec<Isomorphism> {
    let tet_perms: Vec<Vec<usize>> = match n {
        1 => vec![vec![0]],
        2 => vec![vec![0, 1], vec![1, 0]],
        _ => unreachable!(),
    };
    let mut out = Vec::new();
    for tp in tet_perms {
        let mut choice = vec![0usize; n];
        loop {
            out.push(Isomorphism {
                tet_perm: tp.clone(),
                vertex_perms: choice.iter().map(|&i| Perm4::all()[i]).collect(),
            });
            let mut k = 0;
            while k < n {
                choice[k] += 1;
                if choice[k] < 24 {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    out
}

/// One representative per orbit of the relabeling action.
fn orbit_representatives(n: usize) -> Vec<Triangulation> {
    let relabelings = all_relabelings(n);
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for t in all_labeled(n) {
        if seen.contains(&key(&t)) {
            continue;
        }
        for r in &relabelings {
            seen.insert(key(&r.apply(&t)));
        }
        reps.push(t);
    }
    reps
}

fn brute_isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    a.n() == b.n() && all_relabelings(a.n()).iter().any(|r| r.verify(a, b))
}

#[test]
fn labeled_gluing_counts() {
    assert_eq!(all_labeled(1).len(), 3 * 6 * 6);
    // 105 perfect matchings of 8 face-ends, 6 maps per pair, minus the
    // disconnected ones (each tetrahedron closed up on itself).
    assert_eq!(all_labeled(2).len(), 105 * 6usize.pow(4) - 108 * 108);
}

#[test]
fn census_counts_match_oracle() {
    for n in 1..=2 {
        let reps = orbit_representatives(n);
        let census = enumerate(n, &|_| true, &CensusOptions::default());
        assert!(census.truncated.is_none());
        assert_eq!(census.forms.len(), reps.len(), "n = {n}");
        let sigs: HashSet<String> = reps.iter().map(|t| canonical_form(t).signature).collect();
        assert_eq!(sigs.len(), reps.len(), "distinct orbits share a signature");
        let census_sigs: HashSet<String> =
            census.forms.iter().map(|f| f.signature.clone()).collect();
        assert_eq!(sigs, census_sigs);
    }
}

#[test]
fn signature_equality_iff_isomorphic() {
    for n in 1..=2 {
        let forms = enumerate(n, &|_| true, &CensusOptions::default()).forms;
        let relabelings = all_relabelings(n);
        for (i, a) in forms.iter().enumerate() {
            assert_eq!(canonical_form(&a.representative).signature, a.signature);
            // A scrambled copy is found isomorphic with a verified witness.
            let r = &relabelings[(i * 37 + 11) % relabelings.len()];
            let b = r.apply(&a.representative);
            assert!(is_isomorphic(&a.representative, &b).is_some());
            for c in &forms[i + 1..] {
                assert!(!brute_isomorphic(&a.representative, &c.representative));
                assert!(is_isomorphic(&a.representative, &c.representative).is_none());
            }
        }
    }
}

#[test]
fn automorphisms_match_brute_force() {
    for n in 1..=2 {
        for f in enumerate(n, &|_| true, &CensusOptions::default()).forms {
            let t = &f.representative;
            let r = automorphisms(t);
            assert_eq!(r.aut_order, automorphisms_brute_force(t));
            // Relabelings that fix the signature, counted directly.
            let fixing = all_relabelings(n)
                .iter()
                .filter(|x| x.apply(t) == *t)
                .count();
            assert_eq!(r.aut_order, fixing);
            for g in &r.aut_generators {
                assert!(g.verify(t, t));
            }
        }
    }
}

#[test]
fn duality_round_trip() {
    for n in 1..=2 {
        for f in enumerate(n, &|_| true, &CensusOptions::default()).forms {
            let t = &f.representative;
            let back = dual_triangulation(&dual_polyhedron(t)).unwrap();
            assert!(is_isomorphic(t, &back).is_some());
        }
    }
}

#[test]
fn census_is_independent_of_worker_count() {
    let one = enumerate(2, &|_| true, &CensusOptions { jobs: 1, ..Default::default() });
    let four = enumerate(2, &|_| true, &CensusOptions { jobs: 4, ..Default::default() });
    let a: Vec<&String> = one.forms.iter().map(|f| &f.signature).collect();
    let b: Vec<&String> = four.forms.iter().map(|f| &f.signature).collect();
    assert_eq!(a, b);
}
