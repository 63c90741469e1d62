//! Combinatorial automorphism groups.
//!
//! An automorphism is determined by the image of one tetrahedron and the
//! vertex map there, so the search tries every `(image, vertex map)` for a
//! base tetrahedron and propagates through the gluings. Candidates are
//! pruned with an edge-valence colouring refined by neighbourhoods, and the
//! base is taken from the smallest colour class.

use super::Isomorphism;
use crate::geometry::exceptional_candidate;
use crate::perm::Perm4;
use crate::tri::{edge_classes, wedge_class_map, Triangulation, EDGES};
use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Clone, Debug, Serialize)]
pub struct IsomGroupReport {
    pub aut_order: usize,
    pub aut_generators: Vec<Isomorphism>,
    /// Orientation-preserving isometries of the double.
    pub isom_plus_order: usize,
    pub isom_order: usize,
    pub exceptional_flag: bool,
    /// Whether `Isom(D(T)) ≅ Aut(T) × Z/2` is asserted.
    pub valid: bool,
}

pub fn automorphisms(t: &Triangulation) -> IsomGroupReport {
    let all = automorphism_list(t);
    report(t, all)
}

/// Reference implementation: tries every tetrahedron permutation and every
/// choice of vertex maps (only feasible for tiny `n`).
pub fn automorphisms_brute_force(t: &Triangulation) -> usize {
    let n = t.n();
    let mut count = 0;
    let mut tet_perm: Vec<usize> = (0..n).collect();
    loop {
        let mut choice = vec![0usize; n];
        loop {
            let iso = Isomorphism {
                tet_perm: tet_perm.clone(),
                vertex_perms: choice.iter().map(|&i| Perm4::all()[i]).collect(),
            };
            if iso.verify(t, t) {
                count += 1;
            }
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
        if !next_permutation(&mut tet_perm) {
            break;
        }
    }
    count
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn report(t: &Triangulation, all: Vec<Isomorphism>) -> IsomGroupReport {
    let aut_order = all.len();
    let aut_generators = generators(&all);
    let exceptional_flag = exceptional_candidate(t);
    IsomGroupReport {
        aut_order,
        aut_generators,
        isom_plus_order: aut_order,
        isom_order: 2 * aut_order,
        exceptional_flag,
        valid: !exceptional_flag,
    }
}

/// Every automorphism, identity first.
pub(crate) fn automorphism_list(t: &Triangulation) -> Vec<Isomorphism> {
    let n = t.n();
    let classes = edge_classes(t);
    let map = wedge_class_map(n, &classes);
    // Edge profile of each wedge: (valence, orientable).
    let profile = |tet: usize, e: usize| {
        let c = &classes[map[tet][e] as usize];
        (c.valence, c.orientable)
    };
    let colors = refine_colors(t, &profile);
    let mut class_size: HashMap<u32, usize> = HashMap::new();
    for &c in &colors {
        *class_size.entry(c).or_default() += 1;
    }
    let base = (0..n)
        .min_by_key(|&x| (class_size[&colors[x]], x))
        .unwrap();

    let mut found = Vec::new();
    for image in (0..n).filter(|&y| colors[y] == colors[base]) {
        for &sigma in Perm4::all() {
            let consistent = EDGES.iter().enumerate().all(|(e, &(a, b))| {
                let e2 = crate::tri::edge_index(sigma.apply(a), sigma.apply(b));
                profile(base, e) == profile(image, e2)
            });
            if !consistent {
                continue;
            }
            if let Some(iso) = extend(t, base, image, sigma) {
                found.push(iso);
            }
        }
    }
    // Identity first, then by image of the base.
    found.sort_by_key(|iso| iso != &Isomorphism::identity(n));
    found
}

/// Extends `base ↦ (image, sigma)` to a full automorphism, if possible.
pub(crate) fn extend(
    t: &Triangulation,
    base: usize,
    image: usize,
    sigma: Perm4,
) -> Option<Isomorphism> {
    let n = t.n();
    let mut tet_perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut vertex_perms = vec![Perm4::IDENTITY; n];
    tet_perm[base] = image;
    used[image] = true;
    vertex_perms[base] = sigma;
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        let y = tet_perm[x];
        let sx = vertex_perms[x];
        for f in 0..4u8 {
            let g = t.gluing(x, f);
            let h = t.gluing(y, sx.apply(f));
            let s_next = h.perm.compose(sx).compose(g.perm.inverse());
            let x2 = g.to.tet;
            if tet_perm[x2] == usize::MAX {
                if used[h.to.tet] {
                    return None;
                }
                tet_perm[x2] = h.to.tet;
                used[h.to.tet] = true;
                vertex_perms[x2] = s_next;
                queue.push_back(x2);
            } else if tet_perm[x2] != h.to.tet || vertex_perms[x2] != s_next {
                return None;
            }
        }
    }
    Some(Isomorphism {
        tet_perm,
        vertex_perms,
    })
}

/// Colour refinement: start from the sorted edge-profile multiset of each
/// tetrahedron, then repeatedly split by the multiset of neighbour colours.
fn refine_colors(t: &Triangulation, profile: &dyn Fn(usize, usize) -> (usize, bool)) -> Vec<u32> {
    let n = t.n();
    let keys: Vec<[(usize, bool); 6]> = (0..n)
        .map(|x| {
            let mut k = [(0, false); 6];
            for (e, slot) in k.iter_mut().enumerate() {
                *slot = profile(x, e);
            }
            k.sort();
            k
        })
        .collect();
    let mut colors = reindex(&keys);
    let mut count = distinct(&colors);
    loop {
        let keys: Vec<[u32; 5]> = (0..n)
            .map(|x| {
                let mut nb = t.neighbours(x).map(|y| colors[y]);
                nb.sort();
                [colors[x], nb[0], nb[1], nb[2], nb[3]]
            })
            .collect();
        let next = reindex(&keys);
        let next_count = distinct(&next);
        colors = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    colors
}

fn reindex<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u32)
        .collect()
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

/// A small generating set: greedily keep automorphisms not yet generated.
fn generators(all: &[Isomorphism]) -> Vec<Isomorphism> {
    let Some(first) = all.first() else {
        return Vec::new();
    };
    let n = first.tet_perm.len();
    let key = |iso: &Isomorphism| (iso.tet_perm[0], iso.vertex_perms[0]);
    let mut gens: Vec<Isomorphism> = Vec::new();
    let mut group: HashSet<(usize, Perm4)> = HashSet::from([key(&Isomorphism::identity(n))]);
    for iso in all {
        if group.contains(&key(iso)) {
            continue;
        }
        gens.push(iso.clone());
        // Closure of the generated subgroup.
        let mut elems = vec![Isomorphism::identity(n)];
        group.clear();
        group.insert(key(&elems[0]));
        let mut i = 0;
        while i < elems.len() {
            for g in &gens {
                let prod = g.compose(&elems[i]);
                if group.insert(key(&prod)) {
                    elems.push(prod);
                }
            }
            i += 1;
        }
    }
    gens
}
