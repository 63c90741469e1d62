//! Edge classes via the edge walk.

use super::Triangulation;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// The six edges of a tetrahedron as vertex pairs, in lexicographic order.
pub const EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`EDGES`] of the unordered pair `{a, b}`.
#[inline]
pub fn edge_index(a: u8, b: u8) -> usize {
    const TABLE: [[u8; 4]; 4] = [[9, 0, 1, 2], [0, 9, 3, 4], [1, 3, 9, 5], [2, 4, 5, 9]];
    let i = TABLE[a as usize][b as usize];
    debug_assert!(i < 6, "degenerate edge {a}{b}");
    i as usize
}

/// A tetrahedron edge: `(tet, unordered vertex pair)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Wedge {
    pub tet: usize,
    pub edge: u8,
}

impl Wedge {
    pub fn vertices(self) -> (u8, u8) {
        EDGES[self.edge as usize]
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EdgeClass {
    /// Distinct wedges in the order the walk first visits them.
    pub wedges: Vec<Wedge>,
    pub valence: usize,
    pub orientable: bool,
    /// `(face class, ±1)` per crossing; length `valence` or `2 * valence`.
    pub boundary_word: Vec<(usize, i8)>,
}

/// Tie-break policy for the edge walk.
///
/// `Seeded` randomizes the seed wedge of every class, its starting direction
/// and first face, the reference direction of every face class, and the order
/// in which classes are listed.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TieBreak {
    #[default]
    Canonical,
    Seeded(u64),
}

pub fn edge_classes(t: &Triangulation) -> Vec<EdgeClass> {
    edge_classes_with(t, TieBreak::Canonical)
}

pub fn edge_classes_with(t: &Triangulation, tie: TieBreak) -> Vec<EdgeClass> {
    let n = t.n();
    let mut seen = vec![[false; 6]; n];
    let mut classes = Vec::new();
    for tet in 0..n {
        for e in 0..6u8 {
            if seen[tet][e as usize] {
                continue;
            }
            let (a, b) = EDGES[e as usize];
            let first = first_face(a, b);
            let class = walk(t, tet, a, b, first, None);
            for w in &class.wedges {
                seen[w.tet][w.edge as usize] = true;
            }
            classes.push(class);
        }
    }
    match tie {
        TieBreak::Canonical => classes,
        TieBreak::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let flips: Vec<bool> = (0..2 * n).map(|_| rng.gen()).collect();
            classes.shuffle(&mut rng);
            classes
                .iter()
                .map(|c| {
                    let w = *c.wedges.choose(&mut rng).unwrap();
                    let (mut a, mut b) = w.vertices();
                    if rng.gen() {
                        std::mem::swap(&mut a, &mut b);
                    }
                    let (lo, hi) = other_two(a, b);
                    let face = if rng.gen() { lo } else { hi };
                    walk(t, w.tet, a, b, face, Some(&flips))
                })
                .collect()
        }
    }
}

/// Maps every wedge to the index of its class in `classes`.
pub fn wedge_class_map(n: usize, classes: &[EdgeClass]) -> Vec<[u32; 6]> {
    let mut map = vec![[u32::MAX; 6]; n];
    for (i, c) in classes.iter().enumerate() {
        for w in &c.wedges {
            map[w.tet][w.edge as usize] = i as u32;
        }
    }
    map
}

/// True iff every edge class is orientable.
pub fn is_manifold(t: &Triangulation) -> bool {
    non_orientable_classes(t).is_empty()
}

/// Indices of the non-orientable (Möbius) edge classes.
pub fn non_orientable_classes(t: &Triangulation) -> Vec<usize> {
    edge_classes(t)
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.orientable)
        .map(|(i, _)| i)
        .collect()
}

#[inline]
fn other_two(a: u8, b: u8) -> (u8, u8) {
    let mut rest = (0..4u8).filter(|&x| x != a && x != b);
    (rest.next().unwrap(), rest.next().unwrap())
}

#[inline]
fn first_face(a: u8, b: u8) -> u8 {
    other_two(a, b).0
}

fn walk(t: &Triangulation, tet0: usize, a0: u8, b0: u8, face0: u8, flips: Option<&[bool]>) -> EdgeClass {
    let limit = 12 * t.n() + 2;
    let (mut tet, mut a, mut b, mut exit) = (tet0, a0, b0, face0);
    let mut wedges = Vec::new();
    let mut word = Vec::new();
    let mut visited = std::collections::HashSet::new();
    loop {
        let w = Wedge {
            tet,
            edge: edge_index(a, b) as u8,
        };
        if visited.insert(w) {
            wedges.push(w);
        }
        let g = t.gluing(tet, exit);
        let class = t.face_class(tet, exit);
        let mut sign: i8 = if t.is_primary_end(tet, exit) { 1 } else { -1 };
        if let Some(f) = flips {
            if f[class] {
                sign = -sign;
            }
        }
        word.push((class, sign));
        tet = g.to.tet;
        a = g.perm.apply(a);
        b = g.perm.apply(b);
        exit = 6 - a - b - g.to.face;
        if (tet, a, b, exit) == (tet0, a0, b0, face0) {
            break;
        }
        assert!(word.len() <= limit, "edge walk failed to close");
    }
    let valence = wedges.len();
    let orientable = word.len() == valence;
    debug_assert!(orientable || word.len() == 2 * valence);
    EdgeClass {
        wedges,
        valence,
        orientable,
        boundary_word: word,
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn two_identity_has_six_annuli() {
        let classes = edge_classes(&two_identity());
        assert_eq!(classes.len(), 6);
        for c in &classes {
            assert_eq!(c.valence, 2);
            assert!(c.orientable);
            assert_eq!(c.boundary_word.len(), 2);
        }
        assert!(is_manifold(&two_identity()));
    }

    #[test]
    fn edge_index_matches_table() {
        for (i, &(a, b)) in EDGES.iter().enumerate() {
            assert_eq!(edge_index(a, b), i);
            assert_eq!(edge_index(b, a), i);
        }
    }

    #[test]
    fn seeded_walks_partition_identically() {
        let t = one_tet();
        let base = edge_classes(&t);
        for seed in 0..20 {
            let mut a: Vec<Vec<Wedge>> = base
                .iter()
                .map(|c| {
                    let mut w = c.wedges.clone();
                    w.sort();
                    w
                })
                .collect();
            let mut b: Vec<Vec<Wedge>> = edge_classes_with(&t, TieBreak::Seeded(seed))
                .iter()
                .map(|c| {
                    let mut w = c.wedges.clone();
                    w.sort();
                    w
                })
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}
