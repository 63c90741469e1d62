//! Canonical forms, isomorphisms and automorphism groups of triangulations,
//! and isomorph-free enumeration.
//!
//! Two triangulations are equivalent if they differ by a relabeling of the
//! tetrahedra and, independently in each tetrahedron, of its four vertices.

mod automorphism;
mod enumerate;

pub use automorphism::{automorphisms, automorphisms_brute_force, IsomGroupReport};
pub use enumerate::{enumerate, CensusOptions, CensusResult};

use crate::perm::Perm4;
use crate::tri::{serialize, Triangulation};
use serde::Serialize;
use std::cmp::Ordering;

/// A relabeling: tetrahedron `t` goes to `tet_perm[t]`, and its vertex `v`
/// to `vertex_perms[t](v)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Isomorphism {
    pub tet_perm: Vec<usize>,
    pub vertex_perms: Vec<Perm4>,
}

impl Isomorphism {
    pub fn identity(n: usize) -> Isomorphism {
        Isomorphism {
            tet_perm: (0..n).collect(),
            vertex_perms: vec![Perm4::IDENTITY; n],
        }
    }

    pub fn apply(&self, t: &Triangulation) -> Triangulation {
        t.relabel(&self.tet_perm, &self.vertex_perms)
    }

    pub fn inverse(&self) -> Isomorphism {
        let n = self.tet_perm.len();
        let mut tet_perm = vec![0; n];
        let mut vertex_perms = vec![Perm4::IDENTITY; n];
        for t in 0..n {
            tet_perm[self.tet_perm[t]] = t;
            vertex_perms[self.tet_perm[t]] = self.vertex_perms[t].inverse();
        }
        Isomorphism {
            tet_perm,
            vertex_perms,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isomorphism) -> Isomorphism {
        let n = self.tet_perm.len();
        let mut tet_perm = vec![0; n];
        let mut vertex_perms = vec![Perm4::IDENTITY; n];
        for t in 0..n {
            let mid = other.tet_perm[t];
            tet_perm[t] = self.tet_perm[mid];
            vertex_perms[t] = self.vertex_perms[mid].compose(other.vertex_perms[t]);
        }
        Isomorphism {
            tet_perm,
            vertex_perms,
        }
    }

    /// A uniformly random relabeling of `n` tetrahedra.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Isomorphism {
        use rand::seq::SliceRandom;
        let mut tet_perm: Vec<usize> = (0..n).collect();
        tet_perm.shuffle(rng);
        Isomorphism {
            tet_perm,
            vertex_perms: (0..n).map(|_| *Perm4::all().choose(rng).unwrap()).collect(),
        }
    }

    /// Checks that every gluing of `src` is carried onto a gluing of `dst`.
    pub fn verify(&self, src: &Triangulation, dst: &Triangulation) -> bool {
        let n = src.n();
        if dst.n() != n || self.tet_perm.len() != n || self.vertex_perms.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &x in &self.tet_perm {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return false;
            }
        }
        (0..n).all(|t| {
            let s = self.vertex_perms[t];
            (0..4u8).all(|f| {
                let g = src.gluing(t, f);
                let s2 = self.vertex_perms[g.to.tet];
                let h = dst.gluing(self.tet_perm[t], s.apply(f));
                h.to.tet == self.tet_perm[g.to.tet]
                    && h.to.face == s2.apply(g.to.face)
                    && h.perm == s2.compose(g.perm).compose(s.inverse())
            })
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalForm {
    pub representative: Triangulation,
    pub signature: String,
}

/// Canonical form together with a relabeling onto the representative.
pub fn canonical_form_with_map(t: &Triangulation) -> (CanonicalForm, Isomorphism) {
    let n = t.n();
    let mut best: Option<(Vec<u32>, usize, Perm4)> = None;
    let mut code = Vec::with_capacity(8 * 2 * n);
    let mut scratch = Scratch::new(n);
    for base in 0..n {
        for &sigma in Perm4::all() {
            let bound = best.as_ref().map(|b| b.0.as_slice());
            if bfs_code(t, base, sigma, &mut scratch, &mut code, bound) == Ordering::Less {
                best = Some((code.clone(), base, sigma));
            }
        }
    }
    let (_, base, sigma) = best.expect("at least one labeling");
    let map = bfs_map(t, base, sigma);
    let representative = map.apply(t);
    let signature = serialize(&representative);
    (
        CanonicalForm {
            representative,
            signature,
        },
        map,
    )
}

pub fn canonical_form(t: &Triangulation) -> CanonicalForm {
    canonical_form_with_map(t).0
}

/// A verified isomorphism `t1 → t2`, if one exists.
pub fn is_isomorphic(t1: &Triangulation, t2: &Triangulation) -> Option<Isomorphism> {
    if t1.n() != t2.n() {
        return None;
    }
    let (c1, m1) = canonical_form_with_map(t1);
    let (c2, m2) = canonical_form_with_map(t2);
    if c1.signature != c2.signature {
        return None;
    }
    let iso = m2.inverse().compose(&m1);
    assert!(iso.verify(t1, t2), "isomorphism witness failed verification");
    Some(iso)
}

pub(crate) struct Scratch {
    new_index: Vec<u32>,
    order: Vec<usize>,
    sigma: Vec<Perm4>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Scratch {
        Scratch {
            new_index: vec![u32::MAX; n],
            order: Vec::with_capacity(n),
            sigma: vec![Perm4::IDENTITY; n],
        }
    }
}

/// Breadth-first relabeling from `(base, sigma)`, emitted as the integer
/// sequence `k F k' F' p0 p1 p2 p3` per pairing in serialization order.
///
/// For n ≤ 10 every token is one digit, so comparing these sequences agrees
/// with comparing the serialized text. Larger inputs compare exactly by
/// falling back to text (see [`code_cmp`]).
///
/// With `bound`, stops as soon as the code is known to be larger and returns
/// `Greater`; returns `Less` only when the full code is strictly smaller (or
/// when there is no bound).
pub(crate) fn bfs_code(
    t: &Triangulation,
    base: usize,
    sigma: Perm4,
    s: &mut Scratch,
    code: &mut Vec<u32>,
    bound: Option<&[u32]>,
) -> Ordering {
    let n = t.n();
    for &x in &s.order {
        s.new_index[x] = u32::MAX;
    }
    s.order.clear();
    code.clear();
    s.new_index[base] = 0;
    s.sigma[base] = sigma;
    s.order.push(base);
    let mut state = Ordering::Equal;
    let mut k = 0;
    while k < s.order.len() {
        let old = s.order[k];
        let sg = s.sigma[old];
        let sg_inv = sg.inverse();
        for face in 0..4u8 {
            let f = sg_inv.apply(face);
            let g = t.gluing(old, f);
            let q = if s.new_index[g.to.tet] == u32::MAX {
                let idx = s.order.len() as u32;
                s.new_index[g.to.tet] = idx;
                s.sigma[g.to.tet] = sg.compose(g.perm.inverse());
                s.order.push(g.to.tet);
                idx
            } else {
                s.new_index[g.to.tet]
            };
            let sq = s.sigma[g.to.tet];
            let tf = sq.apply(g.to.face);
            if (q, tf) <= (k as u32, face) {
                continue;
            }
            let p = sq.compose(g.perm).compose(sg_inv).images();
            let line = [
                k as u32, face as u32, q, tf as u32, p[0] as u32, p[1] as u32, p[2] as u32,
                p[3] as u32,
            ];
            for x in line {
                if state == Ordering::Equal {
                    if let Some(b) = bound {
                        state = x.cmp(&b[code.len()]);
                        if state == Ordering::Greater && n <= 10 {
                            return Ordering::Greater;
                        }
                    }
                }
                code.push(x);
            }
        }
        k += 1;
    }
    debug_assert_eq!(s.order.len(), n);
    match bound {
        None => Ordering::Less,
        Some(_) if n <= 10 => state,
        Some(b) => code_cmp(code, b),
    }
}

/// Compares two codes as their serialized text would compare.
pub(crate) fn code_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let text = |c: &[u32]| -> String {
        let mut s = String::new();
        for line in c.chunks(8) {
            use std::fmt::Write;
            writeln!(
                s,
                "{} {} : {} {} : {} {} {} {}",
                line[0], line[1], line[2], line[3], line[4], line[5], line[6], line[7]
            )
            .unwrap();
        }
        s
    };
    text(a).cmp(&text(b))
}

/// The relabeling produced by the breadth-first pass from `(base, sigma)`.
pub(crate) fn bfs_map(t: &Triangulation, base: usize, sigma: Perm4) -> Isomorphism {
    let n = t.n();
    let mut s = Scratch::new(n);
    let mut code = Vec::new();
    bfs_code(t, base, sigma, &mut s, &mut code, None);
    Isomorphism {
        tet_perm: s.new_index.iter().map(|&x| x as usize).collect(),
        vertex_perms: s.sigma,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::fixtures::*;

    #[test]
    fn two_identity_canonical_is_itself() {
        let t = two_identity();
        let c = canonical_form(&t);
        assert_eq!(c.representative, t);
        assert_eq!(canonical_form(&c.representative).signature, c.signature);
    }

    #[test]
    fn relabeled_copies_agree() {
        let t = two_identity();
        for (i, &p) in Perm4::all().iter().enumerate() {
            let q = Perm4::all()[(i * 7 + 3) % 24];
            let r = t.relabel(&[1, 0], &[p, q]);
            assert_eq!(canonical_form(&r).signature, canonical_form(&t).signature);
            let iso = is_isomorphic(&t, &r).unwrap();
            assert!(iso.verify(&t, &r));
        }
    }

    #[test]
    fn isomorphism_algebra() {
        let t = two_identity();
        let a = Isomorphism {
            tet_perm: vec![1, 0],
            vertex_perms: vec![Perm4::all()[5], Perm4::all()[17]],
        };
        let r = a.apply(&t);
        assert!(a.verify(&t, &r));
        assert!(a.inverse().verify(&r, &t));
        assert_eq!(a.compose(&a.inverse()), Isomorphism::identity(2));
    }
}
