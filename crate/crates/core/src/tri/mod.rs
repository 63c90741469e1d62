//! Triangulations as face-pairing data: validation, the TRI text format,
//! edge and vertex orbits, and the dual special polyhedron.

mod edges;
mod format;
mod links;
mod polyhedron;
mod random;

pub use edges::{
    edge_classes, edge_classes_with, edge_index, is_manifold, non_orientable_classes,
    wedge_class_map, EdgeClass, TieBreak, Wedge, EDGES,
};
pub use format::{parse, serialize};
pub use links::{vertex_links, VertexLink};
pub use random::random_triangulation;
pub use polyhedron::{
    dual_polyhedron, dual_triangulation, DualError, PolyEdge, Region, SpecialPolyhedron,
};

use crate::perm::Perm4;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// One side of a tetrahedron: face `face` of tetrahedron `tet` (opposite vertex `face`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct FaceEnd {
    pub tet: usize,
    pub face: u8,
}

impl FaceEnd {
    pub fn new(tet: usize, face: u8) -> FaceEnd {
        FaceEnd { tet, face }
    }
}

impl fmt::Display for FaceEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tet, self.face)
    }
}

/// Where a face-end is glued, and the vertex map used.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gluing {
    pub to: FaceEnd,
    pub perm: Perm4,
}

/// One face pairing, keyed by its lexicographically smaller face-end.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FacePair {
    pub a: FaceEnd,
    pub b: FaceEnd,
    /// Maps vertex labels of `a.tet` to those of `b.tet`.
    pub perm: Perm4,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("face-end {0} is not glued")]
    Incomplete(FaceEnd),
    #[error("gluing is not involutive at face-end {0}")]
    NonInvolutive(FaceEnd),
    #[error("face-end {0} is glued to itself")]
    SelfGlued(FaceEnd),
    #[error("permutation of face-end {at} sends face {face} to {image}, expected {expected}")]
    BadPermutation {
        at: FaceEnd,
        face: u8,
        image: u8,
        expected: u8,
    },
    #[error("face-end {0} refers to a missing tetrahedron")]
    OutOfRange(FaceEnd),
    #[error("gluing graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("a triangulation needs at least one tetrahedron")]
    Empty,
}

/// A connected, complete, involutive system of face pairings on `n` tetrahedra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Triangulation {
    glue: Vec<[Gluing; 4]>,
    face_class: Vec<[u32; 4]>,
}

impl Triangulation {
    /// Validates a full table of directed gluings.
    pub fn from_table(table: Vec<[Option<Gluing>; 4]>) -> Result<Triangulation, TriError> {
        let n = table.len();
        if n == 0 {
            return Err(TriError::Empty);
        }
        let mut glue = Vec::with_capacity(n);
        for (t, row) in table.iter().enumerate() {
            let mut out = [Gluing {
                to: FaceEnd::new(0, 0),
                perm: Perm4::IDENTITY,
            }; 4];
            for f in 0..4u8 {
                let here = FaceEnd::new(t, f);
                let g = row[f as usize].ok_or(TriError::Incomplete(here))?;
                if g.to.tet >= n || g.to.face > 3 {
                    return Err(TriError::OutOfRange(g.to));
                }
                if g.to == here {
                    return Err(TriError::SelfGlued(here));
                }
                if g.perm.apply(f) != g.to.face {
                    return Err(TriError::BadPermutation {
                        at: here,
                        face: f,
                        image: g.perm.apply(f),
                        expected: g.to.face,
                    });
                }
                out[f as usize] = g;
            }
            glue.push(out);
        }
        for t in 0..n {
            for f in 0..4u8 {
                let g = glue[t][f as usize];
                let back = glue[g.to.tet][g.to.face as usize];
                if back.to != FaceEnd::new(t, f) || back.perm != g.perm.inverse() {
                    return Err(TriError::NonInvolutive(FaceEnd::new(t, f)));
                }
            }
        }
        let components = count_components(&glue);
        if components != 1 {
            return Err(TriError::Disconnected { components });
        }
        Ok(Triangulation::assemble(glue))
    }

    /// Builds a triangulation from a list of pairings, each given once
    /// (either orientation).
    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (FaceEnd, FaceEnd, Perm4)>,
    ) -> Result<Triangulation, TriError> {
        let mut table = vec![[None; 4]; n];
        for (a, b, p) in pairs {
            for x in [a, b] {
                if x.tet >= n || x.face > 3 {
                    return Err(TriError::OutOfRange(x));
                }
            }
            set_directed(&mut table, a, Gluing { to: b, perm: p })?;
            set_directed(
                &mut table,
                b,
                Gluing {
                    to: a,
                    perm: p.inverse(),
                },
            )?;
        }
        Triangulation::from_table(table)
    }

    fn assemble(glue: Vec<[Gluing; 4]>) -> Triangulation {
        let n = glue.len();
        let mut face_class = vec![[u32::MAX; 4]; n];
        let mut next = 0u32;
        for t in 0..n {
            for f in 0..4 {
                if face_class[t][f] == u32::MAX {
                    let g = glue[t][f];
                    face_class[t][f] = next;
                    face_class[g.to.tet][g.to.face as usize] = next;
                    next += 1;
                }
            }
        }
        Triangulation { glue, face_class }
    }

    /// Number of tetrahedra.
    pub fn n(&self) -> usize {
        self.glue.len()
    }

    #[inline]
    pub fn gluing(&self, tet: usize, face: u8) -> Gluing {
        self.glue[tet][face as usize]
    }

    /// Index of the face class (pairing) containing the face-end. Classes are
    /// numbered in ascending order of their smaller face-end.
    #[inline]
    pub fn face_class(&self, tet: usize, face: u8) -> usize {
        self.face_class[tet][face as usize] as usize
    }

    /// True iff `(tet, face)` is the smaller end of its pairing.
    #[inline]
    pub fn is_primary_end(&self, tet: usize, face: u8) -> bool {
        FaceEnd::new(tet, face) < self.glue[tet][face as usize].to
    }

    /// All 2n pairings in ascending order of their smaller face-end.
    pub fn face_pairs(&self) -> Vec<FacePair> {
        let mut out = Vec::with_capacity(2 * self.n());
        for t in 0..self.n() {
            for f in 0..4u8 {
                if self.is_primary_end(t, f) {
                    let g = self.gluing(t, f);
                    out.push(FacePair {
                        a: FaceEnd::new(t, f),
                        b: g.to,
                        perm: g.perm,
                    });
                }
            }
        }
        out
    }

    /// Relabels: old tet `t` becomes `tet_perm[t]`, and its vertex `v` becomes
    /// `vertex_perms[t](v)`.
    pub fn relabel(&self, tet_perm: &[usize], vertex_perms: &[Perm4]) -> Triangulation {
        let n = self.n();
        let mut glue = vec![
            [Gluing {
                to: FaceEnd::new(0, 0),
                perm: Perm4::IDENTITY
            }; 4];
            n
        ];
        for t in 0..n {
            let s = vertex_perms[t];
            for f in 0..4u8 {
                let g = self.gluing(t, f);
                let s2 = vertex_perms[g.to.tet];
                let new_perm = s2.compose(g.perm).compose(s.inverse());
                glue[tet_perm[t]][s.apply(f) as usize] = Gluing {
                    to: FaceEnd::new(tet_perm[g.to.tet], s2.apply(g.to.face)),
                    perm: new_perm,
                };
            }
        }
        Triangulation::assemble(glue)
    }

    /// Neighbouring tetrahedra across the four faces.
    pub fn neighbours(&self, tet: usize) -> [usize; 4] {
        let g = &self.glue[tet];
        [g[0].to.tet, g[1].to.tet, g[2].to.tet, g[3].to.tet]
    }
}

fn set_directed(
    table: &mut [[Option<Gluing>; 4]],
    at: FaceEnd,
    g: Gluing,
) -> Result<(), TriError> {
    let slot = &mut table[at.tet][at.face as usize];
    match slot {
        Some(existing) if *existing != g => Err(TriError::NonInvolutive(at)),
        _ => {
            *slot = Some(g);
            Ok(())
        }
    }
}

fn count_components(glue: &[[Gluing; 4]]) -> usize {
    let n = glue.len();
    let mut seen = vec![false; n];
    let mut components = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(t) = stack.pop() {
            for g in &glue[t] {
                if !seen[g.to.tet] {
                    seen[g.to.tet] = true;
                    stack.push(g.to.tet);
                }
            }
        }
    }
    components
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Two tetrahedra, face f of one glued to face f of the other by the identity.
    pub fn two_identity() -> Triangulation {
        Triangulation::from_pairs(
            2,
            (0..4).map(|f| (FaceEnd::new(0, f), FaceEnd::new(1, f), Perm4::IDENTITY)),
        )
        .unwrap()
    }

    /// One tetrahedron with faces 0↔1 via (0 1) and 2↔3 via (2 3).
    pub fn one_tet() -> Triangulation {
        Triangulation::from_pairs(
            1,
            [
                (FaceEnd::new(0, 0), FaceEnd::new(0, 1), Perm4::transposition(0, 1)),
                (FaceEnd::new(0, 2), FaceEnd::new(0, 3), Perm4::transposition(2, 3)),
            ],
        )
        .unwrap()
    }
}
