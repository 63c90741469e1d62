//! The dual special polyhedron P(T) and its inverse.
//!
//! A vertex of P(T) is a tetrahedron; its four germs are the tetrahedron's
//! faces. An edge joins germ `f` at one vertex to germ `f'` at another and
//! carries the face permutation, which fixes how the three wings (regions
//! meeting along the edge) continue across it. This germ data determines the
//! polyhedron, so the dual triangulation is recovered exactly.

use super::{edge_classes, FaceEnd, TriError, Triangulation};
use crate::perm::Perm4;
use serde::Serialize;
use thiserror::Error;

/// An edge of the singular graph: `ends[0]` is `(vertex, germ)` at the
/// primary end, `perm` sends germ labels at `ends[0]` to those at `ends[1]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct PolyEdge {
    pub ends: [(usize, u8); 2],
    #[serde(skip)]
    pub perm: Perm4,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Region {
    /// Traversal word `(edge, ±1)`; twice around for a Möbius neighbourhood.
    pub word: Vec<(usize, i8)>,
    /// Number of edge-sides on the boundary of the 2-cell.
    pub valence: usize,
    /// Open regions are removed (only their boundary circle remains).
    pub open: bool,
}

impl Region {
    /// The attaching word of the 2-cell: once around its boundary.
    pub fn attaching_word(&self) -> &[(usize, i8)] {
        &self.word[..self.valence]
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SpecialPolyhedron {
    pub vertex_count: usize,
    pub edges: Vec<PolyEdge>,
    pub regions: Vec<Region>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("vertex {vertex} is not dualizable: {reason}")]
    NotDualizable { vertex: usize, reason: String },
    #[error("edge {edge} is not dualizable: {reason}")]
    BadEdge { edge: usize, reason: String },
    #[error(transparent)]
    Tri(#[from] TriError),
}

impl SpecialPolyhedron {
    /// Indices of regions flagged open.
    pub fn boundary_loops(&self) -> Vec<usize> {
        (0..self.regions.len())
            .filter(|&i| self.regions[i].open)
            .collect()
    }

    /// The regular neighbourhood of the singular set: all regions opened.
    pub fn p0_view(&self) -> SpecialPolyhedron {
        let mut p = self.clone();
        for r in &mut p.regions {
            r.open = true;
        }
        p
    }

    /// Degree of every vertex, loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.ends[0].0] += 1;
            deg[e.ends[1].0] += 1;
        }
        deg
    }

    /// Euler characteristic, counting closed regions only.
    pub fn euler_characteristic(&self) -> i64 {
        let closed = self.regions.iter().filter(|r| !r.open).count();
        self.vertex_count as i64 - self.edges.len() as i64 + closed as i64
    }

    /// Vertices with an edge having both ends there.
    pub fn bad_vertices(&self) -> Vec<bool> {
        let mut bad = vec![false; self.vertex_count];
        for e in &self.edges {
            if e.ends[0].0 == e.ends[1].0 {
                bad[e.ends[0].0] = true;
            }
        }
        bad
    }
}

pub fn dual_polyhedron(t: &Triangulation) -> SpecialPolyhedron {
    let edges = t
        .face_pairs()
        .into_iter()
        .map(|p| PolyEdge {
            ends: [(p.a.tet, p.a.face), (p.b.tet, p.b.face)],
            perm: p.perm,
        })
        .collect();
    let regions = edge_classes(t)
        .into_iter()
        .map(|c| Region {
            word: c.boundary_word,
            valence: c.valence,
            open: false,
        })
        .collect();
    SpecialPolyhedron {
        vertex_count: t.n(),
        edges,
        regions,
    }
}

pub fn dual_triangulation(p: &SpecialPolyhedron) -> Result<Triangulation, DualError> {
    let mut germs = vec![[false; 4]; p.vertex_count];
    for (i, e) in p.edges.iter().enumerate() {
        for &(v, g) in &e.ends {
            if v >= p.vertex_count || g > 3 {
                return Err(DualError::BadEdge {
                    edge: i,
                    reason: format!("endpoint ({v}, {g}) out of range"),
                });
            }
            if germs[v][g as usize] {
                return Err(DualError::NotDualizable {
                    vertex: v,
                    reason: format!("germ {g} used twice"),
                });
            }
            germs[v][g as usize] = true;
        }
        if e.perm.apply(e.ends[0].1) != e.ends[1].1 {
            return Err(DualError::BadEdge {
                edge: i,
                reason: "wing map does not match the germs".into(),
            });
        }
        if e.ends[0] == e.ends[1] {
            return Err(DualError::BadEdge {
                edge: i,
                reason: "edge joins a germ to itself".into(),
            });
        }
    }
    for (v, g) in germs.iter().enumerate() {
        let valence = g.iter().filter(|&&x| x).count();
        if valence != 4 {
            return Err(DualError::NotDualizable {
                vertex: v,
                reason: format!("{valence}-valent vertex"),
            });
        }
    }
    let t = Triangulation::from_pairs(
        p.vertex_count,
        p.edges.iter().map(|e| {
            (
                FaceEnd::new(e.ends[0].0, e.ends[0].1),
                FaceEnd::new(e.ends[1].0, e.ends[1].1),
                e.perm,
            )
        }),
    )?;
    let closed = p.regions.iter().filter(|r| !r.open).count();
    if closed > 0 {
        let k = edge_classes(&t).len();
        if k != p.regions.len() {
            return Err(DualError::NotDualizable {
                vertex: 0,
                reason: format!("{} regions but the dual has {k} edges", p.regions.len()),
            });
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn two_identity_dual() {
        let p = dual_polyhedron(&two_identity());
        assert_eq!(p.vertex_count, 2);
        assert_eq!(p.edges.len(), 4);
        assert_eq!(p.regions.len(), 6);
        assert!(p.edges.iter().all(|e| e.ends[0].0 != e.ends[1].0));
        assert!(p.regions.iter().all(|r| r.word.len() == 2));
        assert!(p.degrees().iter().all(|&d| d == 4));
        assert_eq!(dual_triangulation(&p).unwrap(), two_identity());
        assert_eq!(p.p0_view().boundary_loops().len(), 6);
    }

    #[test]
    fn three_valent_vertex_rejected() {
        let mut p = dual_polyhedron(&two_identity());
        p.edges.pop();
        let err = dual_triangulation(&p).unwrap_err();
        assert!(matches!(err, DualError::NotDualizable { vertex: 0, .. }), "{err}");
        assert!(err.to_string().contains("3-valent"));
    }
}
