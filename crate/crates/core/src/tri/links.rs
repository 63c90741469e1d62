//! Vertex classes and their link surfaces.

use super::Triangulation;
use crate::dsu::Dsu;
use serde::Serialize;

/// The link of one vertex class: a closed surface made of corner triangles.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VertexLink {
    /// Tetrahedron corners `(tet, vertex)` in the class, ascending.
    pub corners: Vec<(usize, u8)>,
    pub triangles: usize,
    pub edges: usize,
    pub vertices: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    /// Genus if orientable, cross-cap number otherwise.
    pub genus: usize,
}

pub fn vertex_links(t: &Triangulation) -> Vec<VertexLink> {
    let n = t.n();
    let mut corners = Dsu::new(4 * n);
    let mut ends = Dsu::new(16 * n);
    for pair in t.face_pairs() {
        let (a, b, p) = (pair.a, pair.b, pair.perm);
        for v in (0..4u8).filter(|&v| v != a.face) {
            corners.union(4 * a.tet + v as usize, 4 * b.tet + p.apply(v) as usize);
            for w in (0..4u8).filter(|&w| w != a.face && w != v) {
                ends.union(
                    16 * a.tet + 4 * v as usize + w as usize,
                    16 * b.tet + 4 * p.apply(v) as usize + p.apply(w) as usize,
                );
            }
        }
    }

    // Class index per corner, ordered by smallest member.
    let mut class_of_root = std::collections::HashMap::new();
    let mut class_of = vec![0usize; 4 * n];
    let mut members: Vec<Vec<(usize, u8)>> = Vec::new();
    for c in 0..4 * n {
        let r = corners.find(c);
        let id = *class_of_root.entry(r).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        class_of[c] = id;
        members[id].push((c / 4, (c % 4) as u8));
    }
    let k = members.len();

    let mut link_edges = vec![0usize; k];
    for pair in t.face_pairs() {
        for v in (0..4u8).filter(|&v| v != pair.a.face) {
            link_edges[class_of[4 * pair.a.tet + v as usize]] += 1;
        }
    }
    let mut link_vertices = vec![0usize; k];
    for tet in 0..n {
        for v in 0..4usize {
            for w in (0..4usize).filter(|&w| w != v) {
                let e = 16 * tet + 4 * v + w;
                if ends.find(e) == e {
                    link_vertices[class_of[4 * tet + v]] += 1;
                }
            }
        }
    }

    // Orientability: sign per corner, propagated across glued sides.
    let mut sign = vec![0i8; 4 * n];
    let mut orientable = vec![true; k];
    let mut stack = Vec::new();
    for start in 0..4 * n {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        stack.push(start);
        while let Some(c) = stack.pop() {
            let (tet, v) = (c / 4, (c % 4) as u8);
            for f in (0..4u8).filter(|&f| f != v) {
                let g = t.gluing(tet, f);
                let d = 4 * g.to.tet + g.perm.apply(v) as usize;
                let want = if g.perm.is_even() { -sign[c] } else { sign[c] };
                if sign[d] == 0 {
                    sign[d] = want;
                    stack.push(d);
                } else if sign[d] != want {
                    orientable[class_of[c]] = false;
                }
            }
        }
    }

    members
        .into_iter()
        .enumerate()
        .map(|(i, corners)| {
            let triangles = corners.len();
            let chi = triangles as i64 - link_edges[i] as i64 + link_vertices[i] as i64;
            let genus = if orientable[i] { (2 - chi) / 2 } else { 2 - chi };
            VertexLink {
                corners,
                triangles,
                edges: link_edges[i],
                vertices: link_vertices[i],
                euler_characteristic: chi,
                orientable: orientable[i],
                genus: genus.max(0) as usize,
            }
        })
        .collect()
}
