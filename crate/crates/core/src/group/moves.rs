//! Bubbles, curls and curl lengths.

use super::{Builder, MarkedPolyhedron, PipelineError};
use crate::perm::Perm4;

/// `τ = (0 1)(2 3)`: folds face 2 of a curl vertex onto face 3, and carries face
/// 1 of one curl vertex to face 0 of the next.
fn tau() -> Perm4 {
    Perm4::transposition(0, 1).compose(Perm4::transposition(2, 3))
}

/// The permutation sending `f` to `target` and the other three faces, in
/// increasing order, to the remaining labels in increasing order.
fn lift(f: u8, target: u8) -> Perm4 {
    let mut img = [0u8; 4];
    img[f as usize] = target;
    let mut rest = (0..4u8).filter(|&x| x != target);
    for x in (0..4u8).filter(|&x| x != f) {
        img[x as usize] = rest.next().unwrap();
    }
    Perm4::new(img).unwrap()
}

/// Inserts a bubble in every edge.
///
/// An edge from `(t₁, f₁)` to `(t₂, f₂)` becomes a path `t₁ — X ≡ Y — t₂`
/// where `X` and `Y` share three edges: in the dual, two tetrahedra glued
/// along three faces by the identity. The three wings of the old edge run
/// through the new edges, and the three new bigon regions form a sphere, so
/// `π₁` is unchanged. The two new vertices are good, and no edge of the
/// result is a loop.
pub fn bubble_all(p: &MarkedPolyhedron) -> MarkedPolyhedron {
    let t = &p.triangulation;
    let g = &p.group;
    let mut b = Builder::new(t.n());
    for (e, pair) in t.face_pairs().into_iter().enumerate() {
        let x = b.add_tet();
        let y = b.add_tet();
        let (t1, f1) = (pair.a.tet, pair.a.face);
        let q = lift(f1, 3);
        b.glue(g, (t1, f1), (x, 3), q, p.voltage[e], p.curls[e]);
        for f in 0..3 {
            b.glue(g, (x, f), (y, f), Perm4::IDENTITY, 0, p.curls[e]);
        }
        let r = pair.perm.compose(q.inverse());
        b.glue(g, (y, 3), (pair.b.tet, pair.b.face), r, 0, p.curls[e]);
    }
    b.finish(g).expect("bubbled polyhedron is valid")
}

/// Adds `i` curls along the `i`-th edge (`i = 1..=2c`, face-class order).
///
/// A curl vertex `Z` has faces 2 and 3 folded together by `τ`, making a
/// loop edge that bounds a one-edge region; its faces 0 and 1 continue the
/// edge. Each curl is a contractible disc attached along a contractible
/// loop, so the homotopy type is unchanged.
pub fn add_curls(p: &MarkedPolyhedron) -> Result<MarkedPolyhedron, PipelineError> {
    if let Some(v) = p.bad.iter().position(|&b| b) {
        return Err(PipelineError::BadVertex(v));
    }
    let t = &p.triangulation;
    let g = &p.group;
    let mut b = Builder::new(t.n());
    for (e, pair) in t.face_pairs().into_iter().enumerate() {
        let i = e as u32 + 1;
        let (t1, f1) = (pair.a.tet, pair.a.face);
        let q = lift(f1, 0);
        let mut prev: Option<usize> = None;
        for _ in 0..i {
            let z = b.add_tet();
            b.glue(g, (z, 2), (z, 3), tau(), 0, i);
            match prev {
                None => b.glue(g, (t1, f1), (z, 0), q, p.voltage[e], i),
                Some(w) => b.glue(g, (w, 1), (z, 0), tau(), 0, i),
            }
            prev = Some(z);
        }
        // Passing through a curl vertex from face 0 to face 1 acts as τ on
        // the wings; the chain as a whole acts as τ once.
        let r = pair.perm.compose(q.inverse()).compose(tau());
        b.glue(g, (prev.unwrap(), 1), (pair.b.tet, pair.b.face), r, 0, i);
    }
    b.finish(g)
}

/// Longest simple path in the singular graph that leaves the good vertex `v`
/// through germ `germ` and afterwards visits bad vertices only.
pub fn lambda(p: &MarkedPolyhedron, v: usize, germ: u8) -> Result<usize, PipelineError> {
    let t = &p.triangulation;
    if v >= t.n() || germ > 3 {
        return Err(PipelineError::NoSuchGerm { vertex: v, germ });
    }
    if p.bad[v] {
        return Err(PipelineError::BadVertex(v));
    }
    let first = t.gluing(v, germ).to.tet;
    if !p.bad[first] {
        return Ok(0);
    }
    let mut visited = vec![v, first];
    Ok(1 + longest(p, first, &mut visited))
}

fn longest(p: &MarkedPolyhedron, x: usize, visited: &mut Vec<usize>) -> usize {
    let mut best = 0;
    for y in p.triangulation.neighbours(x) {
        if p.bad[y] && !visited.contains(&y) {
            visited.push(y);
            best = best.max(1 + longest(p, y, visited));
            visited.pop();
        }
    }
    best
}
