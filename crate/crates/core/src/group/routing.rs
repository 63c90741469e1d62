//! The polyhedron `Q_G`: a sphere with one handle per non-trivial element,
//! a disc on each handle core, and a disc on each relator curve of the
//! trivial presentation.
//!
//! Routing convention. The handle of generator `g` is attached at two holes
//! `g⁻`, `g⁺` on a circle `C` of the central sphere. Every occurrence of `g`
//! in a relator is a *passage*: a strand running through the handle from
//! `g⁻` to `g⁺` (or backwards for `g⁻¹`) and crossing the core circle once.
//! Strands are parallel inside the handle, so the order of the passages
//! around `g⁺` is the reverse of their order around `g⁻`. Inside `C`
//! consecutive passages of a relator are joined by straight chords, which
//! cross exactly when their endpoints interleave. The cyclic order of the
//! holes around `C` is chosen to minimize the number of crossings (for small
//! groups).
//!
//! Vertices are the crossings of all these curves; the germs of a vertex are
//! its four rays in counter-clockwise order on the oriented surface, and the
//! germ `s` is the face `s` of the dual tetrahedron.

use super::{Builder, FiniteGroupTable, MarkedPolyhedron, PipelineError, TrivialPresentation};
use crate::perm::Perm4;
use crate::tri::{FaceEnd, Triangulation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A constant `k` with `c(Q_G) ≤ k·m⁴` for every group of order `m`:
/// at most `3m²` core crossings plus at most `(3m²)²/2` chord crossings.
pub const ROUTING_CONSTANT: f64 = 8.0;

/// Germs at a core vertex, counter-clockwise.
const S_MINUS: u8 = 0;
const K_MINUS: u8 = 1;
const S_PLUS: u8 = 2;
const K_PLUS: u8 = 3;

#[derive(Clone, Debug, Serialize)]
pub struct RoutingReport {
    pub handles: usize,
    pub passages_per_handle: usize,
    pub relators: usize,
    pub chords: usize,
    pub core_vertices: usize,
    pub chord_crossings: usize,
    pub vertices: usize,
    /// `c(Q_G) / m⁴`.
    pub realized_constant: f64,
    pub bound_constant: f64,
}

#[derive(Clone, Copy)]
struct Passage {
    handle: usize,
    /// Position around the hole `g⁻`.
    index: usize,
    positive: bool,
}

/// Builds `Q_G` with voltages sending the loop through handle `g` to `g`.
pub fn build_q(g: &FiniteGroupTable) -> Result<(MarkedPolyhedron, RoutingReport), PipelineError> {
    let m = g.order();
    if m == 1 {
        let q = s3_spine(g)?;
        let report = RoutingReport {
            handles: 0,
            passages_per_handle: 0,
            relators: 0,
            chords: 0,
            core_vertices: 0,
            chord_crossings: 0,
            vertices: q.vertex_count(),
            realized_constant: q.vertex_count() as f64,
            bound_constant: ROUTING_CONSTANT,
        };
        return Ok((q, report));
    }
    let pres = TrivialPresentation::new(g);
    let handles = m - 1;
    let k = 3 * m - 4;

    // Passages, in order of occurrence.
    let mut count = vec![0usize; handles];
    let relators: Vec<Vec<Passage>> = pres
        .relators
        .iter()
        .map(|word| {
            word.iter()
                .map(|&(x, s)| {
                    let handle = x - 1;
                    let index = count[handle];
                    count[handle] += 1;
                    Passage {
                        handle,
                        index,
                        positive: s > 0,
                    }
                })
                .collect()
        })
        .collect();
    debug_assert!(count.iter().all(|&c| c == k));

    // Chords as (exit, entry) with each end `(passage, plus side?)`.
    let mut chords = Vec::new();
    for word in &relators {
        for j in 0..word.len() {
            let a = word[j];
            let b = word[(j + 1) % word.len()];
            chords.push(((a, a.positive), (b, !b.positive)));
        }
    }

    let hole_order = best_hole_order(handles, k, &chords);
    let layout = Layout::new(handles, k, &hole_order);
    let crossing_pairs: Vec<(usize, usize)> = (0..chords.len())
        .flat_map(|a| (a + 1..chords.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| layout.interleaved(&chords[a], &chords[b]))
        .collect();

    let core = handles * k;
    let vertices = core + crossing_pairs.len();
    let mut builder = Builder::new(vertices);
    let core_vertex = |p: Passage| p.handle * k + p.index;
    let gen_at = |v: usize, s: u8| {
        if v < core && s == S_PLUS {
            v / k + 1
        } else {
            0
        }
    };
    let mut edges: Vec<((usize, u8), (usize, u8))> = Vec::with_capacity(2 * vertices);

    // Core circles: K+ of passage i meets K− of passage i + 1.
    for h in 0..handles {
        for i in 0..k {
            edges.push(((h * k + i, K_PLUS), (h * k + (i + 1) % k, K_MINUS)));
        }
    }

    // Chords, cut at their crossings in order along the chord.
    let points = layout.points(&chords)?;
    let mut along: Vec<Vec<(f64, usize, u8, u8)>> = vec![Vec::new(); chords.len()];
    for (i, &(a, b)) in crossing_pairs.iter().enumerate() {
        let x = core + i;
        let (pa, qa) = points[a];
        let (pb, qb) = points[b];
        let (ta, tb) = intersect(pa, qa, pb, qb).ok_or_else(|| {
            PipelineError::Verification("interleaved chords do not cross".into())
        })?;
        // Ray 0 points back along chord `a`; the rays of `b` are placed by
        // the turn from there.
        let back = (pa.0 - qa.0, pa.1 - qa.1);
        let fwd_b = (qb.0 - pb.0, qb.1 - pb.1);
        let ccw = back.0 * fwd_b.1 - back.1 * fwd_b.0 > 0.0;
        let (b_back, b_fwd) = if ccw { (3, 1) } else { (1, 3) };
        along[a].push((ta, x, 0, 2));
        along[b].push((tb, x, b_back, b_fwd));
    }
    for (c, &((pa, _), (pb, _))) in chords.iter().enumerate() {
        let list = &mut along[c];
        list.sort_by(|x, y| x.0.total_cmp(&y.0));
        if list.windows(2).any(|w| w[1].0 - w[0].0 < 1e-9) {
            return Err(PipelineError::Verification("degenerate chord arrangement".into()));
        }
        let exit_slot = if pa.positive { S_PLUS } else { S_MINUS };
        let entry_slot = if pb.positive { S_MINUS } else { S_PLUS };
        let mut prev = (core_vertex(pa), exit_slot);
        for &(_, x, back, fwd) in list.iter() {
            edges.push((prev, (x, back)));
            prev = (x, fwd);
        }
        edges.push((prev, (core_vertex(pb), entry_slot)));
    }

    for &((v, s), (w, t)) in &edges {
        let h = g.mul(gen_at(v, s), g.inv(gen_at(w, t)));
        builder.glue(g, (v, s), (w, t), wing_map(s, t), h, 0);
    }
    check_surface(&edges, vertices, handles)?;
    let q = builder.finish(g)?;

    let report = RoutingReport {
        handles,
        passages_per_handle: k,
        relators: pres.relators.len(),
        chords: chords.len(),
        core_vertices: core,
        chord_crossings: crossing_pairs.len(),
        vertices,
        realized_constant: vertices as f64 / (m as f64).powi(4),
        bound_constant: ROUTING_CONSTANT,
    };
    Ok((q, report))
}

/// Gluing for an edge from germ `s` to germ `t` on an oriented surface:
/// the disc wing continues straight, the two surface wings swap sides.
fn wing_map(s: u8, t: u8) -> Perm4 {
    let mut img = [0u8; 4];
    img[s as usize] = t;
    img[((s + 2) % 4) as usize] = (t + 2) % 4;
    img[((s + 1) % 4) as usize] = (t + 3) % 4;
    img[((s + 3) % 4) as usize] = (t + 1) % 4;
    Perm4::new(img).unwrap()
}

/// The rotation system must close up to a surface of genus `handles`.
fn check_surface(
    edges: &[((usize, u8), (usize, u8))],
    vertices: usize,
    handles: usize,
) -> Result<(), PipelineError> {
    let mut mate = vec![(0usize, 0u8); 4 * vertices];
    for &(a, b) in edges {
        mate[4 * a.0 + a.1 as usize] = b;
        mate[4 * b.0 + b.1 as usize] = a;
    }
    let mut seen = vec![false; 4 * vertices];
    let mut faces = 0i64;
    for d in 0..4 * vertices {
        if seen[d] {
            continue;
        }
        faces += 1;
        let mut x = d;
        while !seen[x] {
            seen[x] = true;
            let (w, t) = mate[x];
            x = 4 * w + ((t + 1) % 4) as usize;
        }
    }
    let chi = vertices as i64 - 2 * vertices as i64 + faces;
    if chi != 2 - 2 * handles as i64 {
        return Err(PipelineError::Verification(format!(
            "curve system has Euler characteristic {chi}, expected {}",
            2 - 2 * handles as i64
        )));
    }
    Ok(())
}

type ChordEnd = (Passage, bool);

struct Layout {
    k: usize,
    /// Position of each hole `2h` (minus) / `2h + 1` (plus) around `C`.
    hole_slot: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(handles: usize, k: usize, hole_order: &[usize]) -> Layout {
        let mut hole_slot = vec![0; 2 * handles];
        for (i, &h) in hole_order.iter().enumerate() {
            hole_slot[h] = i;
        }
        Layout {
            k,
            hole_slot,
            total: 2 * handles * (k + 1),
        }
    }

    /// Index of a strand end around `C`; the gap after each hole keeps
    /// holes apart.
    fn position(&self, (p, plus): ChordEnd) -> usize {
        let hole = 2 * p.handle + plus as usize;
        let local = if plus { self.k - 1 - p.index } else { p.index };
        self.hole_slot[hole] * (self.k + 1) + local
    }

    fn interleaved(&self, a: &(ChordEnd, ChordEnd), b: &(ChordEnd, ChordEnd)) -> bool {
        let (a0, a1) = sorted(self.position(a.0), self.position(a.1));
        let inside = |x: usize| a0 < x && x < a1;
        inside(self.position(b.0)) != inside(self.position(b.1))
    }

    /// Chord endpoints on the unit circle, slightly jittered so that no
    /// three chords are concurrent.
    #[allow(clippy::type_complexity)]
    fn points(
        &self,
        chords: &[(ChordEnd, ChordEnd)],
    ) -> Result<Vec<((f64, f64), (f64, f64))>, PipelineError> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let angles: Vec<f64> = (0..self.total)
            .map(|i| {
                let j: f64 = rng.gen_range(-0.25..0.25);
                std::f64::consts::TAU * (i as f64 + j) / self.total as f64
            })
            .collect();
        let at = |i: usize| (angles[i].cos(), angles[i].sin());
        Ok(chords
            .iter()
            .map(|&(a, b)| (at(self.position(a)), at(self.position(b))))
            .collect())
    }
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Parameters along segments `p→q` and `r→s` of their crossing point.
fn intersect(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> Option<(f64, f64)> {
    let d1 = (q.0 - p.0, q.1 - p.1);
    let d2 = (s.0 - r.0, s.1 - r.1);
    let den = d1.0 * d2.1 - d1.1 * d2.0;
    if den.abs() < 1e-12 {
        return None;
    }
    let w = (r.0 - p.0, r.1 - p.1);
    let t = (w.0 * d2.1 - w.1 * d2.0) / den;
    let u = (w.0 * d1.1 - w.1 * d1.0) / den;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then_some((t, u))
}

/// Hole order around `C` with the fewest chord crossings; exhaustive for up
/// to three handles, the natural order beyond.
fn best_hole_order(handles: usize, k: usize, chords: &[(ChordEnd, ChordEnd)]) -> Vec<usize> {
    let natural: Vec<usize> = (0..2 * handles).collect();
    if handles > 3 {
        return natural;
    }
    let cost = |order: &[usize]| {
        let layout = Layout::new(handles, k, order);
        let mut c = 0;
        for a in 0..chords.len() {
            for b in a + 1..chords.len() {
                c += layout.interleaved(&chords[a], &chords[b]) as usize;
            }
        }
        c
    };
    // Fix hole 0 first; rotations of the circle change nothing.
    let mut best = (cost(&natural), natural.clone());
    let mut rest: Vec<usize> = (1..2 * handles).collect();
    permute(&mut rest, 0, &mut |p| {
        let order: Vec<usize> = std::iter::once(0).chain(p.iter().copied()).collect();
        let c = cost(&order);
        if c < best.0 {
            best = (c, order);
        }
    });
    best.1
}

fn permute(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permute(v, i + 1, f);
        v.swap(i, j);
    }
}

/// A one-vertex special spine of the 3-sphere (dual to a one-tetrahedron
/// triangulation of `S³`).
fn s3_spine(g: &FiniteGroupTable) -> Result<MarkedPolyhedron, PipelineError> {
    let t = Triangulation::from_pairs(
        1,
        [
            (FaceEnd::new(0, 0), FaceEnd::new(0, 1), Perm4::new(S3_PERMS[0]).unwrap()),
            (FaceEnd::new(0, 2), FaceEnd::new(0, 3), Perm4::new(S3_PERMS[1]).unwrap()),
        ],
    )?;
    Ok(MarkedPolyhedron::unmarked(t, g))
}

/// Edges of valence 5 and 1, one vertex with spherical link.
const S3_PERMS: [[u8; 4]; 2] = [[1, 0, 2, 3], [1, 2, 3, 0]];
