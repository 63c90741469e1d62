//! Realizing a finite group `G` as the automorphism group of a triangulation.
//!
//! The pipeline: a special polyhedron `Q` with `π₁(Q) ≅ G` built from the
//! trivial presentation of `G` ([`build_q`]); a bubble along every edge to
//! remove bad vertices ([`bubble_all`]); `i` curls along the `i`-th edge to
//! kill all symmetry ([`add_curls`]); the universal cover, on which `G` acts
//! by deck transformations ([`universal_cover`]); and finally the dual
//! triangulation, whose automorphism group is checked to be exactly `G`
//! ([`realize_group`]).
//!
//! Polyhedra are stored through their dual triangulations: a vertex is a
//! tetrahedron, an edge is a face pairing.

mod cover;
mod moves;
mod routing;
mod table;

pub use cover::{
    realize_group, realize_group_with, universal_cover, universal_cover_triangulation,
    PipelineOptions, RealizationReport, StageCounts,
};
pub use moves::{add_curls, bubble_all, lambda};
pub use routing::{build_q, RoutingReport, ROUTING_CONSTANT};
pub use table::{FiniteGroupTable, GroupError, TrivialPresentation};

use crate::homology::{abelianized_pi1, AbelianGroup};
use crate::perm::Perm4;
use crate::tri::{dual_polyhedron, FaceEnd, Gluing, SpecialPolyhedron, TriError, Triangulation};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("vertex {0} is bad")]
    BadVertex(usize),
    #[error("germ {germ} of vertex {vertex} is out of range")]
    NoSuchGerm { vertex: usize, germ: u8 },
    #[error("{stage}: {count} vertices exceeds the limit of {limit}")]
    ResourceLimit {
        stage: &'static str,
        count: usize,
        limit: usize,
    },
    #[error("voltages generate a subgroup of order {generated}, not {order}")]
    NotGenerating { generated: usize, order: usize },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Tri(#[from] TriError),
}

/// A special polyhedron (via its dual triangulation) with the bookkeeping the
/// pipeline needs.
///
/// Edge-indexed data follows the face classes of `triangulation`.
#[derive(Clone, Debug)]
pub struct MarkedPolyhedron {
    pub group: FiniteGroupTable,
    pub triangulation: Triangulation,
    /// Vertices with an edge having both ends there.
    pub bad: Vec<bool>,
    /// Curls added along the original edge each edge belongs to.
    pub curls: Vec<u32>,
    /// Element of `G` read when crossing the edge from its primary end.
    /// Trivial on the edges of a spanning tree.
    pub voltage: Vec<usize>,
}

impl MarkedPolyhedron {
    /// Marks a bare polyhedron: trivial voltages, no curls.
    pub fn unmarked(triangulation: Triangulation, group: &FiniteGroupTable) -> MarkedPolyhedron {
        let mut b = Builder::new(triangulation.n());
        for p in triangulation.face_pairs() {
            b.glue(group, (p.a.tet, p.a.face), (p.b.tet, p.b.face), p.perm, 0, 0);
        }
        b.finish(group).expect("rebuilding a valid triangulation")
    }

    pub fn vertex_count(&self) -> usize {
        self.triangulation.n()
    }

    pub fn polyhedron(&self) -> SpecialPolyhedron {
        dual_polyhedron(&self.triangulation)
    }

    pub fn bad_count(&self) -> usize {
        self.bad.iter().filter(|&&b| b).count()
    }

    pub fn abelianized_pi1(&self) -> AbelianGroup {
        abelianized_pi1(&self.polyhedron()).expect("pipeline polyhedra are connected")
    }

    /// Voltage read when leaving `tet` through `face`.
    pub fn voltage_at(&self, tet: usize, face: u8) -> usize {
        let g = &self.group;
        let v = self.voltage[self.triangulation.face_class(tet, face)];
        if self.triangulation.is_primary_end(tet, face) {
            v
        } else {
            g.inv(v)
        }
    }

    pub fn curls_at(&self, tet: usize, face: u8) -> u32 {
        self.curls[self.triangulation.face_class(tet, face)]
    }

    /// Checks that every region reads the identity around its boundary, so
    /// the voltages define a homomorphism `π₁ → G`.
    pub fn check_voltages(&self) -> Result<(), PipelineError> {
        let g = &self.group;
        for (i, r) in self.polyhedron().regions.iter().enumerate() {
            let mut x = 0;
            for &(e, s) in r.attaching_word() {
                let v = self.voltage[e];
                x = g.mul(x, if s > 0 { v } else { g.inv(v) });
            }
            if x != 0 {
                return Err(PipelineError::Verification(format!(
                    "region {i} has non-trivial holonomy"
                )));
            }
        }
        Ok(())
    }

    /// Order of the subgroup of `G` that the voltages generate.
    pub fn generated_order(&self) -> usize {
        self.group.generated_order(&self.voltage)
    }
}

/// Face-end level builder shared by the pipeline stages.
pub(crate) struct Builder {
    table: Vec<[Option<Gluing>; 4]>,
    voltage: Vec<[usize; 4]>,
    curls: Vec<[u32; 4]>,
}

impl Builder {
    pub(crate) fn new(n: usize) -> Builder {
        Builder {
            table: vec![[None; 4]; n],
            voltage: vec![[0; 4]; n],
            curls: vec![[0; 4]; n],
        }
    }

    pub(crate) fn add_tet(&mut self) -> usize {
        self.table.push([None; 4]);
        self.voltage.push([0; 4]);
        self.curls.push([0; 4]);
        self.table.len() - 1
    }

    /// Glues `a` to `b` by `perm`; the voltage `h` is read from `a` to `b`.
    pub(crate) fn glue(
        &mut self,
        g: &FiniteGroupTable,
        a: (usize, u8),
        b: (usize, u8),
        perm: Perm4,
        h: usize,
        curls: u32,
    ) {
        debug_assert_eq!(perm.apply(a.1), b.1);
        self.table[a.0][a.1 as usize] = Some(Gluing {
            to: FaceEnd::new(b.0, b.1),
            perm,
        });
        self.table[b.0][b.1 as usize] = Some(Gluing {
            to: FaceEnd::new(a.0, a.1),
            perm: perm.inverse(),
        });
        self.voltage[a.0][a.1 as usize] = h;
        self.voltage[b.0][b.1 as usize] = g.inv(h);
        self.curls[a.0][a.1 as usize] = curls;
        self.curls[b.0][b.1 as usize] = curls;
    }

    pub(crate) fn finish(self, g: &FiniteGroupTable) -> Result<MarkedPolyhedron, PipelineError> {
        let t = Triangulation::from_table(self.table)?;
        let n = t.n();
        let pairs = t.face_pairs();
        let mut voltage = Vec::with_capacity(pairs.len());
        let mut curls = Vec::with_capacity(pairs.len());
        let mut bad = vec![false; n];
        for p in &pairs {
            voltage.push(self.voltage[p.a.tet][p.a.face as usize]);
            curls.push(self.curls[p.a.tet][p.a.face as usize]);
            if p.a.tet == p.b.tet {
                bad[p.a.tet] = true;
            }
        }
        let mut m = MarkedPolyhedron {
            group: g.clone(),
            triangulation: t,
            bad,
            curls,
            voltage,
        };
        gauge_normalize(&mut m);
        Ok(m)
    }
}

/// Conjugates the voltages by a function on vertices so that they are
/// trivial along a breadth-first spanning tree from vertex 0. The induced
/// homomorphism on `π₁` (based at vertex 0) is unchanged.
fn gauge_normalize(m: &mut MarkedPolyhedron) {
    let g = m.group.clone();
    let t = &m.triangulation;
    let n = t.n();
    // Potential `c(x)` with new voltage `c(x)·h·c(y)⁻¹` on an edge x → y.
    let mut c = vec![usize::MAX; n];
    c[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for f in 0..4u8 {
            let y = t.gluing(x, f).to.tet;
            if c[y] == usize::MAX {
                let h = m.voltage_at(x, f);
                c[y] = g.mul(c[x], h);
                queue.push_back(y);
            }
        }
    }
    for p in t.face_pairs() {
        let e = t.face_class(p.a.tet, p.a.face);
        let h = m.voltage[e];
        m.voltage[e] = g.mul(g.mul(c[p.a.tet], h), g.inv(c[p.b.tet]));
    }
}
