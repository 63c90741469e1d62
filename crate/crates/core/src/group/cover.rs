//! The universal cover and the end-to-end pipeline.

use super::{
    add_curls, bubble_all, build_q, FiniteGroupTable, MarkedPolyhedron, PipelineError,
    RoutingReport,
};
use crate::census::{automorphisms, Isomorphism};
use crate::geometry::octahedron_volume;
use crate::homology::AbelianGroup;
use crate::perm::Perm4;
use crate::tri::{dual_polyhedron, dual_triangulation, FaceEnd, Gluing, SpecialPolyhedron, Triangulation};
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Upper limit on the number of vertices of the cover.
    pub max_vertices: usize,
    /// Compute `H₁` of `Q`, `Q′` and `Q″`.
    pub stage_homology: bool,
    /// Also compute `H₁` of the cover (slow for large groups).
    pub cover_homology: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_vertices: 2_000_000,
            stage_homology: true,
            cover_homology: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StageCounts {
    pub q: usize,
    pub q_prime: usize,
    pub q_double_prime: usize,
    pub p_g: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub group_order: usize,
    pub routing: RoutingReport,
    pub stages: StageCounts,
    pub bad_after_bubble: usize,
    pub bad_after_curls: usize,
    /// Edges of `Q′`, each carrying its own number of curls.
    pub curled_edges: usize,
    pub h1_group: AbelianGroup,
    pub h1_q: Option<AbelianGroup>,
    pub h1_q_prime: Option<AbelianGroup>,
    pub h1_q_double_prime: Option<AbelianGroup>,
    pub h1_cover: Option<AbelianGroup>,
    /// Every element of `G` acts on the cover as an automorphism.
    pub deck_verified: bool,
    pub aut_order: usize,
    pub aut_generators: usize,
    /// `c(P_G) / m⁹`.
    pub realized_constant: f64,
    pub v_o: f64,
    /// `2·c(P_G)·v_O`: the volume of the double of the realizing triangulation.
    pub vol_d: f64,
}

/// The cover of `P` given by its voltages: vertex `(v, x)` is numbered
/// `v·m + x`, and the edge leaving `v` with voltage `h` leads from sheet `x`
/// to sheet `x·h`. `G` acts by left multiplication on sheets.
pub fn universal_cover_triangulation(
    p: &MarkedPolyhedron,
    g: &FiniteGroupTable,
) -> Result<Triangulation, PipelineError> {
    let m = g.order();
    let generated = g.generated_order(&p.voltage);
    if generated != m || p.group.order() != m {
        return Err(PipelineError::NotGenerating {
            generated,
            order: m,
        });
    }
    let t = &p.triangulation;
    let mut table: Vec<[Option<Gluing>; 4]> = Vec::with_capacity(t.n() * m);
    for v in 0..t.n() {
        for x in 0..m {
            let mut row = [None; 4];
            for f in 0..4u8 {
                let gl = t.gluing(v, f);
                let y = g.mul(x, p.voltage_at(v, f));
                row[f as usize] = Some(Gluing {
                    to: FaceEnd::new(gl.to.tet * m + y, gl.to.face),
                    perm: gl.perm,
                });
            }
            table.push(row);
        }
    }
    Ok(Triangulation::from_table(table)?)
}

pub fn universal_cover(
    p: &MarkedPolyhedron,
    g: &FiniteGroupTable,
) -> Result<SpecialPolyhedron, PipelineError> {
    Ok(dual_polyhedron(&universal_cover_triangulation(p, g)?))
}

/// The deck transformation of `a ∈ G` on the cover.
fn deck(n: usize, g: &FiniteGroupTable, a: usize) -> Isomorphism {
    let m = g.order();
    Isomorphism {
        tet_perm: (0..n * m).map(|i| (i / m) * m + g.mul(a, i % m)).collect(),
        vertex_perms: vec![Perm4::IDENTITY; n * m],
    }
}

pub fn realize_group(g: &FiniteGroupTable) -> Result<(Triangulation, RealizationReport), PipelineError> {
    realize_group_with(g, &PipelineOptions::default())
}

/// Runs the whole pipeline and verifies `Aut(T_G) ≅ G` by order.
pub fn realize_group_with(
    g: &FiniteGroupTable,
    options: &PipelineOptions,
) -> Result<(Triangulation, RealizationReport), PipelineError> {
    let m = g.order();
    let (q, routing) = build_q(g)?;
    q.check_voltages()?;
    let c = q.vertex_count();
    let c1 = 5 * c;
    let c2 = 2 * c1 * (c1 + 1);
    if m * c2 > options.max_vertices {
        return Err(PipelineError::ResourceLimit {
            stage: "universal cover",
            count: m * c2,
            limit: options.max_vertices,
        });
    }
    let h1 = |x: &MarkedPolyhedron| options.stage_homology.then(|| x.abelianized_pi1());
    let h1_q = h1(&q);

    let q1 = bubble_all(&q);
    let q2 = add_curls(&q1)?;
    q2.check_voltages()?;
    let stages = StageCounts {
        q: c,
        q_prime: q1.vertex_count(),
        q_double_prime: q2.vertex_count(),
        p_g: m * q2.vertex_count(),
    };
    if stages.q_prime != c1 || stages.q_double_prime != c2 {
        return Err(PipelineError::Verification(format!(
            "stage counts {stages:?} do not follow 5c and 2c(c+1)"
        )));
    }
    let cover = universal_cover_triangulation(&q2, g)?;
    if cover.n() != stages.p_g {
        return Err(PipelineError::Verification("cover has the wrong size".into()));
    }
    let deck_verified = (0..m).all(|a| deck(q2.vertex_count(), g, a).verify(&cover, &cover));
    if !deck_verified {
        return Err(PipelineError::Verification("deck transformation failed".into()));
    }
    let poly = dual_polyhedron(&cover);
    let h1_cover = options
        .cover_homology
        .then(|| crate::homology::abelianized_pi1(&poly).expect("cover is connected"));
    let t_g = dual_triangulation(&poly).map_err(|e| PipelineError::Verification(e.to_string()))?;
    drop(poly);

    let aut = automorphisms(&t_g);
    if aut.aut_order != m {
        return Err(PipelineError::Verification(format!(
            "automorphism group has order {}, expected {m}",
            aut.aut_order
        )));
    }
    let v_o = octahedron_volume();
    let report = RealizationReport {
        group_order: m,
        routing,
        stages: stages.clone(),
        bad_after_bubble: q1.bad_count(),
        bad_after_curls: q2.bad_count(),
        curled_edges: 2 * c1,
        h1_group: g.abelianization(),
        h1_q,
        h1_q_prime: h1(&q1),
        h1_q_double_prime: h1(&q2),
        h1_cover,
        deck_verified,
        aut_order: aut.aut_order,
        aut_generators: aut.aut_generators.len(),
        realized_constant: stages.p_g as f64 / (m as f64).powi(9),
        v_o,
        vol_d: 2.0 * stages.p_g as f64 * v_o,
    };
    Ok((t_g, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_cover_is_simply_connected_homologically() {
        let g = FiniteGroupTable::cyclic(2);
        let opts = PipelineOptions {
            cover_homology: true,
            ..Default::default()
        };
        let (t, r) = realize_group_with(&g, &opts).unwrap();
        assert_eq!(t.n(), r.stages.p_g);
        assert_eq!(r.aut_order, 2);
        assert_eq!(r.h1_q.as_ref().unwrap().to_string(), "Z/2");
        assert_eq!(r.h1_q_prime, r.h1_q);
        assert_eq!(r.h1_q_double_prime, r.h1_q);
        assert_eq!(r.h1_cover.unwrap(), AbelianGroup::trivial());
    }
}
