//! Exact integer homology.
//!
//! H₁ of the double D(T) is computed from its split presentation:
//! `Z^{n+1}` from the singular graph of P(T), plus one meridian generator per
//! edge class modulo one three-term relation per face.

mod snf;
mod sparse;

pub use snf::{smith_normal_form, IntegerMatrix, SmithForm};
pub use sparse::{cokernel_dense, cokernel_sparse};

use crate::tri::{edge_classes_with, SpecialPolyhedron, TieBreak, Triangulation};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`
/// with `d₁ | d₂ | … | d_k` and every `dᵢ ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Cokernel of a diagonal map into `Z^rows` with the given nonzero
    /// diagonal (already a divisibility chain, signs ignored).
    pub fn from_diagonal(rows: usize, diagonal: &[BigInt]) -> AbelianGroup {
        let torsion: Vec<BigInt> = diagonal
            .iter()
            .map(|d| d.magnitude().clone().into())
            .filter(|d: &BigInt| !d.is_one())
            .collect();
        debug_assert!(torsion.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)));
        AbelianGroup {
            free_rank: rows - diagonal.len(),
            torsion,
        }
    }

    /// Direct sum.
    pub fn sum(&self, other: &AbelianGroup) -> AbelianGroup {
        // Re-normalize the torsion through a diagonal SNF.
        let all: Vec<&BigInt> = self.torsion.iter().chain(&other.torsion).collect();
        let mut m = IntegerMatrix::zeros(all.len(), all.len());
        for (i, d) in all.iter().enumerate() {
            m.set(i, i, (*d).clone());
        }
        let t = smith_normal_form(&m).cokernel;
        AbelianGroup {
            free_rank: self.free_rank + other.free_rank + t.free_rank,
            torsion: t.torsion,
        }
    }

    /// Torsion coefficients as machine integers (panics past `u64`).
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| d.to_u64().expect("torsion coefficient exceeds u64"))
            .collect()
    }

    /// Order of the group, or `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Torsion<'a>(&'a [BigInt]);
        impl Serialize for Torsion<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for d in self.0 {
                    match d.to_u64() {
                        Some(x) => seq.serialize_element(&x)?,
                        None => seq.serialize_element(&d.to_string())?,
                    }
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("rank", &self.free_rank)?;
        st.serialize_field("torsion", &Torsion(&self.torsion))?;
        st.end()
    }
}

/// Signed incidence of faces in the boundary words of the edge classes.
#[derive(Clone, Debug)]
pub struct RegionIncidence {
    /// One row per edge class, one column per face class.
    pub matrix: IntegerMatrix,
}

pub fn region_incidence(t: &Triangulation) -> RegionIncidence {
    region_incidence_with(t, TieBreak::Canonical)
}

pub fn region_incidence_with(t: &Triangulation, tie: TieBreak) -> RegionIncidence {
    let classes = edge_classes_with(t, tie);
    let mut m = IntegerMatrix::zeros(classes.len(), 2 * t.n());
    for (e, c) in classes.iter().enumerate() {
        for &(f, s) in &c.boundary_word {
            m.add_to(e, f, s as i64);
        }
    }
    RegionIncidence { matrix: m }
}

/// `H₁(D(T)) = Z^{n+1} ⊕ coker(C)`.
pub fn h1_double(t: &Triangulation) -> AbelianGroup {
    h1_double_with(t, TieBreak::Canonical)
}

pub fn h1_double_with(t: &Triangulation, tie: TieBreak) -> AbelianGroup {
    let c = region_incidence_with(t, tie).matrix;
    let coker = smith_normal_form(&c).cokernel;
    AbelianGroup::free(t.n() + 1).sum(&coker)
}

/// H₁ of the filling of D(T) along every meridian: graph homology of the
/// singular graph, with all meridian generators killed.
pub fn h1_meridinal_filling(t: &Triangulation) -> AbelianGroup {
    let n = t.n();
    let pairs = t.face_pairs();
    let mut boundary = IntegerMatrix::zeros(n, pairs.len());
    for (j, p) in pairs.iter().enumerate() {
        boundary.add_to(p.b.tet, j, 1);
        boundary.add_to(p.a.tet, j, -1);
    }
    let graph_rank = pairs.len() - smith_normal_form(&boundary).rank();

    // Meridian part: coker [C | I] with one extra relation per meridian.
    let c = region_incidence(t).matrix;
    let k = c.rows();
    let mut killed = IntegerMatrix::zeros(k, c.cols() + k);
    for i in 0..k {
        for j in 0..c.cols() {
            killed.set(i, j, c.get(i, j).clone());
        }
        killed.set(i, c.cols() + i, BigInt::one());
    }
    AbelianGroup::free(graph_rank).sum(&smith_normal_form(&killed).cokernel)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("polyhedron is disconnected")]
    Disconnected,
}

/// H₁ of a special polyhedron: non-tree edges modulo the attaching words of
/// its closed regions.
pub fn abelianized_pi1(p: &SpecialPolyhedron) -> Result<AbelianGroup, HomologyError> {
    let v = p.vertex_count;
    if v == 0 {
        return Err(HomologyError::Disconnected);
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); v];
    for (i, e) in p.edges.iter().enumerate() {
        adj[e.ends[0].0].push((e.ends[1].0, i));
        adj[e.ends[1].0].push((e.ends[0].0, i));
    }
    let mut seen = vec![false; v];
    let mut tree = vec![false; p.edges.len()];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                tree[e] = true;
                queue.push_back(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(HomologyError::Disconnected);
    }
    let mut index = vec![usize::MAX; p.edges.len()];
    let mut gens = 0;
    for (i, &in_tree) in tree.iter().enumerate() {
        if !in_tree {
            index[i] = gens;
            gens += 1;
        }
    }
    let relations: Vec<Vec<(usize, i64)>> = p
        .regions
        .iter()
        .filter(|r| !r.open)
        .map(|r| {
            r.attaching_word()
                .iter()
                .filter(|(e, _)| !tree[*e])
                .map(|&(e, s)| (index[e], s as i64))
                .collect()
        })
        .collect();
    Ok(cokernel_sparse(gens, &relations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::dual_polyhedron;
    use crate::tri::fixtures::*;

    #[test]
    fn display_and_json_shape() {
        let g = AbelianGroup {
            free_rank: 3,
            torsion: vec![BigInt::from(2), BigInt::from(4)],
        };
        assert_eq!(g.to_string(), "Z^3 ⊕ Z/2 ⊕ Z/4");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
    }

    #[test]
    fn sum_renormalizes() {
        let a = AbelianGroup {
            free_rank: 1,
            torsion: vec![BigInt::from(2)],
        };
        let b = AbelianGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(3)],
        };
        assert_eq!(a.sum(&b).torsion, vec![BigInt::from(6)]);
        assert_eq!(a.sum(&b).free_rank, 1);
    }

    #[test]
    fn two_identity_incidence_rows() {
        let c = region_incidence(&two_identity()).matrix;
        assert_eq!((c.rows(), c.cols()), (6, 4));
        for i in 0..6 {
            let row: Vec<i64> = (0..4).map(|j| c.get(i, j).to_string().parse().unwrap()).collect();
            let mut nz: Vec<i64> = row.into_iter().filter(|&x| x != 0).collect();
            nz.sort();
            assert_eq!(nz, vec![-1, 1]);
        }
    }

    #[test]
    fn two_identity_filling_and_double() {
        let t = two_identity();
        assert_eq!(h1_meridinal_filling(&t), AbelianGroup::free(3));
        assert!(h1_double(&t).free_rank >= 3);
        let p = dual_polyhedron(&t);
        assert!(abelianized_pi1(&p).is_ok());
    }

    #[test]
    fn regionless_polyhedron_is_graph() {
        let mut p = dual_polyhedron(&two_identity());
        p.regions.clear();
        assert_eq!(abelianized_pi1(&p).unwrap(), AbelianGroup::free(3));
    }
}
