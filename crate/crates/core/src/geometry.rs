//! Volumes, cusp shapes and valence-based certificates for N(T) and D(T).
//!
//! Everything here is a closed formula in the edge valences: each tetrahedron
//! becomes a regular ideal octahedron (two in the double), and the cusp of an
//! edge of valence `q` is a Euclidean torus of area `2q`.

use crate::tri::{edge_classes, wedge_class_map, EdgeClass, Triangulation, EDGES};
use serde::Serialize;
use std::f64::consts::PI;

/// Lobachevsky function `Λ(θ) = -∫₀^θ log|2 sin t| dt`.
///
/// After reducing to `0 < θ ≤ π/2` this uses
/// `Λ(θ) = θ(1 - log 2θ) + θ Σ ζ(2k) (θ/π)^{2k} / (k(2k+1))`,
/// whose terms shrink at least as fast as `4^{-k}`; forty terms bound the
/// tail well below `1e-15`.
pub fn lobachevsky(theta: f64) -> f64 {
    // π-periodic and odd.
    let mut x = theta.rem_euclid(PI);
    let mut sign = 1.0;
    if x > PI / 2.0 {
        x = PI - x;
        sign = -1.0;
    }
    if x == 0.0 {
        return 0.0;
    }
    let r2 = (x / PI) * (x / PI);
    let mut pow = 1.0;
    let mut sum = 0.0;
    for k in 1..=40usize {
        pow *= r2;
        sum += zeta_even(k) * pow / (k as f64 * (2 * k + 1) as f64);
    }
    sign * x * (1.0 - (2.0 * x).ln() + sum)
}

/// `ζ(2k)` for `k ≥ 1`.
fn zeta_even(k: usize) -> f64 {
    let p2 = PI * PI;
    match k {
        1 => p2 / 6.0,
        2 => p2 * p2 / 90.0,
        3 => p2 * p2 * p2 / 945.0,
        4 => p2 * p2 * p2 * p2 / 9450.0,
        _ => {
            // Terms past j = 64 are below 64^-10.
            let s = 2 * k as i32;
            (1..=64).rev().map(|j| (j as f64).powi(-s)).sum()
        }
    }
}

/// Volume of the regular ideal octahedron, `8Λ(π/4)`.
pub fn octahedron_volume() -> f64 {
    8.0 * lobachevsky(PI / 4.0)
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct VolumeReport {
    pub n: usize,
    pub v_o: f64,
    pub vol_n: f64,
    pub vol_d: f64,
    pub genus: usize,
    pub boundary_euler: i64,
    pub pm_complexity: usize,
    /// One entry per cusp of D(T), i.e. per edge class: the valence.
    pub cusp_horoball_volumes: Vec<f64>,
    pub total_horoball_volume: f64,
}

pub fn volume_report(t: &Triangulation) -> VolumeReport {
    volume_report_from(t.n(), &edge_classes(t))
}

pub fn volume_report_from(n: usize, classes: &[EdgeClass]) -> VolumeReport {
    let v_o = octahedron_volume();
    VolumeReport {
        n,
        v_o,
        vol_n: n as f64 * v_o,
        vol_d: 2.0 * n as f64 * v_o,
        genus: n + 1,
        boundary_euler: -2 * n as i64,
        pm_complexity: 10 * n,
        cusp_horoball_volumes: classes.iter().map(|c| c.valence as f64).collect(),
        total_horoball_volume: 6.0 * n as f64,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    Rectangle,
    Rhombus,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CuspShape {
    pub edge_class: usize,
    pub valence: usize,
    pub orientable: bool,
    pub area: f64,
    pub meridian_length: f64,
    pub longitude_length: Option<f64>,
    pub shape_kind: ShapeKind,
    pub nonmeridinal_min_length: f64,
}

pub fn cusp_shapes(t: &Triangulation) -> Vec<CuspShape> {
    cusp_shapes_from(&edge_classes(t))
}

pub fn cusp_shapes_from(classes: &[EdgeClass]) -> Vec<CuspShape> {
    classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let q = c.valence as f64;
            CuspShape {
                edge_class: i,
                valence: c.valence,
                orientable: c.orientable,
                area: 2.0 * q,
                meridian_length: 2.0,
                longitude_length: c.orientable.then_some(q),
                shape_kind: if c.orientable {
                    ShapeKind::Rectangle
                } else {
                    ShapeKind::Rhombus
                },
                nonmeridinal_min_length: q,
            }
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum CertificateKind {
    #[serde(rename = "NONE_BELOW_6")]
    NoneBelow6,
    #[serde(rename = "VALENCE_6")]
    Valence6,
    #[serde(rename = "VALENCE_7")]
    Valence7,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::NoneBelow6 => "NONE_BELOW_6",
            CertificateKind::Valence6 => "VALENCE_6",
            CertificateKind::Valence7 => "VALENCE_7",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CuspBound {
    pub edge_class: usize,
    pub valence: usize,
    pub nonmeridinal_length_bound: f64,
}

/// Angle sum at one tetrahedron vertex under the `2π/v` assignment.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct VertexSum {
    pub tet: usize,
    pub vertex: u8,
    pub valences: [usize; 3],
    pub sum: f64,
    /// Exact comparison with π: `Σ 1/v ≤ 1/2`.
    pub at_most_pi: bool,
    pub equals_pi: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub min_valence: usize,
    pub cusps: Vec<CuspBound>,
    pub claims: Vec<Claim>,
    pub angle_assignment: Vec<f64>,
    pub vertex_sums: Vec<VertexSum>,
}

impl Certificate {
    /// Re-checks the internal arithmetic of the certificate.
    pub fn verify(&self) -> bool {
        match self.kind {
            CertificateKind::NoneBelow6 => self.min_valence < 6 && self.claims.is_empty(),
            CertificateKind::Valence6 | CertificateKind::Valence7 => {
                let floor = if self.kind == CertificateKind::Valence7 { 7 } else { 6 };
                self.min_valence >= floor
                    && self.vertex_sums.iter().all(|s| {
                        s.at_most_pi
                            && s.sum <= PI + 1e-12
                            && s.equals_pi == (s.valences == [6, 6, 6])
                    })
            }
        }
    }
}

const CLAIM_HYPERBOLIC: Claim = Claim {
    id: "hyperbolic-if-manifold",
    statement: "if T ideally triangulates a manifold M, then M is hyperbolic and the edges of T are essential",
};
const CLAIM_HAKEN: Claim = Claim {
    id: "non-meridinal-fillings-haken",
    statement: "every non-meridinal filling of D(T) is Haken and the filling cores are essential",
};
const CLAIM_FILLINGS_HYPERBOLIC: Claim = Claim {
    id: "non-meridinal-fillings-hyperbolic",
    statement: "every non-meridinal filling of D(T) is hyperbolic",
};
const CLAIM_ONE_EXCEPTIONAL: Claim = Claim {
    id: "at-most-one-exceptional-slope-per-cusp",
    statement: "each cusp of D(T) has at most one exceptional slope",
};

pub fn certify(t: &Triangulation) -> Certificate {
    let classes = edge_classes(t);
    let map = wedge_class_map(t.n(), &classes);
    let min_valence = classes.iter().map(|c| c.valence).min().unwrap_or(0);
    let kind = match min_valence {
        v if v >= 7 => CertificateKind::Valence7,
        6 => CertificateKind::Valence6,
        _ => CertificateKind::NoneBelow6,
    };
    let cusps = classes
        .iter()
        .enumerate()
        .map(|(i, c)| CuspBound {
            edge_class: i,
            valence: c.valence,
            nonmeridinal_length_bound: c.valence as f64,
        })
        .collect();
    let mut claims = Vec::new();
    let mut angle_assignment = Vec::new();
    let mut vertex_sums = Vec::new();
    if kind >= CertificateKind::Valence6 {
        claims.extend([CLAIM_HYPERBOLIC, CLAIM_HAKEN]);
        if kind == CertificateKind::Valence7 {
            claims.extend([CLAIM_FILLINGS_HYPERBOLIC, CLAIM_ONE_EXCEPTIONAL]);
        }
        angle_assignment = classes
            .iter()
            .map(|c| 2.0 * PI / c.valence as f64)
            .collect();
        for tet in 0..t.n() {
            for vertex in 0..4u8 {
                let mut valences = [0usize; 3];
                let mut sum = 0.0;
                let mut k = 0;
                for (e, &(a, b)) in EDGES.iter().enumerate() {
                    if a == vertex || b == vertex {
                        let c = map[tet][e] as usize;
                        valences[k] = classes[c].valence;
                        sum += angle_assignment[c];
                        k += 1;
                    }
                }
                let [x, y, z] = valences.map(|v| v as u128);
                // Σ 2π/v ≤ π  ⇔  2(yz + xz + xy) ≤ xyz.
                let lhs = 2 * (y * z + x * z + x * y);
                let rhs = x * y * z;
                vertex_sums.push(VertexSum {
                    tet,
                    vertex,
                    valences,
                    sum,
                    at_most_pi: lhs <= rhs,
                    equals_pi: lhs == rhs,
                });
            }
        }
    }
    Certificate {
        kind,
        min_valence,
        cusps,
        claims,
        angle_assignment,
        vertex_sums,
    }
}

/// Conservative detector for the exceptional triangulations whose double
/// admits more than one decomposition into octahedra.
///
/// `false` means `T` is certainly not exceptional. For `n ≥ 2` the test asks
/// whether every tetrahedron edge has one of the four edge profiles that can
/// carry a non-generic horoball volume `r`, with the six values summing to 3
/// on each tetrahedron.
pub fn exceptional_candidate(t: &Triangulation) -> bool {
    if t.n() == 1 {
        return true;
    }
    let classes = edge_classes(t);
    let map = wedge_class_map(t.n(), &classes);
    // r in eighths.
    let r = |c: &EdgeClass| -> Option<u32> {
        match (c.valence, c.orientable) {
            (1, true) => Some(16),
            (4, true) => Some(1),
            (1, false) => Some(8),
            (2, true) => Some(2),
            _ => None,
        }
    };
    (0..t.n()).all(|tet| {
        let mut total = 0;
        for e in 0..6 {
            match r(&classes[map[tet][e] as usize]) {
                Some(x) => total += x,
                None => return false,
            }
        }
        total == 24
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::fixtures::*;

    #[test]
    fn lobachevsky_special_values() {
        assert_eq!(lobachevsky(0.0), 0.0);
        assert!(lobachevsky(PI / 2.0).abs() < 1e-12);
        assert!((octahedron_volume() - 3.66386).abs() < 1e-5);
        // Known closed form: v_O = 3.66386237670887606...
        assert!((octahedron_volume() - 3.663_862_376_708_876).abs() < 1e-12);
    }

    #[test]
    fn lobachevsky_matches_fourier_series() {
        // Independent oracle: the defining Fourier series, truncated at K
        // terms (error below 1/(2K)).
        let k_max = 200_000;
        for i in 1..12 {
            let theta = i as f64 * 0.27 - 1.3;
            let series: f64 = (1..=k_max)
                .map(|k| (2.0 * k as f64 * theta).sin() / (k as f64 * k as f64))
                .sum::<f64>()
                / 2.0;
            assert!((lobachevsky(theta) - series).abs() < 1e-5, "θ = {theta}");
        }
    }

    #[test]
    fn lobachevsky_symmetries() {
        for i in 0..50 {
            let x = i as f64 * 0.137 - 3.0;
            assert!((lobachevsky(-x) + lobachevsky(x)).abs() < 1e-13);
            assert!((lobachevsky(x + PI) - lobachevsky(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn two_identity_volumes_and_cusps() {
        let t = two_identity();
        let v = volume_report(&t);
        assert_eq!(v.genus, 3);
        assert_eq!(v.pm_complexity, 20);
        assert_eq!(v.boundary_euler, -4);
        assert!((v.vol_n - 7.327724).abs() < 1e-6);
        assert_eq!(v.vol_d, 2.0 * v.vol_n);
        assert_eq!(v.cusp_horoball_volumes.iter().sum::<f64>(), v.total_horoball_volume);
        let cusps = cusp_shapes(&t);
        assert_eq!(cusps.len(), 6);
        for c in cusps {
            assert_eq!(c.shape_kind, ShapeKind::Rectangle);
            assert_eq!(c.area, 4.0);
            assert_eq!(c.meridian_length, 2.0);
            assert_eq!(c.longitude_length, Some(2.0));
        }
    }

    #[test]
    fn two_identity_certificate_and_exceptional() {
        let t = two_identity();
        let c = certify(&t);
        assert_eq!(c.kind, CertificateKind::NoneBelow6);
        assert!(c.claims.is_empty());
        assert!(c.verify());
        // Every edge is orientable of valence 2 (r = 1/4): the six values sum
        // to 3/2, not 3, so no tetrahedron fits an exceptional octahedron.
        assert!(!exceptional_candidate(&t));
        assert!(exceptional_candidate(&one_tet()));
    }
}
