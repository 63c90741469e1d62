//! Random connected gluings, for property tests and benchmarks.

use super::{FaceEnd, Triangulation};
use crate::perm::Perm4;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random valid triangulation with `n` tetrahedra: a random spanning tree
/// of pairings first (for connectivity), then a random matching of the
/// remaining face-ends, each pairing with a random compatible permutation.
pub fn random_triangulation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Triangulation {
    assert!(n >= 1);
    let mut free: Vec<FaceEnd> = (0..4).map(|f| FaceEnd::new(0, f)).collect();
    let mut pairs = Vec::with_capacity(2 * n);
    for t in 1..n {
        let i = rng.gen_range(0..free.len());
        let a = free.swap_remove(i);
        let f = rng.gen_range(0..4u8);
        pairs.push((a, FaceEnd::new(t, f)));
        free.extend((0..4).filter(|&g| g != f).map(|g| FaceEnd::new(t, g)));
    }
    free.shuffle(rng);
    for c in free.chunks(2) {
        pairs.push((c[0], c[1]));
    }
    let glued = pairs.into_iter().map(|(a, b)| {
        let options: Vec<Perm4> = Perm4::all()
            .iter()
            .copied()
            .filter(|p| p.apply(a.face) == b.face)
            .collect();
        (a, b, *options.choose(rng).unwrap())
    });
    Triangulation::from_pairs(n, glued).expect("random gluing is valid")
}
