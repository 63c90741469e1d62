//! Permutations of the four vertex labels of a tetrahedron.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of `{0, 1, 2, 3}`, stored as its image list.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from its image list; `None` if it is not a bijection.
    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(a: u8, b: u8) -> Perm4 {
        let mut img = [0, 1, 2, 3];
        img.swap(a as usize, b as usize);
        Perm4(img)
    }

    #[inline]
    pub fn apply(self, x: u8) -> u8 {
        self.0[x as usize]
    }

    #[inline]
    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    #[inline]
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
            self.0[other.0[3] as usize],
        ])
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(self) -> bool {
        self.sign() == 1
    }

    /// All 24 permutations in lexicographic order of image lists.
    pub fn all() -> &'static [Perm4; 24] {
        &ALL
    }

    /// Index of this permutation within [`Perm4::all`].
    pub fn index(self) -> usize {
        let p = self.0;
        let mut rest: Vec<u8> = vec![0, 1, 2, 3];
        let mut idx = 0;
        let fact = [6, 2, 1, 1];
        for (k, &x) in p.iter().enumerate() {
            let pos = rest.iter().position(|&y| y == x).unwrap();
            idx += pos * fact[k];
            rest.remove(pos);
        }
        idx
    }
}

static ALL: [Perm4; 24] = {
    let mut out = [Perm4([0, 0, 0, 0]); 24];
    let mut k = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && b != c && a != c {
                    let d = 6 - a - b - c;
                    out[k] = Perm4([a, b, c, d]);
                    k += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_are_distinct_and_indexed() {
        for (i, p) in Perm4::all().iter().enumerate() {
            assert_eq!(p.index(), i);
            assert!(Perm4::new(p.images()).is_some());
        }
        assert_eq!(Perm4::all()[0], Perm4::IDENTITY);
    }

    #[test]
    fn inverse_and_compose() {
        for &p in Perm4::all() {
            assert_eq!(p.compose(p.inverse()), Perm4::IDENTITY);
            for &q in Perm4::all() {
                for x in 0..4 {
                    assert_eq!(p.compose(q).apply(x), p.apply(q.apply(x)));
                }
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
            }
        }
        let evens = Perm4::all().iter().filter(|p| p.is_even()).count();
        assert_eq!(evens, 12);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm4::new([0, 0, 1, 2]).is_none());
        assert!(Perm4::new([0, 1, 2, 4]).is_none());
    }
}
