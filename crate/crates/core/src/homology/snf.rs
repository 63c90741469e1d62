//! Dense Smith normal form over arbitrary-precision integers.

use super::AbelianGroup;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(size, size);
        for i in 0..size {
            m.data[i * size + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have
    /// length `cols`.
    pub fn from_rows<T: Into<BigInt> + Copy>(cols: usize, rows: &[Vec<T>]) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = IntegerMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    /// True iff every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of a Smith normal form computation: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Nonzero diagonal entries of `d`, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    /// `Z^rows / column span`.
    pub cokernel: AbelianGroup,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = d.get(i, j);
                if !x.is_zero()
                    && best.is_none_or(|(bi, bj)| x.magnitude() < d.get(bi, bj).magnitude())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            if d.get(i, t).is_zero() {
                continue;
            }
            let q = -d.get(i, t).div_floor(d.get(t, t));
            d.add_row(i, t, &q);
            u.add_row(i, t, &q);
            clean &= d.get(i, t).is_zero();
        }
        for j in t + 1..cols {
            if d.get(t, j).is_zero() {
                continue;
            }
            let q = -d.get(t, j).div_floor(d.get(t, t));
            d.add_col(j, t, &q);
            v.add_col(j, t, &q);
            clean &= d.get(t, j).is_zero();
        }
        if !clean {
            // A remainder is now smaller than the pivot; pick again.
            continue;
        }
        // The pivot must divide the whole trailing block.
        let p = d.get(t, t).clone();
        let offender = (t + 1..rows)
            .find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&p)));
        if let Some(i) = offender {
            let one = BigInt::one();
            d.add_row(t, i, &one);
            u.add_row(t, i, &one);
            continue;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors: Vec<BigInt> = (0..rows.min(cols))
        .map(|i| d.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect();
    let cokernel = AbelianGroup::from_diagonal(rows, &invariant_factors);
    SmithForm {
        d,
        u,
        v,
        invariant_factors,
        cokernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_three() {
        let m = IntegerMatrix::from_rows(2, &[vec![2i64, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.cokernel.free_rank, 0);
        assert_eq!(s.cokernel.torsion, vec![BigInt::from(6)]);
    }

    #[test]
    fn zero_and_empty() {
        let s = smith_normal_form(&IntegerMatrix::zeros(3, 2));
        assert_eq!(s.cokernel, AbelianGroup::free(3));
        let s = smith_normal_form(&IntegerMatrix::zeros(4, 0));
        assert_eq!(s.cokernel, AbelianGroup::free(4));
        let s = smith_normal_form(&IntegerMatrix::zeros(0, 5));
        assert_eq!(s.cokernel, AbelianGroup::trivial());
    }

    #[test]
    fn witnesses_are_unimodular() {
        let m = IntegerMatrix::from_rows(
            3,
            &[vec![4i64, -6, 2], vec![8, 3, -1], vec![0, 12, 5], vec![2, 2, 2]],
        );
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
    }

    #[test]
    fn determinant_small() {
        let m = IntegerMatrix::from_rows(3, &[vec![2i64, -1, 0], vec![1, 3, 4], vec![0, 5, 1]]);
        // 2(3 - 20) + 1(1 - 0) = -33
        assert_eq!(m.determinant(), BigInt::from(-33));
    }
}
