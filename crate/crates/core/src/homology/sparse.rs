//! Cokernels of large sparse presentations.
//!
//! Relations with a unit coefficient are used to eliminate their generator
//! outright (a unimodular change of basis); whatever survives goes through
//! the dense Smith normal form.

use super::snf::{smith_normal_form, IntegerMatrix};
use super::AbelianGroup;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

type Row = BTreeMap<usize, BigInt>;

/// `Z^generators / span(relations)`, each relation a list of
/// `(generator, coefficient)` terms (repeats are summed).
pub fn cokernel_sparse(generators: usize, relations: &[Vec<(usize, i64)>]) -> AbelianGroup {
    let mut rows: Vec<Row> = relations
        .iter()
        .map(|r| {
            let mut row = Row::new();
            for &(g, c) in r {
                assert!(g < generators, "generator {g} out of range");
                *row.entry(g).or_insert_with(BigInt::zero) += c;
            }
            row.retain(|_, c| !c.is_zero());
            row
        })
        .collect();
    let mut alive_rel = vec![true; rows.len()];
    let mut alive_gen = vec![true; generators];
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); generators];
    for (i, r) in rows.iter().enumerate() {
        for &g in r.keys() {
            occurs[g].push(i);
        }
    }

    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..rows.len()).map(|i| Reverse((rows[i].len(), i))).collect();
    while let Some(Reverse((len, i))) = heap.pop() {
        if !alive_rel[i] || rows[i].len() != len {
            continue;
        }
        if len == 0 {
            alive_rel[i] = false;
            continue;
        }
        // Unit entry whose generator occurs least often.
        let pivot = rows[i]
            .iter()
            .filter(|(_, c)| c.abs().is_one())
            .map(|(&g, _)| g)
            .min_by_key(|&g| (occurs[g].len(), g));
        let Some(g) = pivot else { continue };
        let unit = rows[i][&g].clone();
        let pivot_row = std::mem::take(&mut rows[i]);
        alive_rel[i] = false;
        alive_gen[g] = false;
        let users = std::mem::take(&mut occurs[g]);
        for j in users {
            if j == i || !alive_rel[j] {
                continue;
            }
            let Some(c) = rows[j].get(&g).cloned() else { continue };
            // row_j -= c * unit * pivot_row   (unit = ±1 is its own inverse)
            let k = c * &unit;
            for (&h, a) in &pivot_row {
                let e = rows[j].entry(h).or_insert_with(BigInt::zero);
                let was_zero = e.is_zero();
                *e -= &k * a;
                if e.is_zero() {
                    rows[j].remove(&h);
                } else if was_zero {
                    occurs[h].push(j);
                }
            }
            debug_assert!(!rows[j].contains_key(&g));
            heap.push(Reverse((rows[j].len(), j)));
        }
        for &h in pivot_row.keys() {
            if h != g {
                occurs[h].retain(|&x| x != i);
            }
        }
    }

    let gens: Vec<usize> = (0..generators).filter(|&g| alive_gen[g]).collect();
    let rels: Vec<usize> = (0..rows.len())
        .filter(|&i| alive_rel[i] && !rows[i].is_empty())
        .collect();
    let mut index = vec![usize::MAX; generators];
    for (k, &g) in gens.iter().enumerate() {
        index[g] = k;
    }
    let mut m = IntegerMatrix::zeros(gens.len(), rels.len());
    for (col, &i) in rels.iter().enumerate() {
        for (&g, c) in &rows[i] {
            m.set(index[g], col, c.clone());
        }
    }
    smith_normal_form(&m).cokernel
}

/// Dense reference path for [`cokernel_sparse`].
pub fn cokernel_dense(generators: usize, relations: &[Vec<(usize, i64)>]) -> AbelianGroup {
    let mut m = IntegerMatrix::zeros(generators, relations.len());
    for (j, r) in relations.iter().enumerate() {
        for &(g, c) in r {
            m.add_to(g, j, c);
        }
    }
    smith_normal_form(&m).cokernel
}
