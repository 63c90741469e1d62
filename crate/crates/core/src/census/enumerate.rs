//! Isomorph-free enumeration by canonical construction.
//!
//! Partial gluings are grown in breadth-first normal form: face-ends are
//! filled in scan order, and an unglued face-end either discovers the next
//! new tetrahedron (through the same face, identity map) or is paired with a
//! later free face-end of a known tetrahedron. Every complete gluing built
//! this way is its own breadth-first relabeling from `(0, identity)`, and it
//! is kept iff no other relabeling produces a smaller code.

use super::{bfs_code, CanonicalForm, Scratch};
use crate::perm::Perm4;
use crate::tri::{serialize, FaceEnd, Gluing, Triangulation};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    /// Stop after this many accepted members.
    pub max_results: Option<usize>,
    pub time_limit: Option<Duration>,
}

#[derive(Clone, Debug)]
pub struct CensusResult {
    /// Accepted members in ascending signature order.
    pub forms: Vec<CanonicalForm>,
    /// Why the enumeration stopped early, if it did.
    pub truncated: Option<String>,
}

type Slot = Option<(u32, u8, Perm4)>;

#[derive(Clone, Copy, Debug)]
struct Move {
    to: (usize, u8),
    perm: Perm4,
    discovers: bool,
}

#[derive(Clone)]
struct Partial {
    n: usize,
    table: Vec<[Slot; 4]>,
    discovered: usize,
}

impl Partial {
    fn new(n: usize) -> Partial {
        Partial {
            n,
            table: vec![[None; 4]; n],
            discovered: 1,
        }
    }

    fn glue(&mut self, a: (usize, u8), b: (usize, u8), p: Perm4) {
        self.table[a.0][a.1 as usize] = Some((b.0 as u32, b.1, p));
        self.table[b.0][b.1 as usize] = Some((a.0 as u32, a.1, p.inverse()));
    }

    fn unglue(&mut self, a: (usize, u8), b: (usize, u8)) {
        self.table[a.0][a.1 as usize] = None;
        self.table[b.0][b.1 as usize] = None;
    }

    /// Next unglued face-end at or after `pos`, or `None` if all known
    /// tetrahedra are closed up.
    fn next_free(&self, mut pos: usize) -> Option<usize> {
        while pos < 4 * self.discovered {
            if self.table[pos / 4][pos % 4].is_none() {
                return Some(pos);
            }
            pos += 1;
        }
        None
    }

    /// Every way to fill face-end `pos`.
    fn choices(&self, pos: usize) -> Vec<Move> {
        let f = (pos % 4) as u8;
        let mut out = Vec::new();
        if self.discovered < self.n {
            out.push(Move {
                to: (self.discovered, f),
                perm: Perm4::IDENTITY,
                discovers: true,
            });
        }
        for q in pos + 1..4 * self.discovered {
            let (t2, g) = (q / 4, (q % 4) as u8);
            if self.table[t2][g as usize].is_some() {
                continue;
            }
            for &p in Perm4::all() {
                if p.apply(f) == g {
                    out.push(Move {
                        to: (t2, g),
                        perm: p,
                        discovers: false,
                    });
                }
            }
        }
        out
    }

    fn apply(&mut self, pos: usize, m: Move) {
        if m.discovers {
            self.discovered += 1;
        }
        self.glue((pos / 4, (pos % 4) as u8), m.to, m.perm);
    }

    fn undo(&mut self, pos: usize, m: Move) {
        self.unglue((pos / 4, (pos % 4) as u8), m.to);
        if m.discovers {
            self.discovered -= 1;
        }
    }

    fn to_triangulation(&self) -> Triangulation {
        let table = self
            .table
            .iter()
            .map(|row| {
                row.map(|s| {
                    s.map(|(t, f, p)| Gluing {
                        to: FaceEnd::new(t as usize, f),
                        perm: p,
                    })
                })
            })
            .collect();
        Triangulation::from_table(table).expect("complete census gluing is valid")
    }
}

struct Shared<'a> {
    filter: &'a (dyn Fn(&Triangulation) -> bool + Sync),
    accepted: AtomicUsize,
    stop: AtomicBool,
    max_results: Option<usize>,
    deadline: Option<Instant>,
}

impl Shared<'_> {
    fn should_stop(&self) -> bool {
        if self.stop.load(AtomicOrdering::Relaxed) {
            return true;
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.stop.store(true, AtomicOrdering::Relaxed);
                return true;
            }
        }
        false
    }
}

/// Emits every isomorphism class of connected `n`-tetrahedron gluings that
/// passes `filter`, once each, in ascending signature order.
pub fn enumerate(
    n: usize,
    filter: &(dyn Fn(&Triangulation) -> bool + Sync),
    options: &CensusOptions,
) -> CensusResult {
    assert!(n >= 1, "census needs n ≥ 1");
    let shared = Shared {
        filter,
        accepted: AtomicUsize::new(0),
        stop: AtomicBool::new(false),
        max_results: options.max_results,
        deadline: options.time_limit.map(|d| Instant::now() + d),
    };

    // Split the search at a shallow depth into independent prefixes.
    let mut prefixes = Vec::new();
    collect_prefixes(&mut Partial::new(n), 0, 3, &mut Vec::new(), &mut prefixes);

    let run = || {
        prefixes
            .par_iter()
            .map(|prefix| {
                let mut state = Partial::new(n);
                let mut pos = 0;
                for &(p, c) in prefix {
                    state.apply(p, c);
                    pos = p + 1;
                }
                let mut out = Vec::new();
                let mut scratch = Scratch::new(n);
                search(&mut state, pos, &shared, &mut scratch, &mut out);
                out
            })
            .flatten()
            .collect::<Vec<CanonicalForm>>()
    };
    let mut forms = if options.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .expect("thread pool")
            .install(run)
    };
    forms.sort_by(|a, b| a.signature.cmp(&b.signature));
    let before = forms.len();
    forms.dedup_by(|a, b| a.signature == b.signature);
    assert_eq!(before, forms.len(), "census produced a duplicate class");

    let mut truncated = None;
    if shared.stop.load(AtomicOrdering::Relaxed) {
        let accepted = shared.accepted.load(AtomicOrdering::Relaxed);
        truncated = Some(match shared.max_results {
            Some(m) if accepted >= m => format!("result limit {m} reached"),
            _ => "time limit reached".to_string(),
        });
        if let Some(m) = shared.max_results {
            forms.truncate(m);
        }
    }
    CensusResult { forms, truncated }
}

type Choice = (usize, Move);

fn collect_prefixes(
    state: &mut Partial,
    pos: usize,
    depth: usize,
    current: &mut Vec<Choice>,
    out: &mut Vec<Vec<Choice>>,
) {
    let Some(p) = state.next_free(pos) else {
        // Leaf or dead end; the worker sorts it out.
        out.push(current.clone());
        return;
    };
    if depth == 0 {
        out.push(current.clone());
        return;
    }
    for c in state.choices(p) {
        state.apply(p, c);
        current.push((p, c));
        collect_prefixes(state, p + 1, depth - 1, current, out);
        current.pop();
        state.undo(p, c);
    }
}

fn search(
    state: &mut Partial,
    pos: usize,
    shared: &Shared<'_>,
    scratch: &mut Scratch,
    out: &mut Vec<CanonicalForm>,
) {
    if shared.should_stop() {
        return;
    }
    let Some(p) = state.next_free(pos) else {
        if state.discovered == state.n {
            leaf(state, shared, scratch, out);
        }
        return;
    };
    for c in state.choices(p) {
        state.apply(p, c);
        search(state, p + 1, shared, scratch, out);
        state.undo(p, c);
    }
}

fn leaf(state: &Partial, shared: &Shared<'_>, scratch: &mut Scratch, out: &mut Vec<CanonicalForm>) {
    let t = state.to_triangulation();
    let mut own = Vec::new();
    bfs_code(&t, 0, Perm4::IDENTITY, scratch, &mut own, None);
    let mut code = Vec::new();
    for base in 0..t.n() {
        for &sigma in Perm4::all() {
            if base == 0 && sigma == Perm4::IDENTITY {
                continue;
            }
            if bfs_code(&t, base, sigma, scratch, &mut code, Some(&own)) == Ordering::Less {
                return;
            }
        }
    }
    if !(shared.filter)(&t) {
        return;
    }
    let k = shared.accepted.fetch_add(1, AtomicOrdering::Relaxed) + 1;
    if let Some(m) = shared.max_results {
        if k > m {
            shared.stop.store(true, AtomicOrdering::Relaxed);
            return;
        }
    }
    let signature = serialize(&t);
    out.push(CanonicalForm {
        representative: t,
        signature,
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::canonical_form;

    #[test]
    fn members_are_canonical() {
        let r = enumerate(1, &|_| true, &CensusOptions::default());
        assert!(r.truncated.is_none());
        assert!(!r.forms.is_empty());
        for f in &r.forms {
            assert_eq!(canonical_form(&f.representative).signature, f.signature);
        }
    }

    #[test]
    fn truncation_is_reported() {
        let opts = CensusOptions {
            max_results: Some(2),
            ..Default::default()
        };
        let r = enumerate(2, &|_| true, &opts);
        assert!(r.truncated.is_some());
        assert!(r.forms.len() <= 2);
    }
}
