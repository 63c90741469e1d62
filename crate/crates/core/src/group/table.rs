//! Finite groups given by multiplication tables.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("element 0 is not the identity")]
    Identity,
    #[error("multiplication is not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("unknown group spec `{0}` (expected trivial, cyclic:<m>, sym:<k> or a table file)")]
    UnknownSpec(String),
}

/// Elements are `0..order`, with `0` the identity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiniteGroupTable {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(skip)]
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// Validates identity, inverses and associativity.
    pub fn new(table: Vec<Vec<usize>>) -> Result<FiniteGroupTable, GroupError> {
        let m = table.len();
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(GroupError::Syntax {
                    line: i + 2,
                    message: format!("expected {m} entries"),
                });
            }
            if let Some(&x) = row.iter().find(|&&x| x >= m) {
                return Err(GroupError::Syntax {
                    line: i + 2,
                    message: format!("entry {x} out of range"),
                });
            }
        }
        if m == 0 || (0..m).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(GroupError::Identity);
        }
        let mut inverse = vec![usize::MAX; m];
        for a in 0..m {
            match (0..m).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverse[a] = b,
                None => return Err(GroupError::NoInverse(a)),
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            order: m,
            table,
            inverse,
        })
    }

    /// Parses `group <m>` followed by `m` rows of `m` indices.
    pub fn parse(text: &str) -> Result<FiniteGroupTable, GroupError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
        let (hl, header) = lines.next().ok_or(GroupError::Syntax {
            line: 1,
            message: "missing header `group <m>`".into(),
        })?;
        let m: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["group", m] => m.parse().map_err(|_| GroupError::Syntax {
                line: hl,
                message: format!("bad order `{m}`"),
            })?,
            _ => {
                return Err(GroupError::Syntax {
                    line: hl,
                    message: "expected `group <m>`".into(),
                })
            }
        };
        let mut table = Vec::with_capacity(m);
        for (line, l) in lines {
            let row: Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| GroupError::Syntax {
                line,
                message: "expected integers".into(),
            })?;
            if row.len() != m {
                return Err(GroupError::Syntax {
                    line,
                    message: format!("expected {m} entries, found {}", row.len()),
                });
            }
            table.push(row);
            if table.len() > m {
                return Err(GroupError::Syntax {
                    line,
                    message: format!("more than {m} rows"),
                });
            }
        }
        if table.len() != m {
            return Err(GroupError::Syntax {
                line: text.lines().count(),
                message: format!("expected {m} rows, found {}", table.len()),
            });
        }
        FiniteGroupTable::new(table)
    }

    /// Built-in groups: `trivial`, `cyclic:<m>`, `sym:<k>`.
    pub fn builtin(spec: &str) -> Result<FiniteGroupTable, GroupError> {
        let unknown = || GroupError::UnknownSpec(spec.to_string());
        if spec == "trivial" {
            return Ok(FiniteGroupTable::cyclic(1));
        }
        let (kind, arg) = spec.split_once(':').ok_or_else(unknown)?;
        let k: usize = arg.parse().map_err(|_| unknown())?;
        match kind {
            "cyclic" if k >= 1 => Ok(FiniteGroupTable::cyclic(k)),
            "sym" if (1..=5).contains(&k) => Ok(FiniteGroupTable::symmetric(k)),
            _ => Err(unknown()),
        }
    }

    pub fn cyclic(m: usize) -> FiniteGroupTable {
        let table = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        FiniteGroupTable::new(table).expect("cyclic group table")
    }

    /// The symmetric group on `k` letters; elements are permutations in
    /// lexicographic order (identity first), `(a·b)(x) = a(b(x))`.
    pub fn symmetric(k: usize) -> FiniteGroupTable {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..k).collect();
        loop {
            perms.push(p.clone());
            // Next permutation in lexicographic order.
            let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).unwrap();
            p.swap(i - 1, j);
            p[i..].reverse();
        }
        let index = |q: &Vec<usize>| perms.iter().position(|x| x == q).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&(0..k).map(|x| a[b[x]]).collect()))
                    .collect()
            })
            .collect();
        FiniteGroupTable::new(table).expect("symmetric group table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Size of the subgroup generated by `gens`.
    pub fn generated_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }

    /// Abelianization `G/[G,G]` as an abelian group.
    pub fn abelianization(&self) -> crate::homology::AbelianGroup {
        let m = self.order;
        // Presentation: generator per element, relation e_a + e_b - e_{ab}.
        let mut rels = Vec::new();
        for a in 0..m {
            for b in 0..m {
                rels.push(vec![(a, 1), (b, 1), (self.mul(a, b), -1)]);
            }
        }
        crate::homology::cokernel_sparse(m, &rels)
    }
}

/// Generators `G ∖ {1}`; relators `a·b·c⁻¹` (`ab = c ≠ 1`) and `a·b`
/// (`ab = 1`), for all `a, b ≠ 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TrivialPresentation {
    pub generators: Vec<usize>,
    /// Words of `(element, ±1)`.
    pub relators: Vec<Vec<(usize, i8)>>,
}

impl TrivialPresentation {
    pub fn new(g: &FiniteGroupTable) -> TrivialPresentation {
        let m = g.order();
        let generators: Vec<usize> = (1..m).collect();
        let mut relators = Vec::new();
        for a in 1..m {
            for b in 1..m {
                let c = g.mul(a, b);
                if c == 0 {
                    relators.push(vec![(a, 1), (b, 1)]);
                } else {
                    relators.push(vec![(a, 1), (b, 1), (c, -1)]);
                }
            }
        }
        TrivialPresentation {
            generators,
            relators,
        }
    }
}
