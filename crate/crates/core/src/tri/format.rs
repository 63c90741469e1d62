//! The line-based TRI text format.
//!
//! ```text
//! tri 2
//! % comment
//! 0 0 : 1 0 : 0 1 2 3
//! ```

use super::{FaceEnd, Gluing, TriError, Triangulation};
use crate::perm::Perm4;
use std::fmt::Write;

pub fn parse(text: &str) -> Result<Triangulation, TriError> {
    let mut n: Option<usize> = None;
    let mut table: Vec<[Option<Gluing>; 4]> = Vec::new();
    let mut pair_lines = 0usize;
    let mut extra_line = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let tokens = tokenize(raw);
        match n {
            None => {
                let (col, head) = tokens[0];
                if head != "tri" {
                    return Err(syntax(line_no, col, "expected header `tri <n>`"));
                }
                if tokens.len() != 2 {
                    return Err(syntax(line_no, col, "header must be `tri <n>`"));
                }
                let count = number(line_no, tokens[1])?;
                if count == 0 {
                    return Err(TriError::Empty);
                }
                n = Some(count);
                table = vec![[None; 4]; count];
            }
            Some(count) => {
                let (a, b, p) = gluing_line(line_no, &tokens, count)?;
                pair_lines += 1;
                if pair_lines > 2 * count && extra_line.is_none() {
                    extra_line = Some(line_no);
                }
                for (from, to, perm) in [(a, b, p), (b, a, p.inverse())] {
                    let slot = &mut table[from.tet][from.face as usize];
                    match slot {
                        Some(existing) if existing.to != to || existing.perm != perm => {
                            return Err(TriError::NonInvolutive(from));
                        }
                        _ => *slot = Some(Gluing { to, perm }),
                    }
                }
            }
        }
    }
    let count = n.ok_or_else(|| syntax(1, 1, "missing header `tri <n>`"))?;
    for (t, row) in table.iter().enumerate() {
        for f in 0..4u8 {
            if row[f as usize].is_none() {
                return Err(TriError::Incomplete(FaceEnd::new(t, f)));
            }
        }
    }
    if let Some(line) = extra_line {
        return Err(syntax(
            line,
            1,
            &format!("expected exactly {} gluing lines", 2 * count),
        ));
    }
    Triangulation::from_table(table)
}

pub fn serialize(t: &Triangulation) -> String {
    let mut out = String::with_capacity(16 + 24 * 2 * t.n());
    writeln!(out, "tri {}", t.n()).unwrap();
    for pair in t.face_pairs() {
        writeln!(
            out,
            "{} {} : {} {} : {}",
            pair.a.tet, pair.a.face, pair.b.tet, pair.b.face, pair.perm
        )
        .unwrap();
    }
    out
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, tok)| (line[..s].chars().count() + 1, tok))
        .collect()
}

fn gluing_line(
    line: usize,
    tokens: &[(usize, &str)],
    n: usize,
) -> Result<(FaceEnd, FaceEnd, Perm4), TriError> {
    if tokens.len() != 10 {
        let col = tokens.get(10).map_or(tokens[0].0, |t| t.0);
        return Err(syntax(
            line,
            col,
            "expected `<t> <f> : <t'> <f'> : <p0> <p1> <p2> <p3>`",
        ));
    }
    for &i in &[2usize, 5] {
        if tokens[i].1 != ":" {
            return Err(syntax(line, tokens[i].0, "expected `:`"));
        }
    }
    let tet = |tok: (usize, &str)| -> Result<usize, TriError> {
        let v = number(line, tok)?;
        if v >= n {
            return Err(syntax(line, tok.0, "tetrahedron index out of range"));
        }
        Ok(v)
    };
    let label = |tok: (usize, &str)| -> Result<u8, TriError> {
        let v = number(line, tok)?;
        if v > 3 {
            return Err(syntax(line, tok.0, "vertex label must be in 0..=3"));
        }
        Ok(v as u8)
    };
    let a = FaceEnd::new(tet(tokens[0])?, label(tokens[1])?);
    let b = FaceEnd::new(tet(tokens[3])?, label(tokens[4])?);
    let mut images = [0u8; 4];
    for k in 0..4 {
        images[k] = label(tokens[6 + k])?;
    }
    let p = Perm4::new(images)
        .ok_or_else(|| syntax(line, tokens[6].0, "not a permutation of 0 1 2 3"))?;
    if a == b {
        return Err(TriError::SelfGlued(a));
    }
    if p.apply(a.face) != b.face {
        return Err(TriError::BadPermutation {
            at: a,
            face: a.face,
            image: p.apply(a.face),
            expected: b.face,
        });
    }
    Ok((a, b, p))
}

fn number(line: usize, (col, tok): (usize, &str)) -> Result<usize, TriError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, col, &format!("expected integer, found `{tok}`")));
    }
    tok.parse()
        .map_err(|_| syntax(line, col, "integer out of range"))
}

fn syntax(line: usize, column: usize, message: &str) -> TriError {
    TriError::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    const TWO_IDENTITY: &str = "tri 2\n0 0 : 1 0 : 0 1 2 3\n0 1 : 1 1 : 0 1 2 3\n0 2 : 1 2 : 0 1 2 3\n0 3 : 1 3 : 0 1 2 3\n";

    #[test]
    fn round_trip() {
        let t = parse(TWO_IDENTITY).unwrap();
        assert_eq!(t, two_identity());
        assert_eq!(serialize(&t), TWO_IDENTITY);
        assert_eq!(parse(&serialize(&t)).unwrap(), t);
        let one = one_tet();
        assert_eq!(parse(&serialize(&one)).unwrap(), one);
    }

    #[test]
    fn comments_and_spacing() {
        let text = "% header\ntri   1\n% pairs\n0 0 :  0 1 : 1 0 2 3\n\n0 2 : 0 3 : 0 1 3 2\n";
        assert_eq!(parse(text).unwrap(), one_tet());
    }

    #[test]
    fn reports_error_categories() {
        let non_inv = "tri 2\n0 0 : 1 0 : 0 1 2 3\n1 0 : 0 1 : 1 0 2 3\n";
        assert!(matches!(parse(non_inv), Err(TriError::NonInvolutive(_))));
        let incomplete = "tri 1\n0 0 : 0 1 : 1 0 2 3\n";
        assert_eq!(
            parse(incomplete).unwrap_err(),
            TriError::Incomplete(FaceEnd::new(0, 2))
        );
        let selfglue = "tri 1\n0 0 : 0 0 : 0 1 2 3\n";
        assert!(matches!(parse(selfglue), Err(TriError::SelfGlued(_))));
        let bad = "tri 1\n0 0 : 0 1 x 1 0 2 3\n";
        assert_eq!(
            parse(bad).unwrap_err(),
            TriError::Syntax {
                line: 2,
                column: 11,
                message: "expected `:`".into()
            }
        );
        let disc = "tri 2\n0 0 : 0 1 : 1 0 2 3\n0 2 : 0 3 : 0 1 3 2\n1 0 : 1 1 : 1 0 2 3\n1 2 : 1 3 : 0 1 3 2\n";
        assert!(matches!(parse(disc), Err(TriError::Disconnected { .. })));
        assert!(matches!(parse("tri 0\n"), Err(TriError::Empty)));
        assert!(matches!(parse(""), Err(TriError::Syntax { .. })));
    }

    #[test]
    fn rejects_duplicate_lines() {
        let dup = "tri 1\n0 0 : 0 1 : 1 0 2 3\n0 2 : 0 3 : 0 1 3 2\n0 0 : 0 1 : 1 0 2 3\n";
        assert!(matches!(parse(dup), Err(TriError::Syntax { line: 4, .. })));
    }
}
