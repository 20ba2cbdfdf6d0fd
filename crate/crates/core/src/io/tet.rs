//! The `.tet` text format: `#` comments, an optional `root: a b c` line, and
//! one tetrahedron per line as four positive integers.

use std::fmt::Write;

use crate::complex::{Face, Node, Triangulation};
use crate::error::{ComplexError, ParseError};

pub fn parse_triangulation(text: &str) -> Result<Triangulation, ParseError> {
    let mut tets: Vec<([Node; 4], usize)> = Vec::new();
    let mut root: Option<Face> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("root:") {
            if root.is_some() {
                return Err(ParseError::DuplicateRoot { line: line_no });
            }
            let nums = parse_nums(rest).filter(|v| v.len() == 3).ok_or_else(|| {
                ParseError::MalformedRoot {
                    line: line_no,
                    found: raw.to_string(),
                }
            })?;
            root = Some([nums[0], nums[1], nums[2]]);
            continue;
        }
        let nums = parse_nums(line)
            .filter(|v| v.len() == 4)
            .ok_or_else(|| ParseError::MalformedLine {
                line: line_no,
                found: raw.to_string(),
            })?;
        let t = [nums[0], nums[1], nums[2], nums[3]];
        let mut sorted = t;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(ParseError::Complex {
                line: line_no,
                source: ComplexError::RepeatedNode(t),
            });
        }
        tets.push((t, line_no));
    }

    let mut seen = std::collections::BTreeMap::new();
    for &(t, line) in &tets {
        let mut key = t;
        key.sort_unstable();
        if seen.insert(key, line).is_some() {
            return Err(ParseError::Complex {
                line,
                source: ComplexError::DuplicateTetrahedron(key),
            });
        }
    }

    let tri = Triangulation::new(tets.into_iter().map(|(t, _)| t)).map_err(|source| {
        ParseError::Complex {
            line: 0,
            source,
        }
    })?;
    match root {
        None => Ok(tri),
        Some(r) => tri.with_root(r).map_err(|_| ParseError::RootNotAFace(r)),
    }
}

fn parse_nums(s: &str) -> Option<Vec<Node>> {
    s.split_whitespace()
        .map(|w| w.parse::<Node>().ok().filter(|&n| n > 0))
        .collect()
}

/// Writes the `.tet` form: root directive first, then sorted tetrahedra.
pub fn format_triangulation(t: &Triangulation) -> String {
    let mut out = String::new();
    if let Some([a, b, c]) = t.root() {
        writeln!(out, "root: {a} {b} {c}").unwrap();
    }
    for [a, b, c, d] in t.tets() {
        writeln!(out, "{a} {b} {c} {d}").unwrap();
    }
    out
}
