//! Plain-text incidence files.
//!
//! ```text
//! # comment lines start with '#'
//! v b t lambda
//! 1 1 1 0 0 0 0
//! ...            (v rows of b space-separated 0/1 entries)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::incidence::IncidenceStructure;
use crate::error::{Error, Result};

/// Token with its 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..idx]));
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(move |(s, tok)| (line[..s].chars().count() + 1, tok))
}

pub fn parse_incidence(text: &str) -> Result<IncidenceStructure> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing header \"v b t lambda\"".into(),
    })?;
    let mut head = Vec::with_capacity(4);
    for (col, tok) in tokens(header) {
        let x: u64 = tok.parse().map_err(|_| Error::Parse {
            line: hline,
            column: col,
            message: format!("expected a non-negative integer, found {tok:?}"),
        })?;
        head.push(x);
    }
    if head.len() != 4 {
        return Err(Error::Parse {
            line: hline,
            column: 1,
            message: format!("header needs 4 fields (v b t lambda), found {}", head.len()),
        });
    }
    let (v, b, t, lambda) = (head[0] as usize, head[1] as usize, head[2], head[3]);
    let t = u32::try_from(t).map_err(|_| Error::Parse {
        line: hline,
        column: 1,
        message: "t out of range".into(),
    })?;

    let mut rows = Vec::with_capacity(v);
    for (lno, line) in lines {
        if rows.len() == v {
            return Err(Error::Parse {
                line: lno,
                column: 1,
                message: format!("more than v = {v} matrix rows"),
            });
        }
        let mut row = Vec::with_capacity(b);
        for (col, tok) in tokens(line) {
            let x = match tok {
                "0" => 0u8,
                "1" => 1u8,
                _ => {
                    return Err(Error::Parse {
                        line: lno,
                        column: col,
                        message: format!("matrix entries must be 0 or 1, found {tok:?}"),
                    })
                }
            };
            row.push(x);
        }
        if row.len() != b {
            return Err(Error::Shape {
                line: lno,
                expected: b,
                found: row.len(),
            });
        }
        rows.push(row);
    }
    if rows.len() != v {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: format!("expected {v} matrix rows, found {}", rows.len()),
        });
    }
    IncidenceStructure::from_matrix(&rows, t, lambda)
}

pub fn format_incidence(inc: &IncidenceStructure) -> String {
    let p = inc.params();
    let mut out = String::new();
    writeln!(out, "{} {} {} {}", inc.num_points(), inc.num_blocks(), p.t, p.lambda).unwrap();
    for i in 0..inc.num_points() {
        let row: Vec<&str> = inc
            .row(i)
            .iter()
            .map(|&x| if x == 1 { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn load_incidence(path: impl AsRef<Path>) -> Result<IncidenceStructure> {
    parse_incidence(&fs::read_to_string(path)?)
}

pub fn save_incidence(inc: &IncidenceStructure, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_incidence(inc))?;
    Ok(())
}
