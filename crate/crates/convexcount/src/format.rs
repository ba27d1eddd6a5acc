//! The placement text format.
//!
//! ```text
//! # optional comment lines
//! 3
//! 0 0
//! 1 0
//! 0 1
//! ```
//!
//! The first non-comment line is the point count `n`; exactly `n` lines of
//! `x y` follow, single-space separated and `\n` terminated. Comment lines
//! start with `#` and may appear anywhere.

use std::io::{self, Read, Write};

use convexcount_core::geometry::{Placement, Point, Violation, COORD_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("missing point count line")]
    MissingCount,
    #[error("line {line}: malformed point count {text:?}")]
    MalformedCount { line: usize, text: String },
    #[error("line {line}: malformed point line {text:?} (expected \"x y\")")]
    MalformedPoint { line: usize, text: String },
    #[error("line {line}: coordinate {text:?} exceeds the bound {COORD_BOUND}")]
    CoordinateOverflow { line: usize, text: String },
    #[error("count mismatch: header declares {declared} points, found {found}")]
    CountMismatch { declared: usize, found: usize },
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid placement: {0}")]
    Invalid(#[from] Violation),
}

fn parse_coord(s: &str, line: usize, full: &str) -> Result<i64, ParseError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::MalformedPoint {
            line,
            text: full.to_owned(),
        });
    }
    match s.parse::<i64>() {
        Ok(v) if v.abs() <= COORD_BOUND => Ok(v),
        _ => Err(ParseError::CoordinateOverflow {
            line,
            text: s.to_owned(),
        }),
    }
}

/// Parses the point list without validating general position.
pub fn parse_points(text: &str) -> Result<Vec<Point>, ParseError> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .peekable();
    let mut declared = None;
    let mut points = Vec::new();
    while let Some((line, raw)) = lines.next() {
        if raw.is_empty() && lines.peek().is_none() {
            break;
        }
        if raw.starts_with('#') {
            continue;
        }
        let Some(n) = declared else {
            let n = raw
                .parse::<usize>()
                .ok()
                .filter(|_| raw.bytes().all(|b| b.is_ascii_digit()))
                .ok_or_else(|| ParseError::MalformedCount {
                    line,
                    text: raw.to_owned(),
                })?;
            declared = Some(n);
            continue;
        };
        if points.len() == n {
            return Err(ParseError::CountMismatch {
                declared: n,
                found: n + 1 + count_rest(lines),
            });
        }
        let mut parts = raw.split(' ');
        let (Some(x), Some(y), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ParseError::MalformedPoint {
                line,
                text: raw.to_owned(),
            });
        };
        points.push(Point::new(
            parse_coord(x, line, raw)?,
            parse_coord(y, line, raw)?,
        ));
    }
    let declared = declared.ok_or(ParseError::MissingCount)?;
    if points.len() != declared {
        return Err(ParseError::CountMismatch {
            declared,
            found: points.len(),
        });
    }
    Ok(points)
}

fn count_rest<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> usize {
    lines
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .count()
}

pub fn parse_placement(text: &str) -> Result<Placement, LoadError> {
    Ok(Placement::new(parse_points(text)?)?)
}

pub fn load_placement<R: Read>(mut source: R) -> Result<Placement, LoadError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    parse_placement(&text)
}

pub fn format_placement(p: &Placement) -> String {
    let mut out = String::with_capacity(12 * (p.len() + 1));
    out.push_str(&p.len().to_string());
    out.push('\n');
    for q in p.points() {
        out.push_str(&format!("{} {}\n", q.x, q.y));
    }
    out
}

pub fn save_placement<W: Write>(p: &Placement, mut sink: W) -> io::Result<()> {
    sink.write_all(format_placement(p).as_bytes())
}

/// Writes `comments` as `# ` lines ahead of the placement.
pub fn save_placement_with_comments<W: Write>(
    p: &Placement,
    comments: &[String],
    mut sink: W,
) -> io::Result<()> {
    for c in comments {
        writeln!(sink, "# {c}")?;
    }
    save_placement(p, sink)
}
