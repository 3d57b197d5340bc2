//! Plain-text formats: `.lset` for string sets, `.deriv` for step lists,
//! `.rot` for plane graphs given as rotation systems.
//!
//! All three formats are strict and canonical: emitted text re-parses to an
//! equal value, and parsing accepts exactly the emitted shape (sorted
//! members, vertices in order), so valid files round-trip byte-for-byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::graph::PlaneTriangulation;
use crate::lset::LSet;
use crate::transition::TransitionLabel;
use crate::word::ColorString;

/// Text parse error: 1-based line number plus a description.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Renders a set as `.lset` text: header `lset k=<k> l=<l>`, then one member
/// per line in ascending order. The empty set is just the header.
pub fn lset_to_text(set: &LSet) -> String {
    let mut out = format!("lset k={} l={}\n", set.alphabet().size(), set.len());
    for member in set.members() {
        writeln!(out, "{member}").expect("string formatting");
    }
    out
}

/// Parses `.lset` text; members must be sorted, distinct, and of the
/// declared length.
pub fn lset_from_text(text: &str) -> Result<LSet, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty input, expected `lset` header"))?;
    let (k, l) = parse_lset_header(header)?;
    let alphabet = Alphabet::new(k).map_err(|err| ParseError::new(1, err.to_string()))?;
    let mut members = Vec::new();
    let mut previous: Option<ColorString> = None;
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.is_empty() {
            return Err(ParseError::new(line_no, "blank line in member list"));
        }
        let member = ColorString::parse(line, alphabet)
            .map_err(|err| ParseError::new(line_no, err.to_string()))?;
        if member.len() != l {
            return Err(ParseError::new(
                line_no,
                format!("member has length {}, header declares l={l}", member.len()),
            ));
        }
        if let Some(prev) = previous {
            if member <= prev {
                return Err(ParseError::new(
                    line_no,
                    "members must be strictly ascending",
                ));
            }
        }
        previous = Some(member);
        members.push(member);
    }
    LSet::new(alphabet, l, members).map_err(|err| ParseError::new(1, err.to_string()))
}

fn parse_lset_header(header: &str) -> Result<(usize, usize), ParseError> {
    let rest = header
        .strip_prefix("lset ")
        .ok_or_else(|| ParseError::new(1, "expected header `lset k=<k> l=<l>`"))?;
    let mut k = None;
    let mut l = None;
    for field in rest.split_whitespace() {
        if let Some(value) = field.strip_prefix("k=") {
            k = Some(parse_number(1, value, "k")?);
        } else if let Some(value) = field.strip_prefix("l=") {
            l = Some(parse_number(1, value, "l")?);
        } else {
            return Err(ParseError::new(
                1,
                format!("unknown header field {field:?}"),
            ));
        }
    }
    match (k, l) {
        (Some(k), Some(l)) => Ok((k, l)),
        _ => Err(ParseError::new(1, "header must declare both k= and l=")),
    }
}

/// Renders steps as `.deriv` text: header `deriv`, then one `i j` pair per line.
pub fn deriv_to_text(steps: &[TransitionLabel]) -> String {
    let mut out = String::from("deriv\n");
    for step in steps {
        writeln!(out, "{} {}", step.i(), step.j()).expect("string formatting");
    }
    out
}

/// Parses `.deriv` text.
pub fn deriv_from_text(text: &str) -> Result<Vec<TransitionLabel>, ParseError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "deriv")) => {}
        Some((_, other)) => {
            return Err(ParseError::new(
                1,
                format!("expected header `deriv`, got {other:?}"),
            ))
        }
        None => return Err(ParseError::new(1, "empty input, expected `deriv` header")),
    }
    let mut steps = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let mut fields = line.split_whitespace();
        let i = fields
            .next()
            .ok_or_else(|| ParseError::new(line_no, "expected `i j` pair"))?;
        let j = fields
            .next()
            .ok_or_else(|| ParseError::new(line_no, "expected two positions, got one"))?;
        if fields.next().is_some() {
            return Err(ParseError::new(line_no, "expected exactly two positions"));
        }
        let i = parse_number(line_no, i, "i")?;
        let j = parse_number(line_no, j, "j")?;
        let label =
            TransitionLabel::new(i, j).map_err(|err| ParseError::new(line_no, err.to_string()))?;
        steps.push(label);
    }
    Ok(steps)
}

/// Renders a rotation system as `.rot` text: header
/// `rot n=<n> outer=<v1>,<v2>,...`, then `v: u1 u2 ... ud` per vertex,
/// vertices `1..=n` in order.
pub fn rot_to_text(graph: &PlaneTriangulation) -> String {
    let outer: Vec<String> = graph.outer_face().iter().map(u32::to_string).collect();
    let mut out = format!("rot n={} outer={}\n", graph.vertex_count(), outer.join(","));
    for v in 1..=graph.vertex_count() as u32 {
        let neighbors: Vec<String> = graph.rotation(v).iter().map(u32::to_string).collect();
        writeln!(out, "{v}: {}", neighbors.join(" ")).expect("string formatting");
    }
    out
}

/// Parses `.rot` text into a structurally checked rotation system.
pub fn rot_from_text(text: &str) -> Result<PlaneTriangulation, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty input, expected `rot` header"))?;
    let rest = header
        .strip_prefix("rot ")
        .ok_or_else(|| ParseError::new(1, "expected header `rot n=<n> outer=...`"))?;
    let mut n = None;
    let mut outer = None;
    for field in rest.split_whitespace() {
        if let Some(value) = field.strip_prefix("n=") {
            n = Some(parse_number(1, value, "n")?);
        } else if let Some(value) = field.strip_prefix("outer=") {
            let mut cycle = Vec::new();
            for part in value.split(',') {
                cycle.push(parse_vertex(1, part, "outer vertex")?);
            }
            outer = Some(cycle);
        } else {
            return Err(ParseError::new(
                1,
                format!("unknown header field {field:?}"),
            ));
        }
    }
    let n = n.ok_or_else(|| ParseError::new(1, "header must declare n="))?;
    let outer = outer.ok_or_else(|| ParseError::new(1, "header must declare outer="))?;

    let mut rotation: Vec<Vec<u32>> = Vec::with_capacity(n);
    for (idx, line) in lines {
        let line_no = idx + 1;
        let (vertex, neighbors) = line
            .split_once(':')
            .ok_or_else(|| ParseError::new(line_no, "expected `v: u1 u2 ...` rotation line"))?;
        let vertex: usize = parse_number(line_no, vertex.trim(), "vertex")?;
        if vertex != rotation.len() + 1 {
            return Err(ParseError::new(
                line_no,
                format!("expected vertex {} here, got {vertex}", rotation.len() + 1),
            ));
        }
        let mut cycle = Vec::new();
        for part in neighbors.split_whitespace() {
            cycle.push(parse_vertex(line_no, part, "neighbor")?);
        }
        rotation.push(cycle);
    }
    if rotation.len() != n {
        return Err(ParseError::new(
            rotation.len() + 1,
            format!(
                "header declares n={n} but {} rotation lines given",
                rotation.len()
            ),
        ));
    }
    PlaneTriangulation::new(rotation, outer).map_err(|err| ParseError::new(1, err.to_string()))
}

fn parse_number(line: usize, text: &str, what: &str) -> Result<usize, ParseError> {
    text.parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("invalid {what} value {text:?}")))
}

fn parse_vertex(line: usize, text: &str, what: &str) -> Result<u32, ParseError> {
    text.parse::<u32>()
        .map_err(|_| ParseError::new(line, format!("invalid {what} value {text:?}")))
}

/// Joins several `.lset` blocks into a single stream separated by `---` lines.
pub fn lset_stream_to_text(sets: &[LSet]) -> String {
    let blocks: Vec<String> = sets.iter().map(lset_to_text).collect();
    blocks.join("---\n")
}

/// Splits a `---`-separated stream back into `.lset` blocks.
pub fn lset_stream_from_text(text: &str) -> Result<Vec<LSet>, ParseError> {
    text.split("---\n").map(lset_from_text).collect()
}
