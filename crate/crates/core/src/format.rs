//! Line-oriented text formats.
//!
//! Input documents start with `matrix <n>` (then `n` rows of integers) or
//! `bigraph <n>` (then `<u> <v> solid|dotted` lines, 1-based). `#` starts a
//! comment and `;` may stand in for a line break, which lets a whole document
//! sit on one line. A line reading `witness` ends the document.
//!
//! Witness files list `T <s> <r>` steps (1-based), optionally followed by
//! `M` with the accumulated matrix and `C` with the matrix reached.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bigraph::{Bigraph, Edge, LineStyle};
use crate::flation::{FlationStep, FlationWitness};
use crate::matrix::{IntMatrix, MatrixError, QuasiCartanMatrix};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("syntax error on line {0}")]
    Syntax(usize),
    #[error("expected {expected} rows or entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("diagonal entry {0} is not 2")]
    DiagonalNotTwo(usize),
    #[error("matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("vertex {vertex} on line {line} is out of range")]
    VertexOutOfRange { line: usize, vertex: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputDocument {
    Matrix(QuasiCartanMatrix),
    Bigraph(Bigraph),
}

impl InputDocument {
    pub fn to_matrix(&self) -> QuasiCartanMatrix {
        match self {
            InputDocument::Matrix(a) => a.clone(),
            InputDocument::Bigraph(g) => QuasiCartanMatrix::from_bigraph(g),
        }
    }

    pub fn to_bigraph(&self) -> Bigraph {
        match self {
            InputDocument::Matrix(a) => a.to_bigraph(),
            InputDocument::Bigraph(g) => g.clone(),
        }
    }
}

/// Non-empty lines with comments stripped, tagged by 1-based line number.
/// `;`-separated pieces share their physical line's number.
fn content_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for piece in line.split(';') {
            let tokens: Vec<&str> = piece.split_whitespace().collect();
            if !tokens.is_empty() {
                out.push((idx + 1, tokens));
            }
        }
    }
    out
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, FormatError> {
    tok.parse().map_err(|_| FormatError::Syntax(line))
}

pub fn parse_input(text: &str) -> Result<InputDocument, FormatError> {
    let lines = content_lines(text);
    let end = lines.iter().position(|(_, t)| t == &["witness"]).unwrap_or(lines.len());
    let lines = &lines[..end];
    let Some((first, rest)) = lines.split_first() else {
        return Err(FormatError::Syntax(text.lines().count().max(1)));
    };
    let (hline, header) = first;
    if header.len() != 2 {
        return Err(FormatError::Syntax(*hline));
    }
    let n: usize = parse_num(header[1], *hline)?;
    match header[0] {
        "matrix" => {
            if n == 0 {
                return Err(FormatError::Syntax(*hline));
            }
            if rest.len() != n {
                return Err(FormatError::DimensionMismatch { expected: n, found: rest.len() });
            }
            let mut rows = Vec::with_capacity(n);
            for (line, tokens) in rest {
                if tokens.len() != n {
                    return Err(FormatError::DimensionMismatch { expected: n, found: tokens.len() });
                }
                let row: Vec<i64> = tokens.iter().map(|t| parse_num(t, *line)).collect::<Result<_, _>>()?;
                rows.push(row);
            }
            match QuasiCartanMatrix::new(IntMatrix::from_rows(&rows)) {
                Ok(a) => Ok(InputDocument::Matrix(a)),
                Err(MatrixError::DiagonalNotTwo(i)) => Err(FormatError::DiagonalNotTwo(i + 1)),
                Err(MatrixError::NotSymmetric { i, j }) => Err(FormatError::NotSymmetric { i: i + 1, j: j + 1 }),
                Err(MatrixError::Empty) => Err(FormatError::Syntax(*hline)),
            }
        }
        "bigraph" => {
            let mut edges = Vec::with_capacity(rest.len());
            for (line, tokens) in rest {
                let line = *line;
                if tokens.len() != 3 {
                    return Err(FormatError::Syntax(line));
                }
                let u: usize = parse_num(tokens[0], line)?;
                let v: usize = parse_num(tokens[1], line)?;
                let style = match tokens[2] {
                    "solid" => LineStyle::Solid,
                    "dotted" => LineStyle::Dotted,
                    _ => return Err(FormatError::Syntax(line)),
                };
                for vertex in [u, v] {
                    if vertex == 0 || vertex > n {
                        return Err(FormatError::VertexOutOfRange { line, vertex });
                    }
                }
                if u == v {
                    return Err(FormatError::Syntax(line));
                }
                edges.push(Edge::new(u - 1, v - 1, style));
            }
            Ok(InputDocument::Bigraph(Bigraph::new(n, edges).expect("edges validated above")))
        }
        _ => Err(FormatError::Syntax(*hline)),
    }
}

fn write_rows(out: &mut String, m: &IntMatrix) {
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

pub fn serialize(doc: &InputDocument) -> String {
    let mut out = String::new();
    match doc {
        InputDocument::Matrix(a) => {
            writeln!(out, "matrix {}", a.size()).unwrap();
            write_rows(&mut out, a.as_int());
        }
        InputDocument::Bigraph(g) => {
            writeln!(out, "bigraph {}", g.vertex_count()).unwrap();
            for e in g.edges() {
                writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.style.name()).unwrap();
            }
        }
    }
    out
}

/// A bigraph document on a single line, pieces joined by `; `.
pub fn serialize_bigraph_line(g: &Bigraph) -> String {
    serialize(&InputDocument::Bigraph(g.clone())).trim_end().replace('\n', "; ")
}

/// A parsed witness file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessDocument {
    pub steps: Vec<FlationStep>,
    pub accumulated: Option<IntMatrix>,
    pub target: Option<QuasiCartanMatrix>,
}

pub fn serialize_witness(w: &FlationWitness, target: Option<&QuasiCartanMatrix>) -> String {
    let mut out = String::new();
    for st in w.steps() {
        writeln!(out, "T {} {}", st.s + 1, st.r + 1).unwrap();
    }
    out.push_str("M\n");
    write_rows(&mut out, w.accumulated());
    if let Some(c) = target {
        out.push_str("C\n");
        write_rows(&mut out, c.as_int());
    }
    out
}

/// Parses a witness file; anything before a `witness` line is skipped.
pub fn parse_witness(text: &str, n: usize) -> Result<WitnessDocument, FormatError> {
    let mut lines = content_lines(text);
    if let Some(start) = lines.iter().position(|(_, t)| t == &["witness"]) {
        lines.drain(..=start);
    }
    let mut steps = Vec::new();
    let mut idx = 0;
    while idx < lines.len() && lines[idx].1[0] == "T" {
        let (line, tokens) = &lines[idx];
        if tokens.len() != 3 {
            return Err(FormatError::Syntax(*line));
        }
        let s: usize = parse_num(tokens[1], *line)?;
        let r: usize = parse_num(tokens[2], *line)?;
        for vertex in [s, r] {
            if vertex == 0 || vertex > n {
                return Err(FormatError::VertexOutOfRange { line: *line, vertex });
            }
        }
        if s == r {
            return Err(FormatError::Syntax(*line));
        }
        steps.push(FlationStep::new(s - 1, r - 1));
        idx += 1;
    }
    let read_matrix = |idx: &mut usize| -> Result<IntMatrix, FormatError> {
        *idx += 1;
        if lines.len() < *idx + n {
            return Err(FormatError::DimensionMismatch { expected: n, found: lines.len() - *idx });
        }
        let mut rows = Vec::with_capacity(n);
        for (line, tokens) in &lines[*idx..*idx + n] {
            if tokens.len() != n {
                return Err(FormatError::DimensionMismatch { expected: n, found: tokens.len() });
            }
            rows.push(tokens.iter().map(|t| parse_num(t, *line)).collect::<Result<Vec<i64>, _>>()?);
        }
        *idx += n;
        Ok(IntMatrix::from_rows(&rows))
    };
    let mut accumulated = None;
    let mut target = None;
    while idx < lines.len() {
        let (line, tokens) = &lines[idx];
        match tokens.as_slice() {
            ["M"] if accumulated.is_none() => accumulated = Some(read_matrix(&mut idx)?),
            ["C"] if target.is_none() => {
                let m = read_matrix(&mut idx)?;
                target = Some(QuasiCartanMatrix::new(m).map_err(|_| FormatError::Syntax(*line))?);
            }
            _ => return Err(FormatError::Syntax(*line)),
        }
    }
    Ok(WitnessDocument { steps, accumulated, target })
}

/// Graphviz `graph` text; dotted edges are dashed.
pub fn to_dot(g: &Bigraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        writeln!(out, "  {};", v + 1).unwrap();
    }
    for e in g.edges() {
        match e.style {
            LineStyle::Solid => writeln!(out, "  {} -- {};", e.u + 1, e.v + 1).unwrap(),
            LineStyle::Dotted => writeln!(out, "  {} -- {} [style=dashed];", e.u + 1, e.v + 1).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::LineStyle::*;

    #[test]
    fn parse_examples() {
        let a2 = parse_input("matrix 2\n2 -1\n-1 2").unwrap();
        assert_eq!(a2, InputDocument::Matrix(QuasiCartanMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap()));

        let tri = parse_input("bigraph 3\n1 2 dotted\n1 3 solid\n2 3 solid").unwrap();
        assert_eq!(
            tri,
            InputDocument::Bigraph(Bigraph::from_triples(3, &[(0, 1, Dotted), (0, 2, Solid), (1, 2, Solid)]))
        );

        assert_eq!(parse_input("matrix 2\n2 -1\n-1 3"), Err(FormatError::DiagonalNotTwo(2)));
        assert_eq!(parse_input("matrix 2\n2 -1\n0 2"), Err(FormatError::NotSymmetric { i: 1, j: 2 }));
        assert_eq!(parse_input("matrix 2\n2 -1"), Err(FormatError::DimensionMismatch { expected: 2, found: 1 }));
        assert_eq!(parse_input("bigraph 2\n1 3 solid"), Err(FormatError::VertexOutOfRange { line: 2, vertex: 3 }));
        assert_eq!(parse_input("bigraph 2\n1 2 wavy"), Err(FormatError::Syntax(2)));
        assert_eq!(parse_input("graph 2"), Err(FormatError::Syntax(1)));
        assert_eq!(parse_input("# nothing\n"), Err(FormatError::Syntax(1)));
    }

    #[test]
    fn comments_semicolons_and_duplicates() {
        let doc = parse_input("# header\nbigraph 2 ; 1 2 solid   # first\n\n  1 2 solid\n").unwrap();
        let g = doc.to_bigraph();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(doc.to_matrix().get(0, 1), -2);
    }

    #[test]
    fn round_trips() {
        let g = Bigraph::from_triples(4, &[(0, 1, Solid), (2, 3, Dotted), (0, 3, Solid), (0, 1, Solid)]);
        let doc = InputDocument::Bigraph(g.clone());
        assert_eq!(parse_input(&serialize(&doc)).unwrap(), doc);
        assert_eq!(parse_input(&serialize_bigraph_line(&g)).unwrap(), doc);
        let text = "bigraph 3\n1 2 solid\n2 3 dotted\n";
        assert_eq!(serialize(&parse_input(text).unwrap()), text);
        assert_eq!(serialize_bigraph_line(&Bigraph::empty(2)), "bigraph 2");
    }

    #[test]
    fn witness_round_trip() {
        let mut w = FlationWitness::identity(3);
        w.push(FlationStep::new(0, 2), -1);
        w.push(FlationStep::new(2, 1), 1);
        let c = QuasiCartanMatrix::identity2(3);
        let text = serialize_witness(&w, Some(&c));
        assert!(text.starts_with("T 1 3\nT 3 2\nM\n"));
        let doc = parse_witness(&text, 3).unwrap();
        assert_eq!(doc.steps, w.steps());
        assert_eq!(doc.accumulated.as_ref(), Some(w.accumulated()));
        assert_eq!(doc.target, Some(c));
        let prefixed = format!("bigraph 3\nwitness\n{text}");
        assert_eq!(parse_witness(&prefixed, 3).unwrap().steps, w.steps());
        assert_eq!(parse_witness("T 1 1\n", 3), Err(FormatError::Syntax(1)));
        assert_eq!(parse_witness("T 1 4\n", 3), Err(FormatError::VertexOutOfRange { line: 1, vertex: 4 }));
    }

    #[test]
    fn document_stops_at_witness() {
        let doc = parse_input("bigraph 2\n1 2 solid\nwitness\nT 1 2\nM\n1 0\n0 1\n").unwrap();
        assert_eq!(doc.to_bigraph(), Bigraph::path(2));
    }

    #[test]
    fn dot_export() {
        let g = Bigraph::from_triples(3, &[(0, 1, Solid), (1, 2, Dotted)]);
        assert_eq!(
            to_dot(&g),
            "graph G {\n  1;\n  2;\n  3;\n  1 -- 2;\n  2 -- 3 [style=dashed];\n}\n"
        );
    }
}
