//! The `.jgd` text format: one diagram per file.
//!
//! ```text
//! # theta graph
//! degree 2
//! vertex 0 : 0 1 2
//! vertex 1 : 3 4 5
//! edge 0 3
//! edge 1 4
//! edge 2 5
//! weights 2 2
//! ```
//!
//! Directives appear in the order `degree`, `vertex` lines, `edge` lines and
//! an optional final `weights` line. Half-edge ids range over `0..3·degree`.
//! Positions in errors are 1-based.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::{build_diagram, Diagram};
use crate::pairing::SurgeryGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JgdError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error at line {line}, column {column}: {message}")]
    Semantic {
        line: usize,
        column: usize,
        message: String,
    },
}

impl JgdError {
    pub fn line(&self) -> usize {
        match self {
            JgdError::Syntax { line, .. } | JgdError::Semantic { line, .. } => *line,
        }
    }

    pub fn column(&self) -> usize {
        match self {
            JgdError::Syntax { column, .. } | JgdError::Semantic { column, .. } => *column,
        }
    }
}

/// A parsed file: a bare diagram, or surgery data when `weights` is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JgdObject {
    Diagram(Diagram),
    Surgery(SurgeryGraph),
}

impl JgdObject {
    pub fn diagram(&self) -> &Diagram {
        match self {
            JgdObject::Diagram(d) => d,
            JgdObject::Surgery(s) => s.shape(),
        }
    }

    pub fn weights(&self) -> Option<&[u64]> {
        match self {
            JgdObject::Diagram(_) => None,
            JgdObject::Surgery(s) => Some(s.weights()),
        }
    }
}

struct Token<'a> {
    column: usize,
    text: &'a str,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &content[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &content[s..]));
    }
    out.into_iter()
        .map(|(byte, text)| Token {
            column: content[..byte].chars().count() + 1,
            text,
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Start,
    Vertices,
    Edges,
    Weights,
}

struct Parser {
    line: usize,
}

impl Parser {
    fn syntax<T>(&self, column: usize, message: impl Into<String>) -> Result<T, JgdError> {
        Err(JgdError::Syntax {
            line: self.line,
            column,
            message: message.into(),
        })
    }

    fn semantic<T>(&self, column: usize, message: impl Into<String>) -> Result<T, JgdError> {
        Err(JgdError::Semantic {
            line: self.line,
            column,
            message: message.into(),
        })
    }

    fn number(&self, t: &Token<'_>) -> Result<usize, JgdError> {
        if !t.text.bytes().all(|b| b.is_ascii_digit()) {
            return self.syntax(t.column, format!("expected a non-negative integer, found `{}`", t.text));
        }
        t.text
            .parse()
            .or_else(|_| self.syntax(t.column, format!("integer `{}` is too large", t.text)))
    }
}

/// Parse a `.jgd` document.
pub fn parse_jgd(text: &str) -> Result<JgdObject, JgdError> {
    let mut p = Parser { line: 0 };
    let mut section = Section::Start;
    let mut degree = 0usize;
    let mut degree_line = 0usize;
    let mut rotations: Vec<Option<Vec<usize>>> = Vec::new();
    let mut half_edges_seen: HashSet<usize> = HashSet::new();
    let mut paired: HashSet<usize> = HashSet::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut weights: Option<Vec<u64>> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        p.line = idx + 1;
        let tokens = tokenize(raw);
        let Some(head) = tokens.first() else { continue };
        last_line = p.line;
        let next = match head.text {
            "degree" => Section::Start,
            "vertex" => Section::Vertices,
            "edge" => Section::Edges,
            "weights" => Section::Weights,
            other => return p.syntax(head.column, format!("unknown directive `{other}`")),
        };
        if section == Section::Start && head.text != "degree" {
            return p.syntax(head.column, "the first directive must be `degree`");
        }
        if head.text == "degree" && section != Section::Start || next < section || section == Section::Weights {
            return p.syntax(head.column, format!("`{}` is out of order", head.text));
        }
        match head.text {
            "degree" => {
                if tokens.len() != 2 {
                    return p.syntax(head.column, "expected `degree <2n>`");
                }
                degree = p.number(&tokens[1])?;
                if degree == 0 || !degree.is_multiple_of(2) {
                    return p.semantic(tokens[1].column, format!("degree {degree} is not a positive even integer"));
                }
                degree_line = p.line;
                rotations = vec![None; degree];
            }
            "vertex" => {
                if tokens.len() < 3 || tokens[2].text != ":" {
                    return p.syntax(head.column, "expected `vertex <i> : <h1> <h2> <h3>`");
                }
                let v = p.number(&tokens[1])?;
                let ids = tokens[3..]
                    .iter()
                    .map(|t| p.number(t))
                    .collect::<Result<Vec<_>, _>>()?;
                if v >= degree {
                    return p.semantic(tokens[1].column, format!("vertex {v} is out of range for degree {degree}"));
                }
                if rotations[v].is_some() {
                    return p.semantic(tokens[1].column, format!("vertex {v} is declared twice"));
                }
                if ids.len() != 3 {
                    let column = tokens.get(6).unwrap_or(head).column;
                    return p.semantic(column, format!("vertex {v} has {} half-edges, expected 3", ids.len()));
                }
                for (t, &h) in tokens[3..].iter().zip(&ids) {
                    if h >= 3 * degree {
                        return p.semantic(t.column, format!("half-edge {h} is out of range 0..{}", 3 * degree));
                    }
                    if !half_edges_seen.insert(h) {
                        return p.semantic(t.column, format!("half-edge {h} appears at more than one vertex"));
                    }
                }
                rotations[v] = Some(ids);
            }
            "edge" => {
                if tokens.len() != 3 {
                    return p.syntax(head.column, "expected `edge <ha> <hb>`");
                }
                let a = p.number(&tokens[1])?;
                let b = p.number(&tokens[2])?;
                for (t, h) in [(&tokens[1], a), (&tokens[2], b)] {
                    if !half_edges_seen.contains(&h) {
                        return p.semantic(t.column, format!("half-edge {h} is not on any vertex"));
                    }
                    if !paired.insert(h) {
                        return p.semantic(t.column, format!("half-edge {h} belongs to more than one edge"));
                    }
                }
                if a == b {
                    return p.semantic(tokens[2].column, format!("half-edge {a} is paired with itself"));
                }
                edges.push((a, b));
            }
            _ => {
                let ws = tokens[1..]
                    .iter()
                    .map(|t| p.number(t))
                    .collect::<Result<Vec<_>, _>>()?;
                if ws.len() != degree {
                    return p.semantic(head.column, format!("expected {degree} weights, found {}", ws.len()));
                }
                if let Some(i) = ws.iter().position(|&w| w == 0) {
                    return p.semantic(tokens[i + 1].column, "weights must be at least 1");
                }
                weights = Some(ws.into_iter().map(|w| w as u64).collect());
            }
        }
        section = next.max(Section::Vertices);
    }

    p.line = last_line.max(1);
    if degree == 0 {
        return p.syntax(1, "missing `degree` directive");
    }
    if let Some(v) = rotations.iter().position(Option::is_none) {
        return p.semantic(1, format!("vertex {v} is never declared"));
    }
    if edges.len() != 3 * degree / 2 {
        return p.semantic(1, format!("expected {} edges, found {}", 3 * degree / 2, edges.len()));
    }
    let rotations: Vec<Vec<usize>> = rotations.into_iter().map(Option::unwrap).collect();
    p.line = degree_line;
    let diagram = match build_diagram(degree, &rotations, &edges) {
        Ok(d) => d,
        Err(e) => return p.semantic(1, e.to_string()),
    };
    match weights {
        None => Ok(JgdObject::Diagram(diagram)),
        Some(ws) => SurgeryGraph::new(diagram, ws)
            .map(JgdObject::Surgery)
            .or_else(|e| p.semantic(1, e.to_string())),
    }
}

/// Serialize with half-edge ids equal to slot ids.
pub fn to_jgd(d: &Diagram) -> String {
    let mut out = String::new();
    writeln!(out, "degree {}", d.vertex_count()).unwrap();
    for v in 0..d.vertex_count() {
        let [a, b, c] = d.rotation(v);
        writeln!(out, "vertex {v} : {a} {b} {c}").unwrap();
    }
    for (a, b) in d.edges() {
        writeln!(out, "edge {a} {b}").unwrap();
    }
    out
}

/// [`to_jgd`] followed by the `weights` directive.
pub fn surgery_to_jgd(s: &SurgeryGraph) -> String {
    let mut out = to_jgd(s.shape());
    let ws: Vec<String> = s.weights().iter().map(u64::to_string).collect();
    writeln!(out, "weights {}", ws.join(" ")).unwrap();
    out
}

/// One-line form used inside structured documents: directives joined by `; `.
pub fn to_inline_jgd(d: &Diagram) -> String {
    to_jgd(d).lines().collect::<Vec<_>>().join("; ")
}
