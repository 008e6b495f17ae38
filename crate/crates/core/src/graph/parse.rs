use std::collections::HashSet;
use std::str::FromStr;

use serde::Deserialize;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `{"vertices": [...], "edges": [[a, b], ...]}`
    EdgeJson,
    /// First line `n`, then `n` rows of `n` space-separated 0/1 entries. Labels are `1..=n`.
    AdjacencyText,
    /// `graph name { a -- b; c; }` without attributes.
    Dot,
}

impl GraphFormat {
    /// Guess the format from the first significant character.
    pub fn detect(text: &str) -> GraphFormat {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            GraphFormat::EdgeJson
        } else if trimmed.starts_with(|c: char| c.is_ascii_digit()) {
            GraphFormat::AdjacencyText
        } else {
            GraphFormat::Dot
        }
    }
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "edge-json" | "json" => Ok(GraphFormat::EdgeJson),
            "adjacency-text" | "adjacency" => Ok(GraphFormat::AdjacencyText),
            "dot" | "dot-subset" => Ok(GraphFormat::Dot),
            other => Err(format!("unknown graph format {other:?}")),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeJson => parse_edge_json(text),
        GraphFormat::AdjacencyText => parse_adjacency(text),
        GraphFormat::Dot => parse_dot(text),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeList {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

fn parse_edge_json(text: &str) -> Result<Graph> {
    let list: EdgeList = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut g = Graph::new(list.vertices)?;
    let mut seen = HashSet::new();
    for (a, b) in list.edges {
        let u = g.index_of(&a).ok_or_else(|| Error::UnknownVertex(a.clone()))?;
        let v = g.index_of(&b).ok_or_else(|| Error::UnknownVertex(b.clone()))?;
        if u == v {
            return Err(Error::SelfLoop(a));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge(a, b));
        }
        g.set_edge(u, v, true);
    }
    Ok(g)
}

fn parse_adjacency(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (first_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "empty input, expected vertex count".into(),
    })?;
    let n: usize = header.trim().parse().map_err(|_| Error::Parse {
        line: first_line,
        column: column_of(header, header.trim()),
        message: format!("expected vertex count, found {:?}", header.trim()),
    })?;

    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(n);
    let mut row_lines = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if rows.len() == n {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: format!("unexpected extra row, matrix has {n} rows"),
            });
        }
        let mut row = Vec::with_capacity(n);
        for tok in line.split_whitespace() {
            let bit = match tok {
                "0" => false,
                "1" => true,
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        column: column_of(line, tok),
                        message: format!("expected 0 or 1, found {tok:?}"),
                    })
                }
            };
            row.push(bit);
        }
        if row.len() != n {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: format!("row has {} entries, expected {n}", row.len()),
            });
        }
        rows.push(row);
        row_lines.push(line_no);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: first_line,
            column: 1,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }

    let mut g = Graph::edgeless(n);
    for (i, row) in rows.iter().enumerate() {
        if row[i] {
            return Err(Error::SelfLoop(g.label(i).to_string()));
        }
        for j in (i + 1)..n {
            if row[j] != rows[j][i] {
                return Err(Error::Parse {
                    line: row_lines[j],
                    column: 2 * i + 1,
                    message: format!("matrix not symmetric at ({}, {})", i + 1, j + 1),
                });
            }
            if row[j] {
                g.set_edge(i, j, true);
            }
        }
    }
    Ok(g)
}

/// 1-based column of `needle` within `line`, assuming it is a subslice.
fn column_of(line: &str, needle: &str) -> usize {
    (needle.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Edge,
    LBrace,
    RBrace,
    Semi,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Next token with its starting position, or `None` at end of input.
    fn next_token(&mut self) -> Result<Option<(Tok, usize, usize)>> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() || *c == ',' => {
                    self.bump();
                }
                Some('#') => self.skip_line(),
                Some('/') => {
                    let (line, column) = (self.line, self.column);
                    self.bump();
                    if self.chars.peek() == Some(&'/') {
                        self.skip_line();
                    } else {
                        return Err(self.error(line, column, "unexpected '/'"));
                    }
                }
                _ => break,
            }
        }
        let (line, column) = (self.line, self.column);
        let c = match self.bump() {
            None => return Ok(None),
            Some(c) => c,
        };
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ';' => Tok::Semi,
            '-' => match self.bump() {
                Some('-') => Tok::Edge,
                Some('>') => return Err(self.error(line, column, "directed edges are not supported")),
                _ => return Err(self.error(line, column, "expected '--'")),
            },
            '"' => {
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(self.error(line, column, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some(e) => s.push(e),
                            None => return Err(self.error(line, column, "unterminated string")),
                        },
                        Some(ch) => s.push(ch),
                    }
                }
                Tok::Ident(s)
            }
            '[' => return Err(self.error(line, column, "attributes are not supported")),
            c if is_id_char(c) => {
                let mut s = c.to_string();
                while let Some(&ch) = self.chars.peek() {
                    if is_id_char(ch) {
                        s.push(ch);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => return Err(self.error(line, column, format!("unexpected character {other:?}"))),
        };
        Ok(Some((tok, line, column)))
    }

    fn skip_line(&mut self) {
        while let Some(c) = self.bump() {
            if c == '\n' {
                break;
            }
        }
    }
}

fn is_id_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.'
}

fn parse_dot(text: &str) -> Result<Graph> {
    let mut lexer = Lexer::new(text);
    let mut toks = Vec::new();
    while let Some(t) = lexer.next_token()? {
        toks.push(t);
    }
    let end = (lexer.line, lexer.column);
    let mut pos = 0;
    let err_at = |pos: usize, message: String| {
        let (line, column) = toks.get(pos).map(|t| (t.1, t.2)).unwrap_or(end);
        Error::Parse {
            line,
            column,
            message,
        }
    };

    if let Some((Tok::Ident(kw), _, _)) = toks.get(pos) {
        if kw == "strict" {
            pos += 1;
        }
    }
    match toks.get(pos) {
        Some((Tok::Ident(kw), _, _)) if kw == "graph" => pos += 1,
        Some((Tok::Ident(kw), _, _)) if kw == "digraph" => {
            return Err(err_at(pos, "directed graphs are not supported".into()))
        }
        _ => return Err(err_at(pos, "expected 'graph'".into())),
    }
    if let Some((Tok::Ident(_), _, _)) = toks.get(pos) {
        pos += 1;
    }
    if toks.get(pos).map(|t| &t.0) != Some(&Tok::LBrace) {
        return Err(err_at(pos, "expected '{'".into()));
    }
    pos += 1;

    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut intern = |s: &str, labels: &mut Vec<String>| {
        if seen.insert(s.to_string()) {
            labels.push(s.to_string());
        }
    };

    loop {
        match toks.get(pos) {
            None => return Err(err_at(pos, "expected '}'".into())),
            Some((Tok::RBrace, _, _)) => {
                pos += 1;
                break;
            }
            Some((Tok::Semi, _, _)) => pos += 1,
            Some((Tok::Ident(first), _, _)) => {
                let mut prev = first.clone();
                intern(&prev, &mut labels);
                pos += 1;
                while let Some((Tok::Edge, _, _)) = toks.get(pos) {
                    pos += 1;
                    match toks.get(pos) {
                        Some((Tok::Ident(next), _, _)) => {
                            intern(next, &mut labels);
                            edges.push((prev.clone(), next.clone()));
                            prev = next.clone();
                            pos += 1;
                        }
                        _ => return Err(err_at(pos, "expected vertex after '--'".into())),
                    }
                }
            }
            Some((tok, _, _)) => return Err(err_at(pos, format!("unexpected token {tok:?}"))),
        }
    }
    if pos != toks.len() {
        return Err(err_at(pos, "trailing input after '}'".into()));
    }

    let mut g = Graph::new(labels)?;
    for (a, b) in edges {
        let u = g.index_of(&a).expect("interned");
        let v = g.index_of(&b).expect("interned");
        if u == v {
            return Err(Error::SelfLoop(a));
        }
        g.set_edge(u, v, true);
    }
    Ok(g)
}
