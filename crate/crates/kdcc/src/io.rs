//! Graph file formats.
//!
//! Edge lists hold one edge per line as two whitespace-separated vertex ids.
//! `#` starts a comment and blank lines are skipped. The vertex count is the
//! largest id plus one unless an `n=<count>` line says otherwise, which is how
//! isolated vertices survive a round trip.
//!
//! The DOT reader accepts a small undirected subset: `graph [name] { ... }`
//! with node statements and `--` edge chains. Anything else is an error.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use kdcc_core::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut declared = None;
    let mut edges = Vec::new();
    let mut max_id = None;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(count) = line.strip_prefix("n=") {
            if declared.is_some() {
                return Err(syntax(line_no, "repeated n= header"));
            }
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| syntax(line_no, format!("bad vertex count {count:?}")))?;
            declared = Some((line_no, count));
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(syntax(line_no, "expected two vertex ids"));
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| syntax(line_no, format!("bad vertex id {s:?}")))
        };
        let (a, b) = (parse(a)?, parse(b)?);
        max_id = max_id.max(Some(a.max(b)));
        edges.push((a, b));
    }
    let implied = max_id.map_or(0, |m| m + 1);
    let n = match declared {
        Some((line, n)) if n < implied => {
            return Err(syntax(
                line,
                format!("n={n} is smaller than the largest id {}", implied - 1),
            ))
        }
        Some((_, n)) => n,
        None => implied,
    };
    Ok(Graph::new(n, edges)?)
}

/// Canonical text form: edges in ascending order, with an `n=` header only
/// when the edges alone would not recover the vertex count.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let implied = g.edges().map(|e| e.v() + 1).max().unwrap_or(0);
    if implied != g.vertex_count() {
        let _ = writeln!(out, "n={}", g.vertex_count());
    }
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Word(String),
    Quoted(String),
    Dash2,
    Arrow,
    Open,
    Close,
    Semi,
    Other(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FormatError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1;
    let mut at_line_start = true;
    while let Some(c) = chars.next() {
        match c {
            '\n' => {
                line += 1;
                at_line_start = true;
                continue;
            }
            c if c.is_whitespace() => continue,
            '#' if at_line_start => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '/' if chars.peek() == Some(&'/') => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '/' if chars.peek() == Some(&'*') => {
                chars.next();
                let mut prev = ' ';
                loop {
                    match chars.next() {
                        Some('/') if prev == '*' => break,
                        Some(c) => {
                            if c == '\n' {
                                line += 1;
                            }
                            prev = c;
                        }
                        None => return Err(syntax(line, "unterminated comment")),
                    }
                }
            }
            '-' if chars.peek() == Some(&'-') => {
                chars.next();
                tokens.push((line, Token::Dash2));
            }
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                tokens.push((line, Token::Arrow));
            }
            '{' => tokens.push((line, Token::Open)),
            '}' => tokens.push((line, Token::Close)),
            ';' => tokens.push((line, Token::Semi)),
            '"' => {
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('\\') => {
                            if let Some(c) = chars.next() {
                                s.push(c);
                            }
                        }
                        Some('"') => break,
                        Some(c) => {
                            if c == '\n' {
                                line += 1;
                            }
                            s.push(c);
                        }
                        None => return Err(syntax(line, "unterminated string")),
                    }
                }
                tokens.push((line, Token::Quoted(s)));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut s = String::from(c);
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '.' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push((line, Token::Word(s)));
            }
            other => tokens.push((line, Token::Other(other))),
        }
        at_line_start = false;
    }
    Ok(tokens)
}

const UNSUPPORTED: [&str; 6] = ["subgraph", "node", "edge", "graph", "digraph", "strict"];

fn is_keyword(word: &str, keyword: &str) -> bool {
    word.eq_ignore_ascii_case(keyword)
}

/// Reads the restricted DOT subset. When every node id is a plain integer
/// the ids are used as vertex ids; otherwise vertices are numbered in order
/// of first appearance and keep their names as labels.
pub fn parse_dot(text: &str) -> Result<Graph, FormatError> {
    let tokens = tokenize(text)?;
    let mut it = tokens.into_iter().peekable();
    let last_line = text.lines().count().max(1);

    match it.next() {
        Some((_, Token::Word(w))) if is_keyword(&w, "graph") => {}
        Some((line, Token::Word(w))) if is_keyword(&w, "digraph") => {
            return Err(syntax(line, "directed graphs are not supported"))
        }
        Some((line, Token::Word(w))) if is_keyword(&w, "strict") => {
            return Err(syntax(line, "strict graphs are not supported"))
        }
        Some((line, _)) => return Err(syntax(line, "expected `graph`")),
        None => return Err(syntax(1, "empty input")),
    }
    if matches!(it.peek(), Some((_, Token::Word(_) | Token::Quoted(_)))) {
        it.next();
    }
    match it.next() {
        Some((_, Token::Open)) => {}
        Some((line, _)) => return Err(syntax(line, "expected `{`")),
        None => return Err(syntax(last_line, "expected `{`")),
    }

    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut intern = |name: String| -> usize {
        *index.entry(name.clone()).or_insert_with(|| {
            names.push(name);
            names.len() - 1
        })
    };

    let mut closed = false;
    // last node of the current statement, and whether a `--` awaits its target
    let mut current: Option<usize> = None;
    let mut pending = false;
    for (line, token) in it.by_ref() {
        let name = match token {
            Token::Word(w) => {
                if UNSUPPORTED.iter().any(|k| is_keyword(&w, k)) {
                    return Err(syntax(line, format!("`{w}` statements are not supported")));
                }
                w
            }
            Token::Quoted(s) => s,
            Token::Dash2 if current.is_some() && !pending => {
                pending = true;
                continue;
            }
            Token::Dash2 => return Err(syntax(line, "`--` without a source node")),
            Token::Semi | Token::Close if pending => {
                return Err(syntax(line, "`--` without a target node"))
            }
            Token::Semi => {
                current = None;
                continue;
            }
            Token::Close => {
                closed = true;
                break;
            }
            Token::Arrow => return Err(syntax(line, "`->` edges are not supported")),
            Token::Open => return Err(syntax(line, "nested blocks are not supported")),
            Token::Other('[') => return Err(syntax(line, "attributes are not supported")),
            Token::Other('=') => {
                return Err(syntax(line, "attribute assignments are not supported"))
            }
            Token::Other(c) => return Err(syntax(line, format!("unexpected character {c:?}"))),
        };
        let id = intern(name);
        if pending {
            edges.push((current.expect("pending edge has a source"), id));
            pending = false;
        }
        current = Some(id);
    }
    if !closed {
        return Err(syntax(last_line, "missing closing `}`"));
    }
    if let Some((line, _)) = it.next() {
        return Err(syntax(line, "content after the closing `}`"));
    }

    let numeric: Option<Vec<usize>> = names.iter().map(|s| plain_integer(s)).collect();
    match numeric {
        Some(ids) => {
            let n = ids.iter().map(|&i| i + 1).max().unwrap_or(0);
            let edges = edges.into_iter().map(|(a, b)| (ids[a], ids[b]));
            Ok(Graph::new(n, edges)?)
        }
        None => Ok(Graph::new(names.len(), edges)?.with_labels(names)?),
    }
}

fn plain_integer(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn is_dot_path(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("dot") || e.eq_ignore_ascii_case("gv"))
}

/// Reads a graph file, choosing the DOT reader for `.dot` and `.gv` files.
pub fn read_graph(path: &Path) -> Result<Graph, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    if is_dot_path(path) {
        parse_dot(&text)
    } else {
        parse_edge_list(&text)
    }
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<(), FormatError> {
    fs::write(path, write_edge_list(g)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}
