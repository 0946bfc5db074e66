//! Edge-list and restricted-DOT readers.

use super::Digraph;
use crate::error::Error;

/// What to do with `u u` arcs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LoopPolicy {
    #[default]
    Reject,
    /// Keep the vertex, remember the loop, leave it out of the arc set.
    Record,
}

/// Parser output with bookkeeping about what was dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedDigraph {
    pub digraph: Digraph,
    /// Vertex index of every self-loop seen, in input order, with repeats.
    pub loops: Vec<usize>,
    /// Number of arc statements that repeated an existing arc.
    pub collapsed_duplicates: usize,
}

impl ParsedDigraph {
    fn new() -> Self {
        Self {
            digraph: Digraph::new(),
            loops: Vec::new(),
            collapsed_duplicates: 0,
        }
    }

    fn arc(&mut self, u: &str, v: &str, policy: LoopPolicy, line: usize) -> Result<(), Error> {
        let ui = self.digraph.ensure_vertex(u)?;
        let vi = self.digraph.ensure_vertex(v)?;
        if ui == vi {
            return match policy {
                LoopPolicy::Reject => Err(Error::SelfLoop {
                    line,
                    vertex: u.to_string(),
                }),
                LoopPolicy::Record => {
                    self.loops.push(ui);
                    Ok(())
                }
            };
        }
        if !self.digraph.add_arc(ui, vi)? {
            self.collapsed_duplicates += 1;
        }
        Ok(())
    }
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, Error> {
    parse_edge_list_with(text, LoopPolicy::Reject).map(|p| p.digraph)
}

/// Reads `u v` lines. Blank lines and lines starting with `#` are skipped.
pub fn parse_edge_list_with(text: &str, policy: LoopPolicy) -> Result<ParsedDigraph, Error> {
    let mut parsed = ParsedDigraph::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::MalformedLine {
                line: k + 1,
                found: tokens.len(),
            });
        }
        parsed.arc(tokens[0], tokens[1], policy, k + 1)?;
    }
    Ok(parsed)
}

pub fn parse_dot_subset(text: &str) -> Result<Digraph, Error> {
    parse_dot_with(text, LoopPolicy::Reject).map(|p| p.digraph)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    Arrow,
    Undirected,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Eq,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::DotSyntax {
            offset,
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) -> Result<(), Error> {
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            let rest = &self.src[self.pos..];
            if rest.starts_with(b"//") || rest.starts_with(b"#") {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if rest.starts_with(b"/*") {
                let start = self.pos;
                self.pos += 2;
                loop {
                    if self.pos + 1 >= self.src.len() {
                        return Err(self.err(start, "unterminated comment"));
                    }
                    if &self.src[self.pos..self.pos + 2] == b"*/" {
                        self.pos += 2;
                        break;
                    }
                    self.pos += 1;
                }
            } else {
                return Ok(());
            }
        }
    }

    /// Next token and its byte offset, or `None` at end of input.
    fn next(&mut self) -> Result<Option<(usize, Tok)>, Error> {
        self.skip_trivia()?;
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok(None);
        };
        let tok = match c {
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b';' | b',' => Tok::Semi,
            b'=' => Tok::Eq,
            b'-' if self.src.get(self.pos + 1) == Some(&b'>') => {
                self.pos += 1;
                Tok::Arrow
            }
            b'-' if self.src.get(self.pos + 1) == Some(&b'-') => {
                self.pos += 1;
                Tok::Undirected
            }
            b'"' => {
                let mut s = Vec::new();
                self.pos += 1;
                loop {
                    match self.src.get(self.pos) {
                        None => return Err(self.err(start, "unterminated string")),
                        Some(b'"') => break,
                        Some(b'\\') if self.pos + 1 < self.src.len() => {
                            s.push(self.src[self.pos + 1]);
                            self.pos += 2;
                        }
                        Some(&b) => {
                            s.push(b);
                            self.pos += 1;
                        }
                    }
                }
                self.pos += 1;
                let s = String::from_utf8(s).map_err(|_| self.err(start, "invalid UTF-8"))?;
                return Ok(Some((start, Tok::Id(s))));
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .to_string();
                return Ok(Some((start, Tok::Id(s))));
            }
            _ => return Err(self.err(start, format!("unexpected character '{}'", c as char))),
        };
        self.pos += 1;
        Ok(Some((start, tok)))
    }

    /// Skips an attribute list; the opening `[` has been consumed.
    fn skip_attrs(&mut self, open: usize) -> Result<(), Error> {
        loop {
            match self.next()? {
                None => return Err(self.err(open, "unterminated attribute list")),
                Some((_, Tok::Id(_) | Tok::Eq | Tok::Semi)) => {}
                Some((_, Tok::RBracket)) => return Ok(()),
                Some((p, _)) => return Err(self.err(p, "unexpected token in attribute list")),
            }
        }
    }
}

/// Reads `digraph NAME { a -> b; ... }`. Node statements, edge chains,
/// attribute lists and `key = value` statements are accepted; attributes are
/// ignored. Subgraphs, ports and undirected graphs are rejected.
pub fn parse_dot_with(text: &str, policy: LoopPolicy) -> Result<ParsedDigraph, Error> {
    let text_bytes = text.as_bytes();
    let mut lx = Lexer {
        src: text_bytes,
        pos: 0,
    };
    let mut parsed = ParsedDigraph::new();

    let header = lx.next()?;
    match header {
        Some((_, Tok::Id(kw))) if kw == "digraph" => {}
        Some((p, Tok::Id(kw))) if kw == "graph" => return Err(Error::UndirectedDot { offset: p }),
        Some((p, _)) => return Err(lx.err(p, "expected 'digraph'")),
        None => return Err(lx.err(0, "empty input")),
    }
    let mut tok = lx.next()?;
    if let Some((_, Tok::Id(_))) = tok {
        tok = lx.next()?;
    }
    match tok {
        Some((_, Tok::LBrace)) => {}
        Some((p, _)) => return Err(lx.err(p, "expected '{'")),
        None => return Err(lx.err(text.len(), "expected '{'")),
    }

    let mut pending = lx.next()?;
    loop {
        let Some((p, t)) = pending.take() else {
            return Err(lx.err(text.len(), "missing '}'"));
        };
        match t {
            Tok::RBrace => break,
            Tok::Semi => {}
            Tok::Id(first) => {
                let mut chain = vec![(p, first)];
                let mut after = lx.next()?;
                loop {
                    match after {
                        Some((_, Tok::Arrow)) => match lx.next()? {
                            Some((q, Tok::Id(id))) => {
                                chain.push((q, id));
                                after = lx.next()?;
                            }
                            Some((q, _)) => return Err(lx.err(q, "expected node id after '->'")),
                            None => return Err(lx.err(text.len(), "expected node id after '->'")),
                        },
                        Some((q, Tok::Undirected)) => {
                            return Err(Error::UndirectedDot { offset: q })
                        }
                        _ => break,
                    }
                }
                let assignment = matches!(after, Some((_, Tok::Eq)));
                if assignment {
                    // graph-level `key = value`
                    if chain.len() != 1 {
                        return Err(lx.err(p, "attribute assignment on an edge chain"));
                    }
                    match lx.next()? {
                        Some((_, Tok::Id(_))) => {}
                        Some((q, _)) => return Err(lx.err(q, "expected attribute value")),
                        None => return Err(lx.err(text.len(), "expected attribute value")),
                    }
                    after = lx.next()?;
                } else if let Some((q, Tok::LBracket)) = after {
                    lx.skip_attrs(q)?;
                    after = lx.next()?;
                }
                let keyword = chain.len() == 1
                    && matches!(chain[0].1.as_str(), "graph" | "node" | "edge")
                    && text_bytes[chain[0].0] != b'"';
                if chain.len() == 1 && matches!(chain[0].1.as_str(), "subgraph" | "strict") {
                    return Err(lx.err(p, format!("'{}' is not supported", chain[0].1)));
                }
                if !keyword && !assignment {
                    if chain.len() == 1 {
                        parsed.digraph.ensure_vertex(&chain[0].1)?;
                    }
                    for w in chain.windows(2) {
                        let line = line_of(text, w[0].0);
                        parsed.arc(&w[0].1, &w[1].1, policy, line)?;
                    }
                }
                pending = after;
                continue;
            }
            Tok::LBrace => return Err(lx.err(p, "subgraphs are not supported")),
            _ => return Err(lx.err(p, "unexpected token")),
        }
        pending = lx.next()?;
    }
    if let Some((p, _)) = lx.next()? {
        return Err(lx.err(p, "trailing input after '}'"));
    }
    Ok(parsed)
}

fn line_of(text: &str, offset: usize) -> usize {
    text.as_bytes()[..offset]
        .iter()
        .filter(|&&b| b == b'\n')
        .count()
        + 1
}
