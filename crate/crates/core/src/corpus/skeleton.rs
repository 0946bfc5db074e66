//! Program skeletons: grammar-generated structured code, random conditional
//! gotos, their text form, and their control flow graphs.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineKind {
    Stmt,
    If,
    EndIf,
    DoWhile,
    EndDo,
    Repeat,
    Until,
    /// Conditional jump to a 1-based line number.
    Goto(usize),
    Exit,
}

impl LineKind {
    /// Lines that evaluate the predicate `b`.
    pub fn is_predicate(self) -> bool {
        matches!(self, Self::If | Self::DoWhile | Self::Until | Self::Goto(_))
    }
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Stmt => f.write_str("stmt"),
            Self::If => f.write_str("if b"),
            Self::EndIf => f.write_str("endif"),
            Self::DoWhile => f.write_str("do while b"),
            Self::EndDo => f.write_str("enddo"),
            Self::Repeat => f.write_str("repeat"),
            Self::Until => f.write_str("until b"),
            Self::Goto(k) => write!(f, "goto {k} if b"),
            Self::Exit => f.write_str("exit"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub lines: Vec<LineKind>,
    /// `|b|`, the number of predicate lines.
    pub predicate_count: usize,
    /// `None` for skeletons read from text.
    pub seed: Option<u64>,
    /// One vertex per line, labelled by its 1-based line number.
    pub cfg: Digraph,
}

impl Skeleton {
    pub fn from_lines(lines: Vec<LineKind>, seed: Option<u64>) -> Result<Self, Error> {
        let cfg = skeleton_to_cfg(&lines)?;
        let predicate_count = lines.iter().filter(|k| k.is_predicate()).count();
        Ok(Self {
            lines,
            predicate_count,
            seed,
            cfg,
        })
    }

    /// One statement per line, newline terminated.
    pub fn to_text(&self) -> String {
        self.lines.iter().map(|k| format!("{k}\n")).collect()
    }
}

#[derive(Clone, Copy)]
enum Node {
    Open,
    Seq(usize, usize),
    If(usize),
    DoWhile(usize),
    Repeat(usize),
}

/// Derives a skeleton from `S` by `n_productions` rewrites of a uniformly
/// chosen open nonterminal with a uniformly chosen production among
/// `S;S`, `if b;S;endif`, `do while b;S;enddo`, `repeat;S;until b`.
/// Nonterminals still open at the end become `stmt`, and a final `exit`
/// line is appended.
pub fn gen_structured_skeleton(seed: u64, n_productions: usize) -> Result<Skeleton, Error> {
    if n_productions == 0 {
        return Err(Error::InvalidArgument(
            "at least one production is required".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = vec![Node::Open];
    let mut open = vec![0usize];
    for _ in 0..n_productions {
        let slot = open.swap_remove(rng.random_range(0..open.len()));
        let child = nodes.len();
        nodes[slot] = match rng.random_range(0..4u8) {
            0 => {
                nodes.push(Node::Open);
                nodes.push(Node::Open);
                open.extend([child, child + 1]);
                Node::Seq(child, child + 1)
            }
            k => {
                nodes.push(Node::Open);
                open.push(child);
                match k {
                    1 => Node::If(child),
                    2 => Node::DoWhile(child),
                    _ => Node::Repeat(child),
                }
            }
        };
    }
    let mut lines = Vec::new();
    flatten(&nodes, 0, &mut lines);
    lines.push(LineKind::Exit);
    Skeleton::from_lines(lines, Some(seed))
}

fn flatten(nodes: &[Node], at: usize, out: &mut Vec<LineKind>) {
    match nodes[at] {
        Node::Open => out.push(LineKind::Stmt),
        Node::Seq(a, b) => {
            flatten(nodes, a, out);
            flatten(nodes, b, out);
        }
        Node::If(body) => {
            out.push(LineKind::If);
            flatten(nodes, body, out);
            out.push(LineKind::EndIf);
        }
        Node::DoWhile(body) => {
            out.push(LineKind::DoWhile);
            flatten(nodes, body, out);
            out.push(LineKind::EndDo);
        }
        Node::Repeat(body) => {
            out.push(LineKind::Repeat);
            flatten(nodes, body, out);
            out.push(LineKind::Until);
        }
    }
}

/// `n_gotos` conditional gotos, then plain statements, then `exit`. Goto `i`
/// jumps to a line drawn uniformly from `1..=n_lines` minus `{i, i + 1}`.
pub fn gen_goto_skeleton(seed: u64, n_gotos: usize, n_lines: usize) -> Result<Skeleton, Error> {
    if n_lines < n_gotos + 1 {
        return Err(Error::InvalidArgument(format!(
            "{n_lines} lines cannot hold {n_gotos} gotos and an exit"
        )));
    }
    if n_gotos > 0 && n_lines < 3 {
        return Err(Error::InvalidArgument(
            "a goto needs at least 3 lines to jump within".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::with_capacity(n_lines);
    for i in 1..=n_gotos {
        // uniform over n_lines - 2 candidates, skipping i and i + 1
        let mut t = rng.random_range(1..=n_lines - 2);
        if t >= i {
            t += 2;
        }
        lines.push(LineKind::Goto(t));
    }
    lines.resize(n_lines - 1, LineKind::Stmt);
    lines.push(LineKind::Exit);
    Skeleton::from_lines(lines, Some(seed))
}

/// Control flow graph with one vertex per line. Plain lines fall through;
/// `if` branches to its body and past its `endif`; `do while` to its body and
/// past its `enddo`, which jumps back; `until` to its `repeat` and onward;
/// `goto` to its target and onward; `exit` has no successor. Successors past
/// the last line are dropped.
///
/// Every predicate line has two successors and every other line before the
/// last has one, so `|A| = |V| - 1 + |b|` whenever the last line is `exit`.
pub fn skeleton_to_cfg(lines: &[LineKind]) -> Result<Digraph, Error> {
    let n = lines.len();
    if n == 0 {
        return Err(Error::Skeleton {
            line: 0,
            message: "empty skeleton".into(),
        });
    }
    let partner = match_delimiters(lines)?;
    let mut d = Digraph::new();
    for i in 1..=n {
        d.add_vertex(&i.to_string())?;
    }
    let mut succ: Vec<(usize, usize)> = Vec::with_capacity(2 * n);
    for (i, kind) in lines.iter().enumerate() {
        let next = i + 1;
        match *kind {
            LineKind::Stmt | LineKind::EndIf | LineKind::Repeat => succ.push((i, next)),
            LineKind::If => succ.extend([(i, next), (i, partner[i] + 1)]),
            LineKind::DoWhile => succ.extend([(i, next), (i, partner[i] + 1)]),
            LineKind::EndDo => succ.push((i, partner[i])),
            LineKind::Until => succ.extend([(i, partner[i]), (i, next)]),
            LineKind::Goto(t) => {
                if t == 0 || t > n {
                    return Err(Error::Skeleton {
                        line: i + 1,
                        message: format!("goto target {t} outside 1..={n}"),
                    });
                }
                if t == i + 1 {
                    return Err(Error::Skeleton {
                        line: i + 1,
                        message: "goto targets itself".into(),
                    });
                }
                succ.extend([(i, t - 1), (i, next)]);
            }
            LineKind::Exit => {}
        }
    }
    for (u, v) in succ {
        if v < n {
            d.add_arc(u, v)?;
        }
    }
    Ok(d)
}

/// Index of the matching delimiter for every opening and closing line.
fn match_delimiters(lines: &[LineKind]) -> Result<Vec<usize>, Error> {
    let mut partner = vec![usize::MAX; lines.len()];
    let mut stack: Vec<usize> = Vec::new();
    for (i, kind) in lines.iter().enumerate() {
        let opener = match kind {
            LineKind::If | LineKind::DoWhile | LineKind::Repeat => {
                stack.push(i);
                continue;
            }
            LineKind::EndIf => LineKind::If,
            LineKind::EndDo => LineKind::DoWhile,
            LineKind::Until => LineKind::Repeat,
            _ => continue,
        };
        match stack.pop() {
            Some(j) if lines[j] == opener => {
                partner[i] = j;
                partner[j] = i;
            }
            _ => {
                return Err(Error::Skeleton {
                    line: i + 1,
                    message: format!("unmatched '{kind}'"),
                })
            }
        }
    }
    if let Some(&j) = stack.last() {
        return Err(Error::Skeleton {
            line: j + 1,
            message: format!("unclosed '{}'", lines[j]),
        });
    }
    Ok(partner)
}

/// Reads the one-statement-per-line text form. Blank lines and `#` comments
/// are skipped and do not count towards goto line numbers.
pub fn parse_skeleton(text: &str) -> Result<Skeleton, Error> {
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let words: Vec<&str> = raw.split_whitespace().collect();
        let kind = match words[..] {
            [] => continue,
            [w, ..] if w.starts_with('#') => continue,
            ["stmt"] => LineKind::Stmt,
            ["if", "b"] => LineKind::If,
            ["endif"] => LineKind::EndIf,
            ["do", "while", "b"] => LineKind::DoWhile,
            ["enddo"] => LineKind::EndDo,
            ["repeat"] => LineKind::Repeat,
            ["until", "b"] => LineKind::Until,
            ["exit"] => LineKind::Exit,
            ["goto", k, "if", "b"] => match k.parse() {
                Ok(k) => LineKind::Goto(k),
                Err(_) => {
                    return Err(Error::Skeleton {
                        line: no + 1,
                        message: format!("bad goto target '{k}'"),
                    })
                }
            },
            _ => {
                return Err(Error::Skeleton {
                    line: no + 1,
                    message: format!("unrecognised statement '{}'", raw.trim()),
                })
            }
        };
        lines.push(kind);
    }
    Skeleton::from_lines(lines, None)
}
