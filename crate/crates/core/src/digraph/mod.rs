//! Loopless simple digraphs with string-labelled vertices.
//!
//! Vertices are stored in insertion (first-mention) order and every index
//! used downstream refers to that order, so bases, matrices and generator
//! reports are reproducible run to run.

mod construct;
mod flow;
mod parse;

use std::borrow::Borrow;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

pub use construct::{k_partite_tower, loop_transform, suspension};
pub use flow::{series_compose, validate_flow_graph, FlowGraph, FlowViolation};
pub use parse::{
    parse_dot_subset, parse_dot_with, parse_edge_list, parse_edge_list_with, LoopPolicy,
    ParsedDigraph,
};

use crate::error::Error;

/// A vertex label. Non-empty; compared and ordered bytewise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Result<Self, Error> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(Self(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Loopless digraph without parallel arcs.
#[derive(Clone, Debug, Default)]
pub struct Digraph {
    labels: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    arcs: Vec<(usize, usize)>,
    arc_set: HashSet<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.arc_set == other.arc_set
    }
}

impl Eq for Digraph {}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a digraph from label pairs; vertices in first-mention order.
    pub fn from_arcs<S: AsRef<str>>(arcs: &[(S, S)]) -> Result<Self, Error> {
        let mut d = Self::new();
        for (u, v) in arcs {
            let u = d.ensure_vertex(u.as_ref())?;
            let v = d.ensure_vertex(v.as_ref())?;
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    /// Adds a new vertex; fails if the label is taken.
    pub fn add_vertex(&mut self, label: &str) -> Result<usize, Error> {
        let id = VertexId::new(label)?;
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateVertex(label.to_string()));
        }
        Ok(self.push_vertex(id))
    }

    /// Returns the index of `label`, adding the vertex if it is new.
    pub fn ensure_vertex(&mut self, label: &str) -> Result<usize, Error> {
        let id = VertexId::new(label)?;
        match self.index.get(&id) {
            Some(&i) => Ok(i),
            None => Ok(self.push_vertex(id)),
        }
    }

    fn push_vertex(&mut self, id: VertexId) -> usize {
        let i = self.labels.len();
        self.index.insert(id.clone(), i);
        self.labels.push(id);
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        i
    }

    /// A label not yet used, formed as `base` or `base` followed by `_`s.
    pub fn fresh_label(&self, base: &str) -> String {
        let mut label = base.to_string();
        while self.index_of(&label).is_some() {
            label.push('_');
        }
        label
    }

    /// Adds arc `(u, v)`. Returns `false` if it was already present.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<bool, Error> {
        let n = self.labels.len();
        if u >= n || v >= n {
            return Err(Error::InvalidArgument(format!(
                "arc ({u}, {v}) out of range"
            )));
        }
        if u == v {
            return Err(Error::SelfLoop {
                line: 0,
                vertex: self.labels[u].to_string(),
            });
        }
        if !self.arc_set.insert((u, v)) {
            return Ok(false);
        }
        self.arcs.push((u, v));
        let pos = self.out[u].binary_search(&v).unwrap_err();
        self.out[u].insert(pos, v);
        let pos = self.inc[v].binary_search(&u).unwrap_err();
        self.inc[v].insert(pos, u);
        Ok(true)
    }

    pub fn add_arc_by_label(&mut self, u: &str, v: &str) -> Result<bool, Error> {
        let u = self
            .index_of(u)
            .ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
        let v = self
            .index_of(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        self.add_arc(u, v)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        self.labels[i].as_str()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Arcs in insertion order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Arcs sorted lexicographically by vertex index.
    pub fn sorted_arcs(&self) -> Vec<(usize, usize)> {
        let mut a = self.arcs.clone();
        a.sort_unstable();
        a
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc_set.contains(&(u, v))
    }

    /// Out-neighbours in increasing index order.
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc[v].len()
    }

    /// Same vertices, every arc reversed.
    pub fn reversed(&self) -> Digraph {
        let mut d = Digraph::new();
        for l in &self.labels {
            d.push_vertex(l.clone());
        }
        for &(u, v) in &self.arcs {
            d.add_arc(v, u).expect("reversal preserves looplessness");
        }
        d
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// ordered by smallest member.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.out[u].iter().chain(&self.inc[u]) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True when every vertex reaches every other. The empty digraph is not
    /// strongly connected.
    pub fn strongly_connected(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let forward = reach(self.vertex_count(), 0, |u| &self.out[u]);
        let backward = reach(self.vertex_count(), 0, |u| &self.inc[u]);
        forward.iter().all(|&x| x) && backward.iter().all(|&x| x)
    }

    /// Vertices reachable from `start` along arcs.
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        reach(self.vertex_count(), start, |u| &self.out[u])
    }

    /// One `u v` line per arc, in insertion order. Isolated vertices are not
    /// representable in this format.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for &(u, v) in &self.arcs {
            s.push_str(self.label(u));
            s.push(' ');
            s.push_str(self.label(v));
            s.push('\n');
        }
        s
    }

    /// DOT text: every vertex as a node statement in stored order, then arcs.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {} {{\n", dot_id(name));
        for l in &self.labels {
            s.push_str(&format!("  {};\n", dot_id(l.as_str())));
        }
        for &(u, v) in &self.arcs {
            s.push_str(&format!(
                "  {} -> {};\n",
                dot_id(self.label(u)),
                dot_id(self.label(v))
            ));
        }
        s.push_str("}\n");
        s
    }
}

fn dot_id(label: &str) -> String {
    if !label.is_empty() && label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        label.to_string()
    } else {
        format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

fn reach<'a>(n: usize, start: usize, next: impl Fn(usize) -> &'a [usize]) -> Vec<bool> {
    let mut seen = vec![false; n];
    if n == 0 {
        return seen;
    }
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in next(u) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weak_components_examples() {
        let two_cycle = Digraph::from_arcs(&[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(two_cycle.weak_components().len(), 1);
        let disjoint = Digraph::from_arcs(&[("a", "b"), ("c", "d")]).unwrap();
        assert_eq!(disjoint.weak_components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(Digraph::new().weak_components().is_empty());
    }

    #[test]
    fn strong_connectivity() {
        assert!(Digraph::from_arcs(&[("a", "b"), ("b", "a")])
            .unwrap()
            .strongly_connected());
        assert!(!Digraph::from_arcs(&[("a", "b")])
            .unwrap()
            .strongly_connected());
        assert!(!Digraph::new().strongly_connected());
        let mut single = Digraph::new();
        single.add_vertex("x").unwrap();
        assert!(single.strongly_connected());
    }

    #[test]
    fn arcs_dedupe_and_reject_loops() {
        let mut d = Digraph::new();
        let a = d.add_vertex("a").unwrap();
        let b = d.add_vertex("b").unwrap();
        assert!(d.add_arc(a, b).unwrap());
        assert!(!d.add_arc(a, b).unwrap());
        assert_eq!(d.arc_count(), 1);
        assert!(matches!(d.add_arc(a, a), Err(Error::SelfLoop { .. })));
        assert!(d.add_vertex("a").is_err());
        assert!(d.add_vertex("").is_err());
    }

    #[test]
    fn reversal_keeps_vertices() {
        let d = Digraph::from_arcs(&[("s", "a"), ("a", "t")]).unwrap();
        let r = d.reversed();
        assert_eq!(r.labels(), d.labels());
        assert!(r.has_arc(1, 0) && r.has_arc(2, 1));
    }

    #[test]
    fn dot_quotes_unusual_labels() {
        let d = Digraph::from_arcs(&[("g2.a", "b")]).unwrap();
        assert_eq!(
            d.to_dot("g"),
            "digraph g {\n  \"g2.a\";\n  b;\n  \"g2.a\" -> b;\n}\n"
        );
    }
}
