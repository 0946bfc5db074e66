//! Flow graphs: one source with a single entry arc, one target with a single
//! exit arc, strongly connected once source and target are identified.

use std::fmt;

use super::Digraph;
use crate::error::Error;

/// One failed clause of the flow-graph definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowViolation {
    NoSource,
    MultipleSources(Vec<String>),
    NoTarget,
    MultipleTargets(Vec<String>),
    /// The source must have exactly one outgoing arc.
    EntryArcCount {
        source: String,
        count: usize,
    },
    /// The target must have exactly one incoming arc.
    ExitArcCount {
        target: String,
        count: usize,
    },
    NotStronglyConnected,
}

impl fmt::Display for FlowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoSource => write!(f, "no vertex of indegree 0"),
            Self::MultipleSources(v) => write!(f, "multiple sources: {}", v.join(", ")),
            Self::NoTarget => write!(f, "no vertex of outdegree 0"),
            Self::MultipleTargets(v) => write!(f, "multiple targets: {}", v.join(", ")),
            Self::EntryArcCount { source, count } => {
                write!(f, "source '{source}' has {count} outgoing arcs, expected 1")
            }
            Self::ExitArcCount { target, count } => {
                write!(f, "target '{target}' has {count} incoming arcs, expected 1")
            }
            Self::NotStronglyConnected => {
                write!(
                    f,
                    "not strongly connected after identifying source and target"
                )
            }
        }
    }
}

/// A digraph validated as a flow graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowGraph {
    digraph: Digraph,
    source: usize,
    target: usize,
}

impl FlowGraph {
    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn into_digraph(self) -> Digraph {
        self.digraph
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn entry_arc(&self) -> (usize, usize) {
        (self.source, self.digraph.out_neighbors(self.source)[0])
    }

    pub fn exit_arc(&self) -> (usize, usize) {
        (self.digraph.in_neighbors(self.target)[0], self.target)
    }
}

pub fn validate_flow_graph(d: &Digraph) -> Result<FlowGraph, Error> {
    if d.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    let n = d.vertex_count();
    let sources: Vec<usize> = (0..n).filter(|&v| d.in_degree(v) == 0).collect();
    let targets: Vec<usize> = (0..n).filter(|&v| d.out_degree(v) == 0).collect();
    let names = |vs: &[usize]| vs.iter().map(|&v| d.label(v).to_string()).collect();

    let mut violations = Vec::new();
    match sources.len() {
        0 => violations.push(FlowViolation::NoSource),
        1 => {}
        _ => violations.push(FlowViolation::MultipleSources(names(&sources))),
    }
    match targets.len() {
        0 => violations.push(FlowViolation::NoTarget),
        1 => {}
        _ => violations.push(FlowViolation::MultipleTargets(names(&targets))),
    }
    if let [s] = sources[..] {
        if d.out_degree(s) != 1 {
            violations.push(FlowViolation::EntryArcCount {
                source: d.label(s).to_string(),
                count: d.out_degree(s),
            });
        }
    }
    if let [t] = targets[..] {
        if d.in_degree(t) != 1 {
            violations.push(FlowViolation::ExitArcCount {
                target: d.label(t).to_string(),
                count: d.in_degree(t),
            });
        }
    }
    if let ([s], [t]) = (&sources[..], &targets[..]) {
        if !connected_after_identifying(d, *s, *t) {
            violations.push(FlowViolation::NotStronglyConnected);
        }
        if violations.is_empty() {
            return Ok(FlowGraph {
                digraph: d.clone(),
                source: *s,
                target: *t,
            });
        }
    }
    Err(Error::NotFlowGraph(violations))
}

fn connected_after_identifying(d: &Digraph, s: usize, t: usize) -> bool {
    let n = d.vertex_count();
    let merge = |v: usize| if v == t { s } else { v };
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for &(u, v) in d.arcs() {
        let (u, v) = (merge(u), merge(v));
        if u != v {
            out[u].push(v);
            inc[v].push(u);
        }
    }
    let live = |v: usize| v != t || s == t;
    let fwd = super::reach(n, s, |u| &out[u]);
    let bwd = super::reach(n, s, |u| &inc[u]);
    (0..n).filter(|&v| live(v)).all(|v| fwd[v] && bwd[v])
}

/// Glues `f1` and `f2` by identifying the exit arc `(z1, t1)` of `f1` with
/// the entry arc `(s2, a2)` of `f2`: `s2` becomes `z1` and `a2` becomes `t1`.
///
/// Vertices of `f2` keep their labels unless they collide with a label
/// already in the result, in which case `g2.` is prepended (repeatedly, until
/// unique). The result starts with `f1`'s vertices in their original order.
pub fn series_compose(f1: &FlowGraph, f2: &FlowGraph) -> Result<FlowGraph, Error> {
    let (z1, t1) = f1.exit_arc();
    let (s2, a2) = f2.entry_arc();
    let g2 = f2.digraph();

    let mut d = f1.digraph().clone();
    let mut map = vec![usize::MAX; g2.vertex_count()];
    map[s2] = z1;
    map[a2] = t1;
    for v in 0..g2.vertex_count() {
        if v == s2 || v == a2 {
            continue;
        }
        let mut label = g2.label(v).to_string();
        while d.index_of(&label).is_some() {
            label = format!("g2.{label}");
        }
        map[v] = d.add_vertex(&label)?;
    }
    for &(u, v) in g2.arcs() {
        d.add_arc(map[u], map[v])?;
    }
    validate_flow_graph(&d)
}
