//! Isomorphism classes of digraphs in which every vertex but one has two
//! out-neighbours, and the two-way-branching flow graphs built from them.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::digraph::{validate_flow_graph, Digraph, FlowGraph};
use crate::error::Error;
use crate::homology::{betti, BettiProfile};

pub const MIN_FAMILY_ORDER: usize = 3;
pub const MAX_FAMILY_ORDER: usize = 7;

/// Adjacency bit code of a digraph on at most 8 vertices; bit `u * n + v`
/// is set for each arc `(u, v)`.
type Code = u64;

/// A member of the family together with every `(a, z)` at which closing the
/// arc `(z, a)` makes it strongly connected.
#[derive(Clone, Debug, PartialEq)]
pub struct ProgenitorRecord {
    pub digraph: Digraph,
    pub valid_pairs: Vec<(usize, usize)>,
    pub betti: BettiProfile,
}

fn check_order(n: usize) -> Result<(), Error> {
    if (MIN_FAMILY_ORDER..=MAX_FAMILY_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "family order must lie in {MIN_FAMILY_ORDER}..={MAX_FAMILY_ORDER}, got {n}"
        )))
    }
}

/// Unordered pairs of distinct out-neighbours available to vertex `u`.
fn choices(n: usize, u: usize) -> Vec<Code> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if a != u && b != u {
                out.push((1 << (u * n + a)) | (1 << (u * n + b)));
            }
        }
    }
    out
}

fn out_list(code: Code, n: usize, u: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&v| code >> (u * n + v) & 1 == 1)
}

/// Minimum code over relabellings that keep vertices in ascending order of
/// an isomorphism invariant, so only permutations inside invariant classes
/// are tried.
fn canonical(code: Code, n: usize) -> Code {
    let mut indeg = vec![0u32; n];
    for u in 0..n {
        for v in out_list(code, n, u) {
            indeg[v] += 1;
        }
    }
    let key = |u: usize| {
        let outdeg = out_list(code, n, u).count() as u32;
        let mut nb: Vec<u32> = out_list(code, n, u).map(|v| indeg[v]).collect();
        nb.sort_unstable();
        let mut pred: Vec<u32> = (0..n)
            .filter(|&w| code >> (w * n + u) & 1 == 1)
            .map(|w| indeg[w])
            .collect();
        pred.sort_unstable();
        (std::cmp::Reverse(outdeg), indeg[u], nb, pred)
    };
    let keys: Vec<_> = (0..n).map(key).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        if i > 0 && keys[order[i - 1]] == keys[v] {
            cells.last_mut().unwrap().push(v);
        } else {
            cells.push(vec![v]);
        }
    }

    let mut best = Code::MAX;
    let mut pos = vec![usize::MAX; n];
    search(code, n, &cells, 0, 0, &mut pos, &mut best);
    best
}

fn search(
    code: Code,
    n: usize,
    cells: &[Vec<usize>],
    cell: usize,
    next: usize,
    pos: &mut [usize],
    best: &mut Code,
) {
    let Some(members) = cells.get(cell) else {
        let mut relabelled = 0;
        for u in 0..n {
            for v in out_list(code, n, u) {
                relabelled |= 1 << (pos[u] * n + pos[v]);
            }
        }
        *best = (*best).min(relabelled);
        return;
    };
    let placed = members.iter().filter(|&&v| pos[v] != usize::MAX).count();
    if placed == members.len() {
        search(code, n, cells, cell + 1, next, pos, best);
        return;
    }
    for &v in members {
        if pos[v] == usize::MAX {
            pos[v] = next;
            search(code, n, cells, cell, next + 1, pos, best);
            pos[v] = usize::MAX;
        }
    }
}

fn code_to_digraph(code: Code, n: usize) -> Digraph {
    let mut d = Digraph::new();
    for v in 1..=n {
        d.add_vertex(&v.to_string()).expect("distinct labels");
    }
    for u in 0..n {
        for v in out_list(code, n, u) {
            d.add_arc(u, v).expect("loopless");
        }
    }
    d
}

/// Canonical codes of the family on `n` vertices, ascending.
fn family_codes(n: usize) -> Vec<Code> {
    let z = n - 1;
    let per_vertex: Vec<Vec<Code>> = (0..z).map(|u| choices(n, u)).collect();
    // the sink is last in every labelled member, so the choices for vertex 0
    // split the work into independent slices
    let mut codes: Vec<Code> = per_vertex[0]
        .par_iter()
        .map(|&first| {
            let mut seen = HashSet::new();
            let mut stack = vec![(1usize, first)];
            while let Some((u, acc)) = stack.pop() {
                if u == z {
                    seen.insert(canonical(acc, n));
                    continue;
                }
                for &c in &per_vertex[u] {
                    stack.push((u + 1, acc | c));
                }
            }
            seen
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect();
    codes.sort_unstable();
    codes
}

/// Isomorphism classes of loopless digraphs on `n` vertices where one vertex
/// has outdegree 0 and every other vertex has outdegree 2, in canonical form
/// with labels `1..=n`.
pub fn enumerate_outdeg2_family(n: usize) -> Result<Vec<Digraph>, Error> {
    check_order(n)?;
    Ok(family_codes(n)
        .into_iter()
        .map(|c| code_to_digraph(c, n))
        .collect())
}

/// Pairs `(a, z)` with `z` the sink and every vertex reachable from `a` and
/// reaching `z`.
pub fn valid_pairs(d: &Digraph) -> Vec<(usize, usize)> {
    let sinks: Vec<usize> = (0..d.vertex_count())
        .filter(|&v| d.out_degree(v) == 0)
        .collect();
    let [z] = sinks[..] else { return Vec::new() };
    let reaches_z = d.reversed().reachable_from(z);
    if !reaches_z.iter().all(|&r| r) {
        return Vec::new();
    }
    (0..d.vertex_count())
        .filter(|&a| a != z && d.reachable_from(a).iter().all(|&r| r))
        .map(|a| (a, z))
        .collect()
}

/// Family members with at least one valid pair, with reduced Betti numbers
/// up to dimension 3.
pub fn enumerate_2fg_progenitors(n: usize) -> Result<Vec<ProgenitorRecord>, Error> {
    let family = enumerate_outdeg2_family(n)?;
    family
        .into_par_iter()
        .filter_map(|d| {
            let pairs = valid_pairs(&d);
            (!pairs.is_empty()).then_some((d, pairs))
        })
        .map(|(d, valid_pairs)| {
            let betti = betti(&d, 3)?;
            Ok(ProgenitorRecord {
                digraph: d,
                valid_pairs,
                betti,
            })
        })
        .collect()
}

/// Adds a source `s` with the arc `(s, a)` and, if `with_target`, a target
/// `t` with the arc `(z, t)`.
pub fn progenitor_to_2fg(
    rec: &ProgenitorRecord,
    pair_index: usize,
    with_target: bool,
) -> Result<FlowGraph, Error> {
    let &(a, z) = rec.valid_pairs.get(pair_index).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "pair index {pair_index} out of range for {} valid pairs",
            rec.valid_pairs.len()
        ))
    })?;
    close_pair(&rec.digraph, a, z, with_target)
}

fn close_pair(d: &Digraph, a: usize, z: usize, with_target: bool) -> Result<FlowGraph, Error> {
    let mut d = d.clone();
    let s = d.add_vertex(&d.fresh_label("s"))?;
    d.add_arc(s, a)?;
    if with_target {
        let t = d.add_vertex(&d.fresh_label("t"))?;
        d.add_arc(z, t)?;
    }
    validate_flow_graph(&d)
}

/// A random two-way-branching flow graph: a uniformly drawn labelled family
/// member on `n` vertices, redrawn until it has a valid pair, closed at a
/// uniformly chosen pair with a fresh source and target.
pub fn random_2fg(seed: u64, n: usize) -> Result<FlowGraph, Error> {
    check_order(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_vertex: Vec<Vec<Code>> = (0..n - 1).map(|u| choices(n, u)).collect();
    loop {
        let code = per_vertex
            .iter()
            .fold(0, |acc, c| acc | c[rng.random_range(0..c.len())]);
        let d = code_to_digraph(code, n);
        let valid_pairs = valid_pairs(&d);
        if valid_pairs.is_empty() {
            continue;
        }
        let (a, z) = valid_pairs[rng.random_range(0..valid_pairs.len())];
        return close_pair(&d, a, z, true);
    }
}
