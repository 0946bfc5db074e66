//! Self-checks against known results, grouped into suites.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::corpus::{enumerate_2fg_progenitors, enumerate_outdeg2_family, random_2fg};
use crate::digraph::{k_partite_tower, series_compose, suspension, Digraph};
use crate::homology::{betti, brute_force_oracle};
use crate::metrics::cyclomatic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Claim {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.name, self.detail)
    }
}

pub fn two_cycle() -> Digraph {
    Digraph::from_arcs(&[("a", "b"), ("b", "a")]).expect("valid arcs")
}

/// The eight-vertex flow graph with `ν = 4` and homology in dimensions 1 and 2.
pub fn eight_vertex_flow_graph() -> Digraph {
    Digraph::from_arcs(&[
        ("v1", "v2"),
        ("v2", "v4"),
        ("v2", "v5"),
        ("v3", "v4"),
        ("v3", "v5"),
        ("v4", "v6"),
        ("v4", "v7"),
        ("v5", "v6"),
        ("v5", "v7"),
        ("v6", "v8"),
        ("v7", "v3"),
    ])
    .expect("valid arcs")
}

/// `δ_{p, L-1} · Π (n_ℓ - 1)` for `p` in `0..=p_max`.
pub fn tower_prediction(layers: &[usize], p_max: usize) -> Vec<usize> {
    let product = layers.iter().map(|n| n - 1).product();
    (0..=p_max)
        .map(|p| if p + 1 == layers.len() { product } else { 0 })
        .collect()
}

/// Every layer list of length at most `max_layers` with sizes in `1..=max_size`.
pub fn layer_lists(max_layers: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_layers {
        let mut next = Vec::new();
        for l in &frontier {
            for n in 1..=max_size {
                let mut m: Vec<usize> = l.clone();
                m.push(n);
                next.push(m);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn profile_claim(name: &str, d: &Digraph, p_max: usize, want: &[usize]) -> Claim {
    match betti(d, p_max) {
        Ok(b) => Claim::new(
            name,
            b.reduced == want,
            format!("reduced {:?}, expected {want:?}", b.reduced),
        ),
        Err(e) => Claim::new(name, false, e.to_string()),
    }
}

pub fn paper_suite() -> Vec<Claim> {
    let mut claims = Vec::new();
    let s1 = suspension(&two_cycle(), 1).expect("nonempty");
    let s2 = suspension(&two_cycle(), 2).expect("nonempty");
    claims.push(profile_claim(
        "suspension of 2-cycle",
        &s1,
        3,
        &[0, 0, 1, 0],
    ));
    claims.push(profile_claim(
        "double suspension of 2-cycle",
        &s2,
        4,
        &[0, 0, 0, 1, 0],
    ));

    let flow = eight_vertex_flow_graph();
    claims.push(profile_claim(
        "eight-vertex flow graph",
        &flow,
        3,
        &[0, 1, 1, 0],
    ));
    let nu = cyclomatic(&flow).expect("nonempty");
    claims.push(Claim::new(
        "eight-vertex flow graph cyclomatic",
        nu == 4,
        format!("nu = {nu}"),
    ));

    let lists = layer_lists(4, 3);
    let bad: Vec<String> = lists
        .par_iter()
        .filter_map(|l| {
            let d = k_partite_tower(l).ok()?;
            let want = tower_prediction(l, l.len());
            match betti(&d, l.len()) {
                Ok(b) if b.reduced == want => None,
                Ok(b) => Some(format!("{l:?} gave {:?}", b.reduced)),
                Err(e) => Some(format!("{l:?}: {e}")),
            }
        })
        .collect();
    claims.push(Claim::new(
        "layered towers",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} layer lists", lists.len())
        } else {
            bad.join("; ")
        },
    ));

    let sizes: Vec<usize> = (3..=6)
        .map(|n| enumerate_outdeg2_family(n).map(|f| f.len()).unwrap_or(0))
        .collect();
    claims.push(Claim::new(
        "outdegree-2 family sizes",
        sizes == [1, 7, 66, 916],
        format!("n = 3..=6 gives {sizes:?}"),
    ));

    let positive = |n: usize| -> Vec<Vec<usize>> {
        let mut got: Vec<Vec<usize>> = enumerate_2fg_progenitors(n)
            .unwrap_or_default()
            .into_iter()
            .filter(|r| r.betti.reduced_at(2) > 0)
            .map(|r| r.betti.reduced)
            .collect();
        got.sort();
        got
    };
    let four = positive(4);
    claims.push(Claim::new(
        "4-vertex progenitors with second homology",
        four.len() == 1,
        format!("{} records, expected 1", four.len()),
    ));
    let five = positive(5);
    let want = vec![vec![0, 0, 1, 0], vec![0, 1, 1, 0]];
    claims.push(Claim::new(
        "5-vertex progenitors with second homology",
        five == want,
        format!("profiles {five:?}, expected {want:?}"),
    ));

    let six: Vec<_> = enumerate_2fg_progenitors(6)
        .unwrap_or_default()
        .into_iter()
        .filter(|r| r.betti.reduced_at(2) > 0)
        .collect();
    let mut beta1: Vec<usize> = six.iter().map(|r| r.betti.reduced_at(1)).collect();
    beta1.sort();
    let all_one = six
        .iter()
        .all(|r| r.betti.reduced_at(2) == 1 && r.betti.reduced_at(3) == 0);
    let want: Vec<usize> = [vec![0; 10], vec![1; 5], vec![2; 2]].concat();
    claims.push(Claim::new(
        "6-vertex progenitors with second homology",
        six.len() == 17 && all_one && beta1 == want,
        format!("{} records, beta1 {beta1:?}", six.len()),
    ));
    claims
}

/// Every labelled loopless digraph on `n` vertices, by arc bitmask.
pub fn digraph_from_mask(n: usize, mask: u64) -> Digraph {
    let mut d = Digraph::new();
    for v in 0..n {
        d.add_vertex(&format!("v{v}")).expect("distinct labels");
    }
    let mut bit = 0;
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            if mask >> bit & 1 == 1 {
                d.add_arc(u, v).expect("loopless");
            }
            bit += 1;
        }
    }
    d
}

pub fn oracle_suite() -> Vec<Claim> {
    (1..=4usize)
        .map(|n| {
            let total = 1u64 << (n * (n - 1));
            let mismatches: Vec<u64> = (0..total)
                .into_par_iter()
                .filter(|&mask| {
                    let d = digraph_from_mask(n, mask);
                    betti(&d, 3).ok() != brute_force_oracle(&d, 3).ok()
                })
                .collect();
            Claim::new(
                format!("oracle agreement on {n} vertices"),
                mismatches.is_empty(),
                format!("{total} digraphs, {} mismatches", mismatches.len()),
            )
        })
        .collect()
}

/// Reduced Betti numbers of a series composition against the sums for
/// `pairs` seeded pairs of random two-way-branching flow graphs.
pub fn series_suite(pairs: usize, seed: u64) -> Vec<Claim> {
    (0..pairs as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
            let (n1, n2) = (rng.random_range(3..=6), rng.random_range(3..=6));
            let (s1, s2) = (rng.random(), rng.random());
            let name = format!("series pair {i}");
            let outcome = (|| {
                let f1 = random_2fg(s1, n1)?;
                let f2 = random_2fg(s2, n2)?;
                let joined = series_compose(&f1, &f2)?;
                let b1 = betti(f1.digraph(), 3)?.reduced;
                let b2 = betti(f2.digraph(), 3)?.reduced;
                let sum: Vec<usize> = b1.iter().zip(&b2).map(|(x, y)| x + y).collect();
                let got = betti(joined.digraph(), 3)?.reduced;
                Ok::<_, crate::Error>((got == sum, format!("{got:?} vs {b1:?} + {b2:?}")))
            })();
            match outcome {
                Ok((passed, detail)) => Claim::new(name, passed, detail),
                Err(e) => Claim::new(name, false, e.to_string()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_list_count() {
        assert_eq!(layer_lists(4, 3).len(), 3 + 9 + 27 + 81);
        assert_eq!(layer_lists(1, 2), vec![vec![1], vec![2]]);
    }

    #[test]
    fn tower_prediction_values() {
        assert_eq!(tower_prediction(&[2, 2, 2], 3), vec![0, 0, 1, 0]);
        assert_eq!(tower_prediction(&[3], 1), vec![2, 0]);
        assert_eq!(tower_prediction(&[1, 3, 1], 2), vec![0, 0, 0]);
    }

    #[test]
    fn claim_display() {
        let c = Claim::new("x", false, "y");
        assert_eq!(c.to_string(), "FAIL x: y");
    }

    #[test]
    fn series_suite_runs() {
        assert!(series_suite(5, 11).iter().all(|c| c.passed));
    }
}
