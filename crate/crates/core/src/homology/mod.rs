//! Betti numbers of the path complex and representatives of H̃_1.

mod oracle;

use serde::{Deserialize, Serialize};

pub use oracle::{brute_force_oracle, ORACLE_MAX_PMAX, ORACLE_MAX_VERTICES};

use crate::digraph::Digraph;
use crate::error::Error;
use crate::field::{Field, Rationals};
use crate::path_complex::{PathComplex, DEFAULT_PATH_CAP};
use crate::sparse::{kernel, Echelon, SparseVec};

pub use crate::sparse::rank;

/// Highest dimension reported when the caller does not choose one.
pub const DEFAULT_PMAX: usize = 3;

/// Plain and reduced Betti numbers for dimensions `0..=p_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile {
    pub betti: Vec<usize>,
    pub reduced: Vec<usize>,
    pub p_max: usize,
    /// Ω_{p_max + 1} is zero.
    pub complete: bool,
    /// Dimension whose allowed paths exceeded the cap, if the computation
    /// stopped early. `p_max` is then lowered to what could be computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated_at: Option<usize>,
}

impl BettiProfile {
    /// Reduced Betti number in dimension `p`, zero beyond `p_max`.
    pub fn reduced_at(&self, p: usize) -> usize {
        self.reduced.get(p).copied().unwrap_or(0)
    }

    pub fn betti_at(&self, p: usize) -> usize {
        self.betti.get(p).copied().unwrap_or(0)
    }

    /// Reduced numbers with trailing zeros removed.
    pub fn reduced_trimmed(&self) -> &[usize] {
        let end = self
            .reduced
            .iter()
            .rposition(|&b| b != 0)
            .map_or(0, |i| i + 1);
        &self.reduced[..end]
    }
}

#[derive(Clone, Copy, Debug)]
pub struct HomologyOptions {
    pub path_cap: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        Self {
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

/// Betti numbers over the rationals.
pub fn betti(d: &Digraph, p_max: usize) -> Result<BettiProfile, Error> {
    betti_with(&Rationals, d, p_max, HomologyOptions::default())
}

/// `β_p = dim Ω_p - rank ∂_p - rank ∂_{p+1}`. In the reduced convention ∂_0
/// is the augmentation (rank 1); otherwise it is zero.
pub fn betti_with<F: Field>(
    field: &F,
    d: &Digraph,
    p_max: usize,
    options: HomologyOptions,
) -> Result<BettiProfile, Error> {
    if d.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    let mut cx = PathComplex::new(field.clone(), d, options.path_cap);
    let mut dims = Vec::with_capacity(p_max + 2);
    let mut ranks = vec![0usize];
    let mut truncated_at = None;
    for p in 0..=p_max + 1 {
        match cx.omega_rank(p) {
            Ok(dim) => dims.push(dim),
            Err(Error::PathCapExceeded { dim, .. }) => {
                truncated_at = Some(dim);
                break;
            }
            Err(e) => return Err(e),
        }
        if p > 0 {
            ranks.push(rank(field, &cx.boundary(p)?));
        }
    }
    // β_p needs Ω_p and Ω_{p+1}
    let computed = match dims.len() {
        0 | 1 => {
            return Err(Error::PathCapExceeded {
                dim: truncated_at.unwrap_or(0),
                cap: options.path_cap,
            })
        }
        n => n - 1,
    };
    let mut betti = Vec::with_capacity(computed);
    let mut reduced = Vec::with_capacity(computed);
    for p in 0..computed {
        let b = dims[p] - ranks[p] - ranks[p + 1];
        betti.push(b);
        reduced.push(if p == 0 { b - 1 } else { b });
    }
    Ok(BettiProfile {
        betti,
        reduced,
        p_max: computed - 1,
        complete: truncated_at.is_none() && dims[p_max + 1] == 0,
        truncated_at,
    })
}

/// Cycles whose classes form a basis of H̃_1, as coordinate vectors over
/// `arcs` (the allowed 1-paths in lexicographic order).
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet<E> {
    pub dimension: usize,
    pub arcs: Vec<(usize, usize)>,
    pub cycles: Vec<SparseVec<E>>,
    /// Arcs with a nonzero coefficient in some cycle, in `arcs` order.
    pub support_arcs: Vec<(usize, usize)>,
}

impl<E: Clone> GeneratorSet<E> {
    /// `(arc, coefficient)` terms of one cycle.
    pub fn terms(&self, k: usize) -> Vec<((usize, usize), E)> {
        self.cycles[k]
            .entries()
            .iter()
            .map(|(i, c)| (self.arcs[*i], c.clone()))
            .collect()
    }
}

pub fn h1_generators(d: &Digraph) -> Result<GeneratorSet<num_rational::BigRational>, Error> {
    h1_generators_with(&Rationals, d, HomologyOptions::default())
}

/// Reduces a basis of im ∂_2 first, then walks a reduced-echelon basis of
/// ker ∂_1 in order and keeps every vector independent of what came before.
pub fn h1_generators_with<F: Field>(
    field: &F,
    d: &Digraph,
    options: HomologyOptions,
) -> Result<GeneratorSet<F::Elem>, Error> {
    if d.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    let mut cx = PathComplex::new(field.clone(), d, options.path_cap);
    let arcs: Vec<(usize, usize)> = cx
        .paths(1)?
        .iter()
        .map(|p| (p.vertices()[0], p.vertices()[1]))
        .collect();
    let cycles_basis = kernel(field, &cx.boundary(1)?);
    let image = cx.boundary(2)?;

    let mut span = Echelon::new(field.clone());
    for col in image.columns {
        span.insert(col);
    }
    let cycles: Vec<_> = cycles_basis
        .into_iter()
        .filter(|z| span.insert(z.clone()))
        .collect();

    let mut used = vec![false; arcs.len()];
    for z in &cycles {
        for (i, _) in z.entries() {
            used[*i] = true;
        }
    }
    let support_arcs = arcs
        .iter()
        .zip(&used)
        .filter(|(_, &u)| u)
        .map(|(a, _)| *a)
        .collect();
    Ok(GeneratorSet {
        dimension: 1,
        arcs,
        cycles,
        support_arcs,
    })
}
