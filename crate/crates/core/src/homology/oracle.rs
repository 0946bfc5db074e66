//! Dense reference computation of path homology.
//!
//! Independent of [`crate::path_complex`] and [`crate::sparse`]: tuples are
//! enumerated from the full product `V^{p+1}`, the raw boundary is a dense
//! matrix over all of `V^p`, and kernels and ranks come from a textbook
//! Gauss-Jordan routine over exact rationals. Only meant for tiny inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::BettiProfile;
use crate::digraph::Digraph;
use crate::error::Error;

pub const ORACLE_MAX_VERTICES: usize = 10;
pub const ORACLE_MAX_PMAX: usize = 5;

type Q = BigRational;

fn int(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// All tuples of length `len` over `0..n` in lexicographic order.
fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for v in 0..n {
                let mut u = t.clone();
                u.push(v);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Position of a tuple in the lexicographic enumeration of `V^len`.
fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &v| acc * n + v)
}

fn is_allowed(d: &Digraph, t: &[usize]) -> bool {
    t.windows(2).all(|w| d.has_arc(w[0], w[1]))
}

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
fn rref(m: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(r) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, r);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..ncols {
                    let delta = &factor * &m[row][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn dense_rank(mut m: Vec<Vec<Q>>, ncols: usize) -> usize {
    rref(&mut m, ncols).len()
}

/// Null space basis, one vector per free column.
fn null_space(mut m: Vec<Vec<Q>>, ncols: usize) -> Vec<Vec<Q>> {
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Betti numbers recomputed from the definitions with dense matrices.
///
/// Dimension `-1` is `V^0 = {()}`, the target of the augmentation, which is
/// what makes the reduced numbers come out of the same formula.
pub fn brute_force_oracle(d: &Digraph, p_max: usize) -> Result<BettiProfile, Error> {
    let n = d.vertex_count();
    if n == 0 {
        return Err(Error::EmptyDigraph);
    }
    if n > ORACLE_MAX_VERTICES || p_max > ORACLE_MAX_PMAX {
        return Err(Error::InvalidArgument(format!(
            "oracle limited to {ORACLE_MAX_VERTICES} vertices and p_max {ORACLE_MAX_PMAX}"
        )));
    }

    // allowed[p] = allowed p-paths; p = 0 is V.
    let top = p_max + 1;
    let allowed: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|p| {
            tuples(n, p + 1)
                .into_iter()
                .filter(|t| is_allowed(d, t))
                .collect()
        })
        .collect();

    // omega[p]: dense basis vectors over allowed[p]
    let mut omega: Vec<Vec<Vec<Q>>> = Vec::with_capacity(top + 1);
    // boundary ranks; index p is rank of ∂_p with the augmentation at p = 0
    let mut ranks: Vec<usize> = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let cols = &allowed[p];
        let faces = tuples(n, p);
        let face_allowed: Vec<bool> = faces
            .iter()
            .map(|f| if p == 0 { true } else { is_allowed(d, f) })
            .collect();
        // raw boundary, dense and column-major over all of V^p
        let mut raw = vec![vec![0i64; faces.len()]; cols.len()];
        for (j, path) in cols.iter().enumerate() {
            for i in 0..path.len() {
                let mut face = path.clone();
                face.remove(i);
                raw[j][tuple_index(n, &face)] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        // rows of the raw boundary at non-allowed tuples; identically zero
        // rows impose nothing and are not materialised
        let constraint: Vec<Vec<Q>> = (0..faces.len())
            .filter(|&r| !face_allowed[r])
            .map(|r| raw.iter().map(|col| col[r]).collect::<Vec<i64>>())
            .filter(|row| row.iter().any(|&x| x != 0))
            .map(|row| row.into_iter().map(int).collect())
            .collect();
        let basis = if constraint.is_empty() {
            (0..cols.len())
                .map(|j| {
                    let mut v = vec![Q::zero(); cols.len()];
                    v[j] = Q::one();
                    v
                })
                .collect()
        } else {
            null_space(constraint, cols.len())
        };
        // images of the basis vectors, one per row (rank is transpose-invariant)
        let image: Vec<Vec<Q>> = basis
            .iter()
            .map(|v| {
                let mut out = vec![Q::zero(); faces.len()];
                for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (r, &x) in raw[j].iter().enumerate().filter(|(_, x)| **x != 0) {
                        out[r] = &out[r] + c * int(x);
                    }
                }
                out
            })
            .collect();
        ranks.push(dense_rank(image, faces.len()));
        omega.push(basis);
    }

    let mut betti = Vec::with_capacity(p_max + 1);
    let mut reduced = Vec::with_capacity(p_max + 1);
    for p in 0..=p_max {
        let dim = omega[p].len();
        let upper = ranks[p + 1];
        let unreduced_lower = if p == 0 { 0 } else { ranks[p] };
        betti.push(dim - unreduced_lower - upper);
        reduced.push(dim - ranks[p] - upper);
    }
    Ok(BettiProfile {
        betti,
        reduced,
        p_max,
        complete: omega[top].is_empty(),
        truncated_at: None,
    })
}
