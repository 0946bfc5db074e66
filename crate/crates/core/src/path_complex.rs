//! Allowed paths, the non-regular boundary, and bases of the invariant
//! spaces Ω_p.
//!
//! An allowed p-path is a vertex tuple `(v_0, ..., v_p)` whose consecutive
//! pairs are all arcs. The boundary of a tuple is the alternating sum of the
//! tuples obtained by deleting one entry. Ω_p is the subspace of
//! allowed-path combinations whose boundary is again a combination of
//! allowed paths; Ω_0 and Ω_1 are always the full spans.
//!
//! Only interior deletions can produce non-allowed faces (deleting `v_j`
//! leaves the pair `(v_{j-1}, v_{j+1})`), so the constraint matrix for Ω_p has
//! at most `(p - 1) * |A_p|` rows.

use std::collections::HashMap;

use crate::digraph::Digraph;
use crate::error::Error;
use crate::field::Field;
use crate::sparse::{kernel, Matrix, SparseVec};

/// Default limit on the number of allowed paths in a single dimension.
pub const DEFAULT_PATH_CAP: usize = 5_000_000;

/// Vertex-index tuple whose consecutive pairs are arcs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AllowedPath(Vec<usize>);

impl AllowedPath {
    /// Checks that every consecutive pair is an arc of `d`.
    pub fn new(d: &Digraph, vertices: Vec<usize>) -> Option<Self> {
        if vertices.is_empty() || vertices.iter().any(|&v| v >= d.vertex_count()) {
            return None;
        }
        vertices
            .windows(2)
            .all(|w| d.has_arc(w[0], w[1]))
            .then_some(Self(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn labels<'d>(&self, d: &'d Digraph) -> Vec<&'d str> {
        self.0.iter().map(|&v| d.label(v)).collect()
    }
}

/// All allowed `p`-paths in lexicographic order of vertex indices.
pub fn allowed_paths(d: &Digraph, p: usize) -> Vec<AllowedPath> {
    allowed_paths_capped(d, p, usize::MAX).expect("no cap")
}

pub fn allowed_paths_capped(d: &Digraph, p: usize, cap: usize) -> Result<Vec<AllowedPath>, Error> {
    let mut level: Vec<Vec<usize>> = (0..d.vertex_count()).map(|v| vec![v]).collect();
    if level.len() > cap {
        return Err(Error::PathCapExceeded { dim: 0, cap });
    }
    for dim in 1..=p {
        level = extend(d, &level, dim, cap)?;
    }
    Ok(level.into_iter().map(AllowedPath).collect())
}

fn extend(
    d: &Digraph,
    prev: &[Vec<usize>],
    dim: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>, Error> {
    let count: usize = prev
        .iter()
        .map(|path| d.out_degree(*path.last().unwrap()))
        .sum();
    if count > cap {
        return Err(Error::PathCapExceeded { dim, cap });
    }
    let mut next = Vec::with_capacity(count);
    for path in prev {
        for &w in d.out_neighbors(*path.last().unwrap()) {
            let mut q = Vec::with_capacity(path.len() + 1);
            q.extend_from_slice(path);
            q.push(w);
            next.push(q);
        }
    }
    Ok(next)
}

/// The raw boundary of a tuple as `(face, coefficient)` pairs with like faces
/// combined and cancelled terms removed, in deletion order. A 0-path maps to
/// the empty tuple, the single generator of the augmentation target.
pub fn raw_boundary_column(vertices: &[usize]) -> Vec<(Vec<usize>, i64)> {
    let mut out: Vec<(Vec<usize>, i64)> = Vec::with_capacity(vertices.len());
    for j in 0..vertices.len() {
        let mut face = Vec::with_capacity(vertices.len() - 1);
        face.extend_from_slice(&vertices[..j]);
        face.extend_from_slice(&vertices[j + 1..]);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        match out.iter_mut().find(|(f, _)| *f == face) {
            Some((_, c)) => *c += sign,
            None => out.push((face, sign)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}

/// A basis of Ω_p in allowed-path coordinates, in reduced row echelon form
/// with respect to the lexicographic order of `ambient`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaBasis<E> {
    pub dim: usize,
    pub ambient: Vec<AllowedPath>,
    pub vectors: Vec<SparseVec<E>>,
}

impl<E> OmegaBasis<E> {
    /// Dimension of Ω_p (not the path dimension `p`).
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

struct Level<E> {
    paths: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    omega: Option<Vec<SparseVec<E>>>,
}

/// Lazily built allowed paths and Ω bases of one digraph.
pub struct PathComplex<'d, F: Field> {
    field: F,
    digraph: &'d Digraph,
    cap: usize,
    levels: Vec<Level<F::Elem>>,
}

impl<'d, F: Field> PathComplex<'d, F> {
    pub fn new(field: F, digraph: &'d Digraph, cap: usize) -> Self {
        Self {
            field,
            digraph,
            cap,
            levels: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn digraph(&self) -> &'d Digraph {
        self.digraph
    }

    fn ensure_paths(&mut self, p: usize) -> Result<(), Error> {
        while self.levels.len() <= p {
            let dim = self.levels.len();
            let paths = if dim == 0 {
                if self.digraph.vertex_count() > self.cap {
                    return Err(Error::PathCapExceeded {
                        dim: 0,
                        cap: self.cap,
                    });
                }
                (0..self.digraph.vertex_count()).map(|v| vec![v]).collect()
            } else {
                extend(self.digraph, &self.levels[dim - 1].paths, dim, self.cap)?
            };
            let index = paths
                .iter()
                .enumerate()
                .map(|(i, q)| (q.clone(), i))
                .collect();
            self.levels.push(Level {
                paths,
                index,
                omega: None,
            });
        }
        Ok(())
    }

    pub fn path_count(&mut self, p: usize) -> Result<usize, Error> {
        self.ensure_paths(p)?;
        Ok(self.levels[p].paths.len())
    }

    pub fn paths(&mut self, p: usize) -> Result<Vec<AllowedPath>, Error> {
        self.ensure_paths(p)?;
        Ok(self.levels[p]
            .paths
            .iter()
            .cloned()
            .map(AllowedPath)
            .collect())
    }

    /// Position of an allowed path in the lexicographic list of its dimension.
    pub fn path_index(&mut self, vertices: &[usize]) -> Result<Option<usize>, Error> {
        if vertices.is_empty() {
            return Ok(None);
        }
        self.ensure_paths(vertices.len() - 1)?;
        Ok(self.levels[vertices.len() - 1].index.get(vertices).copied())
    }

    fn ensure_omega(&mut self, p: usize) -> Result<(), Error> {
        self.ensure_paths(p)?;
        if self.levels[p].omega.is_some() {
            return Ok(());
        }
        let f = &self.field;
        let level = &self.levels[p];
        let vectors = if p <= 1 {
            (0..level.paths.len())
                .map(|i| SparseVec::unit(f, i))
                .collect()
        } else {
            let mut rows: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut columns = Vec::with_capacity(level.paths.len());
            for path in &level.paths {
                let mut terms = Vec::new();
                for j in 1..p {
                    if self.digraph.has_arc(path[j - 1], path[j + 1]) {
                        continue;
                    }
                    let mut face = Vec::with_capacity(p);
                    face.extend_from_slice(&path[..j]);
                    face.extend_from_slice(&path[j + 1..]);
                    let next = rows.len();
                    let r = *rows.entry(face).or_insert(next);
                    terms.push((r, f.from_i64(if j % 2 == 0 { 1 } else { -1 })));
                }
                columns.push(SparseVec::from_terms(f, terms));
            }
            kernel(f, &Matrix::new(rows.len(), columns))
        };
        self.levels[p].omega = Some(vectors);
        Ok(())
    }

    /// Dimension of Ω_p.
    pub fn omega_rank(&mut self, p: usize) -> Result<usize, Error> {
        self.ensure_omega(p)?;
        Ok(self.levels[p].omega.as_ref().unwrap().len())
    }

    pub fn omega(&mut self, p: usize) -> Result<OmegaBasis<F::Elem>, Error> {
        self.ensure_omega(p)?;
        let level = &self.levels[p];
        Ok(OmegaBasis {
            dim: p,
            ambient: level.paths.iter().cloned().map(AllowedPath).collect(),
            vectors: level.omega.clone().unwrap(),
        })
    }

    /// Raw boundary of `vector` (coordinates over allowed `p`-paths) in
    /// allowed `(p-1)`-path coordinates, or `None` if some non-allowed face
    /// survives.
    pub fn push_boundary(
        &mut self,
        p: usize,
        vector: &SparseVec<F::Elem>,
    ) -> Result<Option<SparseVec<F::Elem>>, Error> {
        if p == 0 {
            let f = &self.field;
            let mut total = f.zero();
            for (_, c) in vector.entries() {
                total = f.add(&total, c);
            }
            return Ok(Some(SparseVec::from_terms(f, vec![(0, total)])));
        }
        self.ensure_paths(p)?;
        let f = &self.field;
        let (lower, upper) = self.levels.split_at(p);
        let (lower, upper) = (&lower[p - 1], &upper[0]);
        let mut terms = Vec::new();
        let mut stray: HashMap<Vec<usize>, F::Elem> = HashMap::new();
        for (k, c) in vector.entries() {
            for (face, sign) in raw_boundary_column(&upper.paths[*k]) {
                let term = f.mul(c, &f.from_i64(sign));
                match lower.index.get(&face) {
                    Some(&r) => terms.push((r, term)),
                    None => {
                        let acc = stray.entry(face).or_insert_with(|| f.zero());
                        *acc = f.add(acc, &term);
                    }
                }
            }
        }
        if stray.values().any(|c| !f.is_zero(c)) {
            return Ok(None);
        }
        Ok(Some(SparseVec::from_terms(f, terms)))
    }

    /// Matrix of ∂_p from the Ω_p basis into allowed `(p-1)`-path
    /// coordinates. For `p = 0` this is the augmentation onto one row.
    pub fn boundary(&mut self, p: usize) -> Result<Matrix<F::Elem>, Error> {
        self.ensure_omega(p)?;
        let nrows = if p == 0 { 1 } else { self.path_count(p - 1)? };
        let vectors = self.levels[p].omega.clone().unwrap();
        let mut columns = Vec::with_capacity(vectors.len());
        for v in &vectors {
            let col = self
                .push_boundary(p, v)?
                .expect("boundary of an Ω_p vector lies in allowed paths");
            columns.push(col);
        }
        Ok(Matrix::new(nrows, columns))
    }
}

pub fn omega_basis<F: Field>(
    field: &F,
    d: &Digraph,
    p: usize,
) -> Result<OmegaBasis<F::Elem>, Error> {
    PathComplex::new(field.clone(), d, DEFAULT_PATH_CAP).omega(p)
}

/// Matrix of ∂_p on the supplied Ω_p basis, in allowed `(p-1)`-path
/// coordinates. `lower` and `upper` must be the bases for `p - 1` and `p`.
pub fn restricted_boundary<F: Field>(
    field: &F,
    d: &Digraph,
    p: usize,
    lower: &OmegaBasis<F::Elem>,
    upper: &OmegaBasis<F::Elem>,
) -> Result<Matrix<F::Elem>, Error> {
    if p == 0 || lower.dim + 1 != p || upper.dim != p {
        return Err(Error::DimensionMismatch(format!(
            "expected bases for dimensions {} and {p}, got {} and {}",
            p.saturating_sub(1),
            lower.dim,
            upper.dim
        )));
    }
    let mut cx = PathComplex::new(field.clone(), d, DEFAULT_PATH_CAP);
    if cx.path_count(p)? != upper.ambient.len() || cx.path_count(p - 1)? != lower.ambient.len() {
        return Err(Error::DimensionMismatch(
            "bases belong to a different digraph".into(),
        ));
    }
    let mut columns = Vec::with_capacity(upper.vectors.len());
    for v in &upper.vectors {
        let col = cx.push_boundary(p, v)?.ok_or_else(|| {
            Error::DimensionMismatch(format!("a supplied vector is not in Ω_{p}"))
        })?;
        columns.push(col);
    }
    Ok(Matrix::new(lower.ambient.len(), columns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::k_partite_tower;
    use crate::field::Rationals;

    fn two_cycle() -> Digraph {
        Digraph::from_arcs(&[("a", "b"), ("b", "a")]).unwrap()
    }

    fn vs(paths: &[AllowedPath]) -> Vec<Vec<usize>> {
        paths.iter().map(|p| p.vertices().to_vec()).collect()
    }

    #[test]
    fn allowed_paths_examples() {
        let d = two_cycle();
        assert_eq!(
            vs(&allowed_paths(&d, 2)),
            vec![vec![0, 1, 0], vec![1, 0, 1]]
        );
        assert_eq!(vs(&allowed_paths(&d, 0)), vec![vec![0], vec![1]]);
        let chain = Digraph::from_arcs(&[("a", "b")]).unwrap();
        assert!(allowed_paths(&chain, 2).is_empty());
        assert!(matches!(
            allowed_paths_capped(&d, 3, 1),
            Err(Error::PathCapExceeded { dim: 0, cap: 1 })
        ));
    }

    #[test]
    fn raw_boundary_examples() {
        assert_eq!(
            raw_boundary_column(&[0, 1]),
            vec![(vec![1], 1), (vec![0], -1)]
        );
        assert_eq!(
            raw_boundary_column(&[0, 1, 0]),
            vec![(vec![1, 0], 1), (vec![0, 0], -1), (vec![0, 1], 1)]
        );
        assert_eq!(raw_boundary_column(&[3]), vec![(vec![], 1)]);
    }

    #[test]
    fn omega_examples() {
        let q = Rationals;
        assert_eq!(omega_basis(&q, &two_cycle(), 2).unwrap().rank(), 0);
        let diamond = k_partite_tower(&[1, 2, 1]).unwrap();
        let om = omega_basis(&q, &diamond, 2).unwrap();
        assert_eq!(vs(&om.ambient), vec![vec![0, 1, 3], vec![0, 2, 3]]);
        assert_eq!(om.vectors.len(), 1);
        assert_eq!(
            om.vectors[0].entries(),
            &[(0, q.one()), (1, q.from_i64(-1))]
        );
        let om1 = omega_basis(&q, &diamond, 1).unwrap();
        assert_eq!(om1.rank(), diamond.arc_count());
    }

    #[test]
    fn restricted_boundary_examples() {
        let q = Rationals;
        let d = two_cycle();
        let b0 = omega_basis(&q, &d, 0).unwrap();
        let b1 = omega_basis(&q, &d, 1).unwrap();
        let m = restricted_boundary(&q, &d, 1, &b0, &b1).unwrap();
        let expect = vec![vec![q.from_i64(-1), q.one()], vec![q.one(), q.from_i64(-1)]];
        assert_eq!(m.to_dense(&q), expect);

        let b2 = omega_basis(&q, &d, 2).unwrap();
        let m2 = restricted_boundary(&q, &d, 2, &b1, &b2).unwrap();
        assert_eq!((m2.nrows, m2.ncols()), (2, 0));

        let diamond = k_partite_tower(&[1, 2, 1]).unwrap();
        let b1 = omega_basis(&q, &diamond, 1).unwrap();
        let b2 = omega_basis(&q, &diamond, 2).unwrap();
        let m = restricted_boundary(&q, &diamond, 2, &b1, &b2).unwrap();
        // arcs in lex order: (1,2) (1,3) (2,4) (3,4)
        let col: Vec<_> = m.columns[0].to_dense(&q, 4);
        assert_eq!(col, vec![q.one(), q.from_i64(-1), q.one(), q.from_i64(-1)]);

        assert!(matches!(
            restricted_boundary(&q, &diamond, 2, &b2, &b1),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn boundary_squares_to_zero_on_tower() {
        let q = Rationals;
        let d = k_partite_tower(&[2, 2, 2, 2]).unwrap();
        let mut cx = PathComplex::new(q, &d, DEFAULT_PATH_CAP);
        for p in 1..=4 {
            for v in cx.omega(p).unwrap().vectors {
                let w = cx.push_boundary(p, &v).unwrap().unwrap();
                let ww = cx
                    .push_boundary(p - 1, &w)
                    .unwrap()
                    .expect("image lies in Ω_{p-1}");
                assert!(ww.is_empty());
            }
        }
        // one zero-row-and-column-sum 2x2 block per (first, last) pair
        assert_eq!(cx.omega_rank(3).unwrap(), 4);
    }
}
