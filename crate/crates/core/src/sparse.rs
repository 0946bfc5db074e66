//! Sparse vectors and column-oriented exact elimination.
//!
//! Columns are reduced left to right against the lowest nonzero row of
//! earlier columns (the usual boundary-matrix reduction), optionally tracking
//! the column operations so that zero columns yield kernel vectors.

use std::collections::HashMap;
use std::io::{self, Write};

use crate::field::Field;

/// Sorted `(index, value)` pairs with no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E> Default for SparseVec<E> {
    fn default() -> Self {
        Self {
            entries: Vec::new(),
        }
    }
}

impl<E: Clone> SparseVec<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit<F: Field<Elem = E>>(field: &F, index: usize) -> Self {
        Self {
            entries: vec![(index, field.one())],
        }
    }

    /// Builds a vector from unsorted terms, combining repeated indices and
    /// dropping cancelled ones.
    pub fn from_terms<F: Field<Elem = E>>(field: &F, mut terms: Vec<(usize, E)>) -> Self {
        terms.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, E)> = Vec::with_capacity(terms.len());
        for (i, v) in terms {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = field.add(acc, &v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !field.is_zero(v));
        Self { entries }
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Option<&E> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Largest index with a nonzero entry.
    pub fn low(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// Smallest index with a nonzero entry.
    pub fn lead(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    /// `self += c * other`.
    pub fn axpy<F: Field<Elem = E>>(&mut self, field: &F, c: &E, other: &Self) {
        if field.is_zero(c) || other.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, field.mul(c, v)));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = field.add(&x, &field.mul(c, y));
                    if !field.is_zero(&s) {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, field.mul(c, v)));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scale<F: Field<Elem = E>>(&mut self, field: &F, c: &E) {
        for (_, v) in &mut self.entries {
            *v = field.mul(v, c);
        }
        self.entries.retain(|(_, v)| !field.is_zero(v));
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F, len: usize) -> Vec<E> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }
}

/// A column-sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub nrows: usize,
    pub columns: Vec<SparseVec<E>>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(nrows: usize, columns: Vec<SparseVec<E>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.low().is_none_or(|r| r < nrows)));
        Self { nrows, columns }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            columns: vec![SparseVec::new(); ncols],
        }
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, rows: &[Vec<E>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let columns = (0..ncols)
            .map(|j| {
                SparseVec::from_terms(
                    field,
                    rows.iter()
                        .enumerate()
                        .map(|(i, r)| (i, r[j].clone()))
                        .collect(),
                )
            })
            .collect();
        Self { nrows, columns }
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![field.zero(); self.ncols()]; self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.entries() {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    /// `self * other`, where `other`'s columns are coordinate vectors over
    /// this matrix's columns.
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(other.nrows, self.ncols(), "inner dimension mismatch");
        let columns = other
            .columns
            .iter()
            .map(|v| {
                let mut acc = SparseVec::new();
                for (k, c) in v.entries() {
                    acc.axpy(field, c, &self.columns[*k]);
                }
                acc
            })
            .collect();
        Matrix {
            nrows: self.nrows,
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_empty)
    }

    /// Writes `row col value` triplets, one per line, 0-based.
    pub fn write_triplets<F: Field<Elem = E>, W: Write>(
        &self,
        field: &F,
        mut out: W,
    ) -> io::Result<()> {
        writeln!(out, "# {} {} {}", self.nrows, self.ncols(), field.name())?;
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.entries() {
                writeln!(out, "{i} {j} {}", field.format(v))?;
            }
        }
        Ok(())
    }
}

/// Incrementally maintained column echelon form: each stored column has a
/// distinct `low` index.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    by_low: HashMap<usize, usize>,
    reduced: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Self {
            field,
            by_low: HashMap::new(),
            reduced: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Reduces `v` against the stored columns; returns the remainder.
    pub fn reduce(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        while let Some(low) = v.low() {
            let Some(&k) = self.by_low.get(&low) else {
                break;
            };
            let pivot = &self.reduced[k];
            let c = self
                .field
                .neg(&self.field.div(v.get(low).unwrap(), pivot.get(low).unwrap()));
            v.axpy(&self.field, &c, pivot);
        }
        v
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let r = self.reduce(v);
        match r.low() {
            Some(low) => {
                self.by_low.insert(low, self.reduced.len());
                self.reduced.push(r);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut ech = Echelon::new(field.clone());
    for col in &m.columns {
        ech.insert(col.clone());
    }
    ech.rank()
}

/// A basis of the null space of `m`, as coordinate vectors over its columns,
/// in reduced row echelon form (leading coefficient 1 at the smallest index,
/// sorted by that index).
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<SparseVec<F::Elem>> {
    let mut by_low: HashMap<usize, usize> = HashMap::new();
    // (reduced column, column operations that produced it)
    let mut reduced = Vec::<(SparseVec<F::Elem>, SparseVec<F::Elem>)>::new();
    let mut null = Vec::new();
    for (j, col) in m.columns.iter().enumerate() {
        let mut r = col.clone();
        let mut ops = SparseVec::unit(field, j);
        while let Some(low) = r.low() {
            let Some(&k) = by_low.get(&low) else { break };
            let (pr, pops) = &reduced[k];
            let c = field.neg(&field.div(r.get(low).unwrap(), pr.get(low).unwrap()));
            r.axpy(field, &c, pr);
            ops.axpy(field, &c, pops);
        }
        match r.low() {
            Some(low) => {
                by_low.insert(low, reduced.len());
                reduced.push((r, ops));
            }
            None => null.push(ops),
        }
    }
    rref_rows(field, null)
}

/// Reduced row echelon form of the row space spanned by `rows`, dropping
/// dependent rows.
pub fn rref_rows<F: Field>(field: &F, rows: Vec<SparseVec<F::Elem>>) -> Vec<SparseVec<F::Elem>> {
    let mut basis: Vec<SparseVec<F::Elem>> = Vec::new();
    for mut row in rows {
        for b in &basis {
            let lead = b.lead().unwrap();
            if let Some(x) = row.get(lead) {
                let c = field.neg(x);
                row.axpy(field, &c, b);
            }
        }
        let Some(lead) = row.lead() else { continue };
        let inv = field.inv(row.get(lead).unwrap());
        row.scale(field, &inv);
        for b in &mut basis {
            if let Some(x) = b.get(lead) {
                let c = field.neg(x);
                b.axpy(field, &c, &row);
            }
        }
        basis.push(row);
    }
    basis.sort_by_key(|b| b.lead());
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        let f = Rationals;
        let rows: Vec<Vec<_>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
            .collect();
        Matrix::from_dense(&f, &rows)
    }

    #[test]
    fn rank_examples() {
        let f = Rationals;
        assert_eq!(rank(&f, &q(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&f, &q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rank(&f, &q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&f, &Matrix::zeros(0, 0)), 0);
    }

    #[test]
    fn prime_rank_can_drop() {
        // det = 7, singular mod 7 only
        let f = PrimeField::new(7).unwrap();
        let rows = vec![
            vec![f.from_i64(2), f.from_i64(1)],
            vec![f.from_i64(1), f.from_i64(4)],
        ];
        assert_eq!(rank(&f, &Matrix::from_dense(&f, &rows)), 1);
        assert_eq!(rank(&Rationals, &q(&[&[2, 1], &[1, 4]])), 2);
    }

    #[test]
    fn kernel_is_rref_and_annihilated() {
        let f = Rationals;
        let m = q(&[&[1, 1, 0, 2], &[0, 0, 1, 1]]);
        let ker = kernel(&f, &m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let prod = m.mul(&f, &Matrix::new(4, vec![v.clone()]));
            assert!(prod.is_zero());
            assert_eq!(v.get(v.lead().unwrap()), Some(&f.one()));
        }
        assert!(ker[0].lead() < ker[1].lead());
        assert_eq!(ker[1].get(ker[0].lead().unwrap()), None);
    }

    #[test]
    fn axpy_cancels() {
        let f = Rationals;
        let mut a = SparseVec::from_terms(&f, vec![(0, f.one()), (3, f.from_i64(2))]);
        let b = SparseVec::from_terms(&f, vec![(3, f.one()), (5, f.one())]);
        a.axpy(&f, &f.from_i64(-2), &b);
        assert_eq!(a.entries(), &[(0, f.one()), (5, f.from_i64(-2))]);
    }

    #[test]
    fn triplet_dump() {
        let f = Rationals;
        let m = q(&[&[1, 0], &[0, -1]]);
        let mut buf = Vec::new();
        m.write_triplets(&f, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# 2 2 Q\n0 0 1/1\n1 1 -1/1\n"
        );
    }
}
