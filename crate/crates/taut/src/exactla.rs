//! Linear algebra over an exact (or floating) field: dense matrices with
//! row reduction and kernels, sparse fully reduced spans with membership
//! queries, and finitely supported formal linear combinations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use indexmap::IndexMap;
use num_traits::{Num, NumAssignRef, NumRef, Signed};

use crate::Rat;

/// Field scalar usable by the elimination routines.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Num + NumRef + NumAssignRef + Signed + Send + Sync {
    /// Pivot preference, smaller is better. Exact types rank by size of the
    /// representation to limit coefficient growth, floats by magnitude.
    fn pivot_rank(&self) -> f64;
    /// True when the value should be treated as zero.
    fn is_negligible(&self) -> bool;
    /// Canonical text form used in reports.
    fn to_repr(&self) -> String;
}

impl Scalar for Rat {
    fn pivot_rank(&self) -> f64 {
        (self.numer().bits() + self.denom().bits()) as f64
    }
    fn is_negligible(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn to_repr(&self) -> String {
        crate::arith::rat_str(self)
    }
}

impl Scalar for f64 {
    fn pivot_rank(&self) -> f64 {
        -self.abs()
    }
    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-10
    }
    fn to_repr(&self) -> String {
        format!("{self:e}")
    }
}

impl Scalar for f32 {
    fn pivot_rank(&self) -> f64 {
        -(self.abs() as f64)
    }
    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-5
    }
    fn to_repr(&self) -> String {
        format!("{self:e}")
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    /// Builds from explicit rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc += self[(i, k)].clone() * &other[(k, j)];
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += a.clone() * b;
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * c).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Forward elimination to echelon form. Returns the pivot columns and the
    /// product of the pivots with the sign of the row permutation (the
    /// determinant when square and full rank).
    fn eliminate(&mut self, reduce_above: bool) -> (Vec<usize>, S) {
        let mut pivots = Vec::new();
        let mut det = S::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best = (r..self.rows).filter(|&i| !self[(i, c)].is_negligible()).min_by(|&a, &b| {
                self[(a, c)]
                    .pivot_rank()
                    .partial_cmp(&self[(b, c)].pivot_rank())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.cmp(&b))
            });
            let Some(p) = best else { continue };
            if p != r {
                self.swap_rows(p, r);
                det = -det;
            }
            let pv = self[(r, c)].clone();
            det *= &pv;
            for j in c..self.cols {
                let x = self[(r, j)].clone() / &pv;
                self[(r, j)] = x;
            }
            let targets: Vec<usize> =
                if reduce_above { (0..self.rows).filter(|&i| i != r).collect() } else { (r + 1..self.rows).collect() };
            for i in targets {
                let f = self[(i, c)].clone();
                if f.is_negligible() {
                    continue;
                }
                for j in c..self.cols {
                    let x = self[(i, j)].clone() - f.clone() * &self[(r, j)];
                    self[(i, j)] = if x.is_negligible() { S::zero() } else { x };
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, det)
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix<S>, Vec<usize>) {
        let mut m = self.clone();
        let (p, _) = m.eliminate(true);
        (m, p)
    }

    pub fn rref(&self) -> Matrix<S> {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).0.len()
    }

    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let (p, det) = m.eliminate(false);
        if p.len() < self.rows {
            S::zero()
        } else {
            det
        }
    }

    /// Basis of the right kernel, one vector per free column, each with a 1
    /// in its free column.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(i, free)].clone();
            }
            out.push(v);
        }
        out
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Finitely supported formal linear combination of basis labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeModule<B: Ord, S> {
    terms: BTreeMap<B, S>,
}

impl<B: Ord + fmt::Debug, S: fmt::Debug> fmt::Debug for FreeModule<B, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<B: Ord, S> Default for FreeModule<B, S> {
    fn default() -> Self {
        FreeModule { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone, S: Scalar> FreeModule<B, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        let mut v = Self::new();
        v.add_term(b, S::one());
        v
    }

    pub fn add_term(&mut self, b: B, c: S) {
        if c.is_negligible() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_negligible() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x.clone() * c);
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, b: &B) -> S {
        self.terms.get(b).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &S)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> FreeModule<C, S>) -> FreeModule<C, S> {
        let mut out = FreeModule::new();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }
}

impl<B: Ord + Clone, S: Scalar> FromIterator<(B, S)> for FreeModule<B, S> {
    fn from_iter<I: IntoIterator<Item = (B, S)>>(it: I) -> Self {
        let mut v = Self::new();
        for (b, c) in it {
            v.add_term(b, c);
        }
        v
    }
}

impl<B: Ord + Clone, S: Scalar> std::ops::Add for &FreeModule<B, S> {
    type Output = FreeModule<B, S>;
    fn add(self, o: Self) -> FreeModule<B, S> {
        let mut out = self.clone();
        out.add_scaled(o, &S::one());
        out
    }
}

impl<B: Ord + Clone, S: Scalar> std::ops::Sub for &FreeModule<B, S> {
    type Output = FreeModule<B, S>;
    fn sub(self, o: Self) -> FreeModule<B, S> {
        let mut out = self.clone();
        out.add_scaled(o, &-S::one());
        out
    }
}

impl<B: Ord + Clone, S: Scalar> std::ops::Neg for &FreeModule<B, S> {
    type Output = FreeModule<B, S>;
    fn neg(self) -> FreeModule<B, S> {
        self.scaled(&-S::one())
    }
}

type SparseRow<S> = Vec<(usize, S)>;

/// Exact span of sparse vectors over an auto-extended label basis, kept in
/// fully reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<L: Hash + Eq, S> {
    index: IndexMap<L, usize>,
    rows: Vec<SparseRow<S>>,
    pivot_row: HashMap<usize, usize>,
}

impl<L: Hash + Eq + Clone, S: Scalar> Default for Subspace<L, S> {
    fn default() -> Self {
        Subspace { index: IndexMap::new(), rows: Vec::new(), pivot_row: HashMap::new() }
    }
}

impl<L: Hash + Eq + Clone, S: Scalar> Subspace<L, S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers labels in order so that column numbering (and therefore the
    /// printed echelon form) does not depend on insertion order.
    pub fn with_labels(labels: impl IntoIterator<Item = L>) -> Self {
        let mut s = Self::new();
        for l in labels {
            s.column(&l);
        }
        s
    }

    fn column(&mut self, l: &L) -> usize {
        let n = self.index.len();
        *self.index.entry(l.clone()).or_insert(n)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of labels seen so far.
    pub fn ambient_dim(&self) -> usize {
        self.index.len()
    }

    /// `ambient_dim - rank`.
    pub fn quotient_dim(&self, ambient_dim: usize) -> usize {
        ambient_dim.saturating_sub(self.rank())
    }

    fn reduce_cols(&self, mut v: BTreeMap<usize, S>) -> BTreeMap<usize, S> {
        let hits: Vec<(usize, S)> =
            v.iter().filter(|(c, _)| self.pivot_row.contains_key(c)).map(|(c, x)| (*c, x.clone())).collect();
        for (c, coef) in hits {
            v.remove(&c);
            for (j, x) in &self.rows[self.pivot_row[&c]] {
                if *j == c {
                    continue;
                }
                let e = v.entry(*j).or_insert_with(S::zero);
                *e -= coef.clone() * x;
                if e.is_negligible() {
                    v.remove(j);
                }
            }
        }
        v
    }

    /// Splits a vector into known columns and a flag for unseen labels.
    fn to_cols<'a>(&self, v: impl IntoIterator<Item = (&'a L, &'a S)>) -> (BTreeMap<usize, S>, bool)
    where
        L: 'a,
        S: 'a,
    {
        let mut out = BTreeMap::new();
        let mut unknown = false;
        for (l, x) in v {
            if x.is_negligible() {
                continue;
            }
            match self.index.get(l) {
                Some(&c) => {
                    let e = out.entry(c).or_insert_with(S::zero);
                    *e += x;
                }
                None => unknown = true,
            }
        }
        out.retain(|_, x: &mut S| !x.is_negligible());
        (out, unknown)
    }

    /// Exact membership test.
    pub fn contains<'a>(&self, v: impl IntoIterator<Item = (&'a L, &'a S)>) -> bool
    where
        L: 'a,
        S: 'a,
    {
        let (cols, unknown) = self.to_cols(v);
        !unknown && self.reduce_cols(cols).is_empty()
    }

    pub fn contains_vec<B>(&self, v: &FreeModule<B, S>) -> bool
    where
        B: Ord + Clone + std::borrow::Borrow<L>,
    {
        self.contains(v.iter().map(|(b, x)| (b.borrow(), x)))
    }

    /// Inserts a vector; returns true when the rank grew.
    pub fn insert<'a>(&mut self, v: impl IntoIterator<Item = (&'a L, &'a S)>) -> bool
    where
        L: 'a,
        S: 'a,
    {
        let mut cols = BTreeMap::new();
        for (l, x) in v {
            if x.is_negligible() {
                continue;
            }
            let c = self.column(l);
            let e = cols.entry(c).or_insert_with(S::zero);
            *e += x;
        }
        cols.retain(|_, x: &mut S| !x.is_negligible());
        let r = self.reduce_cols(cols);
        if r.is_empty() {
            return false;
        }
        let (&p, pv) = r
            .iter()
            .min_by(|a, b| {
                a.1.pivot_rank().partial_cmp(&b.1.pivot_rank()).unwrap_or(std::cmp::Ordering::Equal).then(a.0.cmp(b.0))
            })
            .unwrap();
        let pv = pv.clone();
        let new_row: SparseRow<S> = r.into_iter().map(|(c, x)| (c, x / &pv)).collect();
        for row in &mut self.rows {
            if let Ok(pos) = row.binary_search_by_key(&p, |e| e.0) {
                let f = row[pos].1.clone();
                *row = axpy(row, &new_row, &f);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(new_row);
        true
    }

    pub fn insert_vec<B>(&mut self, v: &FreeModule<B, S>) -> bool
    where
        B: Ord + Clone + std::borrow::Borrow<L>,
    {
        self.insert(v.iter().map(|(b, x)| (b.borrow(), x)))
    }

    /// Value-style insertion.
    pub fn with_vec<B>(mut self, v: &FreeModule<B, S>) -> Self
    where
        B: Ord + Clone + std::borrow::Borrow<L>,
    {
        self.insert_vec(v);
        self
    }

    /// Residue of `v` modulo the span, over the labels it touches.
    pub fn reduce<B>(&self, v: &FreeModule<B, S>) -> FreeModule<L, S>
    where
        B: Ord + Clone + std::borrow::Borrow<L> + Into<L>,
        L: Ord,
    {
        let mut unknown = FreeModule::new();
        let mut cols = BTreeMap::new();
        for (b, x) in v.iter() {
            match self.index.get(b.borrow()) {
                Some(&c) => {
                    cols.insert(c, x.clone());
                }
                None => unknown.add_term(b.clone().into(), x.clone()),
            }
        }
        let mut out = unknown;
        for (c, x) in self.reduce_cols(cols) {
            out.add_term(self.index.get_index(c).unwrap().0.clone(), x);
        }
        out
    }

    /// Rows of the echelon form as label vectors, ordered by pivot column.
    pub fn echelon_rows(&self) -> Vec<Vec<(L, S)>> {
        let mut order: Vec<(usize, usize)> = self.pivot_row.iter().map(|(c, r)| (*c, *r)).collect();
        order.sort();
        order
            .into_iter()
            .map(|(_, r)| {
                self.rows[r].iter().map(|(c, x)| (self.index.get_index(*c).unwrap().0.clone(), x.clone())).collect()
            })
            .collect()
    }
}

/// `a - f * b` on sorted sparse rows.
fn axpy<S: Scalar>(a: &SparseRow<S>, b: &SparseRow<S>, f: &S) -> SparseRow<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0);
        let cb = b.get(j).map(|e| e.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = a[i].1.clone() - f.clone() * &b[j].1;
                if !v.is_negligible() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            _ => {
                out.push((b[j].0, -(f.clone() * &b[j].1)));
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::{RatMatrix, RatSubspace};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect())
    }

    #[test]
    fn rref_examples() {
        assert_eq!(RatMatrix::identity(3).rref(), RatMatrix::identity(3));
        assert_eq!(m(&[&[2, 1]]).rref(), Matrix::from_rows(vec![vec![rat_int(1), rat(1, 2)]]));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rref(), m(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn nullspace_examples() {
        let ns = m(&[&[2, 1]]).nullspace();
        assert_eq!(ns.len(), 1);
        // proportional to (1, -2)
        assert_eq!(ns[0][1].clone() / &ns[0][0], rat_int(-2));
        assert!(RatMatrix::identity(3).nullspace().is_empty());
        assert_eq!(m(&[&[0, 0], &[0, 0]]).nullspace().len(), 2);
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant(), rat_int(-2));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), rat_int(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), rat_int(0));
    }

    #[test]
    fn span_examples() {
        let mut s: RatSubspace<&str> = Subspace::new();
        let x = FreeModule::basis("x");
        s.insert_vec(&x);
        assert!(s.contains_vec(&x.scaled(&rat_int(2))));
        assert!(!s.contains_vec(&FreeModule::basis("y")));

        let mut t: RatSubspace<usize> = Subspace::new();
        t.insert_vec(&[(0usize, rat_int(1)), (1, rat_int(1))].into_iter().collect());
        t.insert_vec(&[(0usize, rat_int(1)), (1, rat_int(-1))].into_iter().collect());
        assert_eq!(t.quotient_dim(2), 0);
    }

    #[test]
    fn float_matrix_rank() {
        let a: Matrix<f64> = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.000_000_000_01]]);
        assert_eq!(a.rank(), 1);
        let b: Matrix<f32> = Matrix::identity(4);
        assert_eq!(b.rank(), 4);
    }
}
