//! Exact sparse/dense linear algebra over a field.
//!
//! Everything here is plain Gaussian elimination kept exact. The sparse
//! side (vectors, incremental reduced echelon forms, nullspaces of large
//! constraint systems) carries the heavy structural computations; the dense
//! `Mat` type covers the small square work: determinants, inverses, hom
//! matrices, Gram matrices.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A sparse vector: sorted `(index, coefficient)` pairs, no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec {
    pub dim: usize,
    pub entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec { dim, entries: Vec::new() }
    }

    pub fn unit(dim: usize, i: usize, field: Field) -> Self {
        SparseVec { dim, entries: vec![(i, field.one())] }
    }

    pub fn single(dim: usize, i: usize, c: Scalar) -> Self {
        if c.is_zero() {
            SparseVec::zero(dim)
        } else {
            SparseVec { dim, entries: vec![(i, c)] }
        }
    }

    /// Builds from unsorted entries, merging duplicates and dropping zeros.
    pub fn collect(dim: usize, mut raw: Vec<(usize, Scalar)>) -> Self {
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            debug_assert!(i < dim);
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.add(&c),
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { dim, entries }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        SparseVec { dim: v.len(), entries }
    }

    pub fn to_dense(&self, field: Field) -> Vec<Scalar> {
        let mut v = vec![field.zero(); self.dim];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero(self.dim);
        }
        SparseVec {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, x)| (*i, x.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, x)| (*i, x.neg())).collect(),
        }
    }

    /// `self + c * other`, merged.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> SparseVec {
        debug_assert_eq!(self.dim, other.dim);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ca) = &self.entries[a];
            let (ib, cb) = &other.entries[b];
            match ia.cmp(ib) {
                std::cmp::Ordering::Less => {
                    out.push((*ia, ca.clone()));
                    a += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*ib, cb.mul(c)));
                    b += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca.add(&cb.mul(c));
                    if !s.is_zero() {
                        out.push((*ia, s));
                    }
                    a += 1;
                    b += 1;
                }
            }
        }
        out.extend(self.entries[a..].iter().cloned());
        out.extend(other.entries[b..].iter().map(|(i, cb)| (*i, cb.mul(c))));
        SparseVec { dim: self.dim, entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let one = match self.entries.first().or(other.entries.first()) {
            Some((_, c)) => c.field().one(),
            None => return self.clone(),
        };
        self.add_scaled(other, &one)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add(&other.neg())
    }

    /// Dot product against a dense functional row.
    pub fn dot_dense(&self, row: &[Scalar], field: Field) -> Scalar {
        let mut acc = field.zero();
        for (i, c) in &self.entries {
            acc = acc.add(&c.mul(&row[*i]));
        }
        acc
    }

    pub fn dot(&self, other: &SparseVec, field: Field) -> Scalar {
        let mut acc = field.zero();
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ca) = &self.entries[a];
            let (ib, cb) = &other.entries[b];
            match ia.cmp(ib) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc.add(&ca.mul(cb));
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    /// Kronecker product index convention: `(i, j) -> i * dim_right + j`.
    pub fn kron(&self, other: &SparseVec) -> SparseVec {
        let dim = self.dim * other.dim;
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (i, a) in &self.entries {
            for (j, b) in &other.entries {
                entries.push((i * other.dim + j, a.mul(b)));
            }
        }
        SparseVec { dim, entries }
    }
}

/// A sparse matrix stored by columns; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols: vec![SparseVec::zero(rows); cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        SparseMat { rows: n, cols: (0..n).map(|i| SparseVec::unit(n, i, field)).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        debug_assert_eq!(v.dim, self.cols.len());
        let mut acc = SparseVec::zero(self.rows);
        for (j, c) in &v.entries {
            acc = acc.add_scaled(&self.cols[*j], c);
        }
        acc
    }

    /// `self ∘ other` as linear maps.
    pub fn compose(&self, other: &SparseMat) -> SparseMat {
        debug_assert_eq!(self.cols.len(), other.rows);
        SparseMat {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        debug_assert_eq!(self.rows, other.rows);
        debug_assert_eq!(self.cols.len(), other.cols.len());
        SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseMat {
        SparseMat { rows: self.rows, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn to_mat(&self, field: Field) -> Mat {
        let mut m = Mat::zero(self.rows, self.cols.len(), field);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in &col.entries {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> SparseMat {
        let mut raw: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in &col.entries {
                raw[*i].push((j, c.clone()));
            }
        }
        SparseMat {
            rows: self.cols.len(),
            cols: raw
                .into_iter()
                .map(|entries| SparseVec { dim: self.cols.len(), entries })
                .collect(),
        }
    }
}

/// Dense exact matrix for small square work.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Self {
        Mat { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Mat::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, field: Field, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, field, data }
    }

    pub fn from_sparse_cols(rows: usize, cols: &[SparseVec], field: Field) -> Self {
        let mut m = Mat::zero(rows, cols.len(), field);
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in &col.entries {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Scalar) {
        self.data[i * self.cols + j] = c;
    }

    pub fn col(&self, j: usize) -> SparseVec {
        SparseVec::collect(
            self.rows,
            (0..self.rows).map(|i| (i, self.at(i, j).clone())).collect(),
        )
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.field, |i, j| self.at(j, i).clone())
    }

    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        debug_assert_eq!(v.dim, self.cols);
        let mut out = vec![self.field.zero(); self.rows];
        for (j, c) in &v.entries {
            for i in 0..self.rows {
                let a = self.at(i, *j);
                if !a.is_zero() {
                    out[i] = out[i].add(&a.mul(c));
                }
            }
        }
        SparseVec::from_dense(&out)
    }

    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero());
            let Some(p) = pivot else {
                return self.field.zero();
            };
            if p != col {
                for j in 0..n {
                    let x = a.at(p, j).clone();
                    let y = a.at(col, j).clone();
                    a.set(p, j, y);
                    a.set(col, j, x);
                }
                det = det.neg();
            }
            let piv = a.at(col, col).clone();
            det = det.mul(&piv);
            let inv = piv.inv().expect("pivot nonzero");
            for r in col + 1..n {
                let factor = a.at(r, col).mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a.at(r, j).sub(&factor.mul(a.at(col, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n, self.field);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if p != col {
                for j in 0..n {
                    let (x, y) = (a.at(p, j).clone(), a.at(col, j).clone());
                    a.set(p, j, y);
                    a.set(col, j, x);
                    let (x, y) = (inv.at(p, j).clone(), inv.at(col, j).clone());
                    inv.set(p, j, y);
                    inv.set(col, j, x);
                }
            }
            let piv_inv = a.at(col, col).inv().expect("pivot nonzero");
            for j in 0..n {
                let v = a.at(col, j).mul(&piv_inv);
                a.set(col, j, v);
                let v = inv.at(col, j).mul(&piv_inv);
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for j in 0..n {
                    let v = a.at(r, j).sub(&factor.mul(a.at(col, j)));
                    a.set(r, j, v);
                    let v = inv.at(r, j).sub(&factor.mul(inv.at(col, j)));
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    pub fn to_sparse(&self) -> SparseMat {
        SparseMat { rows: self.rows, cols: (0..self.cols).map(|j| self.col(j)).collect() }
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Rows are kept fully reduced: each row's leading entry sits at its pivot
/// column with coefficient 1, and no row has an entry at another pivot column.
#[derive(Clone, Debug)]
pub struct Echelonizer {
    pub ambient: usize,
    rows: Vec<SparseVec>,
    row_of_pivot: Vec<Option<usize>>,
}

impl Echelonizer {
    pub fn new(ambient: usize) -> Self {
        Echelonizer { ambient, rows: Vec::new(), row_of_pivot: vec![None; ambient] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut k = 0;
        while k < v.entries.len() {
            let (col, coef) = (v.entries[k].0, v.entries[k].1.clone());
            if let Some(r) = self.row_of_pivot[col] {
                // The pivot row only touches columns >= col, so earlier
                // entries of v are unaffected by this merge.
                v = v.add_scaled(&self.rows[r], &coef.neg());
            } else {
                k += 1;
            }
        }
        v
    }

    /// Inserts a vector; returns `true` when it increases the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let red = self.reduce(v);
        let Some((pivot, lead)) = red.leading().map(|(i, c)| (i, c.clone())) else {
            return false;
        };
        let normalized = red.scale(&lead.inv().expect("leading entry nonzero"));
        // Clear the new pivot column from all existing rows.
        for r in 0..self.rows.len() {
            if let Some(c) = self.rows[r].get(pivot).cloned() {
                self.rows[r] = self.rows[r].add_scaled(&normalized, &c.neg());
            }
        }
        self.row_of_pivot[pivot] = Some(self.rows.len());
        self.rows.push(normalized);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn into_subspace(mut self) -> Subspace {
        self.rows.sort_by_key(|r| r.leading().map(|(i, _)| i).unwrap_or(usize::MAX));
        let pivots = self.rows.iter().map(|r| r.leading().unwrap().0).collect();
        Subspace { ambient: self.ambient, rows: self.rows, pivots }
    }
}

/// A subspace in canonical reduced echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    pub ambient: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_spanning<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut ech = Echelonizer::new(ambient);
        for v in vectors {
            ech.insert(v);
        }
        ech.into_subspace()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut k = 0;
        'outer: while k < v.entries.len() {
            let col = v.entries[k].0;
            if let Ok(r) = self.pivots.binary_search(&col) {
                let coef = v.entries[k].1.clone();
                v = v.add_scaled(&self.rows[r], &coef.neg());
                continue 'outer;
            }
            k += 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        if self.rows.is_empty() {
            return if v.is_zero() { Some(Vec::new()) } else { None };
        }
        let field = self.rows[0].entries[0].1.field();
        let mut coords = Vec::with_capacity(self.rows.len());
        let mut rem = v.clone();
        for (r, p) in self.pivots.iter().enumerate() {
            let c = rem.get(*p).cloned().unwrap_or_else(|| field.zero());
            if !c.is_zero() {
                rem = rem.add_scaled(&self.rows[r], &c.neg());
            }
            coords.push(c);
        }
        if rem.is_zero() {
            Some(coords)
        } else {
            None
        }
    }

    pub fn nonpivot_cols(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.pivots.len());
        let mut it = self.pivots.iter().peekable();
        for col in 0..self.ambient {
            if it.peek() == Some(&&col) {
                it.next();
            } else {
                out.push(col);
            }
        }
        out
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }
}

/// The quotient of an ambient space by a subspace, coordinatized on the
/// non-pivot columns of the subspace's echelon form.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub sub: Subspace,
    nonpivot: Vec<usize>,
}

impl Quotient {
    pub fn new(sub: Subspace) -> Self {
        let nonpivot = sub.nonpivot_cols();
        Quotient { sub, nonpivot }
    }

    pub fn ambient(&self) -> usize {
        self.sub.ambient
    }

    pub fn dim(&self) -> usize {
        self.nonpivot.len()
    }

    pub fn nonpivot(&self) -> &[usize] {
        &self.nonpivot
    }

    /// Class of `v` in quotient coordinates.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let red = self.sub.reduce(v);
        let entries = red
            .entries
            .into_iter()
            .map(|(i, c)| {
                let k = self.nonpivot.binary_search(&i).expect("reduced entry off pivot");
                (k, c)
            })
            .collect();
        SparseVec { dim: self.nonpivot.len(), entries }
    }

    /// The canonical representative of a quotient coordinate vector.
    pub fn lift(&self, w: &SparseVec) -> SparseVec {
        debug_assert_eq!(w.dim, self.nonpivot.len());
        SparseVec {
            dim: self.sub.ambient,
            entries: w.entries.iter().map(|(k, c)| (self.nonpivot[*k], c.clone())).collect(),
        }
    }
}

/// Basis of the solution space of a homogeneous sparse linear system.
///
/// `rows` are constraint functionals on `unknowns` coordinates.
pub fn nullspace(unknowns: usize, rows: impl IntoIterator<Item = SparseVec>, field: Field) -> Vec<SparseVec> {
    let mut ech = Echelonizer::new(unknowns);
    for r in rows {
        ech.insert(&r);
    }
    let sub = ech.into_subspace();
    let free = sub.nonpivot_cols();
    let mut basis = Vec::with_capacity(free.len());
    for f in free {
        let mut entries: Vec<(usize, Scalar)> = vec![(f, field.one())];
        for (r, p) in sub.pivots.iter().enumerate() {
            if let Some(c) = sub.rows[r].get(f) {
                entries.push((*p, c.neg()));
            }
        }
        basis.push(SparseVec::collect(unknowns, entries));
    }
    basis
}

/// Checks `rows * x = rhs` has solution set `x0 + null`; returns one solution.
pub fn solve_dense(a: &Mat, rhs: &[Scalar]) -> Result<Vec<Scalar>> {
    assert_eq!(a.rows, rhs.len());
    let field = a.field;
    let n = a.cols;
    let mut m = Mat::zero(a.rows, n + 1, field);
    for i in 0..a.rows {
        for j in 0..n {
            m.set(i, j, a.at(i, j).clone());
        }
        m.set(i, n, rhs[i].clone());
    }
    // Forward elimination with back substitution on the augmented matrix.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..a.rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..=n {
                let (x, y) = (m.at(p, j).clone(), m.at(row, j).clone());
                m.set(p, j, y);
                m.set(row, j, x);
            }
        }
        let inv = m.at(row, col).inv().unwrap();
        for j in col..=n {
            let v = m.at(row, j).mul(&inv);
            m.set(row, j, v);
        }
        for r in 0..a.rows {
            if r != row && !m.at(r, col).is_zero() {
                let factor = m.at(r, col).clone();
                for j in col..=n {
                    let v = m.at(r, j).sub(&factor.mul(m.at(row, j)));
                    m.set(r, j, v);
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == a.rows {
            break;
        }
    }
    for r in row..a.rows {
        if !m.at(r, n).is_zero() {
            return Err(Error::Validation("inconsistent linear system".into()));
        }
    }
    let mut x = vec![field.zero(); n];
    for (r, c) in pivots {
        x[c] = m.at(r, n).clone();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qs(n: i64) -> Scalar {
        Field::Q.from_i64(n)
    }

    #[test]
    fn sparse_vec_merge() {
        let v = SparseVec::collect(4, vec![(2, qs(1)), (0, qs(3)), (2, qs(-1))]);
        assert_eq!(v.entries, vec![(0, qs(3))]);
        let w = SparseVec::collect(4, vec![(1, qs(2))]);
        let s = v.add_scaled(&w, &qs(2));
        assert_eq!(s.entries, vec![(0, qs(3)), (1, qs(4))]);
    }

    #[test]
    fn echelon_and_quotient() {
        // span{(1,1,0), (0,0,1)} in Q^3
        let mut ech = Echelonizer::new(3);
        ech.insert(&SparseVec::collect(3, vec![(0, qs(2)), (1, qs(2))]));
        ech.insert(&SparseVec::collect(3, vec![(2, qs(5))]));
        ech.insert(&SparseVec::collect(3, vec![(0, qs(1)), (1, qs(1)), (2, qs(1))]));
        let sub = ech.into_subspace();
        assert_eq!(sub.dim(), 2);
        assert_eq!(sub.pivots, vec![0, 2]);
        assert!(sub.contains(&SparseVec::collect(3, vec![(0, qs(3)), (1, qs(3)), (2, qs(-7))])));
        let q = Quotient::new(sub);
        assert_eq!(q.dim(), 1);
        // [e0] = -[e1] in the quotient.
        let p0 = q.project(&SparseVec::unit(3, 0, Field::Q));
        let p1 = q.project(&SparseVec::unit(3, 1, Field::Q));
        assert_eq!(p0, p1.scale(&qs(-1)));
    }

    #[test]
    fn mat_inverse_det() {
        let m = Mat::from_fn(2, 2, Field::Q, |i, j| qs([[1, 2], [3, 5]][i][j]));
        assert_eq!(m.det(), qs(-1));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Mat::from_fn(2, 2, Field::Q, |i, j| qs([[1, 2], [2, 4]][i][j]));
        assert_eq!(sing.det(), qs(0));
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn nullspace_small() {
        // x + y + z = 0, x - z = 0 over Q
        let rows = vec![
            SparseVec::collect(3, vec![(0, qs(1)), (1, qs(1)), (2, qs(1))]),
            SparseVec::collect(3, vec![(0, qs(1)), (2, qs(-1))]),
        ];
        let ns = nullspace(3, rows.clone(), Field::Q);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(r.dot(&ns[0], Field::Q).is_zero());
        }
    }

    #[test]
    fn solve_dense_works() {
        let a = Mat::from_fn(2, 2, Field::Q, |i, j| qs([[2, 1], [1, 1]][i][j]));
        let x = solve_dense(&a, &[qs(3), qs(2)]).unwrap();
        assert_eq!(x, vec![qs(1), qs(1)]);
    }

    fn arb_mat(n: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
            Mat::from_fn(n, n, Field::Q, |i, j| qs(v[i * n + j]))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn det_multiplicative(a in arb_mat(4), b in arb_mat(4)) {
            prop_assert_eq!(a.mul(&b).det(), a.det().mul(&b.det()));
        }

        #[test]
        fn inverse_certifies(a in arb_mat(4)) {
            if let Some(inv) = a.inverse() {
                prop_assert!(a.mul(&inv).is_identity());
                prop_assert!(!a.det().is_zero());
            } else {
                prop_assert!(a.det().is_zero());
            }
        }

        #[test]
        fn nullspace_kills_constraints(rows in proptest::collection::vec(
            proptest::collection::vec(-3i64..=3, 5), 0..6)) {
            let srows: Vec<SparseVec> = rows.iter()
                .map(|r| SparseVec::from_dense(&r.iter().map(|&x| qs(x)).collect::<Vec<_>>()))
                .collect();
            let ns = nullspace(5, srows.clone(), Field::Q);
            let rank = Subspace::from_spanning(5, &srows).dim();
            prop_assert_eq!(ns.len(), 5 - rank);
            for r in &srows {
                for b in &ns {
                    prop_assert!(r.dot(b, Field::Q).is_zero());
                }
            }
        }
    }
}
