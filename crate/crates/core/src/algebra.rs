//! Finite-dimensional unital associative algebras given by structure constants.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, Mat, SparseMat, SparseVec, Subspace};
use crate::scalar::{Field, Scalar};

/// An algebra presented by a basis and the coordinates of all basis products.
///
/// `table[i * dim + j]` holds the coordinates of `b_i * b_j`. Construction
/// checks every associativity triple and both unit laws exactly, so a value
/// of this type is always a genuine unital associative algebra.
#[derive(Debug)]
pub struct Algebra {
    pub field: Field,
    pub dim: usize,
    pub labels: Vec<String>,
    table: Vec<SparseVec>,
    pub unit: SparseVec,
    left_traces: Vec<Scalar>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.table == other.table
    }
}

impl Algebra {
    pub fn new(
        field: Field,
        labels: Vec<String>,
        table: Vec<SparseVec>,
        unit: SparseVec,
    ) -> Result<Algebra> {
        let field = field.checked()?;
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::Validation("algebras must have dimension >= 1".into()));
        }
        if labels.iter().collect::<HashSet<_>>().len() != dim {
            return Err(Error::Validation("basis labels must be distinct".into()));
        }
        if table.len() != dim * dim {
            return Err(Error::Validation(format!(
                "structure table must have {} entries, got {}",
                dim * dim,
                table.len()
            )));
        }
        for v in table.iter().chain(std::iter::once(&unit)) {
            if v.dim != dim {
                return Err(Error::Validation("coordinate vector has wrong dimension".into()));
            }
            for (_, c) in &v.entries {
                if c.field() != field {
                    return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
                }
            }
        }
        let mut alg = Algebra { field, dim, labels, table, unit, left_traces: Vec::new() };
        alg.check_unit()?;
        alg.check_associativity()?;
        alg.left_traces = (0..dim)
            .map(|k| {
                let mut t = field.zero();
                for j in 0..dim {
                    if let Some(c) = alg.table_at(k, j).get(j) {
                        t = t.add(c);
                    }
                }
                t
            })
            .collect();
        Ok(alg)
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let e = SparseVec::unit(self.dim, i, self.field);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::UnitLaw(self.labels[i].clone()));
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.table_at(i, j).clone();
                for k in 0..self.dim {
                    let lhs = self.mul_basis_right(&ij, k);
                    let rhs = self.mul_basis_left(i, self.table_at(j, k));
                    if lhs != rhs {
                        return Err(Error::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn table_at(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn one(&self) -> SparseVec {
        self.unit.clone()
    }

    pub fn basis_vec(&self, i: usize) -> SparseVec {
        SparseVec::unit(self.dim, i, self.field)
    }

    /// `v * b_k`
    fn mul_basis_right(&self, v: &SparseVec, k: usize) -> SparseVec {
        let mut acc = SparseVec::zero(self.dim);
        for (l, c) in &v.entries {
            acc = acc.add_scaled(self.table_at(*l, k), c);
        }
        acc
    }

    /// `b_i * v`
    fn mul_basis_left(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero(self.dim);
        for (m, c) in &v.entries {
            acc = acc.add_scaled(self.table_at(i, *m), c);
        }
        acc
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero(self.dim);
        for (i, a) in &x.entries {
            for (j, b) in &y.entries {
                acc = acc.add_scaled(self.table_at(*i, *j), &a.mul(b));
            }
        }
        acc
    }

    /// Matrix of left multiplication by `x` (column `j` is `x * b_j`).
    pub fn left_mult_mat(&self, x: &SparseVec) -> SparseMat {
        SparseMat {
            rows: self.dim,
            cols: (0..self.dim).map(|j| self.mul_basis_left_any(x, j)).collect(),
        }
    }

    fn mul_basis_left_any(&self, x: &SparseVec, j: usize) -> SparseVec {
        let mut acc = SparseVec::zero(self.dim);
        for (i, a) in &x.entries {
            acc = acc.add_scaled(self.table_at(*i, j), a);
        }
        acc
    }

    /// Matrix of right multiplication by `x` (column `j` is `b_j * x`).
    pub fn right_mult_mat(&self, x: &SparseVec) -> SparseMat {
        let cols = (0..self.dim)
            .map(|j| {
                let mut acc = SparseVec::zero(self.dim);
                for (i, c) in &x.entries {
                    acc = acc.add_scaled(self.table_at(j, *i), c);
                }
                acc
            })
            .collect();
        SparseMat { rows: self.dim, cols }
    }

    /// Trace of left multiplication by `x` in the regular representation.
    pub fn left_trace(&self, x: &SparseVec) -> Scalar {
        let mut t = self.field.zero();
        for (k, c) in &x.entries {
            t = t.add(&c.mul(&self.left_traces[*k]));
        }
        t
    }

    pub fn is_idempotent(&self, e: &SparseVec) -> bool {
        self.mul(e, e) == *e
    }

    /// Exact inverse of an element, if invertible.
    pub fn inverse_of(&self, x: &SparseVec) -> Option<SparseVec> {
        let l = self.left_mult_mat(x).to_mat(self.field);
        let inv = l.inverse()?;
        Some(inv.apply_sparse(&self.unit))
    }

    pub fn is_invertible(&self, x: &SparseVec) -> bool {
        !self.left_mult_mat(x).to_mat(self.field).det().is_zero()
    }

    /// The center `{z : zb = bz for all b}` as a subspace.
    pub fn center(&self) -> Subspace {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            // (L_i - R_i) z = 0, one functional row per output coordinate.
            let mut per_coord: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.dim];
            for j in 0..self.dim {
                let diff = self.table_at(i, j).sub(self.table_at(j, i));
                for (r, c) in diff.entries {
                    per_coord[r].push((j, c));
                }
            }
            for raw in per_coord {
                if !raw.is_empty() {
                    rows.push(SparseVec::collect(self.dim, raw));
                }
            }
        }
        Subspace::from_spanning(self.dim, &nullspace(self.dim, rows, self.field))
    }

    /// Evaluates a functional (coordinates in the dual basis) on an element.
    pub fn eval_functional(&self, lambda: &[Scalar], x: &SparseVec) -> Scalar {
        x.dot_dense(lambda, self.field)
    }

    /// Parses an element given either as a basis label or as a comma-separated
    /// coefficient list in basis order.
    pub fn parse_element(&self, s: &str) -> Result<SparseVec> {
        if let Some(i) = self.labels.iter().position(|l| l == s.trim()) {
            return Ok(self.basis_vec(i));
        }
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != self.dim {
            return Err(Error::Validation(format!(
                "element '{s}' is neither a basis label nor a {}-entry coefficient list",
                self.dim
            )));
        }
        let mut entries = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            let c = self.field.parse(p)?;
            if !c.is_zero() {
                entries.push((i, c));
            }
        }
        Ok(SparseVec::collect(self.dim, entries))
    }

    pub fn display_element(&self, x: &SparseVec) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.entries
            .iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.labels[*i].clone()
                } else {
                    format!("{c}*{}", self.labels[*i])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Direct product `A x B` with componentwise operations.
pub fn product_algebra(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    let dim = a.dim + b.dim;
    let mut labels = Vec::with_capacity(dim);
    labels.extend(a.labels.iter().map(|l| format!("{l}.1")));
    labels.extend(b.labels.iter().map(|l| format!("{l}.2")));
    let shift = |v: &SparseVec, off: usize| SparseVec {
        dim,
        entries: v.entries.iter().map(|(i, c)| (i + off, c.clone())).collect(),
    };
    let mut table = vec![SparseVec::zero(dim); dim * dim];
    for i in 0..a.dim {
        for j in 0..a.dim {
            table[i * dim + j] = shift(a.table_at(i, j), 0);
        }
    }
    for i in 0..b.dim {
        for j in 0..b.dim {
            table[(a.dim + i) * dim + (a.dim + j)] = shift(b.table_at(i, j), a.dim);
        }
    }
    let unit = shift(&a.unit, 0).add(&shift(&b.unit, a.dim));
    Algebra::new(a.field, labels, table, unit)
}

/// The corner algebra `eAe` for an idempotent `e`, with unit `e`.
pub fn corner_algebra(a: &Algebra, e: &SparseVec) -> Result<(Algebra, Subspace)> {
    if !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    if e.is_zero() {
        return Err(Error::Validation("corner at e = 0 is the zero algebra".into()));
    }
    let spanning: Vec<SparseVec> = (0..a.dim)
        .map(|i| a.mul(&a.mul(e, &a.basis_vec(i)), e))
        .collect();
    let carrier = Subspace::from_spanning(a.dim, &spanning);
    let k = carrier.dim();
    let basis: Vec<SparseVec> = carrier.basis().to_vec();
    let labels: Vec<String> = carrier
        .pivots
        .iter()
        .map(|p| format!("e[{}]e", a.labels[*p]))
        .collect();
    let mut table = Vec::with_capacity(k * k);
    for x in &basis {
        for y in &basis {
            let prod = a.mul(x, y);
            let coords = carrier
                .coords(&prod)
                .ok_or_else(|| Error::InternalCheckFailed("corner not closed under product".into()))?;
            table.push(SparseVec::from_dense(&coords));
        }
    }
    let unit_coords = carrier
        .coords(e)
        .ok_or_else(|| Error::InternalCheckFailed("corner unit outside carrier".into()))?;
    let alg = Algebra::new(a.field, labels, table, SparseVec::from_dense(&unit_coords))?;
    Ok((alg, carrier))
}

/// Rewrites `A` in the basis given by the columns of `p` (for tests of
/// basis-independence).
pub fn change_of_basis(a: &Algebra, p: &Mat) -> Result<Algebra> {
    let p_inv = p.inverse().ok_or(Error::Validation("basis change must be invertible".into()))?;
    let dim = a.dim;
    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let bi = p.col(i);
            let bj = p.col(j);
            let prod = a.mul(&bi, &bj);
            table.push(p_inv.apply_sparse(&prod));
        }
    }
    let labels = (0..dim).map(|i| format!("v{i}")).collect();
    let unit = p_inv.apply_sparse(&a.unit);
    Algebra::new(a.field, labels, table, unit)
}

pub type ArcAlgebra = Arc<Algebra>;

pub fn same_algebra(a: &ArcAlgebra, b: &ArcAlgebra) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn dual_numbers() -> Algebra {
        // K[eps]/(eps^2), basis {1, eps}
        let d = 2;
        let mut table = vec![SparseVec::zero(d); 4];
        table[0] = SparseVec::unit(d, 0, Field::Q); // 1*1
        table[1] = SparseVec::unit(d, 1, Field::Q); // 1*eps
        table[2] = SparseVec::unit(d, 1, Field::Q); // eps*1
        table[3] = SparseVec::zero(d); // eps^2
        Algebra::new(
            Field::Q,
            vec!["1".into(), "eps".into()],
            table,
            SparseVec::unit(d, 0, Field::Q),
        )
        .unwrap()
    }

    #[test]
    fn field_as_algebra() {
        let a = Algebra::new(
            Field::Q,
            vec!["1".into()],
            vec![SparseVec::unit(1, 0, Field::Q)],
            SparseVec::unit(1, 0, Field::Q),
        )
        .unwrap();
        assert_eq!(a.dim, 1);
        assert!(a.is_invertible(&a.one()));
    }

    #[test]
    fn non_associative_rejected() {
        // dim 2, b1*b1 = b0 but b1*b0 = 0 etc. chosen to break (b1 b1) b1 = b1 (b1 b1)
        let d = 2;
        let mut table = vec![SparseVec::zero(d); 4];
        table[0] = SparseVec::unit(d, 0, Field::Q);
        table[1] = SparseVec::unit(d, 1, Field::Q);
        table[2] = SparseVec::unit(d, 1, Field::Q);
        table[3] = SparseVec::unit(d, 1, Field::Q); // eps^2 = eps, breaks associativity? check: (e e)e = e e = e; e(e e)= e e = e. fine..
        // use a genuinely broken table: eps*eps = 1 but keep eps*1 = eps, 1*eps = eps:
        table[3] = SparseVec::unit(d, 0, Field::Q);
        // (eps eps) eps = 1*eps = eps and eps (eps eps) = eps*1 = eps -- associative too.
        // Break it with an asymmetric rule: eps*eps = eps + 1 only on one side is impossible
        // in a table, so perturb a unit law instead to exercise the unit check:
        table[1] = SparseVec::zero(d);
        let err = Algebra::new(
            Field::Q,
            vec!["1".into(), "eps".into()],
            table,
            SparseVec::unit(d, 0, Field::Q),
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnitLaw(_)));
    }

    #[test]
    fn associativity_violation_names_triple() {
        // Basis {1, u, v}: u*u = v, u*v = 1, others via unit. Then
        // (u u) u = v u and u (u u) = u v = 1; set v*u = 0 to break at (u,u,u).
        let d = 3;
        let f = Field::Q;
        let mut table = vec![SparseVec::zero(d); 9];
        let unit = SparseVec::unit(d, 0, f);
        for i in 0..d {
            table[i] = SparseVec::unit(d, i, f); // 1 * b_i
            table[i * d] = SparseVec::unit(d, i, f); // b_i * 1
        }
        table[1 * d + 1] = SparseVec::unit(d, 2, f); // u*u = v
        table[1 * d + 2] = SparseVec::unit(d, 0, f); // u*v = 1
        table[2 * d + 1] = SparseVec::zero(d); // v*u = 0
        table[2 * d + 2] = SparseVec::zero(d);
        let err = Algebra::new(f, vec!["1".into(), "u".into(), "v".into()], table, unit).unwrap_err();
        assert_eq!(err, Error::NotAssociative("u".into(), "u".into(), "u".into()));
    }

    #[test]
    fn product_and_center() {
        let a = dual_numbers();
        let b = dual_numbers();
        let p = product_algebra(&a, &b).unwrap();
        assert_eq!(p.dim, 4);
        // dual numbers are commutative, so the center is everything
        assert_eq!(p.center().dim(), 4);
        assert!(p.is_invertible(&p.one()));
        let eps = p.basis_vec(1);
        assert!(!p.is_invertible(&eps));
    }

    #[test]
    fn corner_at_unit_is_identity() {
        let a = dual_numbers();
        let (c, _) = corner_algebra(&a, &a.one()).unwrap();
        assert_eq!(c.dim, a.dim);
        for i in 0..a.dim {
            for j in 0..a.dim {
                assert_eq!(c.table_at(i, j), a.table_at(i, j));
            }
        }
    }

    #[test]
    fn inverse_of_unit_plus_nilpotent() {
        let a = dual_numbers();
        // (1 + eps)^{-1} = 1 - eps
        let x = a.one().add(&a.basis_vec(1));
        let inv = a.inverse_of(&x).unwrap();
        assert_eq!(a.mul(&x, &inv), a.one());
        assert_eq!(inv, a.one().sub(&a.basis_vec(1)));
    }
}
