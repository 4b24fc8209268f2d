//! Semisimple quotient, central idempotents, primitive idempotents, simple
//! modules and their multiplicities, all in the split case.
//!
//! Central idempotents come from the minimal polynomial of a random central
//! element (Lagrange interpolation at its roots). Primitive idempotents
//! inside a split block are found from supplied hints, from a bounded
//! heuristic over basis elements and pairwise sums, or (over prime fields)
//! by randomized minimal-polynomial splitting in shrinking corners.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use crate::algebra::{corner_algebra, Algebra, ArcAlgebra};
use crate::error::{Error, Result};
use crate::hom::hom_space_left;
use crate::linalg::{Mat, Quotient, SparseMat, SparseVec, Subspace};
use crate::module::{Module, Side};
use crate::poly::{field_roots, Poly};
use crate::radical::jacobson_radical;
use crate::scalar::Scalar;

pub struct SemisimpleData {
    pub radical: Subspace,
    /// `A / J(A)` as an algebra on the non-pivot coordinates of the radical.
    pub quotient: ArcAlgebra,
    pub quotient_map: Quotient,
    /// Central idempotents of the quotient, one per block, in quotient coords.
    pub central_idempotents: Vec<SparseVec>,
    pub block_dims: Vec<usize>,
    /// One primitive idempotent per block, in quotient coords.
    pub primitive_idempotents: Vec<SparseVec>,
    /// Simple left modules of the original algebra (radical acts as zero).
    pub simples: Vec<Module>,
    pub multiplicities: Vec<usize>,
}

impl SemisimpleData {
    pub fn block_count(&self) -> usize {
        self.central_idempotents.len()
    }

    /// Lifts a quotient idempotent to an idempotent of the algebra by the
    /// Newton step `e <- 3e^2 - 2e^3` (terminates because `J` is nilpotent).
    pub fn lift_idempotent(&self, a: &Algebra, ebar: &SparseVec) -> Result<SparseVec> {
        let mut e = self.quotient_map.lift(ebar);
        for _ in 0..=a.dim + 1 {
            if a.is_idempotent(&e) {
                return Ok(e);
            }
            let e2 = a.mul(&e, &e);
            let e3 = a.mul(&e2, &e);
            e = e2.scale(&a.field.from_i64(3)).add(&e3.scale(&a.field.from_i64(-2)));
        }
        Err(Error::InternalCheckFailed("idempotent lifting did not converge".into()))
    }

    pub fn lift_central_idempotents(&self, a: &Algebra) -> Result<Vec<SparseVec>> {
        self.central_idempotents.iter().map(|e| self.lift_idempotent(a, e)).collect()
    }

    pub fn lift_primitive_idempotents(&self, a: &Algebra) -> Result<Vec<SparseVec>> {
        self.primitive_idempotents.iter().map(|e| self.lift_idempotent(a, e)).collect()
    }
}

/// The quotient algebra `A / J` on non-pivot coordinates of `J`.
pub fn quotient_algebra(a: &Algebra, radical: &Subspace) -> Result<(ArcAlgebra, Quotient)> {
    let qmap = Quotient::new(radical.clone());
    let qd = qmap.dim();
    if qd == 0 {
        return Err(Error::InternalCheckFailed("radical cannot be everything (unital)".into()));
    }
    let labels: Vec<String> = qmap.nonpivot().iter().map(|p| a.labels[*p].clone()).collect();
    let mut table = Vec::with_capacity(qd * qd);
    for i in 0..qd {
        let bi = qmap.lift(&SparseVec::unit(qd, i, a.field));
        for j in 0..qd {
            let bj = qmap.lift(&SparseVec::unit(qd, j, a.field));
            table.push(qmap.project(&a.mul(&bi, &bj)));
        }
    }
    let unit = qmap.project(&a.unit);
    let q = Algebra::new(a.field, labels, table, unit)?;
    Ok((Arc::new(q), qmap))
}

/// Minimal polynomial of an element of an algebra.
pub fn min_poly(a: &Algebra, z: &SparseVec) -> Poly {
    let field = a.field;
    let mut powers: Vec<SparseVec> = vec![a.one()];
    loop {
        let k = powers.len();
        let next = a.mul(powers.last().unwrap(), z);
        // Try to express `next` in terms of the accumulated powers.
        let m = Mat::from_sparse_cols(a.dim, &powers, field);
        if let Ok(sol) = crate::linalg::solve_dense(&m, &next.to_dense(field)) {
            let mut coeffs: Vec<Scalar> = sol.iter().map(|c| c.neg()).collect();
            coeffs.push(field.one());
            return Poly::new(field, coeffs);
        }
        powers.push(next);
        assert!(k <= a.dim, "minimal polynomial degree exceeded the dimension");
    }
}

fn sample_small(rng: &mut ChaCha8Rng, a: &Algebra) -> Scalar {
    match a.field {
        crate::scalar::Field::Q => a.field.from_i64(rng.gen_range(0i64..=16)),
        crate::scalar::Field::Fp(p) => Scalar::Fp { p, v: rng.gen_range(0..p) },
    }
}

/// Central idempotents of a (semisimple, split) algebra via the minimal
/// polynomial of a random central element.
pub fn central_idempotents(q: &Algebra, seed: u64) -> Result<Vec<SparseVec>> {
    let center = q.center();
    let blocks = center.dim();
    if blocks == 1 {
        return Ok(vec![q.one()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5c3_79e1_0f42_66bd);
    for _attempt in 0..60 {
        let z = {
            let mut acc = SparseVec::zero(q.dim);
            for b in center.basis() {
                acc = acc.add_scaled(b, &sample_small(&mut rng, q));
            }
            acc
        };
        let f = min_poly(q, &z);
        let deg = f.degree().unwrap_or(0);
        if deg < blocks {
            continue;
        }
        let roots = field_roots(&f, seed)?;
        if !roots.fully_split || roots.roots.len() != deg {
            return Err(Error::NotSplit(q.dim));
        }
        // Lagrange idempotents at the roots of the (squarefree) minimal
        // polynomial of z.
        let mut idems = Vec::with_capacity(deg);
        for (i, ti) in roots.roots.iter().enumerate() {
            let mut num = q.one();
            let mut den = q.field.one();
            for (j, tj) in roots.roots.iter().enumerate() {
                if i == j {
                    continue;
                }
                let shifted = q.mul(&num, &z).add(&num.scale(&tj.neg()));
                num = shifted;
                den = den.mul(&ti.sub(tj));
            }
            let e = num.scale(&den.inv().expect("distinct roots"));
            if !q.is_idempotent(&e) {
                return Err(Error::InternalCheckFailed("Lagrange element is not idempotent".into()));
            }
            idems.push(e);
        }
        // Orthogonality and completeness.
        let mut total = SparseVec::zero(q.dim);
        for (i, e) in idems.iter().enumerate() {
            total = total.add(e);
            for (j, f) in idems.iter().enumerate() {
                if i != j && !q.mul(e, f).is_zero() {
                    return Err(Error::InternalCheckFailed("central idempotents not orthogonal".into()));
                }
            }
        }
        if total != q.one() {
            return Err(Error::InternalCheckFailed("central idempotents do not sum to 1".into()));
        }
        // Deterministic block order: sort by the echelon pivots of e*Q.
        let mut keyed: Vec<(Vec<usize>, SparseVec)> = idems
            .into_iter()
            .map(|e| {
                let span: Vec<SparseVec> =
                    (0..q.dim).map(|k| q.mul(&e, &q.basis_vec(k))).collect();
                (Subspace::from_spanning(q.dim, &span).pivots, e)
            })
            .collect();
        keyed.sort_by(|x, y| x.0.cmp(&y.0));
        return Ok(keyed.into_iter().map(|(_, e)| e).collect());
    }
    Err(Error::InternalCheckFailed(
        "could not separate central blocks (minimal polynomial degree stayed low)".into(),
    ))
}

fn block_subspace(q: &Algebra, e: &SparseVec) -> Subspace {
    let span: Vec<SparseVec> = (0..q.dim).map(|k| q.mul(e, &q.basis_vec(k))).collect();
    Subspace::from_spanning(q.dim, &span)
}

fn left_ideal_dim(q: &Algebra, x: &SparseVec) -> usize {
    let span: Vec<SparseVec> = (0..q.dim).map(|k| q.mul(&q.basis_vec(k), x)).collect();
    Subspace::from_spanning(q.dim, &span).dim()
}

/// A primitive idempotent inside the block `e_central * Q`, which must be a
/// split simple block of square dimension `n^2`.
fn primitive_in_block(
    q: &Algebra,
    e_central: &SparseVec,
    n: usize,
    hints: &[SparseVec],
    seed: u64,
) -> Result<SparseVec> {
    if n == 1 {
        return Ok(e_central.clone());
    }
    let check = |x: &SparseVec| -> bool {
        !x.is_zero() && q.is_idempotent(x) && left_ideal_dim(q, x) == n
    };
    // Supplied hints, projected into this block.
    for h in hints {
        let in_block = q.mul(e_central, h);
        if in_block == *h && check(h) {
            return Ok(h.clone());
        }
    }
    // Bounded heuristic: block projections of basis elements, then pairwise sums.
    let candidates: Vec<SparseVec> = (0..q.dim)
        .map(|k| q.mul(e_central, &q.basis_vec(k)))
        .filter(|x| !x.is_zero())
        .collect();
    for x in &candidates {
        if check(x) {
            return Ok(x.clone());
        }
    }
    let mut budget = 2000usize;
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            if budget == 0 {
                break;
            }
            budget -= 1;
            let s = candidates[i].add(&candidates[j]);
            if check(&s) {
                return Ok(s);
            }
        }
    }
    // Over a prime field, randomized minimal-polynomial splitting always
    // succeeds (finite division rings are fields).
    if matches!(q.field, crate::scalar::Field::Fp(_)) {
        return fp_corner_descent(q, e_central, n, seed);
    }
    Err(Error::IdempotentsRequired)
}

fn fp_corner_descent(q: &Algebra, e_central: &SparseVec, n: usize, seed: u64) -> Result<SparseVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x517c_c1b7_2722_0a95);
    let mut e = e_central.clone();
    let mut samples = 0;
    loop {
        let (corner, carrier) = corner_algebra(q, &e)?;
        if corner.dim == 1 {
            if left_ideal_dim(q, &e) != n {
                return Err(Error::NotSplit(block_subspace(q, e_central).dim()));
            }
            return Ok(e);
        }
        let mut advanced = false;
        while samples < 200 {
            samples += 1;
            let x = SparseVec::collect(
                corner.dim,
                (0..corner.dim).map(|k| (k, sample_small(&mut rng, &corner))).collect(),
            );
            let f = min_poly(&corner, &x);
            let roots = field_roots(&f, seed.wrapping_add(samples))?;
            if roots.roots.len() < 2 {
                continue;
            }
            // Lagrange idempotent for the first root, inside the corner.
            let t0 = &roots.roots[0];
            let mut num = corner.one();
            let mut den = corner.field.one();
            for tj in roots.roots.iter().skip(1) {
                num = corner.mul(&num, &x).add(&num.scale(&tj.neg()));
                den = den.mul(&t0.sub(tj));
            }
            let g = num.scale(&den.inv().unwrap());
            if !corner.is_idempotent(&g) || g.is_zero() || g == corner.one() {
                continue;
            }
            // Back to ambient coordinates.
            let mut amb = SparseVec::zero(q.dim);
            for (k, c) in &g.entries {
                amb = amb.add_scaled(&carrier.basis()[*k], c);
            }
            debug_assert!(q.is_idempotent(&amb));
            e = amb;
            advanced = true;
            break;
        }
        if !advanced {
            return Err(Error::IdempotentsRequired);
        }
    }
}

/// Full semisimple analysis of `A` in the split case.
pub fn semisimple_data(
    a: &ArcAlgebra,
    supplied_idempotents: Option<&[SparseVec]>,
    seed: u64,
) -> Result<SemisimpleData> {
    let radical = jacobson_radical(a)?;
    let (quotient, quotient_map) = quotient_algebra(a, &radical)?;
    let centrals = central_idempotents(&quotient, seed)?;
    let mut block_dims = Vec::with_capacity(centrals.len());
    let mut primitive = Vec::with_capacity(centrals.len());
    let hints: Vec<SparseVec> = supplied_idempotents
        .unwrap_or(&[])
        .iter()
        .map(|e| quotient_map.project(e))
        .collect();
    for ec in &centrals {
        let bdim = block_subspace(&quotient, ec).dim();
        let n = (bdim as f64).sqrt().round() as usize;
        if n * n != bdim {
            return Err(Error::NotSplit(bdim));
        }
        block_dims.push(bdim);
        primitive.push(primitive_in_block(&quotient, ec, n, &hints, seed)?);
    }
    // Simple modules: S_i = Q e_i with the A-action through the projection.
    let proj_of_basis: Vec<SparseVec> =
        (0..a.dim).map(|j| quotient_map.project(&a.basis_vec(j))).collect();
    let mut simples = Vec::with_capacity(centrals.len());
    for (bi, e) in primitive.iter().enumerate() {
        let span: Vec<SparseVec> =
            (0..quotient.dim).map(|k| quotient.mul(&quotient.basis_vec(k), e)).collect();
        let carrier = Subspace::from_spanning(quotient.dim, &span);
        if carrier.dim() != (block_dims[bi] as f64).sqrt().round() as usize {
            return Err(Error::NotSplit(block_dims[bi]));
        }
        let mut action = Vec::with_capacity(a.dim);
        for j in 0..a.dim {
            let mut cols = Vec::with_capacity(carrier.dim());
            for w in carrier.basis() {
                let img = quotient.mul(&proj_of_basis[j], w);
                let coords = carrier.coords(&img).ok_or_else(|| {
                    Error::InternalCheckFailed("simple carrier not invariant".into())
                })?;
                cols.push(SparseVec::from_dense(&coords));
            }
            action.push(SparseMat { rows: carrier.dim(), cols });
        }
        let labels = carrier
            .pivots
            .iter()
            .map(|p| format!("S{}[{}]", bi + 1, quotient.labels[*p]))
            .collect();
        simples.push(Module::new(Arc::clone(a), Side::Left, action, labels)?);
    }
    // Split verification plus pairwise non-isomorphism.
    for (i, s) in simples.iter().enumerate() {
        let end = hom_space_left(s, s)?;
        if end.len() != 1 {
            return Err(Error::NotSplit(block_dims[i]));
        }
        for t in simples.iter().skip(i + 1) {
            if !hom_space_left(s, t)?.is_empty() {
                return Err(Error::InternalCheckFailed("distinct simples admit nonzero homs".into()));
            }
        }
    }
    // Multiplicities: m_i = dim Hom_A(A/J, S_i).
    let top_module = {
        let mut action = Vec::with_capacity(a.dim);
        for j in 0..a.dim {
            let cols = (0..quotient.dim)
                .map(|k| quotient.mul(&proj_of_basis[j], &quotient.basis_vec(k)))
                .collect();
            action.push(SparseMat { rows: quotient.dim, cols });
        }
        Module::new(Arc::clone(a), Side::Left, action, quotient.labels.clone())?
    };
    let mut multiplicities = Vec::with_capacity(simples.len());
    for s in &simples {
        multiplicities.push(hom_space_left(&top_module, s)?.len());
    }
    let total: usize = multiplicities.iter().zip(&simples).map(|(m, s)| m * s.dim).sum();
    if total != quotient.dim {
        return Err(Error::InternalCheckFailed(format!(
            "multiplicity bookkeeping failed: sum m_i dim S_i = {total} != {}",
            quotient.dim
        )));
    }
    Ok(SemisimpleData {
        radical,
        quotient,
        quotient_map,
        central_idempotents: centrals,
        block_dims,
        primitive_idempotents: primitive,
        simples,
        multiplicities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn field_algebra() -> ArcAlgebra {
        Arc::new(
            Algebra::new(
                Field::Q,
                vec!["1".into()],
                vec![SparseVec::unit(1, 0, Field::Q)],
                SparseVec::unit(1, 0, Field::Q),
            )
            .unwrap(),
        )
    }

    /// Full 2x2 matrix algebra over Q on the matrix units.
    fn mat2() -> ArcAlgebra {
        let d = 4;
        let f = Field::Q;
        // order: E11, E12, E21, E22; E_ij E_kl = delta_jk E_il
        let idx = |i: usize, j: usize| i * 2 + j;
        let mut table = vec![SparseVec::zero(d); d * d];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        if j == k {
                            table[idx(i, j) * d + idx(k, l)] = SparseVec::unit(d, idx(i, l), f);
                        }
                    }
                }
            }
        }
        let unit = SparseVec::collect(d, vec![(idx(0, 0), f.one()), (idx(1, 1), f.one())]);
        Arc::new(
            Algebra::new(
                f,
                vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()],
                table,
                unit,
            )
            .unwrap(),
        )
    }

    #[test]
    fn field_has_one_simple() {
        let a = field_algebra();
        let ss = semisimple_data(&a, None, 0).unwrap();
        assert_eq!(ss.block_count(), 1);
        assert_eq!(ss.multiplicities, vec![1]);
        assert_eq!(ss.simples[0].dim, 1);
    }

    #[test]
    fn mat2_is_one_block_of_dim_4() {
        let a = mat2();
        let ss = semisimple_data(&a, None, 0).unwrap();
        assert_eq!(ss.block_count(), 1);
        assert_eq!(ss.block_dims, vec![4]);
        assert_eq!(ss.simples[0].dim, 2);
        assert_eq!(ss.multiplicities, vec![2]);
    }

    #[test]
    fn product_of_fields_splits_into_two_blocks() {
        let a = field_algebra();
        let b = field_algebra();
        let p = Arc::new(crate::algebra::product_algebra(&a, &b).unwrap());
        let ss = semisimple_data(&p, None, 0).unwrap();
        assert_eq!(ss.block_count(), 2);
        assert_eq!(ss.multiplicities, vec![1, 1]);
        // idempotents are the two unit vectors
        let e0 = &ss.central_idempotents[0];
        let e1 = &ss.central_idempotents[1];
        assert!(p.is_idempotent(e0) && p.is_idempotent(e1));
        assert!(p.mul(e0, e1).is_zero());
    }

    #[test]
    fn min_poly_of_idempotent() {
        let a = mat2();
        let e = a.basis_vec(0); // E11: t^2 - t
        let f = min_poly(&a, &e);
        assert_eq!(f.degree(), Some(2));
        assert!(f.eval(&Field::Q.zero()).is_zero());
        assert!(f.eval(&Field::Q.one()).is_zero());
    }

    #[test]
    fn lifting_off_the_radical() {
        // Upper-triangular 2x2: quotient is K x K; lift both idempotents.
        let d = 3;
        let f = Field::Q;
        let mut table = vec![SparseVec::zero(d); 9];
        table[0] = SparseVec::unit(d, 0, f);
        table[2] = SparseVec::unit(d, 2, f);
        table[1 * d + 1] = SparseVec::unit(d, 1, f);
        table[2 * d + 1] = SparseVec::unit(d, 2, f);
        let unit = SparseVec::collect(d, vec![(0, f.one()), (1, f.one())]);
        let a = Arc::new(
            Algebra::new(f, vec!["e".into(), "f".into(), "x".into()], table, unit).unwrap(),
        );
        let ss = semisimple_data(&a, None, 0).unwrap();
        assert_eq!(ss.block_count(), 2);
        let lifted = ss.lift_central_idempotents(&a).unwrap();
        for e in &lifted {
            assert!(a.is_idempotent(e));
        }
        let total = lifted[0].add(&lifted[1]);
        // lifted orthogonal idempotents summing to 1 modulo J; here exactly 1
        // since the complement of e+f in the radical lifts to 0.
        assert_eq!(ss.quotient_map.project(&total), ss.quotient_map.project(&a.unit));
    }
}
