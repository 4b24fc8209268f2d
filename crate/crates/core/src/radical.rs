//! Jacobson radical via the trace form of the regular representation.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, SparseVec, Subspace};

/// Computes `J(A) = { x : trace(L_{x b_j}) = 0 for all j }`.
///
/// The trace criterion characterizes the radical in characteristic 0 and in
/// characteristic `p > dim A`. The candidate is always re-verified to be a
/// nilpotent two-sided ideal; since the trace kernel contains the radical in
/// every characteristic, a candidate passing the verification is certified
/// equal to it even for small `p`. A failing certificate in small
/// characteristic is reported as `UnsupportedCharacteristic`.
pub fn jacobson_radical(a: &Algebra) -> Result<Subspace> {
    let p = a.field.characteristic();
    let in_validity_domain = p == 0 || p > a.dim as u64;
    // Gram matrix of (x, y) -> trace(L_{xy}); its kernel is the candidate.
    let mut rows = Vec::with_capacity(a.dim);
    for i in 0..a.dim {
        let entries = (0..a.dim)
            .map(|j| (j, a.left_trace(a.table_at(i, j))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        rows.push(SparseVec { dim: a.dim, entries });
    }
    let radical = Subspace::from_spanning(a.dim, &nullspace(a.dim, rows, a.field));

    let fail = |msg: &str| {
        if in_validity_domain {
            Error::InternalCheckFailed(msg.into())
        } else {
            Error::UnsupportedCharacteristic { p, dim: a.dim }
        }
    };
    // Re-verify: two-sided ideal.
    for v in radical.basis() {
        for i in 0..a.dim {
            let b = a.basis_vec(i);
            if !radical.contains(&a.mul(&b, v)) || !radical.contains(&a.mul(v, &b)) {
                return Err(fail("radical candidate is not a two-sided ideal"));
            }
        }
    }
    // Re-verify: nilpotent (J^dim = 0).
    let mut power = radical.clone();
    let mut steps = 0usize;
    while power.dim() > 0 {
        steps += 1;
        if steps > a.dim {
            return Err(fail("radical candidate is not nilpotent"));
        }
        let products: Vec<SparseVec> = power
            .basis()
            .iter()
            .flat_map(|x| radical.basis().iter().map(|y| a.mul(x, y)))
            .collect();
        power = Subspace::from_spanning(a.dim, &products);
    }
    Ok(radical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::scalar::Field;

    fn upper_triangular2() -> Algebra {
        // basis {e, f, x}: e^2 = e, f^2 = f, ex = x, xf = x
        let d = 3;
        let f = Field::Q;
        let mut table = vec![SparseVec::zero(d); 9];
        table[0] = SparseVec::unit(d, 0, f); // e e
        table[0 * d + 2] = SparseVec::unit(d, 2, f); // e x
        table[1 * d + 1] = SparseVec::unit(d, 1, f); // f f
        table[2 * d + 1] = SparseVec::unit(d, 2, f); // x f
        let unit = SparseVec::collect(d, vec![(0, f.one()), (1, f.one())]);
        Algebra::new(f, vec!["e".into(), "f".into(), "x".into()], table, unit).unwrap()
    }

    #[test]
    fn radical_of_upper_triangular_is_x() {
        let a = upper_triangular2();
        let j = jacobson_radical(&a).unwrap();
        assert_eq!(j.dim(), 1);
        assert!(j.contains(&a.basis_vec(2)));
    }

    #[test]
    fn radical_of_field_is_zero() {
        let a = Algebra::new(
            Field::Q,
            vec!["1".into()],
            vec![SparseVec::unit(1, 0, Field::Q)],
            SparseVec::unit(1, 0, Field::Q),
        )
        .unwrap();
        assert_eq!(jacobson_radical(&a).unwrap().dim(), 0);
    }

    #[test]
    fn small_characteristic_rejected() {
        let f = Field::Fp(2);
        let d = 3;
        let mut table = vec![SparseVec::zero(d); 9];
        table[0] = SparseVec::unit(d, 0, f);
        table[0 * d + 2] = SparseVec::unit(d, 2, f);
        table[1 * d + 1] = SparseVec::unit(d, 1, f);
        table[2 * d + 1] = SparseVec::unit(d, 2, f);
        let unit = SparseVec::collect(d, vec![(0, f.one()), (1, f.one())]);
        let a = Algebra::new(f, vec!["e".into(), "f".into(), "x".into()], table, unit).unwrap();
        assert!(matches!(
            jacobson_radical(&a),
            Err(Error::UnsupportedCharacteristic { p: 2, dim: 3 })
        ));
    }

    #[test]
    fn radical_is_basis_independent() {
        let a = upper_triangular2();
        let j = jacobson_radical(&a).unwrap();
        // Change basis by an invertible matrix and compare pulled-back radicals.
        let p = Mat::from_fn(3, 3, Field::Q, |i, k| {
            Field::Q.from_i64([[1, 1, 0], [0, 1, 2], [1, 0, 1]][i][k])
        });
        let a2 = crate::algebra::change_of_basis(&a, &p).unwrap();
        let j2 = jacobson_radical(&a2).unwrap();
        // Push j2 forward through P and compare canonical echelon forms.
        let pushed: Vec<SparseVec> = j2.basis().iter().map(|v| p.apply_sparse(v)).collect();
        let pushed = Subspace::from_spanning(3, &pushed);
        assert_eq!(pushed, j);
    }
}
