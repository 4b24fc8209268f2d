//! Tensor products of (bi)modules over the algebra: the full Kronecker space
//! modulo the balancing subspace `(m r) ⊗ n - m ⊗ (r n)`, with an explicit
//! projection and a pure-tensor section.

use std::sync::Arc;

use crate::algebra::ArcAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Echelonizer, Mat, Quotient, SparseMat, SparseVec};
use crate::module::{require_same_algebra, Bimodule, Module, Side};

/// The computed quotient `M ⊗_R N` together with its coordinate maps.
///
/// `proj ∘ section = id`, and `proj` kills every balancing element. The
/// section sends each quotient basis vector to a pure tensor: the
/// lexicographically first full-rank subset of pure-tensor images.
pub struct TensorMaps {
    pub left_dim: usize,
    pub right_dim: usize,
    /// Full tensor space dimension (`left_dim * right_dim`).
    pub full_dim: usize,
    pub dim: usize,
    pub proj: SparseMat,
    pub section: SparseMat,
    /// Pure-tensor factor indices backing each quotient basis vector.
    pub picked: Vec<(usize, usize)>,
}

impl TensorMaps {
    pub fn flat(&self, a: usize, b: usize) -> usize {
        a * self.right_dim + b
    }

    /// Class of the pure tensor `e_a ⊗ e_b`.
    pub fn project_pure(&self, a: usize, b: usize) -> SparseVec {
        self.proj.cols[self.flat(a, b)].clone()
    }

    pub fn project_full(&self, v: &SparseVec) -> SparseVec {
        self.proj.apply(v)
    }

    /// Class of `x ⊗ y` for coordinate vectors on the two factors.
    pub fn project_kron(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero(self.dim);
        for (a, ca) in &x.entries {
            for (b, cb) in &y.entries {
                acc = acc.add_scaled(&self.proj.cols[self.flat(*a, *b)], &ca.mul(cb));
            }
        }
        acc
    }

    pub fn section_of(&self, w: &SparseVec) -> SparseVec {
        self.section.apply(w)
    }
}

fn tensor_core(
    algebra: &ArcAlgebra,
    dm: usize,
    right_m: &[SparseMat],
    m_labels: &[String],
    dn: usize,
    left_n: &[SparseMat],
    n_labels: &[String],
) -> (TensorMaps, Vec<String>) {
    let field = algebra.field;
    let full = dm * dn;
    let mut ech = Echelonizer::new(full);
    for i in 0..algebra.dim {
        for a in 0..dm {
            let ma = &right_m[i].cols[a]; // m_a * b_i
            for b in 0..dn {
                let nb = &left_n[i].cols[b]; // b_i * n_b
                let mut raw: Vec<(usize, crate::scalar::Scalar)> =
                    Vec::with_capacity(ma.entries.len() + nb.entries.len());
                for (k, c) in &ma.entries {
                    raw.push((k * dn + b, c.clone()));
                }
                for (l, c) in &nb.entries {
                    raw.push((a * dn + l, c.neg()));
                }
                let gen = SparseVec::collect(full, raw);
                if !gen.is_zero() {
                    ech.insert(&gen);
                }
            }
        }
    }
    let balancing = Quotient::new(ech.into_subspace());
    let q = balancing.dim();

    // Raw class of every pure tensor, then the lexicographically first
    // full-rank subset of them as the section basis.
    let mut raw_classes = Vec::with_capacity(full);
    let mut picked_flat = Vec::with_capacity(q);
    let mut greedy = Echelonizer::new(q);
    for t in 0..full {
        let p = balancing.project(&SparseVec::unit(full, t, field));
        if greedy.rank() < q && greedy.insert(&p) {
            picked_flat.push(t);
        }
        raw_classes.push(p);
    }
    debug_assert_eq!(picked_flat.len(), q);

    let t_mat = Mat::from_sparse_cols(
        q,
        &picked_flat.iter().map(|&t| raw_classes[t].clone()).collect::<Vec<_>>(),
        field,
    );
    let t_inv = t_mat.inverse().expect("picked classes form a basis");
    let proj = SparseMat {
        rows: q,
        cols: raw_classes.iter().map(|p| t_inv.apply_sparse(p)).collect(),
    };
    let section = SparseMat {
        rows: full,
        cols: picked_flat.iter().map(|&t| SparseVec::unit(full, t, field)).collect(),
    };
    let picked: Vec<(usize, usize)> = picked_flat.iter().map(|&t| (t / dn, t % dn)).collect();
    let labels = picked
        .iter()
        .map(|(a, b)| format!("{}⊗{}", m_labels[*a], n_labels[*b]))
        .collect();
    let maps = TensorMaps { left_dim: dm, right_dim: dn, full_dim: full, dim: q, proj, section, picked };
    (maps, labels)
}

/// `M ⊗_R N` of two bimodules, with the induced bimodule structure.
pub struct TensorFactorization {
    pub bimodule: Bimodule,
    pub maps: TensorMaps,
}

pub fn tensor_bimodules(m: &Bimodule, n: &Bimodule) -> Result<TensorFactorization> {
    require_same_algebra(&m.algebra, &n.algebra)?;
    let algebra = Arc::clone(&m.algebra);
    let (maps, labels) = tensor_core(
        &algebra, m.dim, &m.right, &m.labels, n.dim, &n.left, &n.labels,
    );
    // Induced actions: r (x ⊗ y) = (r x) ⊗ y and (x ⊗ y) r = x ⊗ (y r).
    let mut left = Vec::with_capacity(algebra.dim);
    let mut right = Vec::with_capacity(algebra.dim);
    for i in 0..algebra.dim {
        let mut lcols = Vec::with_capacity(maps.dim);
        let mut rcols = Vec::with_capacity(maps.dim);
        for (a, b) in &maps.picked {
            let la = &m.left[i].cols[*a];
            let mut acc = SparseVec::zero(maps.dim);
            for (s, c) in &la.entries {
                acc = acc.add_scaled(&maps.proj.cols[maps.flat(*s, *b)], c);
            }
            lcols.push(acc);
            let rb = &n.right[i].cols[*b];
            let mut acc = SparseVec::zero(maps.dim);
            for (l, c) in &rb.entries {
                acc = acc.add_scaled(&maps.proj.cols[maps.flat(*a, *l)], c);
            }
            rcols.push(acc);
        }
        left.push(SparseMat { rows: maps.dim, cols: lcols });
        right.push(SparseMat { rows: maps.dim, cols: rcols });
    }
    let bimodule = Bimodule::new(algebra, left, right, labels)?;
    Ok(TensorFactorization { bimodule, maps })
}

/// `M ⊗_R S` of a bimodule with a left module; the result is a left module.
pub struct TensorLeftModule {
    pub module: Module,
    pub maps: TensorMaps,
}

pub fn tensor_bimodule_with_left(m: &Bimodule, s: &Module) -> Result<TensorLeftModule> {
    require_same_algebra(&m.algebra, &s.algebra)?;
    if s.side != Side::Left {
        return Err(Error::Validation("tensor M ⊗ S expects a left module on the right".into()));
    }
    let algebra = Arc::clone(&m.algebra);
    let (maps, labels) = tensor_core(
        &algebra, m.dim, &m.right, &m.labels, s.dim, &s.action, &s.labels,
    );
    let mut action = Vec::with_capacity(algebra.dim);
    for i in 0..algebra.dim {
        let mut cols = Vec::with_capacity(maps.dim);
        for (a, b) in &maps.picked {
            let la = &m.left[i].cols[*a];
            let mut acc = SparseVec::zero(maps.dim);
            for (sdx, c) in &la.entries {
                acc = acc.add_scaled(&maps.proj.cols[maps.flat(*sdx, *b)], c);
            }
            cols.push(acc);
        }
        action.push(SparseMat { rows: maps.dim, cols });
    }
    let module = Module::new(algebra, Side::Left, action, labels)?;
    Ok(TensorLeftModule { module, maps })
}

/// Left-associated tensor powers `M, M⊗M, ..., M^{⊗ up_to}` of a bimodule.
pub struct TensorTower {
    pub algebra: ArcAlgebra,
    pub regular: Bimodule,
    pub m: Bimodule,
    /// `levels[j - 1]` holds `M^{⊗ j}`; level 1 is `M` itself with no maps.
    pub levels: Vec<TowerLevel>,
}

pub struct TowerLevel {
    pub bimodule: Bimodule,
    pub fact: Option<TensorFactorization>,
}

impl TensorTower {
    pub fn new(m: Bimodule, up_to: usize) -> Result<TensorTower> {
        assert!(up_to >= 1);
        let algebra = Arc::clone(&m.algebra);
        let regular = Bimodule::regular(&algebra);
        let mut levels = vec![TowerLevel { bimodule: m.clone(), fact: None }];
        for j in 2..=up_to {
            let prev = &levels[j - 2].bimodule;
            let fact = tensor_bimodules(prev, &m)?;
            levels.push(TowerLevel { bimodule: fact.bimodule.clone(), fact: Some(fact) });
        }
        Ok(TensorTower { algebra, regular, m, levels })
    }

    pub fn max_level(&self) -> usize {
        self.levels.len()
    }

    pub fn dim(&self, j: usize) -> usize {
        if j == 0 {
            self.algebra.dim
        } else {
            self.levels[j - 1].bimodule.dim
        }
    }

    pub fn bimodule(&self, j: usize) -> &Bimodule {
        if j == 0 {
            &self.regular
        } else {
            &self.levels[j - 1].bimodule
        }
    }

    /// Class of `v ⊗ e_idx` in level `j + 1`, where `v` lives in level `j >= 1`.
    pub fn append_basis(&self, j: usize, v: &SparseVec, idx: usize) -> SparseVec {
        debug_assert!(j >= 1);
        let dm = self.m.dim;
        let fact = self.levels[j].fact.as_ref().expect("level j+1 >= 2 has maps");
        let mut acc = SparseVec::zero(fact.maps.dim);
        for (t, c) in &v.entries {
            acc = acc.add_scaled(&fact.maps.proj.cols[t * dm + idx], c);
        }
        acc
    }

    /// Pure-tensor class of a full index tuple at level `tuple.len()`.
    pub fn pure_class(&self, tuple: &[usize]) -> SparseVec {
        assert!(!tuple.is_empty() && tuple.len() <= self.max_level());
        let mut v = SparseVec::unit(self.m.dim, tuple[0], self.algebra.field);
        for (j, idx) in tuple.iter().enumerate().skip(1) {
            v = self.append_basis(j, &v, *idx);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Subspace;
    use crate::scalar::Field;

    fn upper_triangular2() -> ArcAlgebra {
        let d = 3;
        let f = Field::Q;
        let mut table = vec![SparseVec::zero(d); 9];
        table[0] = SparseVec::unit(d, 0, f);
        table[2] = SparseVec::unit(d, 2, f);
        table[1 * d + 1] = SparseVec::unit(d, 1, f);
        table[2 * d + 1] = SparseVec::unit(d, 2, f);
        let unit = SparseVec::collect(d, vec![(0, f.one()), (1, f.one())]);
        Arc::new(Algebra::new(f, vec!["e".into(), "f".into(), "x".into()], table, unit).unwrap())
    }

    #[test]
    fn dual_tensor_square_of_upper_triangular_has_dim_1() {
        let a = upper_triangular2();
        let dual = Bimodule::dual(&a);
        let t = tensor_bimodules(&dual, &dual).unwrap();
        assert_eq!(t.bimodule.dim, 1);
        // The surviving class is f* ⊗ x* (= x* ⊗ e*).
        let f_x = t.maps.project_pure(1, 2);
        assert!(!f_x.is_zero());
        let x_e = t.maps.project_pure(2, 0);
        assert_eq!(f_x, x_e);
        // All squares of the others vanish, e.g. e* ⊗ e*.
        assert!(t.maps.project_pure(0, 0).is_zero());
        // Cube is zero.
        let t3 = tensor_bimodules(&t.bimodule, &dual).unwrap();
        assert_eq!(t3.bimodule.dim, 0);
    }

    #[test]
    fn balancing_is_killed_and_section_splits() {
        let a = upper_triangular2();
        let dual = Bimodule::dual(&a);
        let reg = Bimodule::regular(&a);
        let t = tensor_bimodules(&reg, &dual).unwrap();
        // proj ∘ section = id
        for k in 0..t.bimodule.dim {
            let w = SparseVec::unit(t.bimodule.dim, k, Field::Q);
            assert_eq!(t.maps.project_full(&t.maps.section_of(&w)), w);
        }
        // balancing elements project to zero
        for i in 0..a.dim {
            for am in 0..reg.dim {
                for bn in 0..dual.dim {
                    let lhs = t.maps.project_kron(
                        &reg.right[i].cols[am],
                        &SparseVec::unit(dual.dim, bn, Field::Q),
                    );
                    let rhs = t.maps.project_kron(
                        &SparseVec::unit(reg.dim, am, Field::Q),
                        &dual.left[i].cols[bn],
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn unit_constraint_r_tensor_m() {
        // R ⊗_R M has dim M and (r ⊗ m -> r m) composed with the section is invertible.
        let a = upper_triangular2();
        let dual = Bimodule::dual(&a);
        let reg = Bimodule::regular(&a);
        let t = tensor_bimodules(&reg, &dual).unwrap();
        assert_eq!(t.bimodule.dim, dual.dim);
        let mut cols = Vec::new();
        for (r_idx, m_idx) in &t.maps.picked {
            cols.push(dual.left[*r_idx].cols[*m_idx].clone());
        }
        let mult = Mat::from_sparse_cols(dual.dim, &cols, Field::Q);
        assert!(!mult.det().is_zero());
    }

    #[test]
    fn tower_pure_classes() {
        let a = upper_triangular2();
        let dual = Bimodule::dual(&a);
        let tower = TensorTower::new(dual, 3).unwrap();
        assert_eq!(tower.dim(1), 3);
        assert_eq!(tower.dim(2), 1);
        assert_eq!(tower.dim(3), 0);
        // f* ⊗ x* spans level 2
        let c = tower.pure_class(&[1, 2]);
        assert!(!c.is_zero());
        let all: Vec<SparseVec> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| tower.pure_class(&[i, j]))
            .collect();
        assert_eq!(Subspace::from_spanning(1, &all).dim(), 1);
    }
}
