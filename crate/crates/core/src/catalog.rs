//! Built-in example algebras: the quantum-plane quotient, the Nakayama
//! two-block algebra, triangular and generalized-matrix algebras, and their
//! products, each with the idempotent hints they ship with.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{product_algebra, Algebra, ArcAlgebra};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::scalar::{Field, Scalar};

#[derive(Clone)]
pub struct BuiltExample {
    pub id: String,
    pub algebra: ArcAlgebra,
    pub idempotent_hints: Option<Vec<SparseVec>>,
    pub description: String,
}

/// Key-value parameters, e.g. `p=2,q=1,field=F5`.
#[derive(Clone, Debug, Default)]
pub struct Params(pub BTreeMap<String, String>);

impl Params {
    pub fn parse(s: &str) -> Result<Params> {
        let mut map = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::BadParams(format!("expected key=value, got '{part}'")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(map))
    }

    pub fn field(&self) -> Result<Field> {
        match self.0.get("field").map(String::as_str) {
            None | Some("Q") | Some("q") => Ok(Field::Q),
            Some(s) => {
                let p: u64 = s
                    .strip_prefix(['F', 'f'])
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::BadParams(format!("bad field '{s}' (use Q or F<p>)")))?;
                Field::Fp(p).checked()
            }
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.0.get(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .map_err(|_| Error::BadParams(format!("parameter {key}='{s}' is not an integer"))),
        }
    }

    pub fn scalar_or(&self, key: &str, field: Field, default: i64) -> Result<Scalar> {
        match self.0.get(key) {
            None => Ok(field.from_i64(default)),
            Some(s) => field.parse(s),
        }
    }
}

fn arc(a: Algebra) -> ArcAlgebra {
    Arc::new(a)
}

/// The base field as a one-dimensional algebra.
pub fn field_algebra(field: Field) -> Result<Algebra> {
    Algebra::new(
        field,
        vec!["1".into()],
        vec![SparseVec::unit(1, 0, field)],
        SparseVec::unit(1, 0, field),
    )
}

/// `K[eps]/(eps^2)`.
pub fn dual_numbers(field: Field) -> Result<Algebra> {
    let d = 2;
    let mut table = vec![SparseVec::zero(d); 4];
    table[0] = SparseVec::unit(d, 0, field);
    table[1] = SparseVec::unit(d, 1, field);
    table[2] = SparseVec::unit(d, 1, field);
    Algebra::new(
        field,
        vec!["1".into(), "eps".into()],
        table,
        SparseVec::unit(d, 0, field),
    )
}

/// The quantum-plane quotient `K_q[X,Y]/(X^2, Y^2)`: basis `{1, x, y, xy}`
/// with `x^2 = y^2 = 0` and `y x = q * x y`.
pub fn quantum_plane_quotient(field: Field, q: &Scalar) -> Result<Algebra> {
    if q.is_zero() {
        return Err(Error::BadParams("quantum parameter q must be nonzero".into()));
    }
    let d = 4;
    let (one, x, y, xy) = (0usize, 1usize, 2usize, 3usize);
    let mut table = vec![SparseVec::zero(d); d * d];
    for i in 0..d {
        table[one * d + i] = SparseVec::unit(d, i, field);
        table[i * d + one] = SparseVec::unit(d, i, field);
    }
    table[x * d + y] = SparseVec::unit(d, xy, field);
    table[y * d + x] = SparseVec::single(d, xy, q.clone());
    Algebra::new(
        field,
        vec!["1".into(), "x".into(), "y".into(), "xy".into()],
        table,
        SparseVec::unit(d, one, field),
    )
}

/// The two-block Nakayama-type algebra on `p + q` rows: basis `E_ij`, `X_ir`,
/// `Y_ri`, `F_rt` with the matrix-unit-style relations and zero elsewhere.
/// For `p = 2, q = 1` this is the 9-dimensional quasi-Frobenius,
/// non-Frobenius algebra.
pub struct NakayamaAlgebra {
    pub algebra: ArcAlgebra,
    pub p: usize,
    pub q: usize,
    pub e11: SparseVec,
    pub f11: SparseVec,
    /// `E11 + F11`, the corner idempotent of the basic algebra.
    pub basic_idempotent: SparseVec,
}

pub fn nakayama_pq(field: Field, p: usize, q: usize) -> Result<NakayamaAlgebra> {
    if p == 0 || q == 0 || p == q {
        return Err(Error::BadParams("need positive p != q".into()));
    }
    let d = (p + q) * (p + q);
    let e_idx = |i: usize, j: usize| (i - 1) * p + (j - 1);
    let x_idx = |i: usize, r: usize| p * p + (i - 1) * q + (r - 1);
    let y_idx = |r: usize, i: usize| p * p + p * q + (r - 1) * p + (i - 1);
    let f_idx = |r: usize, t: usize| p * p + 2 * p * q + (r - 1) * q + (t - 1);
    let mut labels = vec![String::new(); d];
    for i in 1..=p {
        for j in 1..=p {
            labels[e_idx(i, j)] = format!("E{i}{j}");
        }
    }
    for i in 1..=p {
        for r in 1..=q {
            labels[x_idx(i, r)] = format!("X{i}{r}");
        }
    }
    for r in 1..=q {
        for i in 1..=p {
            labels[y_idx(r, i)] = format!("Y{r}{i}");
        }
    }
    for r in 1..=q {
        for t in 1..=q {
            labels[f_idx(r, t)] = format!("F{r}{t}");
        }
    }
    let mut table = vec![SparseVec::zero(d); d * d];
    let mut put = |a: usize, b: usize, c: usize| {
        table[a * d + b] = SparseVec::unit(d, c, field);
    };
    for i in 1..=p {
        for j in 1..=p {
            for s in 1..=p {
                put(e_idx(i, j), e_idx(j, s), e_idx(i, s));
            }
            for r in 1..=q {
                put(e_idx(i, j), x_idx(j, r), x_idx(i, r));
            }
        }
    }
    for r in 1..=q {
        for t in 1..=q {
            for u in 1..=q {
                put(f_idx(r, t), f_idx(t, u), f_idx(r, u));
            }
            for i in 1..=p {
                put(f_idx(r, t), y_idx(t, i), y_idx(r, i));
            }
        }
    }
    for i in 1..=p {
        for r in 1..=q {
            for t in 1..=q {
                put(x_idx(i, r), f_idx(r, t), x_idx(i, t));
            }
        }
    }
    for r in 1..=q {
        for i in 1..=p {
            for j in 1..=p {
                put(y_idx(r, i), e_idx(i, j), y_idx(r, j));
            }
        }
    }
    let mut unit_raw: Vec<(usize, Scalar)> = Vec::new();
    for i in 1..=p {
        unit_raw.push((e_idx(i, i), field.one()));
    }
    for r in 1..=q {
        unit_raw.push((f_idx(r, r), field.one()));
    }
    let unit = SparseVec::collect(d, unit_raw);
    let algebra = arc(Algebra::new(field, labels, table, unit)?);
    let e11 = SparseVec::unit(d, e_idx(1, 1), field);
    let f11 = SparseVec::unit(d, f_idx(1, 1), field);
    let basic_idempotent = e11.add(&f11);
    Ok(NakayamaAlgebra { algebra, p, q, e11, f11, basic_idempotent })
}

/// Upper-triangular 2x2 matrices: basis `{e, f, x}` with `e^2 = e`,
/// `f^2 = f`, `e x = x f = x`.
pub fn upper_triangular_2(field: Field) -> Result<Algebra> {
    let d = 3;
    let mut table = vec![SparseVec::zero(d); 9];
    table[0] = SparseVec::unit(d, 0, field);
    table[2] = SparseVec::unit(d, 2, field);
    table[1 * d + 1] = SparseVec::unit(d, 1, field);
    table[2 * d + 1] = SparseVec::unit(d, 2, field);
    let unit = SparseVec::collect(d, vec![(0, field.one()), (1, field.one())]);
    Algebra::new(field, vec!["e".into(), "f".into(), "x".into()], table, unit)
}

/// The generalized matrix algebra on the bimodule `K^2`: basis `{e, f, x, y}`
/// with `e^2 = e`, `f^2 = f`, `e x = x f = x`, `e y = y f = y`.
pub fn generalized_matrix(field: Field) -> Result<Algebra> {
    let d = 4;
    let (e, f, x, y) = (0usize, 1usize, 2usize, 3usize);
    let mut table = vec![SparseVec::zero(d); d * d];
    table[e * d + e] = SparseVec::unit(d, e, field);
    table[f * d + f] = SparseVec::unit(d, f, field);
    table[e * d + x] = SparseVec::unit(d, x, field);
    table[x * d + f] = SparseVec::unit(d, x, field);
    table[e * d + y] = SparseVec::unit(d, y, field);
    table[y * d + f] = SparseVec::unit(d, y, field);
    let unit = SparseVec::collect(d, vec![(e, field.one()), (f, field.one())]);
    Algebra::new(
        field,
        vec!["e".into(), "f".into(), "x".into(), "y".into()],
        table,
        unit,
    )
}

/// Full 2x2 matrix algebra on the matrix units.
pub fn matrix_algebra_2(field: Field) -> Result<Algebra> {
    let d = 4;
    let idx = |i: usize, j: usize| i * 2 + j;
    let mut table = vec![SparseVec::zero(d); d * d];
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                table[idx(i, j) * d + idx(j, l)] = SparseVec::unit(d, idx(i, l), field);
            }
        }
    }
    let unit = SparseVec::collect(d, vec![(idx(0, 0), field.one()), (idx(1, 1), field.one())]);
    Algebra::new(
        field,
        vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()],
        table,
        unit,
    )
}

fn shift(v: &SparseVec, dim: usize, off: usize) -> SparseVec {
    SparseVec {
        dim,
        entries: v.entries.iter().map(|(i, c)| (i + off, c.clone())).collect(),
    }
}

pub struct CatalogInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub params: &'static str,
}

pub fn catalog_entries() -> Vec<CatalogInfo> {
    vec![
        CatalogInfo { id: "field", summary: "the base field K as an algebra", params: "field=Q|F<p>" },
        CatalogInfo { id: "dual_numbers", summary: "K[eps]/(eps^2)", params: "field" },
        CatalogInfo {
            id: "quantum_plane",
            summary: "K_q[X,Y]/(X^2,Y^2), basis {1,x,y,xy}, yx = q xy",
            params: "q (default 2), field",
        },
        CatalogInfo {
            id: "nakayama",
            summary: "two-block quasi-Frobenius algebra of dimension (p+q)^2",
            params: "p (default 2), q (default 1), field",
        },
        CatalogInfo { id: "upper_triangular", summary: "upper triangular 2x2 matrices", params: "field" },
        CatalogInfo {
            id: "generalized_matrix",
            summary: "generalized matrix algebra on the bimodule K^2",
            params: "field",
        },
        CatalogInfo { id: "matrix2", summary: "full 2x2 matrix algebra", params: "field" },
        CatalogInfo {
            id: "genmat_x_field",
            summary: "generalized_matrix x K (5-dimensional, not quasi-Frobenius)",
            params: "field",
        },
        CatalogInfo {
            id: "quantum_x_quantum",
            summary: "quantum_plane x quantum_plane (8-dimensional Frobenius)",
            params: "q, field",
        },
        CatalogInfo {
            id: "quantum_x_nakayama_f5",
            summary: "quantum_plane(q=2) x nakayama(2,1) over F5 (dual orders 4 and 2)",
            params: "(fixed field F5)",
        },
    ]
}

pub fn make_example(id: &str, params: &Params) -> Result<BuiltExample> {
    let field = params.field()?;
    let built = |algebra: Algebra, hints: Option<Vec<SparseVec>>, descr: String| BuiltExample {
        id: id.to_string(),
        algebra: arc(algebra),
        idempotent_hints: hints,
        description: descr,
    };
    match id {
        "field" => Ok(built(field_algebra(field)?, None, format!("{field} as an algebra"))),
        "dual_numbers" => Ok(built(dual_numbers(field)?, None, format!("{field}[eps]/(eps^2)"))),
        "quantum_plane" => {
            let q = params.scalar_or("q", field, 2)?;
            Ok(built(
                quantum_plane_quotient(field, &q)?,
                None,
                format!("quantum plane quotient over {field} with q = {q}"),
            ))
        }
        "nakayama" => {
            let p = params.usize_or("p", 2)?;
            let q = params.usize_or("q", 1)?;
            let nk = nakayama_pq(field, p, q)?;
            Ok(BuiltExample {
                id: id.to_string(),
                algebra: nk.algebra.clone(),
                idempotent_hints: Some(vec![nk.e11.clone(), nk.f11.clone()]),
                description: format!("Nakayama-type algebra, p = {p}, q = {q}, over {field}"),
            })
        }
        "upper_triangular" => Ok(built(
            upper_triangular_2(field)?,
            None,
            format!("upper triangular 2x2 matrices over {field}"),
        )),
        "generalized_matrix" => Ok(built(
            generalized_matrix(field)?,
            None,
            format!("generalized matrix algebra over {field}"),
        )),
        "matrix2" => {
            let m = matrix_algebra_2(field)?;
            let e11 = SparseVec::unit(4, 0, field);
            Ok(built(m, Some(vec![e11]), format!("full 2x2 matrix algebra over {field}")))
        }
        "genmat_x_field" => {
            let a = generalized_matrix(field)?;
            let b = field_algebra(field)?;
            let p = product_algebra(&a, &b)?;
            Ok(built(p, None, format!("generalized_matrix x field over {field}")))
        }
        "quantum_x_quantum" => {
            let q = params.scalar_or("q", field, 2)?;
            let a = quantum_plane_quotient(field, &q)?;
            let b = quantum_plane_quotient(field, &q)?;
            let p = product_algebra(&a, &b)?;
            Ok(built(p, None, format!("two quantum plane quotients, q = {q}, over {field}")))
        }
        "quantum_x_nakayama_f5" => {
            let f5 = Field::Fp(5);
            let a = quantum_plane_quotient(f5, &f5.from_i64(2))?;
            let nk = nakayama_pq(f5, 2, 1)?;
            let p = product_algebra(&a, &nk.algebra)?;
            let dim = p.dim;
            let hints = vec![
                shift(&SparseVec::unit(4, 0, f5), dim, 0),
                shift(&nk.e11, dim, 4),
                shift(&nk.f11, dim, 4),
            ];
            Ok(built(
                p,
                Some(hints),
                "quantum plane (q = 2) x Nakayama(2,1) over F5".to_string(),
            ))
        }
        other => Err(Error::BadParams(format!("unknown example '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radical::jacobson_radical;

    #[test]
    fn quantum_plane_validates_and_radical() {
        let a = quantum_plane_quotient(Field::Q, &Field::Q.from_i64(2)).unwrap();
        assert_eq!(a.dim, 4);
        let a = arc(a);
        let j = jacobson_radical(&a).unwrap();
        assert_eq!(j.dim(), 3);
        for i in 1..4 {
            assert!(j.contains(&a.basis_vec(i)));
        }
    }

    #[test]
    fn quantum_plane_rejects_q_zero() {
        assert!(matches!(
            quantum_plane_quotient(Field::Q, &Field::Q.zero()),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn nakayama_dimensions_and_multiplicities() {
        let nk = nakayama_pq(Field::Q, 2, 1).unwrap();
        assert_eq!(nk.algebra.dim, 9);
        let ss = crate::semisimple::semisimple_data(
            &nk.algebra,
            Some(&[nk.e11.clone(), nk.f11.clone()]),
            0,
        )
        .unwrap();
        assert_eq!(ss.block_count(), 2);
        assert_eq!(ss.multiplicities, vec![2, 1]);
        assert_eq!(ss.radical.dim(), 4);
        assert!(nakayama_pq(Field::Q, 2, 2).is_err());
    }

    #[test]
    fn corner_of_nakayama_is_4_dimensional() {
        let nk = nakayama_pq(Field::Q, 2, 1).unwrap();
        let (corner, _) = crate::algebra::corner_algebra(&nk.algebra, &nk.basic_idempotent).unwrap();
        assert_eq!(corner.dim, 4);
    }

    #[test]
    fn upper_triangular_corner_at_e() {
        let a = upper_triangular_2(Field::Q).unwrap();
        let e = SparseVec::unit(3, 0, Field::Q);
        let (corner, _) = crate::algebra::corner_algebra(&a, &e).unwrap();
        assert_eq!(corner.dim, 1);
    }

    #[test]
    fn examples_registry_builds() {
        for info in catalog_entries() {
            let b = make_example(info.id, &Params::default()).unwrap();
            assert!(b.algebra.dim >= 1, "{} built", info.id);
        }
    }

    #[test]
    fn param_parsing() {
        let p = Params::parse("p=2, q=1, field=F5").unwrap();
        assert_eq!(p.usize_or("p", 0).unwrap(), 2);
        assert_eq!(p.field().unwrap(), Field::Fp(5));
        assert!(Params::parse("oops").is_err());
    }
}
