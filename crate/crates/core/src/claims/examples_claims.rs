//! Expected-facts checks for each catalog entry, reported as
//! `Example-<id>` claims.

use super::*;
use crate::hom::{modules_isomorphic_left, pic_order_of_dual, PicOrder};

fn check_pic(r: &mut Runner, a: &ArcAlgebra, limit: usize, expect: PicOrder, params: &SearchParams) {
    match pic_order_of_dual(a, limit, params) {
        Ok(got) => r.check(&format!("Picard order of [R*] = {expect:?}"), got == expect, || {
            format!("got {got:?}")
        }),
        Err(Error::Undecided { .. }) => r.undecided("Picard order"),
        Err(e) => r.check("Picard order computable", false, || e.to_string()),
    }
}

fn check_qf(r: &mut Runner, a: &ArcAlgebra, expect: bool, params: &SearchParams) {
    match is_quasi_frobenius(a, params) {
        Ok(v) => {
            if let Some(b) = verdict_bool(r, "quasi-Frobenius", &v) {
                r.check(&format!("quasi-Frobenius = {expect}"), b == expect, || format!("got {b}"));
            }
        }
        Err(e) => r.check("QF decidable", false, || e.to_string()),
    }
}

fn check_frobenius(
    r: &mut Runner,
    a: &ArcAlgebra,
    hints: Option<&[SparseVec]>,
    expect: bool,
    params: &SearchParams,
) {
    match frobenius_form(a, hints, params) {
        Ok(_) => r.check(&format!("Frobenius = {expect}"), expect, || "got true".into()),
        Err(Error::NotFrobenius(why)) => {
            r.note(format!("not Frobenius: {why}"));
            r.check(&format!("Frobenius = {expect}"), !expect, || "got false".into());
        }
        Err(Error::Undecided { .. }) => r.undecided("Frobenius"),
        Err(e) => r.check("Frobenius decidable", false, || e.to_string()),
    }
}

fn check_symmetric(
    r: &mut Runner,
    a: &ArcAlgebra,
    hints: Option<&[SparseVec]>,
    expect: bool,
    params: &SearchParams,
) {
    match is_symmetric(a, hints, params) {
        Ok(v) => {
            if let Some(b) = sym_bool(r, "symmetric", &v) {
                r.check(&format!("symmetric = {expect}"), b == expect, || format!("got {b}"));
            }
        }
        Err(e) => r.check("symmetric decidable", false, || e.to_string()),
    }
}

pub fn claim_example(id: &str, p: &Params, params: &SearchParams) -> Result<Vec<ClaimReport>> {
    let built = catalog::make_example(id, p)?;
    let a = built.algebra.clone();
    let hints = built.idempotent_hints.clone();
    let mut r = Runner::new(&format!("Example-{id}"), built.description.clone());
    match id {
        "field" => {
            r.check("dim = 1", a.dim == 1, || format!("dim {}", a.dim));
            r.check("radical = 0", jacobson_radical(&a)?.dim() == 0, || "nonzero radical".into());
            check_qf(&mut r, &a, true, params);
            check_frobenius(&mut r, &a, hints.as_deref(), true, params);
            check_symmetric(&mut r, &a, hints.as_deref(), true, params);
            check_pic(&mut r, &a, 4, PicOrder::Order(1), params);
        }
        "dual_numbers" => {
            r.check("dim = 2", a.dim == 2, || format!("dim {}", a.dim));
            r.check("radical dim = 1", jacobson_radical(&a)?.dim() == 1, || "".into());
            check_frobenius(&mut r, &a, hints.as_deref(), true, params);
            check_symmetric(&mut r, &a, hints.as_deref(), true, params);
            // nu = identity for eps*
            let frob = FrobeniusData::from_form(&a, vec![a.field.zero(), a.field.one()])?;
            r.check("nu = id for lambda = eps*", frob.nu.is_identity(), || "nu != id".into());
            check_pic(&mut r, &a, 4, PicOrder::Order(1), params);
        }
        "quantum_plane" => {
            r.check("dim = 4", a.dim == 4, || format!("dim {}", a.dim));
            r.check("radical dim = 3", jacobson_radical(&a)?.dim() == 3, || "".into());
            // (xy)* is a Frobenius form with nu(x) = q^{-1} x, nu(y) = q y.
            let mut form = vec![a.field.zero(); 4];
            form[3] = a.field.one();
            let frob = FrobeniusData::from_form(&a, form)?;
            let qval = p.scalar_or("q", a.field, 2)?;
            let qinv = qval.inv().expect("q nonzero");
            r.check(
                "nu(x) = q^{-1} x",
                frob.nu.col(1) == SparseVec::single(4, 1, qinv),
                || format!("nu(x) = {:?}", frob.nu.col(1).entries),
            );
            r.check(
                "nu(y) = q y",
                frob.nu.col(2) == SparseVec::single(4, 2, qval.clone()),
                || format!("nu(y) = {:?}", frob.nu.col(2).entries),
            );
            check_qf(&mut r, &a, true, params);
            check_frobenius(&mut r, &a, hints.as_deref(), true, params);
            // Symmetric and Picard order depend on the order of q.
            let mut qpow = qval.clone();
            let mut ord = 1usize;
            while !qpow.is_one() && ord <= 8 {
                qpow = qpow.mul(&qval);
                ord += 1;
            }
            let q_has_finite_order = qpow.is_one();
            check_symmetric(&mut r, &a, hints.as_deref(), false, params);
            if q_has_finite_order {
                check_pic(&mut r, &a, 6, PicOrder::Order(ord), params);
            } else {
                check_pic(&mut r, &a, 6, PicOrder::NoneUpTo(6), params);
            }
            // Associative element space: span{xy} when q is not an n-th root
            // of unity; adds the scalars when q^n = 1.
            for n in 2..=3usize {
                let space = associative_c_space(&frob, n);
                let expect_dim = if q_has_finite_order && n % ord == 0 { 2 } else { 1 };
                r.check(
                    &format!("associative element space at n = {n} has dim {expect_dim}"),
                    space.dim() == expect_dim && space.contains(&a.basis_vec(3)),
                    || format!("dim {}", space.dim()),
                );
            }
        }
        "nakayama" => {
            let pp = p.usize_or("p", 2)?;
            let qq = p.usize_or("q", 1)?;
            let d = (pp + qq) * (pp + qq);
            r.check(&format!("dim = {d}"), a.dim == d, || format!("dim {}", a.dim));
            r.check(
                "radical dim = 2pq",
                jacobson_radical(&a)?.dim() == 2 * pp * qq,
                || "".into(),
            );
            let perm = nakayama_permutation(&a, hints.as_deref(), params)?;
            r.check(
                &format!("multiplicities = ({pp}, {qq})"),
                perm.multiplicities == vec![pp, qq],
                || format!("{:?}", perm.multiplicities),
            );
            r.check("Nakayama permutation is the transposition (1 2)", perm.pi == vec![1, 0], || {
                format!("{:?}", perm.pi)
            });
            check_qf(&mut r, &a, true, params);
            check_frobenius(&mut r, &a, hints.as_deref(), false, params);
            check_pic(&mut r, &a, 4, PicOrder::Order(2), params);
            // Basic-algebra corner has dimension (1 + 1)(p q summands...) = 4.
            let nk = catalog::nakayama_pq(a.field, pp, qq)?;
            let (corner, _) = crate::algebra::corner_algebra(&a, &nk.basic_idempotent)?;
            r.check("corner at E11 + F11 has dim 4", corner.dim == 4, || {
                format!("dim {}", corner.dim)
            });
        }
        "upper_triangular" => {
            r.check("dim = 3", a.dim == 3, || format!("dim {}", a.dim));
            let j = jacobson_radical(&a)?;
            r.check("J(R) = <x>", j.dim() == 1 && j.contains(&a.basis_vec(2)), || "".into());
            check_qf(&mut r, &a, false, params);
            r.check("dim Hom(R*, R) = 1", hom_dual_regular_dim(&a)? == 1, || "".into());
            r.check("dim R* ⊗ R* = 1", dual_power_dim(&a, 2)? == 1, || "".into());
            r.check("(R*)^{⊗3} = 0", dual_power_dim(&a, 3)? == 0, || "".into());
            // soc(P) for P = Rf is <x> ≅ S = <e>... the simple top of Re.
            let (soc_carrier, soc_module) = socle_of_left_ideal(&a, &a.basis_vec(1))?;
            r.check(
                "soc(Rf) = <x>",
                soc_carrier.dim() == 1 && soc_carrier.contains(&a.basis_vec(2)),
                || "".into(),
            );
            // and it is isomorphic to the simple S = <e> = Re.
            let reg = Module::regular(&a, Side::Left);
            let span: Vec<SparseVec> = (0..3).map(|k| a.mul(&a.basis_vec(k), &a.basis_vec(0))).collect();
            let s_carrier = Subspace::from_spanning(3, &span);
            let s_mod = crate::module::submodule_on(&reg, s_carrier)?;
            let iso = modules_isomorphic_left(&soc_module, &s_mod.module, params)?;
            r.check("soc(Rf) ≅ S", iso.is_yes(), || format!("{iso:?}"));
            // A(R, 3) is 7-dimensional and not quasi-Frobenius.
            let g = build_a_of_dual(&a, 3, None)?;
            r.check("dim A(R,3) = 7", g.algebra.dim == 7, || format!("{}", g.algebra.dim));
            check_qf(&mut r, &g.algebra, false, params);
        }
        "generalized_matrix" => {
            r.check("dim = 4", a.dim == 4, || format!("dim {}", a.dim));
            r.check("radical dim = 2", jacobson_radical(&a)?.dim() == 2, || "".into());
            check_qf(&mut r, &a, false, params);
            r.check("Hom(R*, R) = 0", hom_dual_regular_dim(&a)? == 0, || "".into());
            r.check("R* ⊗ R* = 0", dual_power_dim(&a, 2)? == 0, || "".into());
            // soc(Rf) = <x, y>, not simple.
            let (soc_carrier, _) = socle_of_left_ideal(&a, &a.basis_vec(1))?;
            r.check(
                "soc(Rf) = <x, y>",
                soc_carrier.dim() == 2
                    && soc_carrier.contains(&a.basis_vec(2))
                    && soc_carrier.contains(&a.basis_vec(3)),
                || format!("dim {}", soc_carrier.dim()),
            );
            // A(R, 3) is the 8-dimensional trivial extension, and symmetric.
            let g = build_a_of_dual(&a, 3, None)?;
            r.check("dim A(R,3) = 8", g.algebra.dim == 8, || format!("{}", g.algebra.dim));
            let ghints = embed_hints(&g, hints.as_ref());
            check_symmetric(&mut r, &g.algebra, ghints.as_deref(), true, params);
        }
        "matrix2" => {
            r.check("dim = 4", a.dim == 4, || format!("dim {}", a.dim));
            r.check("semisimple", jacobson_radical(&a)?.dim() == 0, || "".into());
            let ss = crate::semisimple::semisimple_data(&a, hints.as_deref(), params.subseed("ex"))?;
            r.check("one block of dim 4", ss.block_dims == vec![4], || format!("{:?}", ss.block_dims));
            r.check("one simple of dim 2", ss.simples.len() == 1 && ss.simples[0].dim == 2, || "".into());
            r.check("multiplicity 2", ss.multiplicities == vec![2], || format!("{:?}", ss.multiplicities));
            check_symmetric(&mut r, &a, hints.as_deref(), true, params);
            check_pic(&mut r, &a, 4, PicOrder::Order(1), params);
            let perm = nakayama_permutation(&a, hints.as_deref(), params)?;
            r.check("pi = id", perm.pi == vec![0], || format!("{:?}", perm.pi));
        }
        "genmat_x_field" => {
            r.check("dim = 5", a.dim == 5, || format!("dim {}", a.dim));
            check_qf(&mut r, &a, false, params);
        }
        "quantum_x_quantum" => {
            r.check("dim = 8", a.dim == 8, || format!("dim {}", a.dim));
            check_qf(&mut r, &a, true, params);
            check_frobenius(&mut r, &a, hints.as_deref(), true, params);
            // The product form lambda(s, t) = rho(s) + omega(t) works: both
            // components use the (xy)* form.
            let mut form = vec![a.field.zero(); 8];
            form[3] = a.field.one();
            form[7] = a.field.one();
            let frob = FrobeniusData::from_form(&a, form);
            r.check("lambda(s,t) = rho(s) + omega(t) is a Frobenius form", frob.is_ok(), || {
                format!("{:?}", frob.err())
            });
        }
        "quantum_x_nakayama_f5" => {
            r.check("dim = 13", a.dim == 13, || format!("dim {}", a.dim));
            check_qf(&mut r, &a, true, params);
            check_frobenius(&mut r, &a, hints.as_deref(), false, params);
            let perm = nakayama_permutation(&a, hints.as_deref(), params)?;
            r.check(
                "multiplicities contain the (2,1) mismatch",
                {
                    let mut m = perm.multiplicities.clone();
                    m.sort();
                    m == vec![1, 1, 2]
                },
                || format!("{:?}", perm.multiplicities),
            );
        }
        other => {
            return Err(Error::BadParams(format!("no expected-facts list for '{other}'")));
        }
    }
    Ok(vec![r.finish()])
}
