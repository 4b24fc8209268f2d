use finalg::*;
use finalg::catalog;
use finalg::graded::build_a_of_dual;
use finalg::module::Bimodule;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let nk = catalog::nakayama_pq(Field::Q, 2, 1).unwrap();
    let a = nk.algebra.clone();
    let params = SearchParams::default();
    println!("[{:?}] built nakayama", t0.elapsed());

    let qf = is_quasi_frobenius(&a, &params).unwrap();
    println!("[{:?}] QF(R) = {qf:?}", t0.elapsed());

    let pic = pic_order_of_dual(&a, 4, &params).unwrap();
    println!("[{:?}] pic order = {pic:?}", t0.elapsed());

    let g3 = build_a_of_dual(&a, 3, None).unwrap();
    println!("[{:?}] A(R,3) dim {}", t0.elapsed(), g3.algebra.dim);
    let qf3 = is_quasi_frobenius(&g3.algebra, &params).unwrap();
    println!("[{:?}] QF(A3) = {qf3:?}", t0.elapsed());

    let hints3: Vec<SparseVec> = [&nk.e11, &nk.f11].iter().map(|h| {
        g3.construction.as_ref().unwrap().embed(h, 0, g3.algebra.dim)
    }).collect();
    let ff3 = frobenius_form(&g3.algebra, Some(&hints3), &params);
    println!("[{:?}] Frob(A3) = {}", t0.elapsed(), match &ff3 { Ok(_) => "yes".into(), Err(e) => format!("{e}") });

    let g4 = build_a_of_dual(&a, 4, None).unwrap();
    println!("[{:?}] A(R,4) dim {}", t0.elapsed(), g4.algebra.dim);
    let qf4 = is_quasi_frobenius(&g4.algebra, &params).unwrap();
    println!("[{:?}] QF(A4) = {qf4:?}", t0.elapsed());
    let hints4: Vec<SparseVec> = [&nk.e11, &nk.f11].iter().map(|h| {
        g4.construction.as_ref().unwrap().embed(h, 0, g4.algebra.dim)
    }).collect();
    let ff4 = frobenius_form(&g4.algebra, Some(&hints4), &params);
    println!("[{:?}] Frob(A4) = {}", t0.elapsed(), match &ff4 { Ok(_) => "yes".into(), Err(e) => format!("{e}") });
    let sym4 = is_symmetric(&g4.algebra, Some(&hints4), &params).unwrap();
    println!("[{:?}] Sym(A4) = {}", t0.elapsed(), sym4.is_yes());

    // Theorem B heavy case: associativity of hom basis for (R*)^{⊗6}
    let tower = TensorTower::new(Bimodule::dual(&a), 6).unwrap();
    println!("[{:?}] tower to 6, dims {:?}", t0.elapsed(), (1..=6).map(|j| tower.dim(j)).collect::<Vec<_>>());
    let homs = finalg::hom::hom_space_bi(tower.bimodule(6), &Bimodule::regular(&a)).unwrap();
    println!("[{:?}] hom dim {}", t0.elapsed(), homs.len());
    for (i, h) in homs.iter().enumerate() {
        let res = check_associative(&tower, 6, &h.to_mat(Field::Q)).unwrap();
        println!("[{:?}] assoc[{i}] = {:?}", t0.elapsed(), matches!(res, finalg::graded::AssociativityCheck::Associative));
    }
}
