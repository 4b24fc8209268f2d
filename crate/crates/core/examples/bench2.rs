use finalg::*;
use finalg::catalog;
use finalg::frobenius::{FrobeniusData, associative_c_space, phi_from_c, twisted_presentations};
use finalg::graded::{build_a_of_dual, build_a, graded_diagnostics, theorem_d_data, ore_crosscheck, symmetric_criterion, GradedFrobenius, OreOutcome, SymmetricCriterion};
use finalg::module::Bimodule;
use finalg::tensor::TensorTower;
use std::sync::Arc;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let params = SearchParams::default();
    let q = Field::Q;

    // --- Criterion 4: R_2, n = 3, phi = 0 ---
    let r2 = Arc::new(catalog::quantum_plane_quotient(q, &q.from_i64(2)).unwrap());
    let mut form = vec![q.zero(); 4]; form[3] = q.one();
    let frob = FrobeniusData::from_form(&r2, form).unwrap();
    let g3 = build_a_of_dual(&r2, 3, None).unwrap();
    println!("[{:?}] A(R2,3) dim {}", t0.elapsed(), g3.algebra.dim);
    let induced = theorem_d_data(&g3, &frob).unwrap();
    println!("[{:?}] Theorem D data ok; N matches independent Nakayama", t0.elapsed());
    // N(x) on degree-0: nu^{-1}(x) = 2x
    let x = r2.basis_vec(1);
    let emb = g3.construction.as_ref().unwrap().embed(&x, 0, 12);
    let nx = induced.nakayama.apply_sparse(&emb);
    println!("  N(x) = {:?} (expect 2x at index 1)", nx.entries);
    let diag = graded_diagnostics(&g3, &params).unwrap();
    println!("[{:?}] diag: faithful={:?} strongly={} gf2={:?}", t0.elapsed(), diag.faithful, diag.strongly_graded, matches!(diag.graded_frobenius[2], GradedFrobenius::Yes(_)));
    let sym = is_symmetric(&g3.algebra, None, &params).unwrap();
    println!("[{:?}] Sym(A(R2,3)) = {:?} (expect No)", t0.elapsed(), sym);

    // --- Criterion 5: R_{-1}, n = 2, c = 1 ---
    let rm1 = Arc::new(catalog::quantum_plane_quotient(q, &q.from_i64(-1)).unwrap());
    let mut form = vec![q.zero(); 4]; form[3] = q.one();
    let frobm = FrobeniusData::from_form(&rm1, form).unwrap();
    let cspace = associative_c_space(&frobm, 2);
    println!("[{:?}] c-space dim {} (expect 2)", t0.elapsed(), cspace.dim());
    let tower = TensorTower::new(Bimodule::dual(&rm1), 2).unwrap();
    let phi = phi_from_c(&frobm, &tower, 2, &rm1.one()).unwrap();
    let g = build_a(tower, 2, phi, true).unwrap();
    println!("[{:?}] A(R-1, phi_1) dim {}", t0.elapsed(), g.algebra.dim);
    let diag = graded_diagnostics(&g, &params).unwrap();
    println!("  strongly graded = {} (expect true), gf = {:?}", diag.strongly_graded,
        diag.graded_frobenius.iter().map(|x| matches!(x, GradedFrobenius::Yes(_))).collect::<Vec<_>>());
    let sym = is_symmetric(&g.algebra, None, &params).unwrap();
    println!("  symmetric = {} (expect true)", sym.is_yes());
    match ore_crosscheck(&g, &frobm, &rm1.one()).unwrap() {
        OreOutcome::Yes(_) => println!("  ore crosscheck: YES"),
        OreOutcome::No(r) => println!("  ore crosscheck FAILED: {r}"),
    }
    match symmetric_criterion(&g, &frobm, &rm1.one(), &params).unwrap() {
        SymmetricCriterion::Yes{..} => println!("  symmetric criterion: YES with verified (I)(II)(III)"),
        other => println!("  symmetric criterion: {other:?}"),
    }

    // R2 n=3 c=0 symmetric criterion -> No
    let c0 = SparseVec::zero(4);
    match symmetric_criterion(&g3, &frob, &c0, &params).unwrap() {
        SymmetricCriterion::No => println!("[{:?}] symcrit(A(R2,3),0) = No (expected)", t0.elapsed()),
        other => println!("  UNEXPECTED: {other:?}"),
    }

    // Ore for R2 n=3 c=0
    let gg = build_a_of_dual(&r2, 3, None).unwrap();
    match ore_crosscheck(&gg, &frob, &c0).unwrap() {
        OreOutcome::Yes(_) => println!("[{:?}] ore(R2,3,0): YES", t0.elapsed()),
        OreOutcome::No(r) => println!("  ore FAILED: {r}"),
    }

    // --- F5 scenario pieces ---
    let f5 = Field::Fp(5);
    let s = Arc::new(catalog::quantum_plane_quotient(f5, &f5.from_i64(2)).unwrap());
    let pic_s = pic_order_of_dual(&s, 6, &params).unwrap();
    println!("[{:?}] pic(S*) over F5 = {:?} (expect Order(4))", t0.elapsed(), pic_s);
    let nk5 = catalog::nakayama_pq(f5, 2, 1).unwrap();
    let pic_t = pic_order_of_dual(&nk5.algebra, 6, &params).unwrap();
    println!("[{:?}] pic(T*) over F5 = {:?} (expect Order(2))", t0.elapsed(), pic_t);

    // R2 pic order: NoneUpTo(6) proven
    let pic_r2 = pic_order_of_dual(&r2, 6, &params).unwrap();
    println!("[{:?}] pic(R2*) = {:?} (expect NoneUpTo(6))", t0.elapsed(), pic_r2);

    println!("[{:?}] total", t0.elapsed());
}
