use finalg::*;
use finalg::catalog::{self, Params};
use finalg::semisimple::{semisimple_data, central_idempotents, quotient_algebra, min_poly};
use finalg::graded::build_a_of_dual;

fn main() {
    let params = SearchParams::default();
    let built = catalog::make_example("quantum_x_nakayama_f5", &Params::default()).unwrap();
    let a = built.algebra.clone();
    println!("dim {}", a.dim);
    let j = jacobson_radical(&a).unwrap();
    println!("radical dim {}", j.dim());
    let (q, _) = quotient_algebra(&a, &j).unwrap();
    println!("quotient dim {}, center dim {}", q.dim, q.center().dim());
    // probe min polys of random central elements
    match central_idempotents(&q, 0) {
        Ok(es) => println!("centrals: {}", es.len()),
        Err(e) => {
            println!("central idempotents failed: {e}");
            // inspect: compute min poly of each center basis vector
            let c = q.center();
            for (i, z) in c.basis().iter().enumerate() {
                let f = min_poly(&q, z);
                println!("  min poly of center basis {i}: deg {:?}", f.degree());
            }
        }
    }
    match semisimple_data(&a, built.idempotent_hints.as_deref(), 0) {
        Ok(ss) => println!("ss ok: blocks {:?} mult {:?}", ss.block_dims, ss.multiplicities),
        Err(e) => println!("ss failed: {e}"),
    }
    for n in 2..=4 {
        let g = build_a_of_dual(&a, n, None).unwrap();
        match jacobson_radical(&g.algebra) {
            Ok(j) => println!("A(R,{n}) dim {} radical {}", g.algebra.dim, j.dim()),
            Err(e) => println!("A(R,{n}) radical failed: {e}"),
        }
    }
}
