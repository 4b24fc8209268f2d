use finalg::claims::{verify_all, ClaimVerdict};
use finalg::SearchParams;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let reports = verify_all(&SearchParams::default()).unwrap();
    let mut bad = 0;
    for r in &reports {
        let mark = match r.verdict {
            ClaimVerdict::Verified => "PASS",
            ClaimVerdict::Violated => { bad += 1; "FAIL" }
            ClaimVerdict::Undecided => { bad += 1; "UNDECIDED" }
        };
        println!("[{mark}] {} :: {} ({} ms)", r.claim, r.inputs, r.elapsed_ms);
        if r.verdict != ClaimVerdict::Verified {
            for d in &r.details { println!("    {d}"); }
            if let Some(c) = &r.counterexample { println!("    counterexample: {c}"); }
        }
    }
    println!("total {} claims, {} problems, {:?}", reports.len(), bad, t0.elapsed());
}
