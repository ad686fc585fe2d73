//! Verifies every claim in the catalog and prints one line per claim.

use std::time::Instant;

use divcode::census::{claim_ids, verify_claim, Budget};

fn main() {
    for id in claim_ids() {
        let t = Instant::now();
        let r = verify_claim(id, Budget::seconds(600.0)).expect("known claim");
        println!("{:<28} {:<15} classes={:<5} {:.2?}", r.id, r.verdict, r.classes, t.elapsed());
        if let Some(c) = r.counterexample {
            println!("{c}");
        }
    }
}
