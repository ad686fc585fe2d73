//! Prints the smallest-dimension projective `Delta`-divisible set of each
//! cardinality found by the census: `projective_atoms <delta> <n_min> <n_max>`.

use divcode::census::{Budget, Census};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let [delta, lo, hi] = args[..] else {
        eprintln!("usage: projective_atoms <delta> <n_min> <n_max> [seconds]");
        std::process::exit(2);
    };
    let mut census = Census::new(2, delta).expect("valid parameters").with_budget(Budget::seconds(3600.0));
    for n in lo as u32..=hi as u32 {
        let (found, partial) = census.all_dimensions(n, Some(1)).expect("census");
        match found.first() {
            Some((k, m)) => {
                let pts: Vec<String> = m.entries().iter().map(|(p, _)| p.code().to_string()).collect();
                println!("{n}: k={k} [{}]", pts.join(", "));
            }
            None => println!("{n}: none{}", if partial { " (partial)" } else { "" }),
        }
    }
}
