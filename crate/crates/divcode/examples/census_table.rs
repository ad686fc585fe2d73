//! Prints census counts per dimension: `census_table <q> <delta> <n_max>`.

use std::time::Instant;

use divcode::census::Census;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let [q, delta, n_max] = args[..] else {
        eprintln!("usage: census_table <q> <delta> <n_max>");
        std::process::exit(2);
    };
    let mut census = Census::new(q as usize, delta).expect("valid parameters");
    for n in 1..=n_max as u32 {
        let t = Instant::now();
        if std::env::var_os("CENSUS_VERBOSE").is_some() {
            for k in 1..=n {
                let t = Instant::now();
                let nodes = census.nodes();
                let (ms, _) = census.multisets(n, k, None).expect("census");
                eprintln!("  n={n} k={k}: {} classes, {} lifts, {:.2?}", ms.len(), census.nodes() - nodes, t.elapsed());
            }
        }
        let (counts, partial) = census.counts(n, n).expect("census");
        if counts.iter().any(|&c| c > 0) {
            let cells: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            println!("{n:>3}: {}{}  ({:.2?})", cells.join(" "), if partial { " (partial)" } else { "" }, t.elapsed());
        }
    }
}
