//! Per-class combinatorial data and CSV export.

use std::fmt::Write;

use serde::Serialize;

use super::CensusRecord;
use crate::codes;
use crate::pg;

/// Invariants of one equivalence class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StatsRow {
    pub n: u32,
    pub k: u32,
    pub delta: u64,
    pub gamma1: u32,
    /// `lambda[i]` is the number of points of multiplicity `i + 1`.
    pub lambda: Vec<u64>,
    /// `(hyperplane multiplicity, number of hyperplanes)`, ascending.
    pub spectrum: Vec<(u64, u64)>,
}

impl StatsRow {
    /// `n,k,delta,gamma1,lambda_1;..;lambda_g,m:a_m;..`
    pub fn to_csv(&self) -> String {
        let join = |it: Vec<String>| it.join(";");
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.k,
            self.delta,
            self.gamma1,
            join(self.lambda.iter().map(u64::to_string).collect()),
            join(self.spectrum.iter().map(|(m, a)| format!("{m}:{a}")).collect())
        )
    }
}

/// One row per representative of every record, sorted.
pub fn stats_table(records: &[CensusRecord]) -> Vec<StatsRow> {
    let mut rows: Vec<StatsRow> = records
        .iter()
        .flat_map(|rec| {
            rec.reps.iter().map(move |g| {
                let m = codes::to_multiset(g);
                let gamma1 = m.gamma1();
                let dist = pg::point_distribution(&m);
                let lambda = (1..=gamma1).map(|i| dist.get(&i).copied().unwrap_or(0)).collect();
                let spectrum = pg::spectrum(&m).into_iter().collect();
                StatsRow { n: rec.key.n, k: rec.key.k, delta: rec.key.delta, gamma1, lambda, spectrum }
            })
        })
        .collect();
    rows.sort();
    rows
}

pub fn stats_csv(rows: &[StatsRow]) -> String {
    let mut out = String::from("n,k,delta,gamma1,lambda,spectrum\n");
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// `n,k,count` rows.
pub fn counts_csv(counts: &[(u32, u32, usize)]) -> String {
    let mut out = String::from("n,k,count\n");
    for (n, k, c) in counts {
        writeln!(out, "{n},{k},{c}").unwrap();
    }
    out
}
