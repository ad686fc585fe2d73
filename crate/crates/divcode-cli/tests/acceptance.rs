//! Acceptance report: one PASS/FAIL line per criterion, with tolerances and
//! budgets pinned below. Exits nonzero only when an outcome differs from the
//! recorded expectation (see `EXPECTED_FAIL`).

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use divcode::census::{self, Budget, Census, CensusKey, Verdict};
use divcode::codes::{self, canonical_multiset, GeneratorMatrix, SemilinearMap};
use divcode::gf::Field;
use divcode::lengths::{self, Gamma};
use divcode::linalg;
use divcode::pg::{self, PointMultiset, ProjPoint, Subspace};

/// Criteria known not to hold, with the reason printed alongside.
/// 6: three cardinality-15 statements have explicit counterexamples.
/// 8: no projective 8-divisible set of cardinality 50 is known to this crate.
const EXPECTED_FAIL: &[u32] = &[6, 8];

/// Claims refuted by an explicit counterexample found by the census.
const REFUTED_CLAIMS: &[&str] = &["4div-n15", "4div-n15-structure", "4div-n15-aux2"];

const LIMIT_EXPANSION: Duration = Duration::from_secs(1);
const LIMIT_A8: Duration = Duration::from_secs(1);
/// Declared budget per hard Gamma instance (Delta = 8, n in {35, 37, 39, 41}).
const BUDGET_HARD_GAMMA_SECONDS: f64 = 3600.0;
/// Budget per claim.
const BUDGET_CLAIM_SECONDS: f64 = 600.0;

const PROP_STANDARD_EQUATIONS: usize = 1000;
const PROP_RESTRICTION: usize = 500;
const PROP_PROJECTION: usize = 500;
const PROP_CANONICAL: usize = 500;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "expansion and feasibility", expansion),
        (2, "Gamma values by exhaustive search", gamma_values),
        (3, "census tables", census_tables),
        (4, "cardinality-17 combinatorial data", appendix_rows),
        (5, "A_8 set", a8),
        (6, "claim suite", claim_suite),
        (7, "property suites", properties),
        (8, "witness round-trip", witnesses),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let expected = !EXPECTED_FAIL.contains(&id);
        println!(
            "criterion {id} [{}] {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
        if o.pass != expected {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}; update EXPECTED_FAIL only with an analysis");
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------- 1

fn expansion() -> Outcome {
    let t = Instant::now();
    let e = lengths::sqr_adic_expansion(9, 2, 2).coefficients();
    let expected: [(u32, Vec<i64>); 3] = [
        (1, vec![1]),
        (2, vec![1, 2, 3, 5, 9]),
        (3, vec![1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 17, 18, 19, 21, 25, 33]),
    ];
    let mut bad = Vec::new();
    for (r, want) in &expected {
        let got: Vec<i64> = (1..=60).filter(|&n| !lengths::is_length_feasible(n, 2, *r)).collect();
        if &got != want {
            bad.push(format!("Delta={}: {got:?}", 1 << r));
        }
    }
    let fast = t.elapsed() < LIMIT_EXPANSION;
    let pass = e == [1, 1, -1] && bad.is_empty() && fast;
    outcome(pass, format!("expansion(9,2,2)={e:?}, infeasible sets {}", if bad.is_empty() { "exact".into() } else { bad.join("; ") }))
}

// ---------------------------------------------------------------- 2

/// `Gamma_2(2^r, n)` as stated by the main theorem.
fn theorem_gamma(r: u32, n: u32) -> Gamma {
    let infinite: &[u32] = match r {
        1 => &[1],
        2 => &[1, 2, 3, 5, 9],
        _ => &[1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 17, 18, 19, 21, 25, 33],
    };
    if infinite.contains(&n) {
        return Gamma::Infinite;
    }
    let v = match r {
        1 => {
            if n == 2 {
                2
            } else {
                1
            }
        }
        2 => match n {
            6 | 10 | 12 | 13 => 2,
            4 | 11 => 4,
            _ => 1,
        },
        _ => match n {
            14 | 28 | 29 | 34 | 36 | 38 | 40 | 42 | 43 | 44 | 52..=59 => 2,
            12 | 20 | 24 | 26 | 27 | 35 | 39 | 41 => 4,
            8 | 22 | 23 | 37 => 8,
            _ => 1,
        },
    };
    Gamma::Finite(v)
}

fn witness_ok(w: &GeneratorMatrix, delta: u64, n: u32, gamma: u32) -> bool {
    codes::is_divisible_code(w, delta) && w.effective_length() == n as usize && w.max_column_multiplicity() == gamma
}

fn gamma_values() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut partial = Vec::new();
    let groups: [(u32, Vec<u32>, Budget); 4] = [
        (1, (1..=10).collect(), Budget::unlimited()),
        (2, (1..=20).collect(), Budget::unlimited()),
        (3, vec![8, 12, 14, 15, 16, 20, 22, 23, 24, 26, 27], Budget::unlimited()),
        (3, vec![35, 37, 39, 41], Budget::seconds(BUDGET_HARD_GAMMA_SECONDS)),
    ];
    for (r, ns, budget) in groups {
        let delta = 1u64 << r;
        let mut c = Census::new(2, delta).expect("binary census");
        for n in ns {
            c.reset_budget(budget);
            let g = census::compute_gamma(&mut c, n).expect("search");
            checked += 1;
            let want = theorem_gamma(r, n);
            if g.partial {
                // only the lower bound verified so far is claimed
                partial.push(format!("Delta={delta} n={n}: gamma >= {}", g.verified_below));
                if let Gamma::Finite(v) = want {
                    if g.verified_below > v {
                        bad.push(format!("Delta={delta} n={n}: excluded {v}"));
                    }
                }
                continue;
            }
            let ok = g.value == want
                && match (g.value, &g.witness) {
                    (Gamma::Finite(v), Some(w)) => witness_ok(w, delta, n, v),
                    (Gamma::Infinite, None) => g.certificate.as_ref().is_some_and(|e| e.leading < 0),
                    _ => false,
                };
            if !ok {
                bad.push(format!("Delta={delta} n={n}: got {} want {want}", g.value));
            }
        }
    }
    let mut detail = format!("{checked} values, {} mismatches", bad.len());
    if !bad.is_empty() {
        detail.push_str(&format!(" {bad:?}"));
    }
    if !partial.is_empty() {
        detail.push_str(&format!("; partial within budget: {partial:?}"));
    }
    outcome(bad.is_empty(), detail)
}

// ---------------------------------------------------------------- 3

type Table = &'static [(u32, &'static [usize])];

const EVEN: Table = &[
    (2, &[1]),
    (3, &[0, 1]),
    (4, &[1, 1, 1]),
    (5, &[0, 1, 1, 1]),
    (6, &[1, 2, 3, 2, 1]),
    (7, &[0, 2, 4, 4, 2, 1]),
    (8, &[1, 3, 8, 10, 7, 3, 1]),
    (9, &[0, 3, 9, 18, 16, 9, 3, 1]),
    (10, &[1, 4, 17, 37, 46, 30, 13, 4, 1]),
];

const DOUBLY_EVEN: Table = &[
    (4, &[1]),
    (6, &[0, 1]),
    (7, &[0, 0, 1]),
    (8, &[1, 1, 1, 1]),
    (10, &[0, 1, 1, 1]),
    (11, &[0, 0, 1, 1]),
    (12, &[1, 2, 3, 4, 2]),
    (13, &[0, 0, 1, 1, 2]),
    (14, &[0, 2, 4, 6, 5, 4]),
    (15, &[0, 0, 3, 6, 6, 4, 2]),
    (16, &[1, 3, 8, 18, 21, 15, 7, 2]),
    (17, &[0, 0, 2, 7, 14, 11, 5, 1]),
    (18, &[0, 3, 9, 27, 44, 45, 21, 6]),
    (19, &[0, 0, 6, 22, 52, 62, 40, 10]),
    (20, &[1, 4, 17, 64, 149, 212, 156, 65, 10]),
];

const TRIPLY_EVEN: Table = &[
    (8, &[1]),
    (12, &[0, 1]),
    (14, &[0, 0, 1]),
    (15, &[0, 0, 0, 1]),
    (16, &[1, 1, 1, 1, 1]),
    (20, &[0, 1, 1, 1]),
    (22, &[0, 0, 1, 1]),
    (23, &[0, 0, 0, 1, 1]),
    (24, &[1, 2, 3, 4, 4, 1]),
    (26, &[0, 0, 1, 1, 2]),
    (27, &[0, 0, 0, 1, 1, 1]),
    (28, &[0, 2, 4, 6, 7, 6, 1]),
    (29, &[0, 0, 0, 1, 1, 2, 1]),
    (30, &[0, 0, 3, 6, 8, 7, 6, 2]),
    (31, &[0, 0, 0, 4, 8, 8, 6, 4, 1]),
    (32, &[1, 3, 8, 18, 32, 34, 24, 13, 5, 1]),
];

const TERNARY: Table = &[(3, &[1]), (4, &[0, 1]), (6, &[1, 1]), (7, &[0, 1, 1])];

const QUATERNARY: Table = &[
    (4, &[1]),
    (5, &[0, 1]),
    (8, &[1, 1]),
    (9, &[0, 1, 1]),
    (10, &[0, 1, 1, 1]),
    (12, &[1, 2, 2]),
    (13, &[0, 2, 3, 1]),
    (14, &[0, 1, 5, 3, 1]),
    (15, &[0, 1, 3, 6, 2, 1]),
    (16, &[1, 4, 9, 7, 2]),
    (17, &[0, 3, 12, 9, 2]),
    (18, &[0, 2, 18, 25, 8, 1]),
    (19, &[0, 1, 14, 42, 25, 6, 1]),
];

/// Compares census counts for every `n <= n_max` against a table whose
/// missing rows and trailing cells are zero.
fn compare_table(q: usize, delta: u64, table: Table, n_max: u32) -> Vec<String> {
    let mut c = Census::new(q, delta).expect("census");
    let mut bad = Vec::new();
    for n in 1..=n_max {
        let (got, partial) = c.counts(n, n).expect("counts");
        let mut want = vec![0usize; n as usize];
        if let Some((_, row)) = table.iter().find(|(m, _)| *m == n) {
            want[..row.len()].copy_from_slice(row);
        }
        if got != want || partial {
            bad.push(format!("q={q} Delta={delta} n={n}: got {got:?}"));
        }
    }
    bad
}

fn census_tables() -> Outcome {
    let required = [
        ("even", 2, 2, EVEN, 10),
        ("doubly-even", 2, 4, DOUBLY_EVEN, 20),
        ("triply-even", 2, 8, TRIPLY_EVEN, 32),
        ("ternary", 3, 3, TERNARY, 7),
        ("quaternary", 4, 4, QUATERNARY, 17),
    ];
    let mut bad = Vec::new();
    let mut names = Vec::new();
    for (name, q, delta, table, n_max) in required {
        bad.extend(compare_table(q, delta, table, n_max));
        names.push(format!("{name}<={n_max}"));
    }
    let stretch = compare_table(4, 4, QUATERNARY, 19);
    let mut detail = format!("{} exact", names.join(", "));
    if !bad.is_empty() {
        detail = format!("mismatches {bad:?}");
    }
    detail.push_str(if stretch.is_empty() { "; stretch quaternary<=19 exact" } else { "; stretch quaternary<=19 differs" });
    outcome(bad.is_empty(), detail)
}

// ---------------------------------------------------------------- 4

/// `(k, gamma_1, lambda_1, lambda_2, lambda_3, a_5, a_9, a_13)`
const CARD17: [[u64; 8]; 40] = [
    [3, 7, 4, 0, 2, 4, 2, 1],
    [3, 5, 3, 0, 3, 3, 4, 0],
    [4, 7, 6, 2, 0, 8, 3, 4],
    [4, 6, 6, 1, 1, 7, 5, 3],
    [4, 5, 5, 2, 1, 6, 7, 2],
    [4, 4, 6, 2, 1, 5, 9, 1],
    [4, 4, 4, 0, 3, 6, 7, 2],
    [4, 3, 4, 2, 3, 5, 9, 1],
    [4, 3, 6, 4, 1, 4, 11, 0],
    [5, 7, 10, 0, 0, 16, 5, 10],
    [5, 6, 7, 2, 0, 14, 9, 8],
    [5, 5, 9, 0, 1, 12, 13, 6],
    [5, 5, 6, 3, 0, 12, 13, 6],
    [5, 4, 7, 3, 0, 10, 17, 4],
    [5, 4, 10, 0, 1, 10, 17, 4],
    [5, 4, 6, 2, 1, 11, 15, 5],
    [5, 3, 5, 3, 2, 10, 17, 4],
    [5, 3, 9, 1, 2, 9, 19, 3],
    [5, 3, 10, 2, 1, 8, 21, 2],
    [5, 3, 6, 4, 1, 9, 19, 3],
    [5, 2, 7, 5, 0, 8, 21, 2],
    [5, 2, 11, 3, 0, 7, 23, 1],
    [5, 2, 15, 1, 0, 6, 25, 0],
    [6, 4, 10, 0, 1, 21, 31, 11],
    [6, 4, 7, 3, 0, 21, 31, 11],
    [6, 3, 11, 0, 2, 18, 37, 8],
    [6, 3, 10, 2, 1, 17, 39, 7],
    [6, 3, 6, 4, 1, 19, 35, 9],
    [6, 3, 12, 1, 1, 16, 41, 6],
    [6, 2, 7, 5, 0, 17, 39, 7],
    [6, 2, 11, 3, 0, 15, 43, 5],
    [6, 2, 13, 2, 0, 14, 45, 4],
    [6, 2, 15, 1, 0, 13, 47, 3],
    [6, 1, 17, 0, 0, 12, 49, 2],
    [7, 2, 11, 3, 0, 31, 83, 13],
    [7, 2, 7, 5, 0, 35, 75, 17],
    [7, 2, 13, 2, 0, 29, 87, 11],
    [7, 2, 15, 1, 0, 27, 91, 9],
    [7, 1, 17, 0, 0, 25, 95, 7],
    [8, 1, 17, 0, 0, 51, 187, 17],
];

fn appendix_rows() -> Outcome {
    let mut c = Census::new(2, 4).expect("census");
    let records: Vec<_> = (1..=17).map(|k| c.record(CensusKey::new(2, 4, 17, k)).expect("record")).collect();
    let rows = census::stats_table(&records);
    let mut got: Vec<[u64; 8]> = Vec::new();
    let mut stray = 0;
    for r in &rows {
        let spec: BTreeMap<u64, u64> = r.spectrum.iter().copied().collect();
        if spec.keys().any(|h| ![5, 9, 13].contains(h)) {
            stray += 1;
        }
        let lam = |i: usize| r.lambda.get(i).copied().unwrap_or(0);
        let a = |h: u64| spec.get(&h).copied().unwrap_or(0);
        got.push([r.k as u64, r.gamma1 as u64, lam(0), lam(1), lam(2), a(5), a(9), a(13)]);
    }
    let (mut g, mut w) = (got.clone(), CARD17.to_vec());
    g.sort();
    w.sort();
    let partial = records.iter().any(|r| r.partial);
    let pass = g == w && stray == 0 && !partial;
    outcome(pass, format!("{} rows computed, {} expected, multiset equal: {}", got.len(), CARD17.len(), g == w))
}

// ---------------------------------------------------------------- 5

fn a8() -> Outcome {
    let t = Instant::now();
    let want: BTreeSet<u64> =
        [0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 11, 13, 14, 15, 16, 17, 18, 21, 22, 25, 29, 30, 31, 33, 37, 45].into_iter().collect();
    let got = codes::a8_reachable_set();
    let extra: Vec<u64> = codes::a8_closure().difference(&got).copied().collect();
    let pass = got == want && t.elapsed() < LIMIT_A8;
    outcome(pass, format!("{} values, exact: {}; note: triple block sums also reach {extra:?}", got.len(), got == want))
}

// ---------------------------------------------------------------- 6

fn claim_suite() -> Outcome {
    let mut failed = Vec::new();
    let mut budget = Vec::new();
    let ids = census::claim_ids();
    for id in &ids {
        let r = census::verify_claim(id, Budget::seconds(BUDGET_CLAIM_SECONDS)).expect("known claim");
        match r.outcome {
            Verdict::Pass => {}
            Verdict::Fail(_) => failed.push(*id),
            Verdict::BudgetExceeded => budget.push(*id),
        }
    }
    let refuted_as_recorded = failed == REFUTED_CLAIMS;
    let mut detail = format!("{}/{} claims verified exhaustively", ids.len() - failed.len() - budget.len(), ids.len());
    if !failed.is_empty() {
        detail.push_str(&format!("; refuted by counterexample: {failed:?}"));
        if refuted_as_recorded {
            detail.push_str(" (as recorded)");
        }
    }
    if !budget.is_empty() {
        detail.push_str(&format!("; over budget: {budget:?}"));
    }
    outcome(failed.is_empty() && budget.is_empty(), detail)
}

// ---------------------------------------------------------------- 7

fn random_multiset(rng: &mut ChaCha8Rng) -> PointMultiset {
    let q = [2, 3, 4][rng.gen_range(0..3)];
    let k = rng.gen_range(1..=4);
    let pts: Vec<ProjPoint> = pg::all_points(q, k).collect();
    let n = rng.gen_range(1..=20);
    PointMultiset::from_points(q, k, (0..n).map(|_| (pts[rng.gen_range(0..pts.len())], 1))).expect("ambient points")
}

fn random_map(rng: &mut ChaCha8Rng, f: &Field, k: usize) -> SemilinearMap {
    loop {
        let matrix: Vec<Vec<u8>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(0..f.q()) as u8).collect()).collect();
        if linalg::rank(f, &matrix) == k {
            return SemilinearMap { matrix, frobenius: rng.gen_range(0..f.e()) };
        }
    }
}

/// Divisible multisets with their divisibility constant: every census class
/// of a few small tables.
fn divisible_pool() -> Vec<(u64, PointMultiset)> {
    let mut out = Vec::new();
    for (q, delta, n_max) in [(2, 2, 8), (2, 4, 14), (2, 8, 24), (3, 3, 9), (4, 4, 12)] {
        let mut c = Census::new(q, delta).expect("census");
        for n in 1..=n_max {
            let (found, _) = c.all_dimensions(n, None).expect("census");
            out.extend(found.into_iter().map(|(_, m)| (delta, m)));
        }
    }
    out
}

fn hyperplanes(m: &PointMultiset) -> Vec<Subspace> {
    pg::all_points(m.q(), m.k()).map(|h| Subspace::hyperplane(m.q(), m.k(), &h.coords(m.q(), m.k())).expect("normal")).collect()
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut fails: Vec<String> = Vec::new();

    let mut std_eq = 0;
    for _ in 0..PROP_STANDARD_EQUATIONS {
        let m = random_multiset(&mut rng);
        std_eq += 1;
        if !pg::standard_equations_check(&m) {
            fails.push(format!("standard equations: {}", m.to_text()));
        }
    }

    let pool = divisible_pool();
    let mut restriction = 0;
    let mut projection = 0;
    'outer: for round in 0.. {
        for (delta, m) in &pool {
            if restriction >= PROP_RESTRICTION && projection >= PROP_PROJECTION {
                break 'outer;
            }
            let (q, k) = (m.q(), m.k());
            // a fresh random image each round keeps instances distinct
            let m = if round == 0 { m.clone() } else { random_map(&mut rng, m.field(), k).apply_multiset(m) };
            if k >= 2 && delta % q as u64 == 0 {
                let hs = hyperplanes(&m);
                let h = &hs[rng.gen_range(0..hs.len())];
                let r = pg::restrict(&m, h).expect("same ambient");
                restriction += 1;
                if !pg::is_divisible(&r, delta / q as u64) {
                    fails.push(format!("restriction: {}", m.to_text()));
                }
            }
            if k >= 2 {
                let pts: Vec<ProjPoint> = pg::all_points(q, k).collect();
                let qp = pts[rng.gen_range(0..pts.len())];
                let p = pg::project(&m, qp).expect("k >= 2");
                projection += 1;
                let mut ok = p.cardinality() == m.cardinality() - m.mult(qp) as u64 && pg::is_divisible(&p, *delta);
                let qv = qp.coords(q, k);
                let line_max = pts
                    .iter()
                    .filter(|&&x| x != qp)
                    .map(|&x| {
                        let line = Subspace::span(q, k, [qv.clone(), x.coords(q, k)]).expect("two points");
                        pg::multiplicity(&m, &line).expect("same ambient") - m.mult(qp) as u64
                    })
                    .max()
                    .unwrap_or(0);
                ok &= p.gamma1() as u64 == line_max;
                if m.mult(qp) == 0 && m.is_spanning() {
                    ok &= p.is_spanning();
                }
                if !ok {
                    fails.push(format!("projection through {}: {}", qp.to_string(q, k), m.to_text()));
                }
            }
        }
    }

    let mut canonical = 0;
    while canonical < PROP_CANONICAL {
        let m = if canonical % 2 == 0 { random_multiset(&mut rng).to_spanning() } else { pool[rng.gen_range(0..pool.len())].1.clone() };
        let base = canonical_multiset(&m, true).multiset;
        let g = random_map(&mut rng, m.field(), m.k());
        canonical += 1;
        if canonical_multiset(&g.apply_multiset(&m), true).multiset != base {
            fails.push(format!("canonical form: {}", m.to_text()));
        }
    }

    let mut brute_ok = true;
    for n in 1..=7 {
        let brute = census::brute_force_classes(2, 2, n);
        let mut c = Census::new(2, 2).expect("census");
        let mut from_census = BTreeSet::new();
        for (k, m) in c.all_dimensions(n, None).expect("census").0 {
            let canon = canonical_multiset(&m, true).multiset;
            from_census.insert((k, canon.entries().iter().map(|&(p, c)| (p.code(), c)).collect::<Vec<_>>()));
        }
        if brute != from_census {
            brute_ok = false;
            fails.push(format!("brute force vs census at n={n}: {} vs {}", brute.len(), from_census.len()));
        }
    }

    let detail = format!(
        "standard equations {std_eq}, restriction {restriction}, projection {projection}, canonical {canonical}, brute force n<=7 {}; {} failures",
        if brute_ok { "agrees" } else { "differs" },
        fails.len()
    );
    for f in fails.iter().take(5) {
        println!("  {f}");
    }
    outcome(fails.is_empty(), detail)
}

// ---------------------------------------------------------------- 8

fn divcode(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_divcode")).args(args).output().expect("spawn divcode");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn witnesses() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut checked = 0;
    let mut missing = Vec::new();
    let mut rejected = Vec::new();
    for delta in [2u64, 4, 8] {
        for n in 1..=60u32 {
            let r = lengths::gamma_lookup(2, delta, n as i64).expect("tabulated");
            let Gamma::Finite(v) = r.value else { continue };
            let out = dir.path().join(format!("d{delta}-n{n}.json"));
            let (code, _) =
                divcode(&["gamma", "--lookup", "--q", "2", "--delta", &delta.to_string(), "--n", &n.to_string(), "--out", out.to_str().unwrap()]);
            let wpath = format!("{}.witness.txt", out.display());
            if code != 0 || !Path::new(&wpath).exists() {
                missing.push((delta, n));
                continue;
            }
            checked += 1;
            let (code, _) = divcode(&["check", &wpath, "--delta", &delta.to_string(), "--n", &n.to_string(), "--max-gamma", &v.to_string()]);
            if code != 0 {
                rejected.push((delta, n));
            }
        }
    }
    // witnesses of the exhaustive search as well
    for (delta, n) in [(4u64, 11u32), (8, 12), (8, 22)] {
        let mut c = Census::new(2, delta).expect("census");
        let g = census::compute_gamma(&mut c, n).expect("search");
        checked += 1;
        match (g.value, g.witness) {
            (Gamma::Finite(v), Some(w)) if witness_ok(&w, delta, n, v) => {}
            _ => rejected.push((delta, n)),
        }
    }
    let mut detail = format!("{checked} witnesses validated by `divcode check`");
    if !missing.is_empty() {
        detail.push_str(&format!("; no witness for (Delta, n) {missing:?}"));
    }
    if !rejected.is_empty() {
        detail.push_str(&format!("; rejected {rejected:?}"));
    }
    outcome(missing.is_empty() && rejected.is_empty(), detail)
}
