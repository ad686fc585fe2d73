//! Exhaustive enumeration of `Delta`-divisible multisets of points up to
//! (semi)linear equivalence, and the searches built on it.
//!
//! Level `(n, k, c)` holds canonical representatives of all spanning
//! `Delta`-divisible multisets of cardinality `n` in `PG(k-1, q)` with
//! `gamma_1 <= c`. It is obtained by lifting level `(n - t, k - 1, q t)` for
//! each `t = gamma_1` (see [`lift`]); a child is kept only if the lifting point
//! has the lexicographically largest line profile among the points of
//! multiplicity `t`, and duplicates are removed by canonical form.

mod claims;
mod lift;
mod stats;
mod store;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use claims::{claim_ids, verify_claim, ClaimReport, Verdict};
pub use stats::{counts_csv, stats_csv, stats_table, StatsRow};
pub use store::{load, store, StoreError};

use crate::codes::{self, canonical_multiset, GeneratorMatrix};
use crate::gf::{Field, GfError};
use crate::lengths::{self, Expansion, Gamma};
use crate::pg::{self, PointMultiset, ProjPoint};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("divisibility constant must be in 1..=127, got {0}")]
    Delta(u64),
    #[error("census needs 1 <= k <= n, got n={n}, k={k}")]
    Shape { n: u32, k: u32 },
    #[error("PG({}, {q}) is too large for the census", k - 1)]
    Ambient { q: usize, k: u32 },
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, CensusError>;

/// Parameters of one census cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CensusKey {
    pub q: usize,
    pub delta: u64,
    pub n: u32,
    pub k: u32,
    /// Largest allowed point multiplicity; `None` for no restriction.
    pub gamma_cap: Option<u32>,
}

impl CensusKey {
    pub fn new(q: usize, delta: u64, n: u32, k: u32) -> Self {
        CensusKey { q, delta, n, k, gamma_cap: None }
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.gamma_cap = Some(cap);
        self
    }

    /// The cap with "no restriction" spelled as `n`.
    fn effective_cap(&self) -> u32 {
        self.gamma_cap.map_or(self.n, |c| c.min(self.n))
    }

    fn normalized(&self) -> Self {
        let c = self.effective_cap();
        CensusKey { gamma_cap: (c < self.n).then_some(c), ..*self }
    }
}

/// Representatives of one census cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub key: CensusKey,
    pub count: usize,
    /// Canonical generator matrices, sorted.
    pub reps: Vec<GeneratorMatrix>,
    /// Set when a budget ran out: `reps` may then be incomplete.
    pub partial: bool,
}

/// Limits on a census run. Exceeding either marks results as partial.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    /// Lifts examined.
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n), max_seconds: None }
    }

    pub fn seconds(s: f64) -> Self {
        Budget { max_nodes: None, max_seconds: Some(s) }
    }
}

/// Canonical point list of a representative.
type Rep = Vec<(u32, u32)>;

#[derive(Debug, Default)]
struct Level {
    reps: Vec<Rep>,
    partial: bool,
}

/// Census engine for a fixed field and divisibility constant; levels are
/// memoized, optionally backed by an on-disk cache.
pub struct Census {
    q: usize,
    delta: u64,
    memo: HashMap<(u32, u32, u32), Arc<Level>>,
    cache_dir: Option<PathBuf>,
    budget: Budget,
    start: Instant,
    nodes: AtomicU64,
    exhausted: AtomicBool,
    pool: Option<rayon::ThreadPool>,
}

impl Census {
    pub fn new(q: usize, delta: u64) -> Result<Self> {
        Field::get(q)?;
        if delta == 0 || delta > 127 {
            return Err(CensusError::Delta(delta));
        }
        Ok(Census {
            q,
            delta,
            memo: HashMap::new(),
            cache_dir: None,
            budget: Budget::unlimited(),
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            pool: None,
        })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    /// Runs the lifting on a dedicated pool of `threads` workers.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().ok();
        self
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// Lifts examined so far.
    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    /// Restarts the wall clock and node count for a fresh budget.
    pub fn reset_budget(&mut self, budget: Budget) {
        self.budget = budget;
        self.start = Instant::now();
        self.nodes.store(0, Ordering::Relaxed);
        self.exhausted.store(false, Ordering::Relaxed);
    }

    fn over_budget(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return true;
        }
        let nodes = self.nodes.load(Ordering::Relaxed);
        let over = self.budget.max_nodes.is_some_and(|m| nodes > m)
            || self.budget.max_seconds.is_some_and(|s| self.start.elapsed() > Duration::from_secs_f64(s));
        if over {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        over
    }

    /// Whether a `Delta`-divisible multiset of cardinality `n` can exist at
    /// all, when `Delta` is a power of `q`.
    fn length_possible(&self, n: u32) -> bool {
        let (q, mut d, mut r) = (self.q as u64, self.delta, 0);
        while d % q == 0 {
            d /= q;
            r += 1;
        }
        d != 1 || lengths::is_length_feasible(n as i64, q, r)
    }

    fn check_ambient(&self, k: u32) -> Result<()> {
        let ok = k as usize <= crate::linalg::MAX_K && (self.q as u64).checked_pow(k).is_some_and(|v| v <= u32::MAX as u64);
        if ok {
            Ok(())
        } else {
            Err(CensusError::Ambient { q: self.q, k })
        }
    }

    /// The census cell for `key` (whose field and `Delta` must match).
    pub fn record(&mut self, key: CensusKey) -> Result<CensusRecord> {
        assert_eq!((key.q, key.delta), (self.q, self.delta), "key for a different census");
        if key.k == 0 || key.k > key.n {
            return Err(CensusError::Shape { n: key.n, k: key.k });
        }
        let level = self.level(key.n, key.k, key.effective_cap())?;
        let reps: Vec<GeneratorMatrix> = level.reps.iter().map(|r| self.matrix(key.k, r)).collect();
        Ok(CensusRecord { key: key.normalized(), count: reps.len(), reps, partial: level.partial })
    }

    fn multiset(&self, k: u32, rep: &Rep) -> PointMultiset {
        PointMultiset::from_points(self.q, k as usize, rep.iter().map(|&(c, m)| (ProjPoint(c), m))).expect("valid rep")
    }

    fn matrix(&self, k: u32, rep: &Rep) -> GeneratorMatrix {
        codes::from_multiset(&self.multiset(k, rep)).expect("reps span")
    }

    /// Representatives as multisets.
    pub fn multisets(&mut self, n: u32, k: u32, cap: Option<u32>) -> Result<(Vec<PointMultiset>, bool)> {
        let level = self.level(n, k, cap.unwrap_or(n).min(n))?;
        Ok((level.reps.iter().map(|r| self.multiset(k, r)).collect(), level.partial))
    }

    fn level(&mut self, n: u32, k: u32, cap: u32) -> Result<Arc<Level>> {
        let cap = cap.min(n);
        if let Some(l) = self.memo.get(&(n, k, cap)) {
            return Ok(l.clone());
        }
        // a complete level with a larger cap contains this one
        if let Some(l) = self.memo.iter().find(|(&(n2, k2, c2), l)| n2 == n && k2 == k && c2 > cap && !l.partial).map(|(_, l)| l.clone()) {
            let reps = l.reps.iter().filter(|r| r.iter().all(|&(_, m)| m <= cap)).cloned().collect();
            let out = Arc::new(Level { reps, partial: false });
            self.memo.insert((n, k, cap), out.clone());
            return Ok(out);
        }
        let key = CensusKey { q: self.q, delta: self.delta, n, k, gamma_cap: (cap < n).then_some(cap) };
        if let Some(dir) = &self.cache_dir {
            if let Some(rec) = store::load(dir, &key)? {
                let reps = rec
                    .reps
                    .iter()
                    .map(|g| codes::to_multiset(g).entries().iter().map(|&(p, m)| (p.code(), m)).collect())
                    .collect();
                let out = Arc::new(Level { reps, partial: false });
                self.memo.insert((n, k, cap), out.clone());
                return Ok(out);
            }
        }
        let out = Arc::new(self.compute(n, k, cap)?);
        if !out.partial {
            if let Some(dir) = &self.cache_dir {
                let reps: Vec<GeneratorMatrix> = out.reps.iter().map(|r| self.matrix(k, r)).collect();
                store::store(dir, &CensusRecord { key, count: reps.len(), reps, partial: false })?;
            }
        }
        self.memo.insert((n, k, cap), out.clone());
        Ok(out)
    }

    fn compute(&mut self, n: u32, k: u32, cap: u32) -> Result<Level> {
        if k == 0 || n < k || !self.length_possible(n) {
            return Ok(Level::default());
        }
        if k == 1 {
            let ok = (n as u64).is_multiple_of(self.delta) && cap >= n;
            return Ok(Level { reps: if ok { vec![vec![(1, n)]] } else { Vec::new() }, partial: false });
        }
        let q = self.q as u32;
        let mut jobs: Vec<(u32, Arc<Level>)> = Vec::new();
        for t in 1..=cap.min(n - (k - 1)) {
            let parents = self.level(n - t, k - 1, (q * t).min(n - t))?;
            if !parents.reps.is_empty() || parents.partial {
                jobs.push((t, parents));
            }
        }
        if jobs.is_empty() {
            return Ok(Level::default());
        }
        self.check_ambient(k)?;
        let partial_parents = jobs.iter().any(|(_, l)| l.partial);
        let tasks: Vec<(u32, &Rep)> = jobs.iter().flat_map(|(t, l)| l.reps.iter().map(move |r| (*t, r))).collect();
        let this = &*self;
        let run = || {
            tasks
                .par_iter()
                .fold(HashSet::new, |mut acc: HashSet<Rep>, &(t, parent)| {
                    this.lift_parent(n, k, t, parent, &mut acc);
                    acc
                })
                .reduce(HashSet::new, |mut a, b| {
                    if a.len() < b.len() {
                        return b.into_iter().chain(a).collect();
                    }
                    a.extend(b);
                    a
                })
        };
        let found = match &self.pool {
            Some(p) => p.install(run),
            None => run(),
        };
        let partial = partial_parents || self.exhausted.load(Ordering::Relaxed);
        let mut reps: Vec<Rep> = found.into_iter().collect();
        reps.sort_unstable();
        Ok(Level { reps, partial })
    }

    fn lift_parent(&self, n: u32, k: u32, t: u32, parent: &Rep, acc: &mut HashSet<Rep>) {
        if self.over_budget() {
            return;
        }
        let (q, f) = (self.q, Field::get(self.q).expect("field"));
        let lifter = lift::Lifter::new(q, k as usize - 1, self.delta, n as u64, t, parent);
        lifter.run(|mut pts| {
            let nodes = self.nodes.fetch_add(1, Ordering::Relaxed);
            if nodes.is_multiple_of(1024) && self.over_budget() {
                return false;
            }
            pts.sort_unstable();
            // the lifting point must have the largest line profile among
            // the points of maximal multiplicity
            let mine = lift::line_profile(f, q, k as usize, &pts, 1);
            let beaten = pts
                .iter()
                .filter(|&&(c, m)| m == t && c != 1)
                .any(|&(c, _)| lift::line_profile(f, q, k as usize, &pts, c) > mine);
            if !beaten {
                let m = PointMultiset::from_points(q, k as usize, pts.iter().map(|&(c, m)| (ProjPoint(c), m))).expect("child");
                let canon = canonical_multiset(&m, true);
                acc.insert(canon.multiset.entries().iter().map(|&(p, m)| (p.code(), m)).collect());
            }
            true
        });
    }

    /// Counts per dimension `k = 1, ..., kmax` for cardinality `n`, with no
    /// multiplicity cap. Trailing zero dimensions are included up to `kmax`.
    pub fn counts(&mut self, n: u32, kmax: u32) -> Result<(Vec<usize>, bool)> {
        let mut out = Vec::new();
        let mut partial = false;
        for k in 1..=kmax.min(n) {
            let r = self.record(CensusKey::new(self.q, self.delta, n, k))?;
            partial |= r.partial;
            out.push(r.count);
        }
        Ok((out, partial))
    }

    /// All dimensions with at least one representative, searched up to `n`.
    pub fn all_dimensions(&mut self, n: u32, cap: Option<u32>) -> Result<(Vec<(u32, PointMultiset)>, bool)> {
        let mut out = Vec::new();
        let mut partial = false;
        for k in 1..=n.min(crate::linalg::MAX_K as u32) {
            let (ms, p) = match self.multisets(n, k, cap) {
                Err(CensusError::Ambient { .. }) => {
                    partial = true;
                    break;
                }
                r => r?,
            };
            partial |= p;
            out.extend(ms.into_iter().map(|m| (k, m)));
        }
        Ok((out, partial))
    }
}

/// Complete census cell under `budget`.
pub fn enumerate_codes(key: CensusKey, budget: Budget) -> Result<CensusRecord> {
    Census::new(key.q, key.delta)?.with_budget(budget).record(key)
}

/// Outcome of an exhaustive search for `Gamma_q(Delta, n)`.
#[derive(Clone, Debug)]
pub struct GammaSearch {
    pub value: Gamma,
    pub witness: Option<GeneratorMatrix>,
    pub certificate: Option<Expansion>,
    /// Set when the budget ran out; `value` is then only a lower bound
    /// (`verified_below`) or unknown.
    pub partial: bool,
    /// Every `gamma < verified_below` was excluded exhaustively.
    pub verified_below: u32,
    /// Largest dimension searched.
    pub max_k: u32,
}

/// Smallest `gamma_1` of a spanning `Delta`-divisible multiset of cardinality
/// `n`, by exhaustive search over increasing `gamma` and all dimensions.
pub fn compute_gamma(census: &mut Census, n: u32) -> Result<GammaSearch> {
    let (q, delta) = (census.q(), census.delta());
    let mut out = GammaSearch { value: Gamma::Infinite, witness: None, certificate: None, partial: false, verified_below: 1, max_k: 0 };
    if n == 0 {
        out.value = Gamma::Finite(0);
        return Ok(out);
    }
    if !census.length_possible(n) {
        let (mut d, mut r) = (delta, 0);
        while d % q as u64 == 0 {
            d /= q as u64;
            r += 1;
        }
        out.certificate = Some(lengths::sqr_adic_expansion(n as i64, q as u64, r));
        out.verified_below = n + 1;
        return Ok(out);
    }
    for gamma in 1..=n {
        let mut any_partial = false;
        for k in 1..=n {
            let (ms, partial) = match census.multisets(n, k, Some(gamma)) {
                Err(CensusError::Ambient { .. }) => {
                    any_partial = true;
                    break;
                }
                r => r?,
            };
            out.max_k = out.max_k.max(k);
            any_partial |= partial;
            if let Some(m) = ms.first() {
                out.value = Gamma::Finite(m.gamma1());
                out.witness = Some(codes::from_multiset(m).expect("spanning"));
                out.partial = any_partial;
                return Ok(out);
            }
            if partial {
                break;
            }
        }
        if any_partial {
            out.partial = true;
            return Ok(out);
        }
        out.verified_below = gamma + 1;
    }
    Ok(out)
}

/// All spanning `Delta`-divisible multisets of cardinality `n` in every
/// dimension, bucketed by canonical form. A spanning multiset contains a
/// basis, which a linear map sends to the unit vectors, so it suffices to
/// add `n - k` arbitrary points to `e_1, ..., e_k`. Exponential; an oracle
/// for tiny cases only.
pub fn brute_force_classes(q: usize, delta: u64, n: u32) -> BTreeSet<(u32, Vec<(u32, u32)>)> {
    let mut out = BTreeSet::new();
    for k in 1..=n as usize {
        let pts: Vec<ProjPoint> = pg::all_points(q, k).collect();
        let mut mult = vec![0u32; pts.len()];
        for i in 0..k {
            let mut e = vec![0u8; k];
            e[i] = 1;
            let code = ProjPoint::from_coords(q, &e).expect("unit vector").code();
            mult[pts.iter().position(|p| p.code() == code).expect("listed")] += 1;
        }
        // the extra points as non-decreasing index sequences
        #[allow(clippy::too_many_arguments)]
        fn rec(
            start: usize,
            left: u32,
            pts: &[ProjPoint],
            mult: &mut Vec<u32>,
            q: usize,
            k: usize,
            delta: u64,
            out: &mut BTreeSet<(u32, Vec<(u32, u32)>)>,
        ) {
            if left == 0 {
                let m = PointMultiset::from_points(q, k, pts.iter().zip(mult.iter()).filter(|(_, &c)| c > 0).map(|(&p, &c)| (p, c)))
                    .expect("points of the ambient space");
                if pg::is_divisible(&m, delta) {
                    let c = canonical_multiset(&m, true);
                    out.insert((k as u32, c.multiset.entries().iter().map(|&(p, m)| (p.code(), m)).collect()));
                }
                return;
            }
            for i in start..pts.len() {
                mult[i] += 1;
                rec(i, left - 1, pts, mult, q, k, delta, out);
                mult[i] -= 1;
            }
        }
        rec(0, n - k as u32, &pts, &mut mult, q, k, delta, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(q: usize, delta: u64, n: u32, kmax: u32) -> Vec<usize> {
        let mut c = Census::new(q, delta).unwrap();
        c.counts(n, kmax).unwrap().0
    }

    #[test]
    fn even_small_rows() {
        assert_eq!(table(2, 2, 4, 3), vec![1, 1, 1]);
        assert_eq!(table(2, 2, 6, 5), vec![1, 2, 3, 2, 1]);
        assert_eq!(table(2, 2, 8, 7), vec![1, 3, 8, 10, 7, 3, 1]);
    }

    #[test]
    fn doubly_even_small_rows() {
        assert_eq!(table(2, 4, 12, 5), vec![1, 2, 3, 4, 2]);
        assert_eq!(table(2, 4, 14, 6), vec![0, 2, 4, 6, 5, 4]);
    }

    #[test]
    fn ternary_and_quaternary_rows() {
        assert_eq!(table(3, 3, 6, 2), vec![1, 1]);
        assert_eq!(table(3, 3, 7, 3), vec![0, 1, 1]);
        assert_eq!(table(4, 4, 10, 4), vec![0, 1, 1, 1]);
    }

    #[test]
    fn brute_force_matches_census_even() {
        for n in 1..=6u32 {
            let brute = brute_force_classes(2, 2, n);
            let mut c = Census::new(2, 2).unwrap();
            let mut per_k = vec![0usize; n as usize];
            for (k, _) in &brute {
                per_k[*k as usize - 1] += 1;
            }
            assert_eq!(c.counts(n, n).unwrap().0, per_k, "n={n}");
        }
    }

    #[test]
    fn gamma_small() {
        let mut c = Census::new(2, 4).unwrap();
        let g = compute_gamma(&mut c, 11).unwrap();
        assert_eq!(g.value, Gamma::Finite(4));
        let w = g.witness.unwrap();
        assert!(codes::is_divisible_code(&w, 4));
        let mut c = Census::new(2, 2).unwrap();
        assert_eq!(compute_gamma(&mut c, 3).unwrap().value, Gamma::Finite(1));
        assert_eq!(compute_gamma(&mut c, 1).unwrap().value, Gamma::Infinite);
    }

    #[test]
    fn budget_marks_partial() {
        let mut c = Census::new(2, 4).unwrap().with_budget(Budget::nodes(10));
        let r = c.record(CensusKey::new(2, 4, 20, 6)).unwrap();
        assert!(r.partial);
    }
}
