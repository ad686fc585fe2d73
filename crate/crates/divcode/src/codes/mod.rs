//! Linear codes as generator matrices and their correspondence with
//! multisets of points.
//!
//! A generator matrix with nonzero columns `g_1, ..., g_n` corresponds to the
//! multiset of the points `<g_i>`; a nonzero functional `h` gives a codeword
//! of weight `n - M(H_h)`, where `H_h` is the hyperplane `h . x = 0`.

mod canon;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use canon::{canonical_multiset, CanonicalMultiset, SemilinearMap};

use crate::gf::{Field, GfError};
use crate::linalg;
use crate::pg::{self, gauss, PgError, PointMultiset, ProjPoint};

/// Largest `q^k` for which codewords are enumerated one by one.
pub const ENUMERATION_CAP: u64 = 1 << 26;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Geometry(#[from] PgError),
    #[error("row {row} has {got} entries, expected {want}")]
    RowLength { row: usize, got: usize, want: usize },
    #[error("entry {entry} is not an element of F_{q}")]
    Entry { entry: u8, q: usize },
    #[error("multiset does not span its ambient space")]
    NotSpanning,
    #[error("{count} codewords or hyperplanes exceed the enumeration cap")]
    Budget { count: u64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, CodeError>;

/// A `k x n` generator matrix over `F_q`, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorMatrix {
    q: usize,
    n: usize,
    rows: Vec<Vec<u8>>,
}

impl GeneratorMatrix {
    pub fn new(q: usize, n: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        Field::get(q)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(CodeError::RowLength { row: i, got: r.len(), want: n });
            }
            if let Some(&e) = r.iter().find(|&&e| e as usize >= q) {
                return Err(CodeError::Entry { entry: e, q });
            }
        }
        Ok(GeneratorMatrix { q, n, rows })
    }

    /// Builds a `k x n` matrix from its columns.
    pub fn from_columns(q: usize, k: usize, cols: &[Vec<u8>]) -> Result<Self> {
        let rows = (0..k).map(|i| cols.iter().map(|c| c.get(i).copied().unwrap_or(0)).collect()).collect();
        for (j, c) in cols.iter().enumerate() {
            if c.len() != k {
                return Err(CodeError::RowLength { row: j, got: c.len(), want: k });
            }
        }
        Self::new(q, cols.len(), rows)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn field(&self) -> &'static Field {
        Field::get(self.q).expect("validated on construction")
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        (0..self.n).map(|j| self.column(j))
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.field(), &self.rows)
    }

    /// Number of nonzero columns.
    pub fn effective_length(&self) -> usize {
        self.columns().filter(|c| c.iter().any(|&x| x != 0)).count()
    }

    /// Largest number of columns spanning the same point.
    pub fn max_column_multiplicity(&self) -> u32 {
        to_multiset(self).gamma1()
    }

    pub fn to_text(&self) -> String {
        let f = self.field();
        let mut s = format!("{} {} {}\n", self.q, self.k(), self.n);
        for r in &self.rows {
            s.extend(r.iter().map(|&c| f.symbol(c)));
            s.push('\n');
        }
        s
    }

    /// Parses the `q k n` header followed by `k` rows of `n` symbols.
    /// Whitespace inside rows is ignored; `#` lines and blank lines are skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(CodeError::Parse { line: 1, msg: "missing header".into() })?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| CodeError::Parse { line: hl, msg: format!("bad number {t:?}") }))
            .collect::<Result<_>>()?;
        let [q, k, n] = nums[..] else {
            return Err(CodeError::Parse { line: hl, msg: "header must be \"q k n\"".into() });
        };
        let f = Field::get(q)?;
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, l) = lines.next().ok_or(CodeError::Parse { line: hl, msg: format!("expected {k} rows") })?;
            let row = l
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| f.parse_symbol(c).map_err(|e| CodeError::Parse { line: ln, msg: e.to_string() }))
                .collect::<Result<Vec<u8>>>()?;
            if row.len() != n {
                return Err(CodeError::Parse { line: ln, msg: format!("row has {} symbols, expected {n}", row.len()) });
            }
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(CodeError::Parse { line: ln, msg: "trailing data after matrix".into() });
        }
        Self::new(q, n, rows)
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The multiset of points spanned by the nonzero columns, in `PG(k-1, q)`.
/// A matrix with no rows maps to the empty multiset of `PG(0, q)`.
pub fn to_multiset(g: &GeneratorMatrix) -> PointMultiset {
    let k = g.k().max(1);
    let cols: Vec<Vec<u8>> = if g.k() == 0 { Vec::new() } else { g.columns().collect() };
    let items = cols.iter().filter(|c| c.iter().any(|&x| x != 0)).map(|c| (c.as_slice(), 1));
    PointMultiset::from_vectors(g.q(), k, items).expect("columns have length k")
}

/// Generator matrix whose columns list the support in point order, each
/// repeated by its multiplicity. The empty multiset gives the `0 x 0` matrix.
pub fn from_multiset(m: &PointMultiset) -> Result<GeneratorMatrix> {
    if m.is_empty() {
        return GeneratorMatrix::new(m.q(), 0, Vec::new());
    }
    if !m.is_spanning() {
        return Err(CodeError::NotSpanning);
    }
    let cols: Vec<Vec<u8>> = m
        .entries()
        .iter()
        .flat_map(|&(p, c)| std::iter::repeat_n(p.coords(m.q(), m.k()), c as usize))
        .collect();
    GeneratorMatrix::from_columns(m.q(), m.k(), &cols)
}

/// Weight enumerator `sum A_w x^w`, stored sparsely.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightEnumerator(pub BTreeMap<usize, u64>);

impl WeightEnumerator {
    /// The enumerator `1` of the zero-dimensional code.
    pub fn one() -> Self {
        WeightEnumerator(BTreeMap::from([(0, 1)]))
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, u64)>>(pairs: I) -> Self {
        let mut m = BTreeMap::new();
        for (w, a) in pairs {
            if a != 0 {
                *m.entry(w).or_insert(0) += a;
            }
        }
        WeightEnumerator(m)
    }

    pub fn coeff(&self, w: usize) -> u64 {
        self.0.get(&w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn degree(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_divisible(&self, delta: usize) -> bool {
        self.0.keys().all(|w| w % delta == 0)
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(&w, &a)| match w {
                0 => a.to_string(),
                1 => format!("{a}x"),
                _ => format!("{a}x^{w}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Exact weight histogram by listing all `q^k` codewords.
pub fn weight_distribution_enumerated(g: &GeneratorMatrix) -> Result<WeightEnumerator> {
    let (q, k, n) = (g.q(), g.k(), g.n());
    let count = (q as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if count > ENUMERATION_CAP {
        return Err(CodeError::Budget { count });
    }
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    if q == 2 {
        // Gray code over bit-packed rows
        let words = n.div_ceil(64);
        let rows: Vec<Vec<u64>> = g
            .rows()
            .iter()
            .map(|r| {
                let mut b = vec![0u64; words];
                for (j, &x) in r.iter().enumerate() {
                    b[j / 64] |= u64::from(x) << (j % 64);
                }
                b
            })
            .collect();
        let mut cw = vec![0u64; words];
        *hist.entry(0).or_insert(0) += 1;
        for i in 1..count {
            let bit = i.trailing_zeros() as usize;
            for (c, r) in cw.iter_mut().zip(&rows[bit]) {
                *c ^= r;
            }
            let w: u32 = cw.iter().map(|x| x.count_ones()).sum();
            *hist.entry(w as usize).or_insert(0) += 1;
        }
    } else {
        let f = g.field();
        let mut digits = vec![0u8; k];
        let mut cw = vec![0u8; n];
        *hist.entry(0).or_insert(0) += 1;
        for _ in 1..count {
            // odometer step: digit i moves from a to a+1 (index order)
            let mut i = 0;
            loop {
                let old = digits[i];
                let new = if old as usize + 1 == q { 0 } else { old + 1 };
                let delta = f.sub(new, old);
                for (c, &x) in cw.iter_mut().zip(&g.rows()[i]) {
                    *c = f.add(*c, f.mul(delta, x));
                }
                digits[i] = new;
                if new != 0 {
                    break;
                }
                i += 1;
            }
            let w = cw.iter().filter(|&&c| c != 0).count();
            *hist.entry(w).or_insert(0) += 1;
        }
    }
    Ok(WeightEnumerator(hist))
}

/// Weight histogram through the hyperplane spectrum: each of the `q - 1`
/// nonzero multiples of a functional `h` has weight `n_eff - M(H_h)`.
pub fn weight_distribution_via_spectrum(g: &GeneratorMatrix) -> Result<WeightEnumerator> {
    if g.k() == 0 {
        return Ok(WeightEnumerator::one());
    }
    let hyper = gauss(g.k() as u32, g.q() as u64);
    if hyper > ENUMERATION_CAP {
        return Err(CodeError::Budget { count: hyper });
    }
    let m = to_multiset(g);
    let n = m.cardinality();
    let units = g.q() as u64 - 1;
    let mut e = WeightEnumerator::one();
    for h in m.hyperplane_mults() {
        *e.0.entry((n - h) as usize).or_insert(0) += units;
    }
    Ok(e)
}

/// Exact weight histogram; enumerates codewords when `q^k` is small and
/// sweeps hyperplanes otherwise.
pub fn weight_distribution(g: &GeneratorMatrix) -> Result<WeightEnumerator> {
    match weight_distribution_enumerated(g) {
        Err(CodeError::Budget { .. }) => weight_distribution_via_spectrum(g),
        r => r,
    }
}

/// Whether every codeword weight is a multiple of `delta`.
pub fn is_divisible_code(g: &GeneratorMatrix, delta: u64) -> bool {
    g.k() == 0 || pg::is_divisible(&to_multiset(g), delta)
}

/// Canonical representative of the semilinear equivalence class of a code.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// Canonical generator matrix (full rank, columns in point order).
    pub matrix: GeneratorMatrix,
    /// Canonical multiset of points.
    pub multiset: PointMultiset,
    /// Map sending the input's column points onto the canonical multiset.
    /// Present when the input has full rank; otherwise it acts on the
    /// re-coordinatized span.
    pub map: SemilinearMap,
    pub full_rank: bool,
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for CanonicalForm {}

/// Canonical form under column permutation, column scaling, basis change and
/// (for `q = p^e`, `e > 1`) field automorphisms.
pub fn canonical_form(g: &GeneratorMatrix) -> CanonicalForm {
    let m = to_multiset(g);
    let full_rank = m.is_spanning() && g.k() > 0;
    if m.is_empty() {
        return CanonicalForm {
            matrix: GeneratorMatrix::new(g.q(), 0, Vec::new()).unwrap(),
            multiset: m,
            map: SemilinearMap { matrix: Vec::new(), frobenius: 0 },
            full_rank: g.k() == 0,
        };
    }
    let c = canonical_multiset(&m.to_spanning(), true);
    CanonicalForm { matrix: from_multiset(&c.multiset).expect("spanning"), multiset: c.multiset, map: c.map, full_rank }
}

/// Product of enumerators: the enumerator of a direct sum.
pub fn we_product(w1: &WeightEnumerator, w2: &WeightEnumerator) -> WeightEnumerator {
    let mut out = BTreeMap::new();
    for (&a, &x) in &w1.0 {
        for (&b, &y) in &w2.0 {
            *out.entry(a + b).or_insert(0) += x * y;
        }
    }
    WeightEnumerator(out)
}

/// Enumerators of the indecomposable triply-even codes spanned by weight-8
/// words whose weights stay below 32.
pub fn a8_blocks() -> Vec<WeightEnumerator> {
    let we = |t: &[(usize, u64)]| WeightEnumerator::from_pairs(t.iter().copied());
    vec![
        we(&[(0, 1), (8, 1)]),
        we(&[(0, 1), (8, 3)]),
        we(&[(0, 1), (8, 7)]),
        we(&[(0, 1), (8, 15)]),
        we(&[(0, 1), (8, 6), (16, 1)]),
        we(&[(0, 1), (8, 10), (16, 5)]),
        we(&[(0, 1), (8, 14), (16, 1)]),
        we(&[(0, 1), (8, 30), (16, 1)]),
        we(&[(0, 1), (8, 15), (16, 15), (24, 1)]),
        we(&[(0, 1), (8, 21), (16, 35), (24, 7)]),
    ]
}

/// Values of `A_8` over the empty code, single blocks from [`a8_blocks`],
/// and direct sums of two blocks whose nonzero weights lie in `{8, 16, 24}`.
///
/// This is the enumeration behind the published list. Sums of three blocks
/// of maximum weight 8 also stay within `{8, 16, 24}` and add the values
/// `{5, 19, 23}`; see [`a8_closure`].
pub fn a8_reachable_set() -> BTreeSet<u64> {
    let blocks = a8_blocks();
    let mut out = BTreeSet::from([0]);
    for (i, a) in blocks.iter().enumerate() {
        out.insert(a.coeff(8));
        for b in &blocks[i..] {
            let p = we_product(a, b);
            if p.degree() <= 24 {
                out.insert(p.coeff(8));
            }
        }
    }
    out
}

/// Values of `A_8` over all direct sums of [`a8_blocks`], any number of
/// summands, whose nonzero weights lie in `{8, 16, 24}`.
pub fn a8_closure() -> BTreeSet<u64> {
    let blocks = a8_blocks();
    let mut seen: BTreeSet<WeightEnumerator> = BTreeSet::from([WeightEnumerator::one()]);
    let mut frontier = vec![WeightEnumerator::one()];
    while let Some(w) = frontier.pop() {
        for b in &blocks {
            let p = we_product(&w, b);
            if p.degree() <= 24 && seen.insert(p.clone()) {
                frontier.push(p);
            }
        }
    }
    seen.iter().map(|w| w.coeff(8)).collect()
}

/// Convenience: a generator matrix built from the support of a multiset of
/// explicit columns given as symbol strings, e.g. `["100", "010", "001"]`.
pub fn matrix_from_column_symbols(q: usize, cols: &[&str]) -> Result<GeneratorMatrix> {
    let f = Field::get(q)?;
    let cols: Vec<Vec<u8>> =
        cols.iter().map(|s| s.chars().map(|c| f.parse_symbol(c)).collect::<std::result::Result<_, _>>()).collect::<std::result::Result<_, _>>()?;
    let k = cols.first().map_or(0, |c| c.len());
    GeneratorMatrix::from_columns(q, k, &cols)
}

/// Applies a semilinear map to the columns of a matrix.
pub fn apply_map(g: &GeneratorMatrix, map: &SemilinearMap) -> GeneratorMatrix {
    let f = g.field();
    let cols: Vec<Vec<u8>> = g.columns().map(|c| map.apply(f, &c)).collect();
    GeneratorMatrix::from_columns(g.q(), g.k(), &cols).expect("same shape")
}

#[doc(hidden)]
pub fn point_of(q: usize, v: &[u8]) -> ProjPoint {
    ProjPoint::from_coords(q, v).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pg::Subspace;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn simplex(q: usize, k: usize) -> GeneratorMatrix {
        from_multiset(&PointMultiset::chi(&Subspace::whole(q, k).unwrap())).unwrap()
    }

    fn random_matrix(rng: &mut impl Rng, q: usize, k: usize, n: usize) -> GeneratorMatrix {
        let rows = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q) as u8).collect()).collect();
        GeneratorMatrix::new(q, n, rows).unwrap()
    }

    /// Random element of GL(k, q).
    fn random_invertible(rng: &mut impl Rng, f: &Field, k: usize) -> Vec<Vec<u8>> {
        loop {
            let a: Vec<Vec<u8>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(0..f.q()) as u8).collect()).collect();
            if linalg::rank(f, &a) == k {
                return a;
            }
        }
    }

    /// Column permutation, column scaling, basis change and a field automorphism.
    fn random_equivalent(rng: &mut impl Rng, g: &GeneratorMatrix) -> GeneratorMatrix {
        let f = g.field();
        let a = random_invertible(rng, f, g.k());
        let j = rng.gen_range(0..f.e());
        let mut cols: Vec<Vec<u8>> = g
            .columns()
            .map(|c| {
                let s = rng.gen_range(1..f.q()) as u8;
                let c: Vec<u8> = c.iter().map(|&x| f.mul(s, f.frob_pow(x, j))).collect();
                linalg::mat_vec(f, &a, &c)
            })
            .collect();
        for i in (1..cols.len()).rev() {
            cols.swap(i, rng.gen_range(0..=i));
        }
        GeneratorMatrix::from_columns(g.q(), g.k(), &cols).unwrap()
    }

    #[test]
    fn simplex_is_plane_and_doubly_even() {
        let g = simplex(2, 3);
        assert_eq!(g.n(), 7);
        assert_eq!(weight_distribution(&g).unwrap().coeff(4), 7);
        assert!(is_divisible_code(&g, 4));
        assert_eq!(to_multiset(&g), PointMultiset::chi(&Subspace::whole(2, 3).unwrap()));
    }

    #[test]
    fn small_codes() {
        let rep = GeneratorMatrix::new(2, 2, vec![vec![1, 1]]).unwrap();
        assert_eq!(weight_distribution(&rep).unwrap().coeff(2), 1);
        assert_eq!(to_multiset(&rep).gamma1(), 2);
        let line = matrix_from_column_symbols(2, &["10", "01", "11"]).unwrap();
        assert!(is_divisible_code(&line, 2));
        let id = matrix_from_column_symbols(2, &["10", "01"]).unwrap();
        assert!(!is_divisible_code(&id, 2));
        let zero_col = matrix_from_column_symbols(2, &["10", "00", "01"]).unwrap();
        assert_eq!(zero_col.effective_length(), 2);
        assert_eq!(to_multiset(&zero_col).cardinality(), 2);
    }

    #[test]
    fn matrix_text_roundtrip() {
        let g = GeneratorMatrix::new(4, 3, vec![vec![1, 2, 3], vec![0, 1, 2]]).unwrap();
        let t = g.to_text();
        assert_eq!(t, "4 2 3\n1ab\n01a\n");
        assert_eq!(GeneratorMatrix::parse_text(&t).unwrap(), g);
        assert!(GeneratorMatrix::parse_text("2 1 3\n10\n").is_err());
        assert!(GeneratorMatrix::parse_text("2 1 2\n12\n").is_err());
    }

    #[test]
    fn product_examples() {
        let b7 = WeightEnumerator::from_pairs([(0, 1), (8, 7)]);
        assert_eq!(we_product(&b7, &b7), WeightEnumerator::from_pairs([(0, 1), (8, 14), (16, 49)]));
        assert_eq!(we_product(&b7, &WeightEnumerator::one()), b7);
        let b15 = WeightEnumerator::from_pairs([(0, 1), (8, 15)]);
        let rm = WeightEnumerator::from_pairs([(0, 1), (8, 15), (16, 15), (24, 1)]);
        assert_eq!(we_product(&b15, &rm).coeff(8), 30);
    }

    #[test]
    fn a8_set() {
        let want: BTreeSet<u64> =
            [0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 11, 13, 14, 15, 16, 17, 18, 21, 22, 25, 29, 30, 31, 33, 37, 45].into();
        assert_eq!(a8_reachable_set(), want);
        // three blocks, e.g. (1+x^8)^2 (1+3x^8), reach a few more values
        let extra: BTreeSet<u64> = a8_closure().difference(&want).copied().collect();
        assert_eq!(extra, [5, 19, 23].into());
        let three = we_product(&we_product(&a8_blocks()[0], &a8_blocks()[0]), &a8_blocks()[1]);
        assert_eq!((three.degree(), three.coeff(8)), (24, 5));
    }

    #[test]
    fn even_2dim_length6_classes_differ() {
        // 2*chi_L versus 4*P + 2*P'... the two even [6,2] classes: the double
        // line and the two double points plus a double third point (same); use
        // the table's two classes: 2*chi_L and 4*P + 2*Q.
        let a = matrix_from_column_symbols(2, &["10", "10", "01", "01", "11", "11"]).unwrap();
        let b = matrix_from_column_symbols(2, &["10", "10", "10", "10", "01", "01"]).unwrap();
        assert!(is_divisible_code(&a, 2) && is_divisible_code(&b, 2));
        assert_ne!(canonical_form(&a), canonical_form(&b));
        let rev = GeneratorMatrix::new(2, 6, a.rows().iter().map(|r| r.iter().rev().copied().collect()).collect()).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&rev));
    }

    #[test]
    fn canonical_map_is_a_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2, 3, 4] {
            for _ in 0..40 {
                let g = random_matrix(&mut rng, q, 4, 9);
                if g.rank() < 4 {
                    continue;
                }
                let c = canonical_form(&g);
                assert_eq!(c.map.apply_multiset(&to_multiset(&g)), c.multiset);
            }
        }
    }

    #[test]
    fn canonical_invariance_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (q, k, n) in [(2, 4, 10), (2, 5, 12), (3, 3, 8), (4, 3, 9), (4, 4, 8)] {
            for _ in 0..10 {
                let g = random_matrix(&mut rng, q, k, n);
                let c = canonical_form(&g);
                for _ in 0..10 {
                    assert_eq!(canonical_form(&random_equivalent(&mut rng, &g)), c);
                }
            }
        }
    }

    #[test]
    fn canonical_counts_orbits_of_small_sets() {
        // Inequivalent 4-subsets of PG(2,2): a line plus a point, and a frame.
        let pts: Vec<ProjPoint> = pg::all_points(2, 3).collect();
        let mut forms = BTreeSet::new();
        for a in 0..7 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    for d in c + 1..7 {
                        let m = PointMultiset::from_points(2, 3, [a, b, c, d].map(|i| (pts[i], 1))).unwrap();
                        forms.insert(canonical_form(&from_multiset(&m).unwrap()).matrix);
                    }
                }
            }
        }
        assert_eq!(forms.len(), 2);
    }

    #[test]
    fn frobenius_identifies_conjugates() {
        // Over F_4 the points (1,a) and (1,b) are swapped by Frobenius only.
        let g1 = matrix_from_column_symbols(4, &["10", "01", "11", "1a"]).unwrap();
        let g2 = matrix_from_column_symbols(4, &["10", "01", "11", "1b"]).unwrap();
        assert_eq!(canonical_form(&g1), canonical_form(&g2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn spectrum_side_matches_enumeration(seed in any::<u64>(), q in prop::sample::select(vec![2usize, 3, 4]), k in 1usize..5, n in 1usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_matrix(&mut rng, q, k, n);
            let a = weight_distribution_enumerated(&g).unwrap();
            prop_assert_eq!(a.total(), (q as u64).pow(k as u32));
            prop_assert_eq!(&a, &weight_distribution_via_spectrum(&g).unwrap());
            for delta in 2..5u64 {
                prop_assert_eq!(a.is_divisible(delta as usize), is_divisible_code(&g, delta));
            }
        }

        #[test]
        fn multiset_roundtrip(seed in any::<u64>(), q in prop::sample::select(vec![2usize, 3, 4]), k in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_matrix(&mut rng, q, k, 3 * k);
            let m = to_multiset(&g).to_spanning();
            let back = from_multiset(&m).unwrap();
            prop_assert_eq!(to_multiset(&back), m);
        }
    }
}
