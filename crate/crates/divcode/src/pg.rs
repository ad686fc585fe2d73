//! Projective geometry `PG(k-1, q)` and the calculus of multisets of points.
//!
//! Points are 1-spaces of `F_q^k`, represented by the unique coordinate
//! vector whose first nonzero entry is 1. Points are enumerated in
//! lexicographic order of these vectors, which coincides with the integer
//! order of their packed codes. Hyperplanes are represented by normal
//! vectors, so hyperplanes are enumerated exactly like points.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::gf::{Field, GfError};
use crate::linalg::{self, pack, unpack, Echelon, MAX_K};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("ambient dimension {0} unsupported for q={1}")]
    Dimension(usize, usize),
    #[error("ambient mismatch: PG({}, {}) vs PG({}, {})", .left.1 as i64 - 1, .left.0, .right.1 as i64 - 1, .right.0)]
    AmbientMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("vector has length {got}, expected {want}")]
    VectorLength { got: usize, want: usize },
    #[error("zero vector is not a point")]
    ZeroVector,
    #[error("negative multiplicity at point {point}")]
    Negative { point: String },
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, PgError>;

/// `[k]_q = (q^k - 1)/(q - 1)`, the number of points of `PG(k-1, q)`.
pub fn gauss(k: u32, q: u64) -> u64 {
    (0..k).fold(0u64, |acc, _| acc * q + 1)
}

fn check_ambient(q: usize, k: usize) -> Result<&'static Field> {
    let f = Field::get(q)?;
    let fits = (q as u64).checked_pow(k as u32).is_some_and(|x| x <= u32::MAX as u64);
    if k == 0 || k > MAX_K || !fits {
        return Err(PgError::Dimension(k, q));
    }
    Ok(f)
}

/// A point of `PG(k-1, q)`, stored as the packed code of its normalized
/// coordinate vector. The ambient `(q, k)` is carried by the container.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(pub(crate) u32);

impl ProjPoint {
    /// Normalizes `v`; `None` for the zero vector.
    pub fn from_coords(q: usize, v: &[u8]) -> Result<ProjPoint> {
        let f = Field::get(q)?;
        let mut w = v.to_vec();
        if w.iter().any(|&c| c as usize >= q) {
            return Err(PgError::Range(format!("coordinate not in F_{q}")));
        }
        if !linalg::normalize(f, &mut w) {
            return Err(PgError::ZeroVector);
        }
        Ok(ProjPoint(pack(q, &w)))
    }

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn coords(self, q: usize, k: usize) -> Vec<u8> {
        unpack(q, k, self.0)[..k].to_vec()
    }

    /// Position in the lexicographic enumeration of `PG(k-1, q)`.
    pub fn index(self, q: usize, k: usize) -> u64 {
        let q64 = q as u64;
        let mut lead = 0u32;
        let mut c = self.0 as u64;
        while c >= q64 {
            c /= q64;
            lead += 1;
        }
        let _ = k;
        gauss(lead, q64) + (self.0 as u64 - q64.pow(lead))
    }

    pub fn to_string(self, q: usize, k: usize) -> String {
        let f = Field::get(q).expect("valid field");
        self.coords(q, k).iter().map(|&c| f.symbol(c)).collect()
    }
}

/// All points of `PG(k-1, q)` in enumeration order.
pub fn all_points(q: usize, k: usize) -> impl Iterator<Item = ProjPoint> {
    let q32 = q as u32;
    (0..k as u32).flat_map(move |lead| {
        let base = q32.pow(lead);
        (base..2 * base).map(ProjPoint)
    })
}

/// A subspace of `F_q^k`, kept as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    q: usize,
    k: usize,
    basis: Vec<Vec<u8>>,
}

impl Subspace {
    pub fn span<I>(q: usize, k: usize, vectors: I) -> Result<Subspace>
    where
        I: IntoIterator<Item = Vec<u8>>,
    {
        let f = check_ambient(q, k)?;
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != k {
                return Err(PgError::VectorLength { got: v.len(), want: k });
            }
            rows.push(v);
        }
        linalg::rref(f, &mut rows);
        Ok(Subspace { q, k, basis: rows })
    }

    pub fn whole(q: usize, k: usize) -> Result<Subspace> {
        Self::span(q, k, (0..k).map(|i| (0..k).map(|j| u8::from(i == j)).collect()))
    }

    pub fn of_point(q: usize, k: usize, p: ProjPoint) -> Result<Subspace> {
        Self::span(q, k, [p.coords(q, k)])
    }

    /// The hyperplane `{x : h . x = 0}`.
    pub fn hyperplane(q: usize, k: usize, normal: &[u8]) -> Result<Subspace> {
        let f = check_ambient(q, k)?;
        let mut h = normal.to_vec();
        if h.len() != k {
            return Err(PgError::VectorLength { got: h.len(), want: k });
        }
        if !linalg::normalize(f, &mut h) {
            return Err(PgError::ZeroVector);
        }
        let i = h.iter().position(|&c| c == 1).expect("normalized");
        let vecs = (0..k).filter(|&j| j != i).map(|j| {
            let mut v = vec![0u8; k];
            v[j] = 1;
            v[i] = f.neg(h[j]);
            v
        });
        Self::span(q, k, vecs)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Ambient vector-space dimension.
    pub fn ambient(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.iter().position(|&c| c != 0).unwrap()).collect()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        let f = Field::get(self.q).ok()?;
        let coeffs: Vec<u8> = self.pivots().iter().map(|&p| v[p]).collect();
        let mut w = vec![0u8; self.k];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            for (x, &y) in w.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        (w == v).then_some(coeffs)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_point(&self, p: ProjPoint) -> bool {
        self.contains(&p.coords(self.q, self.k))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// All points of the subspace, in enumeration order.
    pub fn points(&self) -> Vec<ProjPoint> {
        let f = Field::get(self.q).expect("valid field");
        let d = self.dim();
        let mut out: Vec<ProjPoint> = all_points(self.q, d)
            .map(|c| {
                let cv = c.coords(self.q, d);
                let mut w = vec![0u8; self.k];
                for (a, row) in cv.iter().zip(&self.basis) {
                    for (x, &y) in w.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(*a, y));
                    }
                }
                ProjPoint(pack(self.q, &w))
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Histogram `a_i` of hyperplane multiplicities.
pub type Spectrum = BTreeMap<u64, u64>;

/// Histogram `lambda_i` of point multiplicities, including `lambda_0`.
pub type PointDistribution = BTreeMap<u32, u64>;

/// A multiset of points in `PG(k-1, q)`: the support with multiplicities,
/// sorted in point enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointMultiset {
    q: usize,
    k: usize,
    pts: Vec<(ProjPoint, u32)>,
}

impl PointMultiset {
    pub fn empty(q: usize, k: usize) -> Result<PointMultiset> {
        check_ambient(q, k)?;
        Ok(PointMultiset { q, k, pts: Vec::new() })
    }

    /// Builds from points and multiplicities; repeated points accumulate.
    pub fn from_points<I>(q: usize, k: usize, items: I) -> Result<PointMultiset>
    where
        I: IntoIterator<Item = (ProjPoint, u32)>,
    {
        check_ambient(q, k)?;
        let mut map: BTreeMap<ProjPoint, u32> = BTreeMap::new();
        let limit = (q as u64).pow(k as u32) as u32;
        for (p, m) in items {
            if p.0 >= limit {
                return Err(PgError::Range(format!("point code {} outside PG({}, {q})", p.0, k - 1)));
            }
            if m > 0 {
                *map.entry(p).or_insert(0) += m;
            }
        }
        Ok(PointMultiset { q, k, pts: map.into_iter().collect() })
    }

    /// Builds from (not necessarily normalized) coordinate vectors.
    pub fn from_vectors<'a, I>(q: usize, k: usize, items: I) -> Result<PointMultiset>
    where
        I: IntoIterator<Item = (&'a [u8], u32)>,
    {
        let mut pts = Vec::new();
        for (v, m) in items {
            if v.len() != k {
                return Err(PgError::VectorLength { got: v.len(), want: k });
            }
            pts.push((ProjPoint::from_coords(q, v)?, m));
        }
        Self::from_points(q, k, pts)
    }

    /// Trusted constructor for already sorted, merged, nonzero entries.
    pub(crate) fn from_sorted(q: usize, k: usize, pts: Vec<(ProjPoint, u32)>) -> PointMultiset {
        debug_assert!(pts.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(pts.iter().all(|&(_, m)| m > 0));
        PointMultiset { q, k, pts }
    }

    /// The characteristic function `chi_K` of a subspace.
    pub fn chi(s: &Subspace) -> PointMultiset {
        Self::from_sorted(s.q, s.k, s.points().into_iter().map(|p| (p, 1)).collect())
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &'static Field {
        Field::get(self.q).expect("validated at construction")
    }

    pub fn entries(&self) -> &[(ProjPoint, u32)] {
        &self.pts
    }

    pub fn support(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        self.pts.iter().map(|&(p, _)| p)
    }

    pub fn support_size(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn mult(&self, p: ProjPoint) -> u32 {
        self.pts.binary_search_by_key(&p, |&(x, _)| x).map_or(0, |i| self.pts[i].1)
    }

    /// `#M`, the sum of all multiplicities.
    pub fn cardinality(&self) -> u64 {
        self.pts.iter().map(|&(_, m)| m as u64).sum()
    }

    /// Maximum point multiplicity (0 for the empty multiset).
    pub fn gamma1(&self) -> u32 {
        self.pts.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    pub fn span(&self) -> Subspace {
        Subspace::span(self.q, self.k, self.support().map(|p| p.coords(self.q, self.k)))
            .expect("ambient already validated")
    }

    pub fn is_spanning(&self) -> bool {
        self.span().dim() == self.k
    }

    /// Re-coordinatizes in the basis of the span, giving a spanning multiset.
    pub fn to_spanning(&self) -> PointMultiset {
        let s = self.span();
        if s.dim() == self.k {
            return self.clone();
        }
        if s.dim() == 0 {
            return self.clone();
        }
        restrict_to(self, &s)
    }

    /// Embeds into a larger ambient space by appending zero coordinates.
    pub fn embed(&self, k_new: usize) -> Result<PointMultiset> {
        if k_new < self.k {
            return Err(PgError::Range(format!("cannot embed PG({}) into PG({})", self.k - 1, k_new - 1)));
        }
        check_ambient(self.q, k_new)?;
        let shift = (self.q as u32).pow((k_new - self.k) as u32);
        Ok(Self::from_sorted(self.q, k_new, self.pts.iter().map(|&(p, m)| (ProjPoint(p.0 * shift), m)).collect()))
    }

    pub(crate) fn coord_rows(&self) -> Vec<(Vec<u8>, u32)> {
        self.pts.iter().map(|&(p, m)| (p.coords(self.q, self.k), m)).collect()
    }

    /// `M(H)` for the hyperplane with the given normal vector.
    pub fn hyperplane_mult(&self, normal: &[u8]) -> u64 {
        let f = self.field();
        self.pts
            .iter()
            .filter(|&&(p, _)| linalg::dot(f, normal, &unpack(self.q, self.k, p.0)[..self.k]) == 0)
            .map(|&(_, m)| m as u64)
            .sum()
    }

    /// `M(H)` for every hyperplane, in normal-vector enumeration order.
    pub fn hyperplane_mults(&self) -> Vec<u64> {
        if self.q == 2 {
            let pts: Vec<(u32, u64)> = self.pts.iter().map(|&(p, m)| (p.0, m as u64)).collect();
            return all_points(2, self.k)
                .map(|h| pts.iter().filter(|&&(p, _)| (p & h.0).count_ones() % 2 == 0).map(|&(_, m)| m).sum())
                .collect();
        }
        let f = self.field();
        let rows = self.coord_rows();
        all_points(self.q, self.k)
            .map(|h| {
                let hv = unpack(self.q, self.k, h.0);
                rows.iter().filter(|(v, _)| linalg::dot(f, &hv[..self.k], v) == 0).map(|&(_, m)| m as u64).sum()
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.q, self.k);
        for &(p, m) in &self.pts {
            s.push_str(&format!("{}:{}\n", p.to_string(self.q, self.k), m));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<PointMultiset> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or(PgError::Parse { line: 1, msg: "missing header".into() })?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| PgError::Parse { line: hl + 1, msg: format!("bad header token {t:?}") }))
            .collect::<Result<_>>()?;
        let [q, k] = nums[..] else {
            return Err(PgError::Parse { line: hl + 1, msg: "header must be \"q k\"".into() });
        };
        let f = check_ambient(q, k)?;
        let mut items = Vec::new();
        for (i, line) in lines {
            let err = |msg: String| PgError::Parse { line: i + 1, msg };
            let (coords, mult) = line.trim().split_once(':').ok_or_else(|| err("expected coords:mult".into()))?;
            let v: Vec<u8> = coords
                .chars()
                .map(|c| f.parse_symbol(c).map_err(|e| err(e.to_string())))
                .collect::<Result<_>>()?;
            if v.len() != k {
                return Err(err(format!("expected {k} coordinates, got {}", v.len())));
            }
            let m: u32 = mult.trim().parse().map_err(|_| err(format!("bad multiplicity {mult:?}")))?;
            items.push((ProjPoint::from_coords(q, &v).map_err(|e| err(e.to_string()))?, m));
        }
        Self::from_points(q, k, items)
    }
}

impl fmt::Display for PointMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn same_ambient(a: &PointMultiset, b: &PointMultiset) -> Result<()> {
    if a.q != b.q || a.k != b.k {
        return Err(PgError::AmbientMismatch { left: (a.q, a.k), right: (b.q, b.k) });
    }
    Ok(())
}

/// `M(S)`, the total multiplicity of the points of `s`.
pub fn multiplicity(m: &PointMultiset, s: &Subspace) -> Result<u64> {
    if m.q != s.q || m.k != s.k {
        return Err(PgError::AmbientMismatch { left: (m.q, m.k), right: (s.q, s.k) });
    }
    Ok(m.pts.iter().filter(|&&(p, _)| s.contains_point(p)).map(|&(_, c)| c as u64).sum())
}

/// True iff `M(H) = #M (mod delta)` for every hyperplane `H`.
pub fn is_divisible(m: &PointMultiset, delta: u64) -> bool {
    assert!(delta >= 1, "delta must be positive");
    let n = m.cardinality() % delta;
    m.is_empty() || m.hyperplane_mults().into_iter().all(|x| x % delta == n)
}

pub fn spectrum(m: &PointMultiset) -> Spectrum {
    let mut s = Spectrum::new();
    for x in m.hyperplane_mults() {
        *s.entry(x).or_insert(0) += 1;
    }
    s
}

pub fn point_distribution(m: &PointMultiset) -> PointDistribution {
    let mut d = PointDistribution::new();
    for &(_, c) in &m.pts {
        *d.entry(c).or_insert(0) += 1;
    }
    let total = gauss(m.k as u32, m.q as u64);
    d.insert(0, total - m.pts.len() as u64);
    d
}

fn binom2(x: u64) -> u128 {
    x as u128 * x.saturating_sub(1) as u128 / 2
}

/// Evaluates the five standard equations on a spanning multiset; a
/// non-spanning input is first moved to its span.
pub fn standard_equations_check(m: &PointMultiset) -> bool {
    let m = m.to_spanning();
    let (q, k) = (m.q as u64, m.k as u32);
    let n = m.cardinality();
    let a = spectrum(&m);
    let lambda = point_distribution(&m);
    let e1 = a.values().sum::<u64>() == gauss(k, q);
    let e2 = a.iter().map(|(&i, &c)| i as u128 * c as u128).sum::<u128>() == n as u128 * gauss(k - 1, q) as u128;
    let e3 = lambda.values().sum::<u64>() == gauss(k, q);
    let e4 = lambda.iter().map(|(&i, &c)| i as u64 * c).sum::<u64>() == n;
    let e5 = if k >= 2 {
        let lhs: u128 = a.iter().map(|(&i, &c)| binom2(i) * c as u128).sum();
        let lam: u128 = lambda.iter().map(|(&i, &c)| binom2(i as u64) * c as u128).sum();
        lhs == binom2(n) * gauss(k - 2, q) as u128 + (q as u128).pow(k - 2) * lam
    } else {
        true
    };
    e1 && e2 && e3 && e4 && e5
}

/// `M|_S` in the same ambient space.
pub fn restrict(m: &PointMultiset, s: &Subspace) -> Result<PointMultiset> {
    if m.q != s.q || m.k != s.k {
        return Err(PgError::AmbientMismatch { left: (m.q, m.k), right: (s.q, s.k) });
    }
    Ok(PointMultiset::from_sorted(m.q, m.k, m.pts.iter().copied().filter(|&(p, _)| s.contains_point(p)).collect()))
}

/// `M|_S` re-coordinatized in the echelon basis of `s`, living in
/// `PG(dim s - 1, q)`.
pub fn restrict_to(m: &PointMultiset, s: &Subspace) -> PointMultiset {
    let items: Vec<(ProjPoint, u32)> = m
        .pts
        .iter()
        .filter_map(|&(p, c)| {
            let coords = s.coordinates(&p.coords(m.q, m.k))?;
            Some((ProjPoint::from_coords(m.q, &coords).ok()?, c))
        })
        .collect();
    PointMultiset::from_points(m.q, s.dim().max(1), items).expect("subspace of a valid ambient")
}

/// Projection through `qpt`: the image of `P` is the line `<P, Q>` read as a
/// point of the quotient `PG(k-2, q)`, and `M(Q)` is dropped.
pub fn project(m: &PointMultiset, qpt: ProjPoint) -> Result<PointMultiset> {
    if m.k < 2 {
        return Err(PgError::Range("projection needs k >= 2".into()));
    }
    let f = m.field();
    let qv = qpt.coords(m.q, m.k);
    let i = qv.iter().position(|&c| c != 0).ok_or(PgError::ZeroVector)?;
    let mut items = Vec::with_capacity(m.pts.len());
    for &(p, c) in &m.pts {
        if p == qpt {
            continue;
        }
        let mut v = p.coords(m.q, m.k);
        let s = v[i];
        for (x, &y) in v.iter_mut().zip(&qv) {
            *x = f.sub(*x, f.mul(s, y));
        }
        v.remove(i);
        items.push((ProjPoint::from_coords(m.q, &v)?, c));
    }
    PointMultiset::from_points(m.q, m.k - 1, items)
}

/// `M_1 (+) M_2` in `PG(k_1 + k_2 - 1, q)` via `F^{k_1} (+) F^{k_2}`.
pub fn direct_sum(m1: &PointMultiset, m2: &PointMultiset) -> Result<PointMultiset> {
    if m1.q != m2.q {
        return Err(PgError::AmbientMismatch { left: (m1.q, m1.k), right: (m2.q, m2.k) });
    }
    let k = m1.k + m2.k;
    check_ambient(m1.q, k)?;
    let shift = (m1.q as u32).pow(m2.k as u32);
    let items = m1.pts.iter().map(|&(p, c)| (ProjPoint(p.0 * shift), c)).chain(m2.pts.iter().copied());
    PointMultiset::from_points(m1.q, k, items)
}

pub fn scale(m: &PointMultiset, c: u32) -> PointMultiset {
    if c == 0 {
        return PointMultiset::from_sorted(m.q, m.k, Vec::new());
    }
    PointMultiset::from_sorted(m.q, m.k, m.pts.iter().map(|&(p, x)| (p, x * c)).collect())
}

pub fn add(m1: &PointMultiset, m2: &PointMultiset) -> Result<PointMultiset> {
    same_ambient(m1, m2)?;
    PointMultiset::from_points(m1.q, m1.k, m1.pts.iter().chain(&m2.pts).copied())
}

/// `M_1 - M_2`, failing at the first point where `M_2` exceeds `M_1`.
pub fn sub_checked(m1: &PointMultiset, m2: &PointMultiset) -> Result<PointMultiset> {
    same_ambient(m1, m2)?;
    let mut map: BTreeMap<ProjPoint, u32> = m1.pts.iter().copied().collect();
    for &(p, c) in &m2.pts {
        let have = map.get(&p).copied().unwrap_or(0);
        if have < c {
            return Err(PgError::Negative { point: p.to_string(m1.q, m1.k) });
        }
        map.insert(p, have - c);
    }
    Ok(PointMultiset::from_sorted(m1.q, m1.k, map.into_iter().filter(|&(_, c)| c > 0).collect()))
}

/// Value (or lower bound) for `M(K)` of an `l`-space `K` when every hyperplane
/// through `K` has multiplicity `s` (or at least `s`), for a spanning
/// multiset of cardinality `n` in `PG(k-1, q)`.
pub fn lower_bound_space_mult(q: i64, k: i64, l: i64, n: i64, s: i64) -> Result<Ratio<i64>> {
    if q < 2 || l < 1 || l > k - 2 {
        return Err(PgError::Range(format!("need q >= 2 and 1 <= l <= k-2, got q={q}, k={k}, l={l}")));
    }
    let d = n - s;
    let qk = q.checked_pow((k - l - 1) as u32).ok_or_else(|| PgError::Range("overflow".into()))?;
    Ok(Ratio::from_integer(s) - Ratio::new(d, q - 1) + Ratio::new(d, qk * (q - 1)))
}

/// The two possible values `(q^l, q^r - (q^l - q^(2+r-k))/(q-1))` of
/// `gamma_1` for a spanning `q^r`-divisible multiset in `PG(k-1, q)` of
/// cardinality `q^l [r+1-l]_q + q^r`.
pub fn special_point_mult(q: i64, r: i64, l: i64, k: i64) -> Result<(Ratio<i64>, Ratio<i64>)> {
    if q < 2 || l < 0 || l >= r || k < 2 {
        return Err(PgError::Range(format!("need 0 <= l < r and k >= 2, got r={r}, l={l}, k={k}")));
    }
    let pow = |e: i64| -> Ratio<i64> {
        if e >= 0 {
            Ratio::from_integer(q.pow(e as u32))
        } else {
            Ratio::new(1, q.pow((-e) as u32))
        }
    };
    let first = pow(l);
    let second = pow(r) - (pow(l) - pow(2 + r - k)) / Ratio::from_integer(q - 1);
    Ok((first, second))
}

/// Recognized normal forms of a multiset of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureTag {
    /// `lambda * chi_K`.
    SimplexMultiple { lambda: u32, space: Subspace },
    /// `c * chi_{K \ E}` with `E` a hyperplane of `K`, `dim E >= 1`.
    AffineMultiple { c: u32, space: Subspace, removed: Subspace },
    /// A set of `n` points in which every `n - 1` points are independent.
    ProjectiveBase { n: usize },
    Other,
}

/// Detects the normal form of `m`, returning witness subspaces. When
/// several tags apply, `SimplexMultiple` wins.
pub fn classify_structure(m: &PointMultiset) -> StructureTag {
    let Some(&(_, c)) = m.pts.first() else {
        return StructureTag::Other;
    };
    if m.pts.iter().any(|&(_, x)| x != c) {
        return StructureTag::Other;
    }
    let f = m.field();
    let span = m.span();
    let d = span.dim();
    let size = m.pts.len() as u64;
    if size == gauss(d as u32, m.q as u64) {
        return StructureTag::SimplexMultiple { lambda: c, space: span };
    }
    if d >= 2 && size == (m.q as u64).pow(d as u32 - 1) {
        let rest: Vec<Vec<u8>> = span.points().into_iter().filter(|&p| m.mult(p) == 0).map(|p| p.coords(m.q, m.k)).collect();
        let removed = Subspace::span(m.q, m.k, rest).expect("valid ambient");
        if removed.dim() == d - 1 && m.pts.iter().all(|&(p, _)| !removed.contains_point(p)) {
            return StructureTag::AffineMultiple { c, space: span, removed };
        }
    }
    let n = m.pts.len();
    if c == 1 && n >= 3 && d == n - 1 {
        let rows = m.coord_rows();
        let every = (0..n).all(|skip| {
            let mut e = Echelon::new();
            rows.iter().enumerate().filter(|&(i, _)| i != skip).all(|(_, (v, _))| e.insert(f, v))
        });
        if every {
            return StructureTag::ProjectiveBase { n };
        }
    }
    StructureTag::Other
}

/// The projective base `e_1, ..., e_{n-1}, e_1 + ... + e_{n-1}` in `PG(n-2, q)`.
pub fn projective_base(n: usize, q: usize) -> Result<PointMultiset> {
    if n < 3 {
        return Err(PgError::Range(format!("projective base needs n >= 3, got {n}")));
    }
    let k = n - 1;
    let mut vecs: Vec<Vec<u8>> = (0..k).map(|i| (0..k).map(|j| u8::from(i == j)).collect()).collect();
    vecs.push(vec![1; k]);
    PointMultiset::from_vectors(q, k, vecs.iter().map(|v| (v.as_slice(), 1)))
}
