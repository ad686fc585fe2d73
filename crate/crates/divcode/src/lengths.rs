//! Which cardinalities admit `Delta`-divisible multisets, and with what
//! smallest maximum point multiplicity.
//!
//! For `Delta = q^r` the answer to the first question is read off the
//! `S_q(r)`-adic expansion `n = sum_{i<=r} e_i s_q(r, i)` with
//! `s_q(r, i) = q^i [r - i + 1]_q`: a `q^r`-divisible multiset of cardinality
//! `n` exists iff the leading coefficient `e_r` is non-negative.
//!
//! [`gamma_lookup`] tabulates `Gamma_2(Delta, n)` for `Delta in {2, 4, 8}` (and,
//! through Ward reduction, odd multiples of them) and backs every finite
//! value with an explicit witness built from scaled direct sums of small
//! projective building blocks.

use serde::Serialize;
use thiserror::Error;

use crate::codes::{self, GeneratorMatrix};
use crate::gf::{Field, GfError};
use crate::linalg::MAX_K;
use crate::pg::{self, gauss, PointMultiset, ProjPoint, Subspace};

#[derive(Debug, Error)]
pub enum LengthError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("Gamma_{q}({delta}, n) is not tabulated; use the census search")]
    Unsupported { q: u64, delta: u64 },
}

/// `s_q(r, i) = q^i [r - i + 1]_q` for `i = 0..=r`.
pub fn base_sequence(q: u64, r: u32) -> Vec<i64> {
    (0..=r).map(|i| (q.pow(i) * gauss(r - i + 1, q)) as i64).collect()
}

/// The `S_q(r)`-adic expansion of an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub n: i64,
    pub q: u64,
    pub r: u32,
    /// `e_0, ..., e_{r-1}`, each in `0..q`.
    pub digits: Vec<i64>,
    /// `e_r`, any integer.
    pub leading: i64,
    pub feasible: bool,
}

impl Expansion {
    /// All coefficients `e_0, ..., e_r`.
    pub fn coefficients(&self) -> Vec<i64> {
        let mut c = self.digits.clone();
        c.push(self.leading);
        c
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// Peels digits off `n`: since `s_q(r, 0) = 1 mod q`, `e_0 = n mod q`, and
/// `(n - e_0 s_q(r, 0)) / q` has the expansion `e_1, ..., e_r` over `S_q(r - 1)`.
pub fn sqr_adic_expansion(n: i64, q: u64, r: u32) -> Expansion {
    let qi = q as i64;
    let mut rest = n;
    let mut digits = Vec::with_capacity(r as usize);
    for i in 0..r {
        let e = rest.rem_euclid(qi);
        digits.push(e);
        rest = (rest - e * gauss(r - i + 1, q) as i64) / qi;
    }
    Expansion { n, q, r, digits, leading: rest, feasible: rest >= 0 }
}

/// Whether a `q^r`-divisible multiset of cardinality `n` exists.
pub fn is_length_feasible(n: i64, q: u64, r: u32) -> bool {
    sqr_adic_expansion(n, q, r).feasible
}

/// Splits `delta = p^e * d` with `p` the characteristic of `F_q` and
/// `gcd(p, d) = 1`; returns `(p^e, d)`.
pub fn ward_reduce(q: u64, delta: u64) -> Result<(u64, u64), LengthError> {
    let p = Field::get(q as usize)?.p() as u64;
    let (mut pe, mut d) = (1, delta);
    while d > 0 && d % p == 0 {
        d /= p;
        pe *= p;
    }
    Ok((pe, d))
}

/// `Gamma` value: a positive maximum point multiplicity, or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Gamma {
    Finite(u32),
    Infinite,
}

impl std::fmt::Display for Gamma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Gamma::Finite(v) => write!(f, "{v}"),
            Gamma::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GammaResult {
    pub q: u64,
    pub delta: u64,
    pub n: i64,
    pub value: Gamma,
    /// A `delta`-divisible code of effective length `n` whose maximum column
    /// multiplicity is `value`.
    pub witness: Option<GeneratorMatrix>,
    /// For infinite values with `delta = q^r`: the expansion with negative
    /// leading coefficient.
    pub certificate: Option<Expansion>,
}

/// `Gamma_2(2^r, n)` for `r in {1, 2, 3}` and `n >= 1`.
fn binary_gamma(r: u32, n: i64) -> Gamma {
    use Gamma::*;
    if !is_length_feasible(n, 2, r) {
        return Infinite;
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
            4 | 11 => 4,
            6 | 10 | 12 | 13 => 2,
            _ => 1,
        },
        3 => match n {
            8 | 22 | 23 | 37 => 8,
            12 | 20 | 24 | 26 | 27 | 35 | 39 | 41 => 4,
            14 | 28 | 29 | 34 | 36 | 38 | 40 | 42 | 43 | 44 | 52..=59 => 2,
            _ => 1,
        },
        _ => unreachable!("only r <= 3 is tabulated"),
    };
    Finite(v)
}

/// Looks up `Gamma_q(delta, n)`. Tabulated for `q = 2` and `delta = 2^e d`
/// with `e <= 3`, `d` odd; other pairs return [`LengthError::Unsupported`].
///
/// The witness is `None` when no construction is stored; for `n <= 60` that
/// happens only for `delta = 8`, `n = 50`, whose value 1 is taken from the
/// table, not from a known set.
pub fn gamma_lookup(q: u64, delta: u64, n: i64) -> Result<GammaResult, LengthError> {
    let (pe, d) = ward_reduce(q, delta)?;
    if q != 2 || pe > 8 || delta == 0 {
        return Err(LengthError::Unsupported { q, delta });
    }
    let r = pe.trailing_zeros();
    let mut res = GammaResult { q, delta, n, value: Gamma::Infinite, witness: None, certificate: None };
    if n == 0 {
        res.value = Gamma::Finite(0);
        res.witness = Some(GeneratorMatrix::new(2, 0, Vec::new()).expect("empty matrix"));
        return Ok(res);
    }
    if n < 0 || n % d as i64 != 0 {
        if d == 1 || n < 0 {
            res.certificate = Some(sqr_adic_expansion(n, 2, r));
        }
        return Ok(res);
    }
    let m = n / d as i64;
    let g = if r == 0 { Gamma::Finite(1) } else { binary_gamma(r, m) };
    match g {
        Gamma::Infinite => res.certificate = Some(sqr_adic_expansion(m, 2, r)),
        Gamma::Finite(v) => {
            res.value = Gamma::Finite(v * d as u32);
            res.witness = binary_witness(r, m as usize, v)
                .map(|w| codes::from_multiset(&pg::scale(&w, d as u32)).expect("witness spans"));
        }
    }
    Ok(res)
}

/// A spanning building block: a projective `2^j`-divisible set, possibly scaled.
#[derive(Clone, Copy, Debug)]
enum Shape {
    Point,
    /// `PG(j - 1, 2)`: `2^(j-1)`-divisible.
    Simplex(u32),
    /// `AG(j, 2)` inside `PG(j, 2)`: `2^(j-1)`-divisible.
    Affine(u32),
    /// Projective base `B_n`: 2-divisible.
    Base(usize),
    /// Explicit set of packed points in `PG(k - 1, 2)`.
    Explicit(usize, &'static [u32]),
}

impl Shape {
    fn len(self) -> usize {
        match self {
            Shape::Point => 1,
            Shape::Simplex(j) => (1 << j) - 1,
            Shape::Affine(j) => 1 << j,
            Shape::Base(n) => n,
            Shape::Explicit(_, pts) => pts.len(),
        }
    }

    fn dim(self) -> usize {
        match self {
            Shape::Point => 1,
            Shape::Simplex(j) => j as usize,
            Shape::Affine(j) => j as usize + 1,
            Shape::Base(n) => n - 1,
            Shape::Explicit(k, _) => k,
        }
    }

    fn build(self) -> PointMultiset {
        match self {
            Shape::Point => PointMultiset::from_points(2, 1, [(ProjPoint(1), 1)]).unwrap(),
            Shape::Simplex(j) => PointMultiset::chi(&Subspace::whole(2, j as usize).unwrap()),
            Shape::Affine(j) => {
                let k = j as usize + 1;
                let top = 1u32 << j;
                PointMultiset::from_points(2, k, (top..2 * top).map(|c| (ProjPoint(c), 1))).unwrap()
            }
            Shape::Base(n) => pg::projective_base(n, 2).unwrap(),
            Shape::Explicit(k, pts) => PointMultiset::from_points(2, k, pts.iter().map(|&c| (ProjPoint(c), 1))).unwrap(),
        }
    }
}

/// The index-5 subgroup of `F_256^*` (modulus `x^8+x^4+x^3+x^2+1`) as points
/// of `PG(7, 2)`: a projective two-weight set of 51 points, hyperplanes meeting
/// it in 19 or 27 points, hence 8-divisible.
pub const TWO_WEIGHT_51: [u32; 51] = [
    1, 3, 5, 15, 17, 26, 28, 32, 36, 38, 44, 46, 51, 55, 59, 77, 85, 89, 94, 96, 100, 103, 106, 108, 114, 116, 124, 132, 145,
    150, 156, 160, 167, 169, 172, 174, 180, 185, 190, 193, 214, 215, 223, 226, 230, 233, 235, 239, 244, 253, 255,
];

/// Projective `2^r`-divisible building blocks.
fn projective_blocks(r: u32) -> Vec<Shape> {
    let mut out = Vec::new();
    if r == 0 {
        return vec![Shape::Point];
    }
    for j in r + 1..=7 {
        out.push(Shape::Simplex(j));
    }
    for j in r + 1..=7 {
        out.push(Shape::Affine(j));
    }
    match r {
        1 => out.extend((5..=8).map(Shape::Base)),
        2 => out.extend(extra::DOUBLY_EVEN.iter().map(|&(k, pts)| Shape::Explicit(k, pts))),
        3 => {
            out.push(Shape::Explicit(8, &TWO_WEIGHT_51));
            out.extend(extra::TRIPLY_EVEN.iter().map(|&(k, pts)| Shape::Explicit(k, pts)));
        }
        _ => {}
    }
    out
}

mod extra {
    //! Projective divisible sets that are not direct sums of subspaces,
    //! found by computer search and stored as packed points. The 8-divisible
    //! one lifts a sum of three copies of `AG(4, 2)` through a new point.

    pub const DOUBLY_EVEN: &[(usize, &[u32])] = &[
        (6, &[1, 2, 4, 8, 15, 16, 23, 27, 28, 32, 35, 45, 46, 53, 54, 57, 58]),
        (6, &[1, 2, 3, 4, 8, 14, 16, 23, 26, 31, 32, 38, 43, 47, 51, 54, 58, 61]),
        (7, &[1, 2, 3, 4, 8, 15, 16, 32, 55, 57, 61, 64, 86, 91, 94, 101, 106, 108, 112]),
        (7, &[1, 2, 4, 8, 9, 16, 32, 54, 64, 83, 85, 87, 90, 93, 96, 107, 108, 110, 111, 112]),
    ];
    pub const TRIPLY_EVEN: &[(usize, &[u32])] = &[(
        8,
        &[
            1, 4, 5, 6, 7, 24, 27, 52, 54, 72, 74, 96, 99, 121, 122, 125, 127, 131, 133, 134, 135, 145, 146, 147, 150, 153, 154,
            161, 163, 168, 172, 184, 188, 192, 196, 208, 212, 221, 223, 225, 226, 234, 237, 238, 239, 251, 253, 254, 255,
        ],
    )];
}

/// Witness for `Gamma_2(2^r, n) = v`: a direct sum of blocks `c * B` with
/// `c = 2^i <= v` and `B` a projective `2^(r-i)`-divisible block, choosing the
/// decomposition of least total dimension (then fewest summands).
fn binary_witness(r: u32, n: usize, v: u32) -> Option<PointMultiset> {
    let mut blocks: Vec<(u32, Shape)> = Vec::new();
    for i in 0..=r {
        let c = 1u32 << i;
        if c > v {
            break;
        }
        blocks.extend(projective_blocks(r - i).into_iter().map(|s| (c, s)));
    }
    // best[m] = (dimension, summands, block, previous length)
    let mut best: Vec<Option<(usize, usize, usize)>> = vec![None; n + 1];
    best[0] = Some((0, 0, usize::MAX));
    for m in 1..=n {
        for (bi, &(c, s)) in blocks.iter().enumerate() {
            let len = c as usize * s.len();
            if len > m {
                continue;
            }
            if let Some((d, p, _)) = best[m - len] {
                let cand = (d + s.dim(), p + 1, bi);
                if best[m].is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                    best[m] = Some(cand);
                }
            }
        }
    }
    let (dim, _, _) = best[n]?;
    if dim > MAX_K {
        return None;
    }
    let mut parts = Vec::new();
    let mut m = n;
    while m > 0 {
        let (_, _, bi) = best[m].unwrap();
        let (c, s) = blocks[bi];
        parts.push(pg::scale(&s.build(), c));
        m -= c as usize * s.len();
    }
    let mut acc = parts.pop()?;
    while let Some(p) = parts.pop() {
        acc = pg::direct_sum(&acc, &p).ok()?;
    }
    Some(acc)
}
