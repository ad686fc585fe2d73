//! Classification statements about binary divisible multisets, checked by
//! exhaustive enumeration.
//!
//! Every claim fixes `Delta` and the cardinality, restricts `gamma_1` to a
//! range, and states a property of all (or of a distinguished subset of the)
//! classes in that range. Verification enumerates the classes in every
//! dimension with the census and tests the property on each.

use std::collections::HashSet;

use serde::Serialize;

use super::{Budget, Census, CensusError, Result};
use crate::codes::{self, canonical_multiset};
use crate::pg::{self, PointMultiset, ProjPoint, StructureTag, Subspace};

#[derive(Clone, Debug)]
pub enum Verdict {
    Pass,
    /// A class violating the statement.
    Fail(PointMultiset),
    BudgetExceeded,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub statement: String,
    /// `pass`, `fail` or `budget-exceeded`.
    pub verdict: String,
    /// Classes satisfying the hypothesis.
    pub classes: usize,
    /// Lifts examined by the census.
    pub nodes: u64,
    /// The violating class in matrix text format, on failure.
    pub counterexample: Option<String>,
    #[serde(skip)]
    pub outcome: Verdict,
}

type Check = fn(&[PointMultiset]) -> Option<PointMultiset>;

struct Claim {
    id: &'static str,
    delta: u64,
    n: u32,
    /// Hypothesis `gamma_min <= gamma_1 <= gamma_max`.
    gamma_min: u32,
    gamma_max: Option<u32>,
    statement: &'static str,
    check: Check,
}

/// First class failing `pred`.
fn each(ms: &[PointMultiset], pred: impl Fn(&PointMultiset) -> bool) -> Option<PointMultiset> {
    ms.iter().find(|m| !pred(m)).cloned()
}

fn simplex(m: &PointMultiset, lambda: u32, dim: usize) -> bool {
    matches!(pg::classify_structure(m), StructureTag::SimplexMultiple { lambda: l, space } if l == lambda && space.dim() == dim)
}

fn projective_base(m: &PointMultiset, size: usize) -> bool {
    pg::classify_structure(m) == StructureTag::ProjectiveBase { n: size }
}

/// The support as a set.
fn support(m: &PointMultiset) -> PointMultiset {
    PointMultiset::from_points(m.q(), m.k(), m.support().map(|p| (p, 1))).expect("same ambient")
}

fn lambda(m: &PointMultiset, i: u32) -> u64 {
    m.entries().iter().filter(|&&(_, c)| c == i).count() as u64
}

fn a(m: &PointMultiset, i: u64) -> u64 {
    m.hyperplane_mults().into_iter().filter(|&x| x == i).count() as u64
}

fn point(m: &PointMultiset, code: u32) -> PointMultiset {
    PointMultiset::from_points(2, m.k(), [(ProjPoint(code), 1)]).expect("point")
}

fn chi(m: &PointMultiset, codes: &[u32]) -> PointMultiset {
    PointMultiset::from_points(2, m.k(), codes.iter().map(|&c| (ProjPoint(c), 1))).expect("points")
}

fn mult(m: &PointMultiset, code: u32) -> u32 {
    m.mult(ProjPoint(code))
}

fn minus(m: &PointMultiset, s: &PointMultiset, c: u32) -> Option<PointMultiset> {
    pg::sub_checked(m, &pg::scale(s, c)).ok()
}

/// Lines `{x, y, x + y}` with all points of multiplicity at least `c`.
fn lines(m: &PointMultiset, c: u32) -> Vec<[u32; 3]> {
    let pts: Vec<u32> = m.entries().iter().filter(|&&(_, x)| x >= c).map(|&(p, _)| p.code()).collect();
    let set: HashSet<u32> = pts.iter().copied().collect();
    let mut out = Vec::new();
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i + 1..] {
            let z = x ^ y;
            if z > y && set.contains(&z) {
                out.push([x, y, z]);
            }
        }
    }
    out
}

/// Planes with all points in the support.
fn planes(m: &PointMultiset) -> Vec<Vec<u32>> {
    let set: HashSet<u32> = m.support().map(|p| p.code()).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for l in lines(m, 1) {
        for &d in &set {
            if l.contains(&d) {
                continue;
            }
            let mut pl: Vec<u32> = vec![l[0], l[1], l[2], d, d ^ l[0], d ^ l[1], d ^ l[2]];
            if pl.iter().all(|p| set.contains(p)) {
                pl.sort_unstable();
                if seen.insert(pl.clone()) {
                    out.push(pl);
                }
            }
        }
    }
    out
}

/// Every subspace of codimension 2 has odd multiplicity.
fn codim2_odd(m: &PointMultiset) -> bool {
    let k = m.k();
    let hs: Vec<u32> = pg::all_points(2, k).map(|h| h.code()).collect();
    let on = |h: u32, x: u32| (h & x).count_ones().is_multiple_of(2);
    hs.iter().enumerate().all(|(i, &h1)| {
        hs[i + 1..].iter().all(|&h2| {
            let s: u32 = m.entries().iter().filter(|&&(x, _)| on(h1, x.code()) && on(h2, x.code())).map(|&(_, c)| c).sum();
            s % 2 == 1
        })
    })
}

fn rank(m: &PointMultiset, codes: &[u32]) -> usize {
    Subspace::span(2, m.k(), codes.iter().map(|&c| ProjPoint(c).coords(2, m.k()))).expect("ambient").dim()
}

/// `M = chi_L + 2 chi_P` for a line `L` and a point `P`.
fn line_plus_double_point(m: &PointMultiset) -> bool {
    m.entries().iter().filter(|&&(_, c)| c >= 2).any(|&(p, _)| minus(m, &point(m, p.code()), 2).is_some_and(|r| simplex(&r, 1, 2)))
}

fn card17_line123() -> PointMultiset {
    let g = codes::GeneratorMatrix::new(
        2,
        17,
        [
            "11111111000000000",
            "00011110110000011",
            "00001111001010101",
            "00000000000110011",
            "00000000000001111",
        ]
        .iter()
        .map(|r| r.bytes().map(|b| b - b'0').collect())
        .collect(),
    )
    .expect("valid matrix");
    codes::to_multiset(&g)
}

fn has_line123(m: &PointMultiset) -> bool {
    let ones: Vec<u32> = m.entries().iter().filter(|&&(_, c)| c == 1).map(|&(p, _)| p.code()).collect();
    let twos: Vec<u32> = m.entries().iter().filter(|&&(_, c)| c == 2).map(|&(p, _)| p.code()).collect();
    ones.iter().any(|&x| twos.iter().any(|&y| mult(m, x ^ y) == 3))
}

fn catalog() -> Vec<Claim> {
    vec![
        Claim {
            id: "2div-n2",
            delta: 2,
            n: 2,
            gamma_min: 1,
            gamma_max: None,
            statement: "a 2-divisible multiset of cardinality 2 is a double point",
            check: |ms| each(ms, |m| simplex(m, 2, 1)),
        },
        Claim {
            id: "2div-n3",
            delta: 2,
            n: 3,
            gamma_min: 1,
            gamma_max: None,
            statement: "a 2-divisible multiset of cardinality 3 is a line",
            check: |ms| each(ms, |m| simplex(m, 1, 2)),
        },
        Claim {
            id: "2div-n4",
            delta: 2,
            n: 4,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 4, 2-divisible: 2 chi_P1 + 2 chi_P2, or chi_E - chi_L for a plane E and a line L in E",
            check: |ms| {
                each(ms, |m| {
                    m.entries().iter().all(|&(_, c)| c % 2 == 0)
                        || matches!(pg::classify_structure(m), StructureTag::AffineMultiple { c: 1, space, .. } if space.dim() == 3)
                })
            },
        },
        Claim {
            id: "2div-n5",
            delta: 2,
            n: 5,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 5, 2-divisible: chi_L + 2 chi_P, or a projective base B_5",
            check: |ms| each(ms, |m| line_plus_double_point(m) || projective_base(m, 5)),
        },
        Claim {
            id: "2div-n6",
            delta: 2,
            n: 6,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 6, 2-divisible: a point of multiplicity >= 2, a projective base B_6, or two disjoint lines",
            check: |ms| {
                each(ms, |m| {
                    m.gamma1() >= 2
                        || projective_base(m, 6)
                        || lines(m, 1).iter().any(|l| minus(m, &chi(m, l), 1).is_some_and(|r| simplex(&r, 1, 2)))
                })
            },
        },
        Claim {
            id: "2div-n7",
            delta: 2,
            n: 7,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 7, 2-divisible: a point of multiplicity >= 2, a line in the support, or a projective base B_7",
            check: |ms| each(ms, |m| m.gamma1() >= 2 || !lines(m, 1).is_empty() || projective_base(m, 7)),
        },
        Claim {
            id: "4div-n4",
            delta: 4,
            n: 4,
            gamma_min: 1,
            gamma_max: None,
            statement: "a 4-divisible multiset of cardinality 4 is a 4-fold point",
            check: |ms| each(ms, |m| simplex(m, 4, 1)),
        },
        Claim {
            id: "4div-n6",
            delta: 4,
            n: 6,
            gamma_min: 1,
            gamma_max: None,
            statement: "a 4-divisible multiset of cardinality 6 is a double line",
            check: |ms| each(ms, |m| simplex(m, 2, 2)),
        },
        Claim {
            id: "4div-n7",
            delta: 4,
            n: 7,
            gamma_min: 1,
            gamma_max: None,
            statement: "a 4-divisible multiset of cardinality 7 is a plane",
            check: |ms| each(ms, |m| simplex(m, 1, 3)),
        },
        Claim {
            id: "4div-n8",
            delta: 4,
            n: 8,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 8, 4-divisible: an 8-fold point or c chi_(K \\ E) for a hyperplane E of a subspace K",
            check: |ms| each(ms, |m| simplex(m, 8, 1) || matches!(pg::classify_structure(m), StructureTag::AffineMultiple { .. })),
        },
        Claim {
            id: "4div-n10",
            delta: 4,
            n: 10,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 10, 4-divisible: a point of multiplicity >= 4, or 2 chi_B5",
            check: |ms| {
                each(ms, |m| m.gamma1() >= 4 || (m.entries().iter().all(|&(_, c)| c == 2) && projective_base(&support(m), 5)))
            },
        },
        Claim {
            id: "4div-n10-even",
            delta: 4,
            n: 10,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 10, 4-divisible: every point multiplicity is in {0, 2, 4, 6}",
            check: |ms| each(ms, |m| m.entries().iter().all(|&(_, c)| matches!(c, 2 | 4 | 6))),
        },
        Claim {
            id: "4div-n11",
            delta: 4,
            n: 11,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 11, 4-divisible: chi_E + 4 chi_P for a plane E and a point P",
            check: |ms| {
                each(ms, |m| {
                    m.entries().iter().filter(|&&(_, c)| c >= 4).any(|&(p, _)| minus(m, &point(m, p.code()), 4).is_some_and(|r| simplex(&r, 1, 3)))
                })
            },
        },
        Claim {
            id: "4div-n12",
            delta: 4,
            n: 12,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 12, 4-divisible: a point of multiplicity >= 4, or all multiplicities even",
            check: |ms| each(ms, |m| m.gamma1() >= 4 || m.entries().iter().all(|&(_, c)| c % 2 == 0)),
        },
        Claim {
            id: "4div-n13",
            delta: 4,
            n: 13,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 13, 4-divisible: chi_E + 2 chi_L, or 3 chi_C plus the points other than C on the lines <P, C>, P in a projective base B_5 not spanning C",
            check: |ms| {
                each(ms, |m| {
                    let plane_double_line = lines(m, 2).iter().any(|l| minus(m, &chi(m, l), 2).is_some_and(|r| simplex(&r, 1, 3)));
                    let cone = m.k() == 5
                        && m.support_size() == 11
                        && m.entries().iter().filter(|&&(_, c)| c == 3).any(|&(c, _)| {
                            m.entries().iter().all(|&(p, x)| p == c || x == 1)
                                && pg::project(m, c).is_ok_and(|r| r.entries().iter().all(|&(_, x)| x == 2) && projective_base(&support(&r), 5))
                        });
                    plane_double_line || cone
                })
            },
        },
        Claim {
            id: "4div-n15",
            delta: 4,
            n: 15,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 15, 4-divisible: a point of multiplicity >= 4, gamma_1 = 1, or a plane E with M >= chi_E",
            check: |ms| each(ms, |m| m.gamma1() >= 4 || m.gamma1() == 1 || !planes(m).is_empty()),
        },
        Claim {
            id: "4div-n15-structure",
            delta: 4,
            n: 15,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 15, 4-divisible: chi_E + M' with M' 4-divisible of cardinality 8, or a point P together with the lines <P', P>, P' in a projective base B_7 not spanning P",
            check: |ms| {
                each(ms, |m| {
                    let plane_plus = planes(m).iter().any(|e| minus(m, &chi(m, e), 1).is_some_and(|r| pg::is_divisible(&r, 4)));
                    let cone = m.gamma1() == 1
                        && m.support().any(|p| {
                            pg::project(m, p).is_ok_and(|r| r.entries().iter().all(|&(_, x)| x == 2) && projective_base(&support(&r), 7))
                        });
                    plane_plus || cone
                })
            },
        },
        Claim {
            id: "4div-n15-aux1",
            delta: 4,
            n: 15,
            gamma_min: 2,
            gamma_max: Some(3),
            statement: "cardinality 15, 4-divisible, gamma_1 in {2, 3}, no plane in the support: k >= 5, no line of points of multiplicity >= 2, a_7 = 7 2^(k-3) + 1 - 2 a_3, a_11 = 2^(k-3) - 2 + a_3, a_3 = (4 + lambda_2 + 3 lambda_3) 2^(k-6) - 1, and every codimension-2 subspace has odd multiplicity",
            check: |ms| {
                let planeless: Vec<PointMultiset> = ms.iter().filter(|m| planes(m).is_empty()).cloned().collect();
                each(&planeless, |m| {
                    let k = m.k() as u32;
                    let (a3, a7, a11) = (a(m, 3), a(m, 7), a(m, 11));
                    let p = 1u64 << (k - 3);
                    k >= 5
                        && lines(m, 2).is_empty()
                        && a7 + 2 * a3 == 7 * p + 1
                        && a11 + 2 == p + a3
                        && (a3 + 1) * 64 == (4 + lambda(m, 2) + 3 * lambda(m, 3)) * (1 << k)
                        && codim2_odd(m)
                })
            },
        },
        Claim {
            id: "4div-n15-aux2",
            delta: 4,
            n: 15,
            gamma_min: 2,
            gamma_max: Some(3),
            statement: "cardinality 15, 4-divisible, gamma_1 in {2, 3}, no plane in the support: k = 5 and lambda_1 >= 2 a_3 + 1",
            check: |ms| {
                let planeless: Vec<PointMultiset> = ms.iter().filter(|m| planes(m).is_empty()).cloned().collect();
                each(&planeless, |m| m.k() == 5 && lambda(m, 1) > 2 * a(m, 3))
            },
        },
        Claim {
            id: "4div-n16-aux",
            delta: 4,
            n: 16,
            gamma_min: 1,
            gamma_max: Some(3),
            statement: "cardinality 16, 4-divisible, gamma_1 <= 3: lambda_3 <= 4, lambda_2 + 3 lambda_3 <= 12, and lambda_3 < 4 implies lambda_3 <= 2",
            check: |ms| {
                each(ms, |m| {
                    let (l2, l3) = (lambda(m, 2), lambda(m, 3));
                    l3 <= 4 && l2 + 3 * l3 <= 12 && (l3 == 4 || l3 <= 2)
                })
            },
        },
        Claim {
            id: "4div-n16-aux2",
            delta: 4,
            n: 16,
            gamma_min: 3,
            gamma_max: Some(3),
            statement: "cardinality 16, 4-divisible, gamma_1 = 3, lambda_2 >= 2: (lambda_1, lambda_2, lambda_3) is (7,3,1), (6,2,2) or (9,2,1)",
            check: |ms| {
                each(ms, |m| {
                    let l = (lambda(m, 1), lambda(m, 2), lambda(m, 3));
                    l.1 < 2 || matches!(l, (7, 3, 1) | (6, 2, 2) | (9, 2, 1))
                })
            },
        },
        Claim {
            id: "4div-n17-aux",
            delta: 4,
            n: 17,
            gamma_min: 2,
            gamma_max: Some(3),
            statement: "cardinality 17, 4-divisible, gamma_1 in {2, 3}: a_5 = 2^(k-3) + 2 + a_13, a_9 = 7 2^(k-3) - 3 - 2 a_13, lambda_2 + 3 lambda_3 = 2^(6-k) (3 + a_13) - 5, k >= 4, any 3 points of multiplicity >= 2 span a plane and any 4 span a solid",
            check: |ms| {
                each(ms, |m| {
                    let k = m.k() as u32;
                    let (a5, a9, a13) = (a(m, 5), a(m, 9), a(m, 13));
                    let p = 1u64 << (k - 3);
                    let heavy: Vec<u32> = m.entries().iter().filter(|&&(_, c)| c >= 2).map(|&(x, _)| x.code()).collect();
                    let mut independent = true;
                    for (i, &x) in heavy.iter().enumerate() {
                        for (j, &y) in heavy.iter().enumerate().skip(i + 1) {
                            for (l, &z) in heavy.iter().enumerate().skip(j + 1) {
                                independent &= rank(m, &[x, y, z]) == 3;
                                for &w in &heavy[l + 1..] {
                                    independent &= rank(m, &[x, y, z, w]) == 4;
                                }
                            }
                        }
                    }
                    k >= 4
                        && a5 == p + 2 + a13
                        && a9 + 3 + 2 * a13 == 7 * p
                        && (lambda(m, 2) + 3 * lambda(m, 3) + 5) * (1 << k) == (3 + a13) * 64
                        && independent
                })
            },
        },
        Claim {
            id: "4div-n17-special",
            delta: 4,
            n: 17,
            gamma_min: 2,
            gamma_max: Some(3),
            statement: "cardinality 17, 4-divisible, gamma_1 in {2, 3}: a point of multiplicity 2, k >= 6, or lambda_3 = 1",
            check: |ms| each(ms, |m| lambda(m, 2) > 0 || m.k() >= 6 || lambda(m, 3) == 1),
        },
        Claim {
            id: "4div-n17-line123-unique",
            delta: 4,
            n: 17,
            gamma_min: 2,
            gamma_max: Some(3),
            statement: "cardinality 17, 4-divisible, gamma_1 in {2, 3}, with a line of point multiplicities 1, 2, 3: unique up to equivalence, given by the printed 5 x 17 matrix, with k = 5, lambda = (9, 1, 2), a_13 = 3, a_9 = 19, a_5 = 9",
            check: |ms| {
                let hits: Vec<&PointMultiset> = ms.iter().filter(|m| has_line123(m)).collect();
                let reference = card17_line123();
                let canon = canonical_multiset(&reference, true).multiset;
                if let Some(bad) = hits.iter().find(|m| canonical_multiset(m, true).multiset != canon) {
                    return Some((*bad).clone());
                }
                let invariants = (lambda(&reference, 1), lambda(&reference, 2), lambda(&reference, 3), a(&reference, 13), a(&reference, 9), a(&reference, 5));
                if hits.len() != 1 || reference.k() != 5 || invariants != (9, 1, 2, 3, 19, 9) || !pg::is_divisible(&reference, 4) {
                    return Some(reference);
                }
                None
            },
        },
        Claim {
            id: "4div-n17-aux3",
            delta: 4,
            n: 17,
            gamma_min: 3,
            gamma_max: Some(3),
            statement: "cardinality 17, 4-divisible, gamma_1 = 3, lambda_2 = 0: lambda_3 in {1, 2}, a line through two points of multiplicity 3 has multiplicity 6, and lambda_3 = 2 implies k >= 6",
            check: |ms| {
                each(ms, |m| {
                    if lambda(m, 2) != 0 {
                        return true;
                    }
                    let threes: Vec<u32> = m.entries().iter().filter(|&&(_, c)| c == 3).map(|&(x, _)| x.code()).collect();
                    let lines_ok = threes.iter().enumerate().all(|(i, &x)| threes[i + 1..].iter().all(|&y| mult(m, x ^ y) == 0));
                    matches!(threes.len(), 1 | 2) && lines_ok && (threes.len() == 1 || m.k() >= 6)
                })
            },
        },
        Claim {
            id: "8div-n8",
            delta: 8,
            n: 8,
            gamma_min: 1,
            gamma_max: None,
            statement: "an 8-divisible multiset of cardinality 8 is an 8-fold point",
            check: |ms| each(ms, |m| simplex(m, 8, 1)),
        },
        Claim {
            id: "8div-n12",
            delta: 8,
            n: 12,
            gamma_min: 1,
            gamma_max: None,
            statement: "an 8-divisible multiset of cardinality 12 is a 4-fold line",
            check: |ms| each(ms, |m| simplex(m, 4, 2)),
        },
        Claim {
            id: "8div-n14",
            delta: 8,
            n: 14,
            gamma_min: 1,
            gamma_max: None,
            statement: "an 8-divisible multiset of cardinality 14 is a double plane",
            check: |ms| each(ms, |m| simplex(m, 2, 3)),
        },
        Claim {
            id: "8div-n15",
            delta: 8,
            n: 15,
            gamma_min: 1,
            gamma_max: None,
            statement: "an 8-divisible multiset of cardinality 15 is a solid",
            check: |ms| each(ms, |m| simplex(m, 1, 4)),
        },
        Claim {
            id: "8div-n16",
            delta: 8,
            n: 16,
            gamma_min: 1,
            gamma_max: None,
            statement: "cardinality 16, 8-divisible: a 16-fold point or c chi_(K \\ E) for a hyperplane E of a subspace K",
            check: |ms| each(ms, |m| simplex(m, 16, 1) || matches!(pg::classify_structure(m), StructureTag::AffineMultiple { .. })),
        },
        lower_bound("8div-n20-gamma-ge-4", 20, 4),
        lower_bound("8div-n22-gamma-ge-8", 22, 8),
        lower_bound("8div-n23-gamma-ge-8", 23, 8),
        lower_bound("8div-n24-gamma-ge-4", 24, 4),
        lower_bound("8div-n26-gamma-ge-4", 26, 4),
        lower_bound("8div-n27-gamma-ge-4", 27, 4),
        lower_bound("8div-n35-gamma-ge-4", 35, 4),
        lower_bound("8div-n37-gamma-ge-8", 37, 8),
        lower_bound("8div-n39-gamma-ge-4", 39, 4),
        lower_bound("8div-n41-gamma-ge-4", 41, 4),
    ]
}

/// "No 8-divisible multiset of cardinality `n` has `gamma_1 < g`": the
/// census restricted to `gamma_1 <= g - 1` must be empty.
fn lower_bound(id: &'static str, n: u32, g: u32) -> Claim {
    Claim {
        id,
        delta: 8,
        n,
        gamma_min: 1,
        gamma_max: Some(g - 1),
        statement: "no 8-divisible multiset of this cardinality has gamma_1 below the bound",
        check: |ms| ms.first().cloned(),
    }
}

/// Identifiers of all checkable claims, in catalog order.
pub fn claim_ids() -> Vec<&'static str> {
    catalog().iter().map(|c| c.id).collect()
}

/// Checks one claim exhaustively.
pub fn verify_claim(id: &str, budget: Budget) -> Result<ClaimReport> {
    let claim = catalog().into_iter().find(|c| c.id == id).ok_or_else(|| CensusError::UnknownClaim(id.to_string()))?;
    let mut census = Census::new(2, claim.delta)?.with_budget(budget);
    verify_with(&mut census, &claim)
}

fn verify_with(census: &mut Census, claim: &Claim) -> Result<ClaimReport> {
    let (found, partial) = census.all_dimensions(claim.n, claim.gamma_max)?;
    let ms: Vec<PointMultiset> = found.into_iter().map(|(_, m)| m).filter(|m| m.gamma1() >= claim.gamma_min).collect();
    let outcome = match (claim.check)(&ms) {
        Some(bad) => Verdict::Fail(bad),
        None if partial => Verdict::BudgetExceeded,
        None => Verdict::Pass,
    };
    let (verdict, counterexample) = match &outcome {
        Verdict::Pass => ("pass", None),
        Verdict::Fail(m) => ("fail", Some(codes::from_multiset(&m.to_spanning()).map(|g| g.to_text()).unwrap_or_default())),
        Verdict::BudgetExceeded => ("budget-exceeded", None),
    };
    let statement = if claim.statement.starts_with("no 8-divisible") {
        format!("every 8-divisible multiset of cardinality {} has gamma_1 >= {}", claim.n, claim.gamma_max.unwrap_or(0) + 1)
    } else {
        claim.statement.to_string()
    };
    Ok(ClaimReport {
        id: claim.id.to_string(),
        statement,
        verdict: verdict.to_string(),
        classes: ms.len(),
        nodes: census.nodes(),
        counterexample,
        outcome,
    })
}
