//! Lifting a `Delta`-divisible multiset from `PG(k-2, q)` to `PG(k-1, q)`.
//!
//! Every spanning multiset `M` in `PG(k-1, q)` with a point `Q` of multiplicity
//! `t = gamma_1(M)` projects through `Q` onto a spanning `Delta`-divisible
//! multiset `R` in `PG(k-2, q)` of cardinality `n - t` whose point
//! multiplicities are at most `q t`. Conversely, with `Q = (0, ..., 0, 1)`, the
//! preimages of a point `P` of `R` are the points `(P, a)`, `a in F_q`, and a
//! lift is a split of `R(P)` into multiplicities `z_(P,a) <= t`.
//!
//! Hyperplanes through `Q` meet `M` in `t + R(H')`, which is automatically
//! right. The others are `h = (h', 1)`, with `M(H) = sum_P z_(P, -h'.P)`, giving
//! `q^(k-1)` congruences. For `q = 2` and `Delta = 2^r`, the Ward-type criterion
//! replaces them by far fewer ones: writing `y_P = z_(P,1)`, every subset `S` of
//! parent coordinates with `|S| < r` needs
//! `sum_{P supseteq S} y_P + t [S = {}] = 0 mod 2^(r - |S|)`.
//!
//! Lifts differing by a shear `(P, a) -> (P, a + phi(P))` are equivalent, so the
//! split of each point of a fixed basis of `R` is normalized. The remaining
//! system is solved by meeting in the middle on the vector of residues.

use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use crate::gf::Field;
use crate::linalg::{self, pack, unpack, Echelon};

/// One admissible split of a parent point's multiplicity.
struct Choice {
    /// `z[a]` for `a in F_q` (index order).
    z: Vec<u32>,
    /// Residue contributed to each condition.
    contrib: Vec<u8>,
}

struct Var {
    code: u32,
    choices: Vec<Choice>,
}

pub(crate) struct Lifter<'a> {
    f: &'static Field,
    q: usize,
    /// Dimension of the parent.
    kp: usize,
    t: u32,
    parent: &'a [(u32, u32)],
    /// `r` when the Ward-type conditions for `Delta = 2^r` are in use.
    ward: Option<u32>,
    moduli: Vec<u8>,
    target: Vec<u8>,
}

/// Splits of `m` into `q` parts, each at most `t`.
fn compositions(m: u32, q: usize, t: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; q];
    fn rec(i: usize, left: u32, t: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let q = cur.len();
        if i == q - 1 {
            if left <= t {
                cur[i] = left;
                out.push(cur.clone());
            }
            return;
        }
        // remaining q-1-i parts can absorb at most (q-1-i)*t
        let rest_cap = (q - 1 - i) as u32 * t;
        let lo = left.saturating_sub(rest_cap);
        for v in lo..=left.min(t) {
            cur[i] = v;
            rec(i + 1, left - v, t, cur, out);
        }
    }
    rec(0, m, t, &mut cur, &mut out);
    out
}

impl<'a> Lifter<'a> {
    pub(crate) fn new(q: usize, kp: usize, delta: u64, n: u64, t: u32, parent: &'a [(u32, u32)]) -> Self {
        let f = Field::get(q).expect("supported field");
        let ward = (q == 2 && delta.is_power_of_two() && delta > 1).then(|| delta.trailing_zeros());
        let (moduli, target) = if let Some(r) = ward {
            let mut moduli = Vec::new();
            let mut target = Vec::new();
            for s in 0u32..(1 << kp) {
                let w = s.count_ones();
                if w < r {
                    let md = 1u32 << (r - w);
                    moduli.push(md as u8);
                    target.push(if s == 0 { ((md - t % md) % md) as u8 } else { 0 });
                }
            }
            (moduli, target)
        } else {
            let c = q.pow(kp as u32);
            (vec![delta as u8; c], vec![(n % delta) as u8; c])
        };
        Lifter { f, q, kp, t, parent, ward, moduli, target }
    }

    /// Residues contributed by putting `z` over parent point `code`.
    fn contribution(&self, code: u32, z: &[u32]) -> Vec<u8> {
        if let Some(r) = self.ward {
            let y = z[1];
            let mut out = Vec::with_capacity(self.moduli.len());
            let mut idx = 0;
            for s in 0u32..(1 << self.kp) {
                if s.count_ones() < r {
                    let md = self.moduli[idx] as u32;
                    out.push(if code & s == s { (y % md) as u8 } else { 0 });
                    idx += 1;
                }
            }
            out
        } else {
            let f = self.f;
            let p = unpack(self.q, self.kp, code);
            (0..self.moduli.len())
                .map(|h| {
                    let hv = unpack(self.q, self.kp, h as u32);
                    let a = f.neg(linalg::dot(f, &hv[..self.kp], &p[..self.kp]));
                    (z[a as usize] % self.moduli[h] as u32) as u8
                })
                .collect()
        }
    }

    fn normalized(&self, z: &[u32]) -> bool {
        // lexicographically largest among its translates a -> a + c
        let f = self.f;
        (1..self.q as u8).all(|c| {
            let shifted: Vec<u32> = (0..self.q as u8).map(|a| z[f.add(a, c) as usize]).collect();
            z >= &shifted[..]
        })
    }

    fn variables(&self) -> Vec<Var> {
        let f = self.f;
        // basis of the parent drawn from the points with most splits
        let mut order: Vec<usize> = (0..self.parent.len()).collect();
        let splits: Vec<usize> = self.parent.iter().map(|&(_, m)| compositions(m, self.q, self.t).len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(splits[i]));
        let mut basis = vec![false; self.parent.len()];
        let mut e = Echelon::new();
        for &i in &order {
            let v = unpack(self.q, self.kp, self.parent[i].0);
            if e.insert(f, &v[..self.kp]) {
                basis[i] = true;
            }
            if e.dim() == self.kp {
                break;
            }
        }
        self.parent
            .iter()
            .zip(&basis)
            .map(|(&(code, m), &b)| {
                let choices = compositions(m, self.q, self.t)
                    .into_iter()
                    .filter(|z| !b || self.normalized(z))
                    .map(|z| Choice { contrib: self.contribution(code, &z), z })
                    .collect();
                Var { code, choices }
            })
            .collect()
    }

    fn add_into(&self, acc: &mut [u8], c: &[u8]) {
        for ((a, &x), &m) in acc.iter_mut().zip(c).zip(&self.moduli) {
            *a = (*a + x) % m;
        }
    }

    fn sub_into(&self, acc: &mut [u8], c: &[u8]) {
        for ((a, &x), &m) in acc.iter_mut().zip(c).zip(&self.moduli) {
            *a = (*a + m - x) % m;
        }
    }

    fn key(v: &[u8]) -> u64 {
        let mut h = DefaultHasher::new();
        v.hash(&mut h);
        h.finish()
    }

    /// Calls `visit` with the residue vector and digit choice of every
    /// combination of the given variables.
    fn enumerate(&self, vars: &[&Var], mut visit: impl FnMut(&[u8], &[usize])) {
        let c = self.moduli.len();
        let mut digits = vec![0usize; vars.len()];
        let mut acc = vec![0u8; c];
        for v in vars {
            self.add_into(&mut acc, &v.choices[0].contrib);
        }
        loop {
            visit(&acc, &digits);
            let mut i = 0;
            loop {
                if i == vars.len() {
                    return;
                }
                self.sub_into(&mut acc, &vars[i].choices[digits[i]].contrib);
                digits[i] += 1;
                if digits[i] == vars[i].choices.len() {
                    digits[i] = 0;
                    self.add_into(&mut acc, &vars[i].choices[0].contrib);
                    i += 1;
                } else {
                    self.add_into(&mut acc, &vars[i].choices[digits[i]].contrib);
                    break;
                }
            }
        }
    }

    /// All lifts, as point lists of the child (unsorted codes with
    /// multiplicities). `visit` returns false to stop early.
    pub(crate) fn run(&self, mut visit: impl FnMut(Vec<(u32, u32)>) -> bool) {
        let vars = self.variables();
        if vars.iter().any(|v| v.choices.is_empty()) {
            return;
        }
        let mut need = self.target.clone();
        let mut free: Vec<&Var> = Vec::new();
        let mut fixed: Vec<&Var> = Vec::new();
        for v in &vars {
            if v.choices.len() == 1 {
                self.sub_into(&mut need, &v.choices[0].contrib);
                fixed.push(v);
            } else {
                free.push(v);
            }
        }
        // balance the two halves by log of the number of combinations
        free.sort_by_key(|v| std::cmp::Reverse(v.choices.len()));
        let (mut left, mut right): (Vec<&Var>, Vec<&Var>) = (Vec::new(), Vec::new());
        let (mut wl, mut wr) = (0f64, 0f64);
        for v in free {
            let w = (v.choices.len() as f64).ln();
            if wl <= wr {
                left.push(v);
                wl += w;
            } else {
                right.push(v);
                wr += w;
            }
        }
        let mut table: HashMap<u64, Vec<Vec<u16>>> = HashMap::new();
        self.enumerate(&right, |acc, d| {
            table.entry(Self::key(acc)).or_default().push(d.iter().map(|&x| x as u16).collect());
        });
        let q = self.q as u32;
        let t = self.t;
        let mut stop = false;
        let mut want = vec![0u8; self.moduli.len()];
        let mut check = vec![0u8; self.moduli.len()];
        self.enumerate(&left, |acc, dl| {
            if stop {
                return;
            }
            want.copy_from_slice(&need);
            self.sub_into(&mut want, acc);
            let Some(list) = table.get(&Self::key(&want)) else { return };
            for dr in list {
                // guard against hash collisions
                check.iter_mut().for_each(|x| *x = 0);
                for (v, &d) in right.iter().zip(dr) {
                    self.add_into(&mut check, &v.choices[d as usize].contrib);
                }
                if check != want {
                    continue;
                }
                let mut pts: Vec<(u32, u32)> = vec![(1, t)];
                let chosen = left
                    .iter()
                    .zip(dl.iter().copied())
                    .chain(right.iter().zip(dr.iter().map(|&d| d as usize)))
                    .map(|(v, d)| (v.code, &v.choices[d].z))
                    .chain(fixed.iter().map(|v| (v.code, &v.choices[0].z)));
                for (code, z) in chosen {
                    for (a, &c) in z.iter().enumerate() {
                        if c > 0 {
                            pts.push((code * q + a as u32, c));
                        }
                    }
                }
                if !visit(pts) {
                    stop = true;
                    return;
                }
            }
        });
    }
}

/// Sorted multiplicities of the lines through `x` (excluding `x` itself),
/// largest first: the point distribution of the projection through `x`.
pub(crate) fn line_profile(f: &Field, q: usize, k: usize, pts: &[(u32, u32)], x: u32) -> Vec<u32> {
    let lookup = |c: u32| pts.binary_search_by_key(&c, |&(p, _)| p).map_or(0, |i| pts[i].1);
    let mut lines: Vec<(u32, u32)> = Vec::new();
    if q == 2 {
        for &(p, m) in pts {
            if p != x {
                let other = p ^ x;
                if other > p || lookup(other) == 0 {
                    lines.push((p.min(other), m + lookup(other)));
                }
            }
        }
    } else {
        let xv = unpack(q, k, x);
        let mut seen: Vec<u32> = Vec::new();
        for &(p, _) in pts {
            if p == x {
                continue;
            }
            let pv = unpack(q, k, p);
            let mut members = Vec::with_capacity(q);
            let mut v = vec![0u8; k];
            for lam in 0..q as u8 {
                for i in 0..k {
                    v[i] = f.add(pv[i], f.mul(lam, xv[i]));
                }
                linalg::normalize(f, &mut v);
                members.push(pack(q, &v));
            }
            let id = *members.iter().min().unwrap();
            if seen.contains(&id) {
                continue;
            }
            seen.push(id);
            lines.push((id, members.iter().map(|&c| lookup(c)).sum()));
        }
    }
    let mut out: Vec<u32> = lines.into_iter().map(|(_, v)| v).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_respect_cap() {
        assert_eq!(compositions(2, 2, 1), vec![vec![1, 1]]);
        assert_eq!(compositions(3, 2, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(2, 4, 2).len(), 10);
        assert!(compositions(5, 2, 2).is_empty());
    }

    #[test]
    fn lifting_a_point_gives_lines_and_double_points() {
        // parent 2*P in PG(0,2), t = 1: the line {(1,0), (1,1), Q}
        let parent = [(1u32, 2u32)];
        let l = Lifter::new(2, 1, 2, 3, 1, &parent);
        let mut out = Vec::new();
        l.run(|mut p| {
            p.sort_unstable();
            out.push(p);
            true
        });
        assert_eq!(out, vec![vec![(1, 1), (2, 1), (3, 1)]]);
    }

    #[test]
    fn ward_and_generic_conditions_agree() {
        // same parent, two condition systems: the sets of lifts must coincide
        let line = [(1u32, 1u32), (2, 1), (3, 1)];
        let double_line = [(1u32, 2u32), (2, 2), (3, 2)];
        for (parent, delta, t) in [(&line, 2u64, 1u32), (&line, 2, 2), (&double_line, 4, 1), (&double_line, 4, 2), (&double_line, 2, 2)] {
            let n = parent.iter().map(|&(_, m)| m as u64).sum::<u64>() + t as u64;
            let a = Lifter::new(2, 2, delta, n, t, parent);
            assert!(a.ward.is_some());
            let mut b = Lifter::new(2, 2, delta, n, t, parent);
            let c = 4;
            b.ward = None;
            b.moduli = vec![delta as u8; c];
            b.target = vec![(n % delta) as u8; c];
            let collect = |l: &Lifter| {
                let mut v = Vec::new();
                l.run(|mut p| {
                    p.sort_unstable();
                    v.push(p);
                    true
                });
                v.sort();
                v
            };
            assert_eq!(collect(&a), collect(&b), "delta={delta} n={n} t={t}");
        }
    }
}
