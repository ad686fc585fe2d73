//! Canonical forms of multisets of points under the (semi)linear group.
//!
//! A labelling is an ordered basis `b_1, ..., b_k` picked from the support,
//! together with a diagonal rescaling and (for `q = p^e`, `e > 1`) a power of
//! the Frobenius map. Mapping `b_i` to `e_i` and sorting the image gives a
//! candidate; the canonical form is the lexicographically least candidate.
//!
//! The basis points are picked by an individualization-refinement search:
//! support points are coloured by an equitable refinement of the complete
//! graph whose edge `{P, R}` is weighted by the multiplicity of the other
//! points on the line `PR`, jointly with the point-hyperplane incidence
//! structure when the ambient space is small enough, and only points of the
//! first admissible colour class are tried at each level. Automorphisms discovered as coinciding
//! leaves prune the search both by orbits and by jumping back to the point of
//! divergence with the best path.

use crate::gf::Field;
use crate::linalg::{self, pack, unpack, Echelon};
use crate::pg::{PointMultiset, ProjPoint};

/// A semilinear map `x -> A * frob^j(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    pub matrix: Vec<Vec<u8>>,
    pub frobenius: u32,
}

impl SemilinearMap {
    pub fn apply(&self, f: &Field, v: &[u8]) -> Vec<u8> {
        let w: Vec<u8> = v.iter().map(|&c| f.frob_pow(c, self.frobenius)).collect();
        linalg::mat_vec(f, &self.matrix, &w)
    }

    /// Image of a point multiset (same ambient dimension).
    pub fn apply_multiset(&self, m: &PointMultiset) -> PointMultiset {
        let f = m.field();
        let items: Vec<(ProjPoint, u32)> = m
            .entries()
            .iter()
            .map(|&(p, c)| (ProjPoint::from_coords(m.q(), &self.apply(f, &p.coords(m.q(), m.k()))).expect("invertible"), c))
            .collect();
        PointMultiset::from_points(m.q(), m.k(), items).expect("same ambient")
    }
}

#[inline]
fn mix(x: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Leaf {
    image: Vec<(u32, u32)>,
    /// image code of each support point
    codes: Vec<u32>,
    path: Vec<usize>,
    map: SemilinearMap,
}

struct Search<'a> {
    f: &'static Field,
    q: usize,
    k: usize,
    frob_powers: u32,
    n: usize,
    coords: Vec<Vec<u8>>,
    mults: Vec<u32>,
    w: Vec<u32>,
    /// support indices on each hyperplane (empty when not tracked)
    hyper_pts: Vec<Vec<u16>>,
    /// hyperplanes through each support point
    pt_hypers: Vec<Vec<u32>>,
    best: Option<Leaf>,
    first: Option<Leaf>,
    /// image code -> support index, for the best leaf
    best_inverse: Vec<(u32, usize)>,
    first_inverse: Vec<(u32, usize)>,
    auts: Vec<Vec<usize>>,
    nodes: u64,
    _m: &'a PointMultiset,
}

impl<'a> Search<'a> {
    fn new(m: &'a PointMultiset, semilinear: bool) -> Self {
        let (q, k) = (m.q(), m.k());
        let f = m.field();
        let n = m.support_size();
        let codes: Vec<u32> = m.entries().iter().map(|&(p, _)| p.code()).collect();
        let mults: Vec<u32> = m.entries().iter().map(|&(_, c)| c).collect();
        let coords: Vec<Vec<u8>> = codes.iter().map(|&c| unpack(q, k, c)[..k].to_vec()).collect();
        let lookup = |code: u32| codes.binary_search(&code).map_or(0, |i| mults[i]);
        let mut w = vec![0u32; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let s = if q == 2 {
                    lookup(codes[i] ^ codes[j])
                } else {
                    let mut s = 0;
                    let mut v = vec![0u8; k];
                    for lam in f.units() {
                        for t in 0..k {
                            v[t] = f.add(coords[i][t], f.mul(lam, coords[j][t]));
                        }
                        linalg::normalize(f, &mut v);
                        s += lookup(pack(q, &v));
                    }
                    // each other point of the line arises for exactly one lambda
                    s
                };
                w[i * n + j] = s;
                w[j * n + i] = s;
            }
        }
        let (hyper_pts, pt_hypers) = Self::incidence(f, q, k, &codes, &coords);
        Search {
            f,
            q,
            k,
            frob_powers: if semilinear { f.e() } else { 1 },
            n,
            coords,
            mults,
            w,
            hyper_pts,
            pt_hypers,
            best: None,
            first: None,
            best_inverse: Vec::new(),
            first_inverse: Vec::new(),
            auts: Vec::new(),
            nodes: 0,
            _m: m,
        }
    }

    /// Hyperplanes meeting the support, when there are at most
    /// `MAX_HYPERPLANES` hyperplanes in all.
    fn incidence(f: &Field, q: usize, k: usize, codes: &[u32], coords: &[Vec<u8>]) -> (Vec<Vec<u16>>, Vec<Vec<u32>>) {
        const MAX_HYPERPLANES: u64 = 1 << 13;
        let n = codes.len();
        if crate::pg::gauss(k as u32, q as u64) > MAX_HYPERPLANES || n > u16::MAX as usize {
            return (Vec::new(), Vec::new());
        }
        let mut hyper_pts = Vec::new();
        let mut pt_hypers = vec![Vec::new(); n];
        for h in crate::pg::all_points(q, k) {
            let on: Vec<u16> = if q == 2 {
                (0..n).filter(|&i| (codes[i] & h.code()).count_ones().is_multiple_of(2)).map(|i| i as u16).collect()
            } else {
                let hv = h.coords(q, k);
                (0..n).filter(|&i| linalg::dot(f, &hv, &coords[i]) == 0).map(|i| i as u16).collect()
            };
            if on.is_empty() {
                continue;
            }
            let id = hyper_pts.len() as u32;
            for &i in &on {
                pt_hypers[i as usize].push(id);
            }
            hyper_pts.push(on);
        }
        (hyper_pts, pt_hypers)
    }

    /// Relabels `keys` to dense ids in sorted key order.
    fn relabel(keys: &[(u32, u64)]) -> (Vec<u32>, usize) {
        let mut sorted: Vec<(u32, u64)> = keys.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let ids = keys.iter().map(|key| sorted.binary_search(key).unwrap() as u32).collect();
        (ids, sorted.len())
    }

    fn refine(&self, colors: &mut Vec<u32>) {
        let n = self.n;
        let count = |c: &[u32]| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        let mut cells = count(colors);
        let mut hcolors = vec![0u32; self.hyper_pts.len()];
        let mut hcells = 1;
        loop {
            if cells == n {
                return;
            }
            let prev_hcells = hcells;
            if !self.hyper_pts.is_empty() {
                let keys: Vec<(u32, u64)> = self
                    .hyper_pts
                    .iter()
                    .zip(&hcolors)
                    .map(|(on, &hc)| (hc, on.iter().fold(0u64, |h, &i| h.wrapping_add(mix(colors[i as usize] as u64)))))
                    .collect();
                let (ids, c) = Self::relabel(&keys);
                hcolors = ids;
                hcells = c;
            }
            let keys: Vec<(u32, u64)> = (0..n)
                .map(|i| {
                    let row = &self.w[i * n..(i + 1) * n];
                    let mut h = 0u64;
                    for (j, &wt) in row.iter().enumerate() {
                        if j != i {
                            h = h.wrapping_add(mix(((colors[j] as u64) << 32) | wt as u64));
                        }
                    }
                    if let Some(hs) = self.pt_hypers.get(i) {
                        let mut g = 0u64;
                        for &x in hs {
                            g = g.wrapping_add(mix(hcolors[x as usize] as u64 ^ 0xA5A5_0000_0000));
                        }
                        h = mix(h ^ g.rotate_left(17));
                    }
                    (colors[i], h)
                })
                .collect();
            let (ids, new_cells) = Self::relabel(&keys);
            *colors = ids;
            if new_cells == cells && hcells == prev_hcells {
                return;
            }
            cells = new_cells;
        }
    }

    fn individualize(&self, colors: &[u32], b: usize) -> Vec<u32> {
        let keys: Vec<(u32, u64)> = colors.iter().enumerate().map(|(i, &c)| (c, u64::from(i == b))).collect();
        let mut ids = Self::relabel(&keys).0;
        self.refine(&mut ids);
        ids
    }

    fn leaf(&self, path: &[usize]) -> Leaf {
        let (f, k) = (self.f, self.k);
        // columns of B are the basis points
        let b: Vec<Vec<u8>> = (0..k).map(|r| path.iter().map(|&i| self.coords[i][r]).collect()).collect();
        let binv = linalg::inverse(f, &b).expect("independent basis");
        let pre: Vec<Vec<u8>> = self.coords.iter().map(|v| linalg::mat_vec(f, &binv, v)).collect();
        let units: Vec<u8> = f.units().collect();
        let nscal = units.len().pow(k as u32 - 1);
        let mut best: Option<(Vec<(u32, u32)>, Vec<u32>, Vec<u8>, u32)> = None;
        let mut d = vec![1u8; k];
        for j in 0..self.frob_powers {
            for s in 0..nscal {
                let mut t = s;
                for di in d.iter_mut().skip(1) {
                    *di = units[t % units.len()];
                    t /= units.len();
                }
                let mut codes = Vec::with_capacity(self.n);
                let mut v = vec![0u8; k];
                for p in &pre {
                    for r in 0..k {
                        v[r] = f.mul(d[r], f.frob_pow(p[r], j));
                    }
                    linalg::normalize(f, &mut v);
                    codes.push(pack(self.q, &v));
                }
                let mut image: Vec<(u32, u32)> = codes.iter().copied().zip(self.mults.iter().copied()).collect();
                image.sort_unstable();
                if best.as_ref().is_none_or(|(bi, ..)| image < *bi) {
                    best = Some((image, codes, d.clone(), j));
                }
            }
        }
        let (image, codes, d, j) = best.expect("at least one scaling");
        let binv_frob: Vec<Vec<u8>> = binv.iter().map(|row| row.iter().map(|&c| f.frob_pow(c, j)).collect()).collect();
        let matrix = binv_frob.iter().zip(&d).map(|(row, &di)| row.iter().map(|&c| f.mul(di, c)).collect()).collect();
        Leaf { image, codes, path: path.to_vec(), map: SemilinearMap { matrix, frobenius: j } }
    }

    fn inverse_of(leaf: &Leaf) -> Vec<(u32, usize)> {
        let mut inv: Vec<(u32, usize)> = leaf.codes.iter().copied().enumerate().map(|(i, c)| (c, i)).collect();
        inv.sort_unstable();
        inv
    }

    fn automorphism(cur: &Leaf, target_inverse: &[(u32, usize)]) -> Vec<usize> {
        cur.codes
            .iter()
            .map(|c| target_inverse[target_inverse.binary_search_by_key(c, |&(x, _)| x).unwrap()].1)
            .collect()
    }

    fn divergence(a: &[usize], b: &[usize]) -> usize {
        a.iter().zip(b).position(|(x, y)| x != y).unwrap_or(a.len())
    }

    /// Returns `Some(d)` to unwind to the node whose prefix has length `d`.
    fn search(&mut self, path: &mut Vec<usize>, span: &Echelon, colors: &[u32]) -> Option<usize> {
        self.nodes += 1;
        let depth = path.len();
        if depth == self.k {
            return self.visit_leaf(path);
        }
        let outside: Vec<usize> = (0..self.n).filter(|&i| !span.contains(self.f, &self.coords[i])).collect();
        let target = outside.iter().map(|&i| colors[i]).min().expect("support spans");
        let cands: Vec<usize> = outside.into_iter().filter(|&i| colors[i] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &c in &cands {
            if !explored.is_empty() && self.same_orbit(path, c, &explored) {
                continue;
            }
            explored.push(c);
            let child_colors = if cands.len() == 1 { colors.to_vec() } else { self.individualize(colors, c) };
            let mut child_span = span.clone();
            child_span.insert(self.f, &self.coords[c]);
            path.push(c);
            let r = self.search(path, &child_span, &child_colors);
            path.pop();
            if let Some(d) = r {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn same_orbit(&self, prefix: &[usize], c: usize, explored: &[usize]) -> bool {
        let fixing: Vec<&Vec<usize>> = self.auts.iter().filter(|g| prefix.iter().all(|&b| g[b] == b)).collect();
        if fixing.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for g in fixing {
            for (i, &gi) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, gi));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rc = find(&mut parent, c);
        explored.iter().any(|&e| find(&mut parent, e) == rc)
    }

    fn visit_leaf(&mut self, path: &[usize]) -> Option<usize> {
        let leaf = self.leaf(path);
        if self.first.is_none() {
            self.first_inverse = Self::inverse_of(&leaf);
            self.best_inverse = self.first_inverse.clone();
            self.best = Some(Leaf { image: leaf.image.clone(), codes: leaf.codes.clone(), path: leaf.path.clone(), map: leaf.map.clone() });
            self.first = Some(leaf);
            return None;
        }
        let first = self.first.as_ref().unwrap();
        if leaf.image == first.image {
            let g = Self::automorphism(&leaf, &self.first_inverse);
            let d = Self::divergence(&leaf.path, &first.path);
            self.push_aut(g);
            return Some(d);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.image.cmp(&best.image) {
            std::cmp::Ordering::Less => {
                self.best_inverse = Self::inverse_of(&leaf);
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let g = Self::automorphism(&leaf, &self.best_inverse);
                let d = Self::divergence(&leaf.path, &best.path);
                self.push_aut(g);
                Some(d)
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    fn push_aut(&mut self, g: Vec<usize>) {
        if g.iter().enumerate().any(|(i, &x)| i != x) && !self.auts.contains(&g) {
            self.auts.push(g);
        }
    }
}

/// Result of canonicalizing a spanning multiset.
#[derive(Clone, Debug)]
pub struct CanonicalMultiset {
    pub multiset: PointMultiset,
    pub map: SemilinearMap,
    /// Search-tree nodes visited; useful for profiling.
    pub nodes: u64,
    /// Generators found for the automorphism group, as permutations of the support.
    pub automorphisms: Vec<Vec<usize>>,
}

/// Canonical representative of a spanning multiset under `PGammaL(k, q)`
/// (or `PGL(k, q)` when `semilinear` is false).
pub fn canonical_multiset(m: &PointMultiset, semilinear: bool) -> CanonicalMultiset {
    assert!(m.is_spanning(), "canonical form needs a spanning multiset");
    let mut s = Search::new(m, semilinear);
    let mut colors: Vec<u32> = {
        let keys: Vec<(u32, u64)> = s.mults.iter().map(|&c| (c, 0)).collect();
        Search::relabel(&keys).0
    };
    s.refine(&mut colors);
    let mut path = Vec::with_capacity(s.k);
    s.search(&mut path, &Echelon::new(), &colors);
    let best = s.best.take().expect("at least one leaf");
    let items = best.image.iter().map(|&(c, m)| (ProjPoint(c), m)).collect();
    CanonicalMultiset {
        multiset: PointMultiset::from_sorted(m.q(), m.k(), items),
        map: best.map,
        nodes: s.nodes,
        automorphisms: s.auts,
    }
}
