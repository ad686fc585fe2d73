//! Small dense linear algebra over `F_q`, plus the packed vector encoding
//! shared by the geometry and code modules.
//!
//! A vector `(v_1, ..., v_k)` packs to `sum v_i q^(k-i)`, so integer order on
//! packed codes is lexicographic order on coordinates.

use crate::gf::Field;

/// Upper bound on the ambient dimension handled anywhere in the crate.
pub const MAX_K: usize = 24;

pub type Coords = [u8; MAX_K];

pub fn pack(q: usize, v: &[u8]) -> u32 {
    v.iter().fold(0u32, |acc, &c| acc * q as u32 + c as u32)
}

pub fn unpack(q: usize, k: usize, mut code: u32) -> Coords {
    let mut out = [0u8; MAX_K];
    for i in (0..k).rev() {
        out[i] = (code % q as u32) as u8;
        code /= q as u32;
    }
    out
}

/// Scales `v` so its first nonzero entry is 1. Returns false for the zero vector.
pub fn normalize(f: &Field, v: &mut [u8]) -> bool {
    let Some(&lead) = v.iter().find(|&&c| c != 0) else {
        return false;
    };
    if lead != 1 {
        let s = f.inv_nz(lead);
        for c in v.iter_mut() {
            *c = f.mul(*c, s);
        }
    }
    true
}

pub fn dot(f: &Field, a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Row-reduces in place to reduced echelon form; returns pivot columns.
pub fn rref(f: &Field, rows: &mut Vec<Vec<u8>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let s = f.inv_nz(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, s);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let m = rows[i][c];
                for j in 0..ncols {
                    let t = f.mul(m, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &Field, rows: &[Vec<u8>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(f: &Field, a: &[Vec<u8>]) -> Option<Vec<Vec<u8>>> {
    let n = a.len();
    let mut aug: Vec<Vec<u8>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u8::from(i == j)));
            r
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `a * v` for a matrix given by rows.
pub fn mat_vec(f: &Field, a: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
    a.iter().map(|row| dot(f, row, v)).collect()
}

pub fn mat_mul(f: &Field, a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(0, |acc, (&x, br)| f.add(acc, f.mul(x, br[j]))))
                .collect()
        })
        .collect()
}

/// Incremental echelon basis used to test independence of a growing list of
/// vectors. Stores reduced rows with their pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<(usize, Vec<u8>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, f: &Field, v: &mut [u8]) {
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }

    pub fn contains(&self, f: &Field, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&c| c == 0)
    }

    /// Adds `v`; returns false (and leaves the basis unchanged) if dependent.
    pub fn insert(&mut self, f: &Field, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        let Some(p) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let s = f.inv_nz(w[p]);
        for x in w.iter_mut() {
            *x = f.mul(*x, s);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_roundtrip() {
        let v = [1u8, 0, 3, 2];
        let c = pack(4, &v);
        assert_eq!(&unpack(4, 4, c)[..4], &v);
    }

    #[test]
    fn inverse_of_inverse() {
        let f = Field::get(3).unwrap();
        let a = vec![vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]];
        let ai = inverse(f, &a).unwrap();
        let id = mat_mul(f, &a, &ai);
        for (i, row) in id.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, u8::from(i == j));
            }
        }
        assert!(inverse(f, &[vec![1, 2], vec![2, 1]]).is_none());
    }

    #[test]
    fn echelon_detects_dependence() {
        let f = Field::get(2).unwrap();
        let mut e = Echelon::new();
        assert!(e.insert(f, &[1, 1, 0]));
        assert!(e.insert(f, &[0, 1, 1]));
        assert!(!e.insert(f, &[1, 0, 1]));
        assert!(e.contains(f, &[1, 0, 1]));
        assert!(!e.contains(f, &[0, 0, 1]));
    }
}
