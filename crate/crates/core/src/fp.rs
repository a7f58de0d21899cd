//! Dense linear algebra over the prime field F_p.
//!
//! Vectors are rows; a subspace is the row space of a matrix kept in reduced
//! row-echelon form. Everything here is exact arithmetic on `u32` residues.

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(p: u32, a: u32, b: u32) -> u32 {
    (a + b) % p
}

#[inline]
pub fn sub(p: u32, a: u32, b: u32) -> u32 {
    (a + p - b) % p
}

#[inline]
pub fn mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(p: u32, a: u32) -> u32 {
    (p - a % p) % p
}

pub fn inv(p: u32, a: u32) -> u32 {
    // Fermat; p is prime and a nonzero.
    debug_assert!(a % p != 0);
    pow(p, a, p - 2)
}

pub fn pow(p: u32, mut base: u32, mut exp: u32) -> u32 {
    let mut acc = 1u32;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(p, acc, base);
        }
        base = mul(p, base, base);
        exp >>= 1;
    }
    acc
}

/// Row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl FpMat {
    pub fn new(p: u32, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>], cols: usize) -> Self {
        let mut m = FpMat::new(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = v % p;
            }
        }
        m
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = FpMat::new(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut sel = None;
            for i in r..self.rows {
                if self.at(i, c) != 0 {
                    sel = Some(i);
                    break;
                }
            }
            let Some(i) = sel else { continue };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, i * self.cols + j);
            }
            let piv_inv = inv(p, self.at(r, c));
            for j in c..self.cols {
                let v = mul(p, self.at(r, j), piv_inv);
                self.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i != r && self.at(i, c) != 0 {
                    let factor = self.at(i, c);
                    for j in c..self.cols {
                        let v = sub(p, self.at(i, j), mul(p, factor, self.at(r, j)));
                        self.data[i * self.cols + j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows = r;
        self.data.truncate(r * self.cols);
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Matrix product (rows of self times other).
    pub fn matmul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = FpMat::new(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add(p, out.at(i, j), mul(p, a, other.at(k, j)));
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    /// Basis of the (right) nullspace { x : M xᵀ = 0 }, returned as rows.
    pub fn nullspace(&self) -> FpMat {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut out = FpMat::new(p, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (ri, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, neg(p, m.at(ri, fc)));
            }
        }
        out.rref();
        out
    }

    pub fn vstack(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.p, other.p);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMat { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }
}

/// A subspace of F_p^dim, stored as an RREF basis. The zero space has no rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub basis: FpMat,
}

impl Subspace {
    pub fn zero(p: u32, dim: usize) -> Self {
        Subspace { basis: FpMat::new(p, 0, dim) }
    }

    pub fn full(p: u32, dim: usize) -> Self {
        Subspace { basis: FpMat::identity(p, dim) }
    }

    pub fn from_spanning(p: u32, vectors: &[Vec<u32>], dim: usize) -> Self {
        let mut m = FpMat::from_rows(p, vectors, dim);
        m.rref();
        Subspace { basis: m }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn p(&self) -> u32 {
        self.basis.p
    }

    pub fn contains_vec(&self, v: &[u32]) -> bool {
        let mut m = self.basis.clone();
        let extra = FpMat::from_rows(self.p(), &[v.to_vec()], self.ambient_dim());
        m = m.vstack(&extra);
        m.rref().len() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.basis.rows).all(|i| self.contains_vec(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compat(other)?;
        let mut m = self.basis.vstack(&other.basis);
        m.rref();
        Ok(Subspace { basis: m })
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compat(other)?;
        let p = self.p();
        let dim = self.ambient_dim();
        let (ka, kb) = (self.dim(), other.dim());
        if ka == 0 || kb == 0 {
            return Ok(Subspace::zero(p, dim));
        }
        // Solve x·A = y·B: nullspace of the (ka+kb) x dim system stacked as
        // columns [Aᵀ | -Bᵀ] acting on (x, y).
        let mut sys = FpMat::new(p, dim, ka + kb);
        for i in 0..ka {
            for j in 0..dim {
                sys.set(j, i, self.basis.at(i, j));
            }
        }
        for i in 0..kb {
            for j in 0..dim {
                sys.set(j, ka + i, neg(p, other.basis.at(i, j)));
            }
        }
        let null = sys.nullspace();
        let mut vecs = Vec::new();
        for r in 0..null.rows {
            let mut v = vec![0u32; dim];
            for i in 0..ka {
                let x = null.at(r, i);
                if x != 0 {
                    for j in 0..dim {
                        v[j] = add(p, v[j], mul(p, x, self.basis.at(i, j)));
                    }
                }
            }
            vecs.push(v);
        }
        Ok(Subspace::from_spanning(p, &vecs, dim))
    }

    fn compat(&self, other: &Subspace) -> Result<()> {
        if self.p() != other.p() || self.ambient_dim() != other.ambient_dim() {
            return Err(Error::MismatchedParent);
        }
        Ok(())
    }

    /// Enumerate all vectors of the subspace (p^dim of them). Small use only.
    pub fn enumerate(&self) -> Vec<Vec<u32>> {
        let p = self.p();
        let d = self.dim();
        let n = self.ambient_dim();
        let total = (p as u64).pow(d as u32);
        let mut out = Vec::with_capacity(total as usize);
        for code in 0..total {
            let mut c = code;
            let mut v = vec![0u32; n];
            for i in 0..d {
                let coef = (c % p as u64) as u32;
                c /= p as u64;
                if coef != 0 {
                    for j in 0..n {
                        v[j] = add(p, v[j], mul(p, coef, self.basis.at(i, j)));
                    }
                }
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let mut m = FpMat::from_rows(3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 0]], 3);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rows, 2);
    }

    #[test]
    fn nullspace_dimension() {
        // x + y + z = 0 over F_5 has a 2-dimensional solution space.
        let m = FpMat::from_rows(5, &[vec![1, 1, 1]], 3);
        let ns = m.nullspace();
        assert_eq!(ns.rows, 2);
        for r in 0..ns.rows {
            let s: u32 = ns.row(r).iter().sum();
            assert_eq!(s % 5, 0);
        }
    }

    #[test]
    fn subspace_lattice() {
        let p = 3;
        let a = Subspace::from_spanning(p, &[vec![1, 0, 0], vec![0, 1, 0]], 3);
        let b = Subspace::from_spanning(p, &[vec![0, 1, 0], vec![0, 0, 1]], 3);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains_vec(&[0, 1, 0]));
        let s = a.sum(&b).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(a.intersect(&Subspace::zero(p, 3)).unwrap().dim() == 0);
    }

    #[test]
    fn field_inverse() {
        for p in [2u32, 3, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(mul(p, a, inv(p, a)), 1);
            }
        }
    }
}
