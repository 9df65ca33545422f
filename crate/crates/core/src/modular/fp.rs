//! Dense matrices over a prime field `F_p`, `p < 2^16`.
//!
//! Vectors are rows; a matrix acts on the right (`v ↦ v·A`). Entries are kept
//! reduced in `[0, p)` and products accumulate in `u64` before reducing.

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[inline]
pub fn reduce_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = (a % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Self { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Row-major construction; entries are reduced mod `p`.
    pub fn from_flat(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len(), "flat data has wrong length");
        let data = data.into_iter().map(|x| x % p).collect();
        Self { rows, cols, p, data }
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|x| x % p));
        }
        Self { rows: rows.len(), cols, p, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize, p: u32) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| reduce_i64(x, p)));
        }
        Self { rows: rows.len(), cols, p, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.rows, other.cols, self.p);
        let mut acc = vec![0u64; other.cols];
        // entries < 2^16, so 2^32 products fit before an overflow is possible
        for r in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0u32;
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a * b as u64;
                }
                pending += 1;
                if pending == u32::MAX {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (o, x) in out.row_mut(r).iter_mut().zip(&acc) {
                *o = (x % p) as u32;
            }
        }
        out
    }

    /// `v·A` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.p as u64;
        let mut acc = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (x, &b) in acc.iter_mut().zip(self.row(k)) {
                *x += a as u64 * b as u64;
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % p).collect();
        FpMatrix { rows: self.rows, cols: self.cols, p, data }
    }

    /// `self + c·other`
    pub fn add_scaled(&self, c: u32, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p as u64;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((a as u64 + c as u64 * b as u64) % p) as u32)
            .collect();
        FpMatrix { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let p = self.p as u64;
        let data = self.data.iter().map(|&a| (a as u64 * c as u64 % p) as u32).collect();
        FpMatrix { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    /// `self - a·I`
    pub fn minus_scalar(&self, a: u32) -> FpMatrix {
        assert!(self.is_square());
        let mut m = self.clone();
        let neg = (self.p - a % self.p) % self.p;
        for i in 0..self.rows {
            let x = &mut m.data[i * self.cols + i];
            *x = (*x + neg) % self.p;
        }
        m
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        let p = self.p as u64;
        ((0..self.rows).map(|i| self.get(i, i) as u64).sum::<u64>() % p) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for k in 0..self.cols {
                    self.data.swap(piv * self.cols + k, r * self.cols + k);
                }
            }
            let inv = inv_mod(self.get(r, c), self.p) as u64;
            for x in self.row_mut(r) {
                *x = (*x as u64 * inv % p) as u32;
            }
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                let neg = p - f as u64;
                for (x, &y) in self.row_mut(i).iter_mut().zip(&pivot_row).skip(c) {
                    *x = ((*x as u64 + neg * y as u64) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis (as rows) of `{x : A·xᵀ = 0}`.
    pub fn right_kernel(&self) -> FpMatrix {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FpMatrix::zeros(free.len(), self.cols, self.p);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let v = m.get(i, f);
                if v != 0 {
                    out.set(k, pc, self.p - v);
                }
            }
        }
        out
    }

    /// Basis (as rows) of `{v : v·A = 0}`.
    pub fn left_kernel(&self) -> FpMatrix {
        self.transpose().right_kernel()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = FpMatrix::zeros(n, 2 * n, self.p);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = FpMatrix::zeros(n, n, self.p);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients from the constant term up.
    pub fn charpoly(&self) -> Vec<u32> {
        assert!(self.is_square());
        let n = self.rows;
        let p = self.p as u64;
        let mut h = self.clone();
        let sub = |a: u64, b: u64| (a + p - b % p) % p;
        // reduce to upper Hessenberg form by similarity transforms
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&i| h.get(i, c) != 0) else {
                continue;
            };
            if piv != c + 1 {
                // swap rows and the matching columns
                for k in 0..n {
                    h.data.swap(piv * n + k, (c + 1) * n + k);
                }
                for k in 0..n {
                    h.data.swap(k * n + piv, k * n + c + 1);
                }
            }
            let inv = inv_mod(h.get(c + 1, c), self.p) as u64;
            for i in c + 2..n {
                let f = h.get(i, c) as u64 * inv % p;
                if f == 0 {
                    continue;
                }
                // row_i -= f·row_{c+1}
                for k in 0..n {
                    let v = sub(h.get(i, k) as u64, f * h.get(c + 1, k) as u64);
                    h.data[i * n + k] = v as u32;
                }
                // col_{c+1} += f·col_i
                for k in 0..n {
                    let v = (h.get(k, c + 1) as u64 + f * h.get(k, i) as u64) % p;
                    h.data[k * n + c + 1] = v as u32;
                }
            }
        }
        // Hessenberg recurrence: polys[k] = charpoly of leading k×k block
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            let mut next = vec![0u64; k + 1];
            // (x - h_{k-1,k-1})·polys[k-1]
            let hkk = h.get(k - 1, k - 1) as u64;
            for (i, &c) in polys[k - 1].iter().enumerate() {
                next[i + 1] = (next[i + 1] + c) % p;
                next[i] = sub(next[i], hkk * c);
            }
            let mut prod = 1u64;
            for i in (0..k - 1).rev() {
                // product of subdiagonal entries h_{i+1,i} … h_{k-1,k-2}
                prod = prod * h.get(i + 1, i) as u64 % p;
                if prod == 0 {
                    break;
                }
                let coef = prod * h.get(i, k - 1) as u64 % p;
                if coef == 0 {
                    continue;
                }
                for (j, &c) in polys[i].iter().enumerate() {
                    next[j] = sub(next[j], coef * c);
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap().into_iter().map(|x| x as u32).collect()
    }
}

/// Evaluates a polynomial (constant term first) at `x`.
pub fn eval_poly(coeffs: &[u32], x: u32, p: u32) -> u32 {
    let p = p as u64;
    coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p) as u32
}

/// A subspace of `F_p^dim` kept as a reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    p: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(dim: usize, p: u32) -> Self {
        Self { dim, p, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Subtracts the span components; the result vanishes on every pivot column.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p as u64;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc] as u64;
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, &y) in v.iter_mut().zip(row).skip(pc) {
                if y != 0 {
                    *x = ((*x as u64 + neg * y as u64) % p) as u32;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p as u64;
        let inv = inv_mod(w[pc], self.p) as u64;
        for x in w.iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        // keep the basis fully reduced
        for row in self.rows.iter_mut() {
            let f = row[pc] as u64;
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, &y) in row.iter_mut().zip(&w) {
                if y != 0 {
                    *x = ((*x as u64 + neg * y as u64) % p) as u32;
                }
            }
        }
        let at = self.pivots.partition_point(|&c| c < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }

    /// Coordinates of a vector of the span with respect to the echelon basis.
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    pub fn to_matrix(&self) -> FpMatrix {
        FpMatrix::from_rows(&self.rows, self.dim, self.p)
    }

    pub fn from_rows_of(m: &FpMatrix) -> Self {
        let mut s = Subspace::new(m.cols(), m.p());
        for r in 0..m.rows() {
            s.insert(m.row(r));
        }
        s
    }
}
