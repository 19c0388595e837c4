//! Vectors, matrices and subspaces over F2, packed into `u16` words.
//! Bit `i` is the coordinate of the basis vector `x_{i+1}`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::intmat::IntMatrix;

pub const MAX_DIM: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2Vector {
    pub dim: u8,
    pub bits: u16,
}

impl F2Vector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "F2 dimension capped at {MAX_DIM}");
        F2Vector { dim: dim as u8, bits: 0 }
    }

    pub fn from_bits(dim: usize, bits: u16) -> Self {
        let mut v = Self::zero(dim);
        v.bits = bits & mask(dim);
        v
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        Self::from_bits(dim, 1 << i)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        let bits = v.iter().enumerate().fold(0u16, |acc, (i, &x)| acc | ((x.rem_euclid(2) as u16) << i));
        Self::from_bits(v.len(), bits)
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn get(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn add(self, o: F2Vector) -> F2Vector {
        debug_assert_eq!(self.dim, o.dim);
        F2Vector { dim: self.dim, bits: self.bits ^ o.bits }
    }

    pub fn to_vec(self) -> Vec<u8> {
        (0..self.dim()).map(|i| self.get(i) as u8).collect()
    }

    /// 1-based indices of the nonzero coordinates.
    pub fn support(self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.get(i)).map(|i| i + 1).collect()
    }
}

impl std::ops::Add for F2Vector {
    type Output = F2Vector;
    fn add(self, o: F2Vector) -> F2Vector {
        F2Vector::add(self, o)
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.support().iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl Serialize for F2Vector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

fn mask(dim: usize) -> u16 {
    if dim >= 16 {
        u16::MAX
    } else {
        (1u16 << dim) - 1
    }
}

/// Square matrix over F2 stored by columns.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Matrix {
    dim: u8,
    cols: Vec<u16>,
}

impl F2Matrix {
    pub fn identity(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "F2 dimension capped at {MAX_DIM}");
        F2Matrix { dim: dim as u8, cols: (0..dim).map(|j| 1 << j).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        F2Matrix { dim: dim as u8, cols: vec![0; dim] }
    }

    pub fn from_cols(dim: usize, cols: Vec<u16>) -> Self {
        assert_eq!(cols.len(), dim);
        F2Matrix { dim: dim as u8, cols: cols.into_iter().map(|c| c & mask(dim)).collect() }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let n = m.dim();
        let cols = (0..n).map(|j| F2Vector::from_ints(&m.col(j)).bits).collect();
        Self::from_cols(n, cols)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn col(&self, j: usize) -> F2Vector {
        F2Vector { dim: self.dim, bits: self.cols[j] }
    }

    pub fn apply(&self, v: F2Vector) -> F2Vector {
        let mut out = 0u16;
        let mut b = v.bits;
        while b != 0 {
            let j = b.trailing_zeros() as usize;
            out ^= self.cols[j];
            b &= b - 1;
        }
        F2Vector { dim: self.dim, bits: out }
    }

    pub fn mul(&self, o: &F2Matrix) -> F2Matrix {
        F2Matrix { dim: self.dim, cols: o.cols.iter().map(|&c| self.apply(F2Vector { dim: self.dim, bits: c }).bits).collect() }
    }

    pub fn add(&self, o: &F2Matrix) -> F2Matrix {
        F2Matrix { dim: self.dim, cols: self.cols.iter().zip(&o.cols).map(|(a, b)| a ^ b).collect() }
    }

    pub fn pow(&self, mut e: u64) -> F2Matrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            base = base.mul(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn image(&self) -> F2Subspace {
        F2Subspace::span(self.dim(), (0..self.dim()).map(|j| self.col(j)))
    }

    pub fn kernel(&self) -> F2Subspace {
        // Gaussian elimination on the columns, tracking combinations.
        let n = self.dim();
        let mut work: Vec<(u16, u16)> = (0..n).map(|j| (self.cols[j], 1u16 << j)).collect();
        let mut basis = Vec::new();
        let mut used = vec![false; n];
        for bit in 0..n {
            let Some(p) = (0..n).find(|&j| !used[j] && work[j].0 >> bit & 1 == 1) else { continue };
            used[p] = true;
            let pivot = work[p];
            for (j, w) in work.iter_mut().enumerate() {
                if j != p && w.0 >> bit & 1 == 1 {
                    w.0 ^= pivot.0;
                    w.1 ^= pivot.1;
                }
            }
        }
        for (j, w) in work.iter().enumerate() {
            if !used[j] && w.0 == 0 {
                basis.push(F2Vector::from_bits(n, w.1));
            }
        }
        F2Subspace::span(n, basis)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| if self.cols[j] >> i & 1 == 1 { '1' } else { '0' }).collect())
            .collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

/// Subspace held as a reduced echelon basis: pivots are the lowest set
/// bits, strictly increasing, and each pivot bit is clear in every other row.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct F2Subspace {
    dim: u8,
    basis: Vec<u16>,
}

impl F2Subspace {
    pub fn zero(dim: usize) -> Self {
        F2Subspace { dim: dim as u8, basis: Vec::new() }
    }

    pub fn span<I: IntoIterator<Item = F2Vector>>(dim: usize, vs: I) -> Self {
        let mut s = Self::zero(dim);
        for v in vs {
            s.insert(v);
        }
        s
    }

    fn reduce_bits(&self, mut b: u16) -> u16 {
        for &r in &self.basis {
            let p = r.trailing_zeros();
            if b >> p & 1 == 1 {
                b ^= r;
            }
        }
        b
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: F2Vector) -> bool {
        let b = self.reduce_bits(v.bits);
        if b == 0 {
            return false;
        }
        let p = b.trailing_zeros();
        for r in self.basis.iter_mut() {
            if *r >> p & 1 == 1 {
                *r ^= b;
            }
        }
        self.basis.push(b);
        self.basis.sort_by_key(|r| r.trailing_zeros());
        true
    }

    pub fn contains(&self, v: F2Vector) -> bool {
        self.reduce_bits(v.bits) == 0
    }

    pub fn is_subspace_of(&self, o: &F2Subspace) -> bool {
        self.basis().iter().all(|&v| o.contains(v))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim as usize
    }

    pub fn basis(&self) -> Vec<F2Vector> {
        self.basis.iter().map(|&b| F2Vector { dim: self.dim, bits: b }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_is_canonical() {
        let a = F2Subspace::span(4, [F2Vector::from_bits(4, 0b0011), F2Vector::from_bits(4, 0b0110)]);
        let b = F2Subspace::span(4, [F2Vector::from_bits(4, 0b0101), F2Vector::from_bits(4, 0b0011)]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(F2Vector::from_bits(4, 0b0101)));
        assert!(!a.contains(F2Vector::from_bits(4, 0b1000)));
    }

    #[test]
    fn kernel_and_image() {
        let m = F2Matrix::from_cols(3, vec![0b011, 0b011, 0b100]);
        assert_eq!(m.kernel().basis(), vec![F2Vector::from_bits(3, 0b011)]);
        assert_eq!(m.image().dim(), 2);
        assert_eq!(F2Matrix::identity(5).kernel().dim(), 0);
        assert_eq!(F2Matrix::zero(5).kernel().dim(), 5);
    }

    #[test]
    fn reductions() {
        assert_eq!(F2Vector::from_ints(&[2, 2, 1, 1]).to_vec(), vec![0, 0, 1, 1]);
        assert_eq!(F2Vector::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8]).to_vec(), vec![1, 0, 1, 0, 1, 0, 1, 0]);
        assert!(F2Matrix::from_int(&IntMatrix::identity(4)).is_identity());
        assert_eq!(format!("{:?}", F2Vector::from_bits(6, 0b101001)), "x1+x4+x6");
    }
}
