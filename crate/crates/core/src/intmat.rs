use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

/// Dense square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { n, data: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data: out }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { n: self.n, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &IntMatrix) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    fn to_ratio(&self) -> Vec<Vec<Ratio<i128>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| Ratio::from_integer(self.get(i, j) as i128)).collect())
            .collect()
    }

    /// Rank over the rationals.
    pub fn rank_q(&self) -> usize {
        let mut a = self.to_ratio();
        let n = self.n;
        let mut rank = 0;
        for c in 0..n {
            let Some(p) = (rank..n).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..n {
                if r != rank && !a[r][c].is_zero() {
                    let f = a[r][c] / a[rank][c];
                    for k in c..n {
                        let d = f * a[rank][k];
                        a[r][k] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse over the rationals, `None` when singular.
    pub fn inverse_q(&self) -> Option<Vec<Vec<Ratio<i128>>>> {
        let n = self.n;
        let mut a = self.to_ratio();
        let mut inv: Vec<Vec<Ratio<i128>>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }).collect())
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c];
            for k in 0..n {
                a[c][k] /= piv;
                inv[c][k] /= piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c];
                    for k in 0..n {
                        let (x, y) = (f * a[c][k], f * inv[c][k]);
                        a[r][k] -= x;
                        inv[r][k] -= y;
                    }
                }
            }
        }
        Some(inv)
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        let inv = self.inverse_q()?;
        let mut out = Self::zeros(self.n);
        for (i, row) in inv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_integer() {
                    return None;
                }
                out.set(i, j, x.to_integer() as i64);
            }
        }
        Some(out)
    }

    pub fn det(&self) -> i128 {
        self.charpoly()[0] * if self.n % 2 == 0 { 1 } else { -1 }
    }

    /// Coefficients `c_0..=c_n` of det(tI - A), lowest degree first
    /// (Faddeev-LeVerrier, exact in integers).
    pub fn charpoly(&self) -> Vec<i128> {
        let n = self.n;
        let a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut c = vec![0i128; n + 1];
        c[n] = 1;
        let mut m = vec![0i128; n * n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = vec![0i128; n * n];
            for i in 0..n {
                for l in 0..n {
                    let x = a[i * n + l];
                    if x != 0 {
                        for j in 0..n {
                            next[i * n + j] += x * m[l * n + j];
                        }
                    }
                }
                next[i * n + i] += c[n - k + 1];
            }
            m = next;
            let mut tr = 0i128;
            for i in 0..n {
                for l in 0..n {
                    tr += a[i * n + l] * m[l * n + i];
                }
            }
            c[n - k] = -tr / k as i128;
        }
        c
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}
