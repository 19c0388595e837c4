//! Irreducible Weyl groups as integer matrices on the root basis.
//!
//! Nodes follow the classical numbering: A/B/D are paths 1..n with B's
//! double edge between n-1 and n and D's fork nodes n-1, n attached to
//! n-2; E_n has the path 1..n-1 with node n attached to node 3; F4 is
//! the path 1-2-3-4 with the double edge between 2 and 3; G2 has nodes 1, 2.
//! The library stores these as indices 0..n-1.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::nodeset::NodeSet;
use crate::symbol::CoxeterSymbol;

/// Group elements are integer matrices acting on root-basis coordinates.
pub type WeylElement = IntMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum WeylFamily {
    A,
    B,
    D,
    E,
    F,
    G,
}

impl FromStr for WeylFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" | "a" => WeylFamily::A,
            "B" | "b" => WeylFamily::B,
            "D" | "d" => WeylFamily::D,
            "E" | "e" => WeylFamily::E,
            "F" | "f" => WeylFamily::F,
            "G" | "g" => WeylFamily::G,
            _ => return Err(Error::InvalidType(s.to_owned())),
        })
    }
}

impl fmt::Display for WeylFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[derive(Clone, Debug)]
pub struct WeylData {
    pub family: WeylFamily,
    pub rank: usize,
    /// `cartan[i][j] = <x_j, x_i^vee>`.
    pub cartan: IntMatrix,
    /// `2 (x_i, x_j)` with `(v_s, v_s) = 1`.
    pub gram2: IntMatrix,
    pub exponents: Vec<u32>,
    pub h: u32,
    pub index_of_connection: u32,
    pub minus_one_type: bool,
    pub scaled_nodes: NodeSet,
    pub symbol: CoxeterSymbol,
    gens: Vec<IntMatrix>,
}

impl PartialEq for WeylData {
    fn eq(&self, o: &Self) -> bool {
        self.family == o.family && self.rank == o.rank
    }
}

pub fn weyl_data(family: WeylFamily, n: usize) -> Result<WeylData> {
    use WeylFamily::*;
    let ok = match family {
        A => n >= 1,
        B => n >= 2,
        D => n >= 4,
        E => (6..=8).contains(&n),
        F => n == 4,
        G => n == 2,
    };
    if !ok || n > 12 {
        return Err(Error::InvalidType(format!("{family}{n}")));
    }
    // (i, j, m) on 0-based nodes, plus squared lengths doubled
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    let mut len2 = vec![2i64; n];
    match family {
        A => edges.extend((1..n).map(|i| (i - 1, i, 3))),
        B => {
            edges.extend((1..n - 1).map(|i| (i - 1, i, 3)));
            edges.push((n - 2, n - 1, 4));
            len2[n - 1] = 4;
        }
        D => {
            edges.extend((1..n - 1).map(|i| (i - 1, i, 3)));
            edges.push((n - 3, n - 1, 3));
        }
        E => {
            edges.extend((1..n - 1).map(|i| (i - 1, i, 3)));
            edges.push((2, n - 1, 3));
        }
        F => {
            edges.extend([(0, 1, 3), (1, 2, 4), (2, 3, 3)]);
            len2[2] = 4;
            len2[3] = 4;
        }
        G => {
            edges.push((0, 1, 6));
            len2[1] = 6;
        }
    }
    let mut gram2 = IntMatrix::zeros(n);
    for (i, &l) in len2.iter().enumerate() {
        gram2.set(i, i, l);
    }
    for &(i, j, m) in &edges {
        let v = match m {
            3 => -len2[i] / 2,
            4 => -2,
            6 => -3,
            _ => unreachable!(),
        };
        gram2.set(i, j, v);
        gram2.set(j, i, v);
    }
    let mut cartan = IntMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            cartan.set(i, j, 2 * gram2.get(i, j) / gram2.get(i, i));
        }
    }
    let exponents: Vec<u32> = match (family, n) {
        (A, _) => (1..=n as u32).collect(),
        (B, _) => (0..n as u32).map(|k| 2 * k + 1).collect(),
        (D, _) => {
            let mut e: Vec<u32> = (0..n as u32 - 1).map(|k| 2 * k + 1).collect();
            e.push(n as u32 - 1);
            e.sort_unstable();
            e
        }
        (E, 6) => vec![1, 4, 5, 7, 8, 11],
        (E, 7) => vec![1, 5, 7, 9, 11, 13, 17],
        (E, _) => vec![1, 7, 11, 13, 17, 19, 23, 29],
        (F, _) => vec![1, 5, 7, 11],
        (G, _) => vec![1, 5],
    };
    let h = exponents.iter().max().unwrap() + 1;
    let (index_of_connection, minus_one_type) = match (family, n) {
        (A, _) => (n as u32 + 1, n == 1),
        (B, _) => (2, true),
        (D, _) => (4, n % 2 == 0),
        (E, 6) => (3, false),
        (E, 7) => (2, true),
        _ => (1, true),
    };
    let scaled_nodes = NodeSet::from_nodes((0..n).filter(|&i| len2[i] != 2));
    let symbol = CoxeterSymbol::numbered(n, &edges);
    let gens = (0..n)
        .map(|i| {
            let mut m = IntMatrix::identity(n);
            for j in 0..n {
                m.set(i, j, m.get(i, j) - cartan.get(i, j));
            }
            m
        })
        .collect();
    Ok(WeylData {
        family,
        rank: n,
        cartan,
        gram2,
        exponents,
        h,
        index_of_connection,
        minus_one_type,
        scaled_nodes,
        symbol,
        gens,
    })
}

impl WeylData {
    /// Parses names such as "E6", "B 4" or "A12".
    pub fn parse(name: &str) -> Result<WeylData> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidType(compact.clone());
        let mut chars = compact.chars();
        let fam: WeylFamily = chars.next().ok_or_else(bad)?.to_string().parse().map_err(|_| bad())?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        weyl_data(fam, rank)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn order(&self) -> BigUint {
        self.exponents.iter().fold(BigUint::one(), |acc, &m| acc * (m + 1))
    }

    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    /// `s_i(x_j) = x_j - <x_j, x_i^vee> x_i`.
    pub fn reflection_matrix(&self, i: usize) -> &WeylElement {
        &self.gens[i]
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.gens
    }

    pub fn word_to_matrix(&self, word: &[usize]) -> Result<WeylElement> {
        let mut m = IntMatrix::identity(self.rank);
        for &i in word {
            if i >= self.rank {
                return Err(Error::UnknownNode(format!("index {i}")));
            }
            m = m.mul(&self.gens[i]);
        }
        Ok(m)
    }

    /// Product of the generators in `nodes` (default: all) in ascending order.
    pub fn coxeter_element(&self, nodes: Option<NodeSet>) -> Result<WeylElement> {
        let t = nodes.unwrap_or(NodeSet::full(self.rank));
        if !t.is_subset(NodeSet::full(self.rank)) {
            return Err(Error::UnknownNode(format!("{t:?}")));
        }
        if !self.symbol.is_connected(t) {
            return Err(Error::Disconnected);
        }
        self.word_to_matrix(&t.to_vec())
    }

    /// Greedy ascent: append the smallest `s` in `delta` with `w(x_s)` positive.
    pub fn longest_element(&self, delta: NodeSet) -> (WeylElement, usize) {
        let n = self.rank;
        let mut w = IntMatrix::identity(n);
        let mut len = 0;
        loop {
            let next = delta.iter().find(|&s| (0..n).all(|r| w.get(r, s) >= 0));
            match next {
                Some(s) => {
                    w = w.mul(&self.gens[s]);
                    len += 1;
                }
                None => return (w, len),
            }
        }
    }

    /// Compares the characteristic polynomial of the Coxeter element with
    /// the product of `t - exp(2 pi i m / h)` over the exponents.
    pub fn verify_exponents(&self) -> bool {
        let xi = match self.coxeter_element(None) {
            Ok(x) => x,
            Err(_) => return false,
        };
        let cp = xi.charpoly();
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        for &m in &self.exponents {
            let root = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / self.h as f64);
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (k, &c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * root;
            }
            poly = next;
        }
        cp.len() == poly.len()
            && cp.iter().zip(&poly).all(|(&a, b)| (b.re - a as f64).abs() < 1e-6 && b.im.abs() < 1e-6)
    }

    /// Image of a word in the signed-permutation model of A/B/D.
    pub fn perm_model(&self, word: &[usize]) -> Result<SignedPerm> {
        let n = self.rank;
        let size = match self.family {
            WeylFamily::A => n + 1,
            WeylFamily::B | WeylFamily::D => n,
            _ => {
                return Err(Error::Precondition(format!(
                    "no signed-permutation model for {}",
                    self.name()
                )))
            }
        };
        let mut acc = SignedPerm::identity(size);
        for &i in word {
            if i >= n {
                return Err(Error::UnknownNode(format!("index {i}")));
            }
            let mut g = SignedPerm::identity(size);
            match (self.family, i + 1 == n) {
                (WeylFamily::B, true) => g.0[i] = -(i as i32 + 1),
                (WeylFamily::D, true) => {
                    g.0[n - 2] = -(n as i32);
                    g.0[n - 1] = -(n as i32 - 1);
                }
                _ => {
                    g.0[i] = i as i32 + 2;
                    g.0[i + 1] = i as i32 + 1;
                }
            }
            acc = acc.compose(&g);
        }
        Ok(acc)
    }
}

/// `p.0[k] = ±(j+1)` means `u_{k+1} -> ±u_{j+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SignedPerm(pub Vec<i32>);

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm((1..=n as i32).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm(
            other
                .0
                .iter()
                .map(|&b| {
                    let a = self.0[b.unsigned_abs() as usize - 1];
                    if b < 0 {
                        -a
                    } else {
                        a
                    }
                })
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| v == k as i32 + 1)
    }
}

/// Smallest `k <= bound` with `m^k = 1`.
pub fn element_order(m: &WeylElement, bound: u64) -> Result<u64> {
    let mut p = m.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Ok(k);
        }
        p = p.mul(m);
    }
    Err(Error::OrderBound(bound))
}

/// Every irreducible Weyl type of rank at most `max_rank`, with the
/// B and D series extended up to `classical_max`.
pub fn all_types(max_rank: usize, classical_max: usize) -> Vec<WeylData> {
    let mut out = Vec::new();
    for n in 1..=max_rank.max(classical_max) {
        for fam in [WeylFamily::A, WeylFamily::B, WeylFamily::D] {
            if fam == WeylFamily::A && n > max_rank {
                continue;
            }
            if let Ok(w) = weyl_data(fam, n) {
                out.push(w);
            }
        }
    }
    for (fam, n) in [(WeylFamily::G, 2), (WeylFamily::F, 4), (WeylFamily::E, 6), (WeylFamily::E, 7), (WeylFamily::E, 8)] {
        if n <= max_rank {
            out.push(weyl_data(fam, n).unwrap());
        }
    }
    out
}
