//! The root lattice mod 2: weight vectors, orbit spans, the X sets along
//! tree paths, independence and admissibility, and the kernel/image data
//! of involutions acting on L/2.

mod f2;

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_traits::{Zero};
use serde::Serialize;

pub use f2::{F2Matrix, F2Subspace, F2Vector, MAX_DIM};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::nodeset::NodeSet;
use crate::symbol::Family;
use crate::weyl::{WeylData, WeylElement};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WeightVector {
    pub node: usize,
    pub coords: Vec<i64>,
}

impl WeightVector {
    pub fn mod2(&self) -> F2Vector {
        F2Vector::from_ints(&self.coords)
    }
}

/// Primitive integer vector orthogonal (under gram2) to every `x_t`, `t != s`,
/// with positive `s`-coordinate.
pub fn weight_vector(w: &WeylData, s: usize) -> WeightVector {
    let inv = w.gram2.inverse_q().expect("gram2 is nonsingular");
    let col: Vec<_> = inv.iter().map(|row| row[s]).collect();
    let den = col.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<i128> = col.iter().map(|x| (x * den).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x /= g;
        }
    }
    if ints[s].is_negative() {
        for x in ints.iter_mut() {
            *x = -*x;
        }
    }
    WeightVector { node: s, coords: ints.into_iter().map(|x| x as i64).collect() }
}

pub fn reduce_mod2(m: &IntMatrix) -> F2Matrix {
    F2Matrix::from_int(m)
}

pub fn reduce_vec_mod2(v: &[i64]) -> F2Vector {
    F2Vector::from_ints(v)
}

/// Generators of W(Psi) reduced mod 2.
pub fn generators_mod2(w: &WeylData) -> Vec<F2Matrix> {
    w.generators().iter().map(F2Matrix::from_int).collect()
}

/// BFS closure of `start` (generator index, then FIFO) and its span.
pub fn orbit_span(gens: &[F2Matrix], start: F2Vector) -> (Vec<F2Vector>, F2Subspace) {
    let mut seen = HashSet::from([start]);
    let mut orbit = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let u = g.apply(v);
            if seen.insert(u) {
                orbit.push(u);
                queue.push_back(u);
            }
        }
    }
    let span = F2Subspace::span(start.dim(), orbit.iter().copied());
    (orbit, span)
}

/// Nodes of the unique path from `s` to `t` in the (tree) Dynkin diagram.
pub fn tree_path(w: &WeylData, s: usize, t: usize) -> Vec<usize> {
    let n = w.rank;
    let mut parent = vec![usize::MAX; n];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(a) = queue.pop_front() {
        for b in w.symbol.neighbors(a).iter() {
            if parent[b] == usize::MAX {
                parent[b] = a;
                queue.push_back(b);
            }
        }
    }
    let mut path = vec![t];
    let mut cur = t;
    while cur != s {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// `[u, s_1 u, s_2 s_1 u, ...]` along the path `s = s_1, ..., s_k = t`.
pub fn x_set(w: &WeylData, s: usize, t: usize) -> Vec<F2Vector> {
    let gens = generators_mod2(w);
    let mut v = weight_vector(w, s).mod2();
    let mut out = vec![v];
    for p in tree_path(w, s, t) {
        v = gens[p].apply(v);
        out.push(v);
    }
    out
}

pub fn is_independent_for(w: &WeylData, s: usize, t_set: NodeSet) -> bool {
    let mut span = F2Subspace::zero(w.rank);
    let mut nodes = NodeSet::EMPTY;
    for t in t_set.iter() {
        nodes = nodes.union(NodeSet::from_nodes(tree_path(w, s, t)));
        for v in x_set(w, s, t) {
            span.insert(v);
        }
    }
    !t_set.is_empty() && span.dim() == nodes.len() + 1
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    NotAdmissible,
    Plain,
    Special,
}

impl Admissibility {
    pub fn tag(self) -> &'static str {
        match self {
            Admissibility::NotAdmissible => "none",
            Admissibility::Plain => "plain",
            Admissibility::Special => "special",
        }
    }
}

/// Evaluates both admissibility conditions straight from the definitions.
pub fn admissibility(w: &WeylData, s: usize) -> Admissibility {
    if w.scaled_nodes.contains(s) {
        return Admissibility::NotAdmissible;
    }
    let mut special = true;
    for t in 0..w.rank {
        let path = NodeSet::from_nodes(tree_path(w, s, t));
        let is_a = matches!(
            w.symbol.classify_subset(path).as_deref(),
            Some([ft]) if ft.family == Family::A
        );
        if !is_a || is_independent_for(w, s, NodeSet::single(t)) {
            continue;
        }
        if path.len() % 2 == 1 {
            return Admissibility::NotAdmissible;
        }
        special = false;
    }
    if special {
        Admissibility::Special
    } else {
        Admissibility::Plain
    }
}

pub fn is_admissible(w: &WeylData, s: usize) -> bool {
    admissibility(w, s) != Admissibility::NotAdmissible
}

pub fn is_specially_admissible(w: &WeylData, s: usize) -> bool {
    admissibility(w, s) == Admissibility::Special
}

/// Dimension of the span of the full W(Psi)-orbit of the reduced weight vector.
pub fn lambda_dim(w: &WeylData, s: usize) -> usize {
    orbit_span(&generators_mod2(w), weight_vector(w, s).mod2()).1.dim()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KerIm {
    pub ker: F2Subspace,
    pub im: F2Subspace,
    pub d: usize,
}

/// Kernel and image of `g + 1` for an involution `g` of L/2.
pub fn involution_ker_im(g: &F2Matrix) -> Result<KerIm> {
    if !g.mul(g).is_identity() {
        return Err(Error::NotInvolution);
    }
    let h = g.add(&F2Matrix::identity(g.dim()));
    let (ker, im) = (h.kernel(), h.image());
    let d = ker.dim() - im.dim();
    Ok(KerIm { ker, im, d })
}

/// `xi^(h/2)` reduced mod 2 for the full Coxeter element; requires `h` even.
pub fn half_turn_mod2(w: &WeylData) -> Result<F2Matrix> {
    if w.h % 2 == 1 {
        return Err(Error::Precondition(format!("Coxeter number of {} is odd", w.name())));
    }
    let xi = w.coxeter_element(None)?;
    Ok(F2Matrix::from_int(&xi.pow(w.h as u64 / 2)))
}

/// `d_Psi = dim ker(xi^(h/2)+1) - dim im(xi^(h/2)+1)`.
pub fn d_psi(w: &WeylData) -> Result<KerIm> {
    involution_ker_im(&half_turn_mod2(w)?)
}

/// `alpha = 1 + xi^q + xi^(2q) + ... + xi^((2^(p-1) - 1) q)` mod 2.
pub fn alpha_map(xi: &WeylElement, q: u64, p: u32) -> Result<F2Matrix> {
    if p < 1 {
        return Err(Error::Precondition("alpha needs p >= 1".into()));
    }
    let step = F2Matrix::from_int(xi).pow(q);
    let mut acc = F2Matrix::zero(xi.dim());
    let mut term = F2Matrix::identity(xi.dim());
    for _ in 0..1u64 << (p - 1) {
        acc = acc.add(&term);
        term = term.mul(&step);
    }
    Ok(acc)
}

/// First `u` (scanning the integers 1, 2, 3, ... read as bit patterns, bit
/// `i` = coefficient of `x_{i+1}`) with `alpha(u)` in ker minus im of
/// `xi^(2^(p-1) q) + 1`.
pub fn find_target(xi: &WeylElement, q: u64, p: u32) -> Result<F2Vector> {
    let alpha = alpha_map(xi, q, p)?;
    let g = F2Matrix::from_int(xi).pow(q << (p - 1));
    let KerIm { ker, im, .. } = involution_ker_im(&g)?;
    let n = xi.dim();
    for bits in 1u32..(1 << n) {
        let u = F2Vector::from_bits(n, bits as u16);
        let a = alpha.apply(u);
        if ker.contains(a) && !im.contains(a) {
            return Ok(u);
        }
    }
    Err(Error::NoTarget)
}
