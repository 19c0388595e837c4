use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::{CoxeterSymbol, Label};
use crate::nodeset::NodeSet;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    H3,
    H4,
    I2(u32),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteType {
    pub family: Family,
    pub rank: usize,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

impl FiniteType {
    pub fn new(family: Family, rank: usize) -> Self {
        FiniteType { family, rank }
    }

    /// Order of the finite Coxeter group.
    pub fn order(&self) -> BigUint {
        let n = self.rank;
        match self.family {
            Family::A => factorial(n + 1),
            Family::B => (BigUint::one() << n) * factorial(n),
            Family::D => (BigUint::one() << (n - 1)) * factorial(n),
            Family::E6 => 51840u32.into(),
            Family::E7 => 2903040u32.into(),
            Family::E8 => 696729600u32.into(),
            Family::F4 => 1152u32.into(),
            Family::G2 => 12u32.into(),
            Family::H3 => 120u32.into(),
            Family::H4 => 14400u32.into(),
            Family::I2(m) => BigUint::from(2 * m),
        }
    }

    /// Whether the longest element acts as -1.
    pub fn is_minus_one_type(&self) -> bool {
        match self.family {
            Family::A => self.rank == 1,
            Family::D => self.rank % 2 == 0,
            Family::E6 => false,
            Family::I2(m) => m % 2 == 0,
            _ => true,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.rank),
            Family::B => write!(f, "B{}", self.rank),
            Family::D => write!(f, "D{}", self.rank),
            Family::E6 => write!(f, "E6"),
            Family::E7 => write!(f, "E7"),
            Family::E8 => write!(f, "E8"),
            Family::F4 => write!(f, "F4"),
            Family::G2 => write!(f, "G2"),
            Family::H3 => write!(f, "H3"),
            Family::H4 => write!(f, "H4"),
            Family::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Nodes of a recognised component listed in the classical numbering
/// (B's 4-edge at the end, D's fork last, E's short arm node last).
pub(crate) type Layout = Vec<usize>;

/// Walks a path inside `c` starting at leaf `start`.
fn walk(g: &CoxeterSymbol, c: NodeSet, start: usize, stop: NodeSet) -> Vec<usize> {
    let mut out = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).intersection(c).iter().find(|&j| j != prev && !stop.contains(j));
        match next {
            Some(j) if !out.contains(&j) => {
                out.push(j);
                prev = cur;
                cur = j;
            }
            _ => return out,
        }
    }
}

pub(crate) fn classify_component(g: &CoxeterSymbol, c: NodeSet) -> Option<(FiniteType, Layout)> {
    let k = c.len();
    if k == 0 {
        return None;
    }
    if k == 1 {
        return Some((FiniteType::new(Family::A, 1), c.to_vec()));
    }
    let mut nedges = 0;
    for (a, b, m) in g.edges() {
        if c.contains(a) && c.contains(b) {
            if m == Label::Infinite {
                return None;
            }
            nedges += 1;
        }
    }
    if nedges != k - 1 {
        return None;
    }
    let deg = |i: usize| g.neighbors(i).intersection(c).len();
    let nodes = c.to_vec();
    if nodes.iter().any(|&i| deg(i) > 3) {
        return None;
    }
    let branches: Vec<usize> = nodes.iter().copied().filter(|&i| deg(i) == 3).collect();
    let lab = |a: usize, b: usize| g.label(a, b).finite().unwrap_or(0);
    match branches.len() {
        0 => {
            let start = *nodes.iter().find(|&&i| deg(i) == 1)?;
            let mut path = walk(g, c, start, NodeSet::EMPTY);
            let labels: Vec<u32> = path.windows(2).map(|w| lab(w[0], w[1])).collect();
            if k == 2 {
                let fam = match labels[0] {
                    3 => return Some((FiniteType::new(Family::A, 2), path)),
                    4 => Family::B,
                    6 => Family::G2,
                    m => Family::I2(m),
                };
                return Some((FiniteType::new(fam, 2), path));
            }
            let odd: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] != 3).collect();
            match odd.as_slice() {
                [] => Some((FiniteType::new(Family::A, k), path)),
                &[i] => {
                    let at_end = i == 0 || i == labels.len() - 1;
                    match labels[i] {
                        4 if at_end => {
                            if i == 0 {
                                path.reverse();
                            }
                            Some((FiniteType::new(Family::B, k), path))
                        }
                        4 if k == 4 => Some((FiniteType::new(Family::F4, 4), path)),
                        5 if at_end && (k == 3 || k == 4) => {
                            if i != 0 {
                                path.reverse();
                            }
                            let fam = if k == 3 { Family::H3 } else { Family::H4 };
                            Some((FiniteType::new(fam, k), path))
                        }
                        _ => None,
                    }
                }
                _ => None,
            }
        }
        1 => {
            let b = branches[0];
            if nodes.iter().any(|&i| g.neighbors(i).intersection(c).iter().any(|j| lab(i, j) != 3)) {
                return None;
            }
            let mut arms: Vec<Vec<usize>> = g
                .neighbors(b)
                .intersection(c)
                .iter()
                .map(|j| walk(g, c, j, NodeSet::single(b)))
                .collect();
            arms.sort_by_key(|a| (a.len(), a.last().copied()));
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            let mut layout = Vec::with_capacity(k);
            let fam = match lens.as_slice() {
                [1, 1, _] => {
                    // trunk from the far end of the long arm, then the two fork leaves
                    layout.extend(arms[2].iter().rev());
                    layout.push(b);
                    layout.push(arms[0][0]);
                    layout.push(arms[1][0]);
                    return Some((FiniteType::new(Family::D, k), layout));
                }
                [1, 2, 2] => Family::E6,
                [1, 2, 3] => Family::E7,
                [1, 2, 4] => Family::E8,
                _ => return None,
            };
            layout.extend(arms[1].iter().rev());
            layout.push(b);
            layout.extend(arms[2].iter());
            layout.push(arms[0][0]);
            Some((FiniteType::new(fam, k), layout))
        }
        _ => None,
    }
}
