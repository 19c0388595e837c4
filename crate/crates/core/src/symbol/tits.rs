//! Floating-point Tits representation, used to find reduced words for
//! longest elements of arbitrary finite visible subgroups.

use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

use super::{CoxeterSymbol, Label};

const EPS: f64 = 1e-9;
const STEP_CAP: usize = 100_000;

struct Rep {
    nodes: Vec<usize>,
    b: Vec<Vec<f64>>,
}

impl Rep {
    fn new(g: &CoxeterSymbol, t: NodeSet) -> Result<Self> {
        let nodes = t.to_vec();
        let mut b = vec![vec![0.0; nodes.len()]; nodes.len()];
        for (i, &a) in nodes.iter().enumerate() {
            for (j, &c) in nodes.iter().enumerate() {
                b[i][j] = match g.label(a, c) {
                    Label::Finite(m) if m == 2 => 0.0,
                    Label::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                    Label::Infinite => return Err(Error::NotFinite),
                };
            }
        }
        Ok(Rep { nodes, b })
    }

    /// Right-multiplies `w` (columns = images of simple roots) by `s_i`.
    fn right_mul(&self, w: &mut [Vec<f64>], i: usize) {
        let k = self.nodes.len();
        let wi = w[i].clone();
        for (j, col) in w.iter_mut().enumerate() {
            let c = 2.0 * self.b[j][i];
            if c != 0.0 {
                for r in 0..k {
                    col[r] -= c * wi[r];
                }
            }
        }
    }
}

/// Longest element of the visible subgroup on `t` as a reduced word
/// (greedy ascent, smallest index first), plus its matrix columns.
fn longest(g: &CoxeterSymbol, t: NodeSet) -> Result<(Rep, Vec<usize>, Vec<Vec<f64>>)> {
    let rep = Rep::new(g, t)?;
    let k = rep.nodes.len();
    let mut w: Vec<Vec<f64>> = (0..k)
        .map(|j| (0..k).map(|r| if r == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut word = Vec::new();
    loop {
        let next = (0..k).find(|&i| w[i].iter().all(|&x| x > -EPS));
        let Some(i) = next else { break };
        rep.right_mul(&mut w, i);
        word.push(rep.nodes[i]);
        if word.len() > STEP_CAP {
            return Err(Error::NotFinite);
        }
    }
    Ok((rep, word, w))
}

pub(crate) fn longest_word(g: &CoxeterSymbol, t: NodeSet) -> Result<Vec<usize>> {
    if g.classify_subset(t).is_none() {
        return Err(Error::NotFinite);
    }
    Ok(longest(g, t)?.1)
}

/// The permutation `pi` with `w0(alpha_s) = -alpha_pi(s)` on the nodes of `t`.
#[cfg(test)]
pub(crate) fn opposition(g: &CoxeterSymbol, t: NodeSet) -> Result<Vec<(usize, usize)>> {
    if g.classify_subset(t).is_none() {
        return Err(Error::NotFinite);
    }
    let (rep, _, w) = longest(g, t)?;
    let mut out = Vec::new();
    for (j, col) in w.iter().enumerate() {
        let target = col
            .iter()
            .position(|&x| (x + 1.0).abs() < 1e-6)
            .filter(|_| col.iter().filter(|x| x.abs() > 1e-6).count() == 1)
            .ok_or_else(|| Error::CheckFailed("longest element is not a signed permutation".into()))?;
        out.push((rep.nodes[j], rep.nodes[target]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_lengths() {
        let b3 = CoxeterSymbol::numbered(3, &[(0, 1, 3), (1, 2, 4)]);
        assert_eq!(longest_word(&b3, b3.all()).unwrap().len(), 9);
        let h3 = CoxeterSymbol::numbered(3, &[(0, 1, 5), (1, 2, 3)]);
        assert_eq!(longest_word(&h3, h3.all()).unwrap().len(), 15);
        let i7 = CoxeterSymbol::numbered(2, &[(0, 1, 7)]);
        assert_eq!(longest_word(&i7, i7.all()).unwrap().len(), 7);
        let a3 = CoxeterSymbol::numbered(3, &[(0, 1, 3), (1, 2, 3)]);
        assert_eq!(opposition(&a3, a3.all()).unwrap(), vec![(0, 2), (1, 1), (2, 0)]);
        let at = CoxeterSymbol::numbered(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)]);
        assert_eq!(longest_word(&at, at.all()), Err(Error::NotFinite));
    }
}
