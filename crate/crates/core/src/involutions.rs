//! Involution conjugacy classes via (-1)-type subsymbols and elementary
//! equivalences.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::nodeset::NodeSet;
use crate::symbol::{CoxeterSymbol, Family, SUBSET_CAP};
use crate::weyl::WeylData;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceClass {
    /// Sorted lexicographically on node lists; the first is the canonical form.
    pub members: Vec<NodeSet>,
    pub rank: usize,
}

impl EquivalenceClass {
    pub fn representative(&self) -> NodeSet {
        self.members[0]
    }
}

/// Every component of the induced subsymbol has longest element -1.
/// The empty symbol is not of (-1)-type.
pub fn is_minus_one_type(g: &CoxeterSymbol, t: NodeSet) -> bool {
    !t.is_empty()
        && g.classify_subset(t).is_some_and(|types| types.iter().all(|ft| ft.is_minus_one_type()))
}

/// Opposition involution of a connected finite component, as `(s, pi(s))` pairs.
fn component_pi(g: &CoxeterSymbol, c: NodeSet) -> Result<Vec<(usize, usize)>> {
    let (ft, layout) = g.classify_component(c).ok_or(Error::NotFinite)?;
    let k = layout.len();
    let mut image: Vec<usize> = layout.clone();
    match ft.family {
        Family::A => image.reverse(),
        Family::D if k % 2 == 1 => image.swap(k - 2, k - 1),
        Family::E6 => {
            image.swap(0, 4);
            image.swap(1, 3);
        }
        Family::I2(m) if m % 2 == 1 => image.reverse(),
        _ => {}
    }
    let mut out: Vec<(usize, usize)> = layout.into_iter().zip(image).collect();
    out.sort_unstable();
    Ok(out)
}

/// `pi_Psi` for a connected finite symbol: `perm[i] = pi(i)`.
pub fn pi_permutation(g: &CoxeterSymbol) -> Result<Vec<usize>> {
    if g.is_empty() || !g.is_connected(g.all()) {
        return Err(Error::Precondition("pi needs a connected symbol".into()));
    }
    Ok(component_pi(g, g.all())?.into_iter().map(|(_, t)| t).collect())
}

/// Moves `T -> T ∪ {s} \ {pi(s)}` for `s` outside `T` whose component in
/// `T ∪ {s}` is finite and not of (-1)-type. Moves with `pi(s) = s` are
/// trivial and omitted.
pub fn elementary_moves(g: &CoxeterSymbol, d: NodeSet) -> Result<Vec<NodeSet>> {
    if !is_minus_one_type(g, d) {
        return Err(Error::Precondition("elementary moves need a (-1)-type subsymbol".into()));
    }
    let mut out = Vec::new();
    for s in g.all().difference(d).iter() {
        let ts = d.with(s);
        let comp = g.components_of(ts).into_iter().find(|c| c.contains(s)).expect("s lies in a component");
        let Some(types) = g.classify_subset(comp) else { continue };
        if types[0].is_minus_one_type() {
            continue;
        }
        let pi = component_pi(g, comp)?;
        let image = pi.iter().find(|&&(a, _)| a == s).map(|&(_, b)| b).expect("s in component");
        if image != s {
            out.push(ts.without(image));
        }
    }
    Ok(out)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// All classes of (-1)-type subsymbols under elementary equivalence.
/// Ordered by rank, then by canonical member.
pub fn equivalence_classes(g: &CoxeterSymbol) -> Result<Vec<EquivalenceClass>> {
    if g.len() > SUBSET_CAP {
        return Err(Error::TooLarge { what: "symbol", size: g.len(), cap: SUBSET_CAP });
    }
    let subsets: Vec<NodeSet> = (1u32..1 << g.len()).map(NodeSet).filter(|&t| is_minus_one_type(g, t)).collect();
    let index: HashMap<NodeSet, usize> = subsets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut parent: Vec<usize> = (0..subsets.len()).collect();
    for (i, &t) in subsets.iter().enumerate() {
        for m in elementary_moves(g, t)? {
            let j = *index.get(&m).ok_or_else(|| {
                Error::CheckFailed(format!("elementary move {t:?} -> {m:?} left the (-1)-type subsets"))
            })?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: HashMap<usize, Vec<NodeSet>> = HashMap::new();
    for i in 0..subsets.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(subsets[i]);
    }
    let mut classes: Vec<EquivalenceClass> = groups
        .into_values()
        .map(|mut members| {
            members.sort_by_key(|m| m.lex_key());
            let rank = members[0].len();
            EquivalenceClass { members, rank }
        })
        .collect();
    classes.sort_by(|a, b| (a.rank, a.representative().lex_key()).cmp(&(b.rank, b.representative().lex_key())));
    Ok(classes)
}

/// The unique class of maximal rank for an irreducible Weyl symbol.
pub fn maximal_rank_class(w: &WeylData) -> Result<EquivalenceClass> {
    let classes = equivalence_classes(&w.symbol)?;
    let top = classes.iter().map(|c| c.rank).max().ok_or(Error::NotFinite)?;
    let mut best: Vec<_> = classes.into_iter().filter(|c| c.rank == top).collect();
    if best.len() != 1 {
        return Err(Error::CheckFailed(format!("{} classes share the maximal rank {top}", best.len())));
    }
    Ok(best.remove(0))
}

/// `xi^(h/2)` is an involution whose -1 eigenspace has the maximal class rank.
pub fn half_coxeter_check(w: &WeylData) -> Result<bool> {
    if w.h % 2 == 1 {
        return Err(Error::Precondition(format!("Coxeter number of {} is odd", w.name())));
    }
    let g = w.coxeter_element(None)?.pow(w.h as u64 / 2);
    if !g.mul(&g).is_identity() {
        return Ok(false);
    }
    Ok(minus_eigenspace_dim(&g) == maximal_rank_class(w)?.rank)
}

/// Rank over Q of `g - 1`, the -1 eigenspace dimension of an involution.
pub fn minus_eigenspace_dim(g: &IntMatrix) -> usize {
    g.sub(&IntMatrix::identity(g.dim())).rank_q()
}
