//! The dagger construction: a Weyl symbol Psi with pendant nodes `t_i`
//! hung by 4-labelled edges from admissible nodes `s_i`, the maps
//! `phi`/`phi_hat` into `Z/2^l × (∏ Λ_i/2 ⋊ W(Psi))`, and certificates
//! that their kernels (and cyclic extensions of them) are torsion free.

mod certificate;
mod closure;
mod extension;
mod semidirect;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use certificate::{CertKind, Certificate, Check, Exclusion, Step};
pub use closure::{image_order, subgroup_closure, CLOSURE_CAP};
pub use extension::{cyclic_extension, Extension};
pub use semidirect::SemidirectElement;

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::involutions::equivalence_classes;
use crate::modtwo::{admissibility, generators_mod2, orbit_span, tree_path, weight_vector, Admissibility, F2Vector};
use crate::nodeset::NodeSet;
use crate::symbol::{tits, CoxeterSymbol, Family, Label};
use crate::weyl::WeylData;

/// Longest word accepted by `phi`.
pub const WORD_CAP: usize = 10_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Hat,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Mode::Plain),
            "hat" => Ok(Mode::Hat),
            _ => Err(Error::Precondition(format!("unknown mode {s:?} (expected plain or hat)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::Hat => "hat",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Attachment {
    pub node: usize,
    pub kind: Admissibility,
}

#[derive(Clone, Debug)]
pub struct DaggerSymbol {
    psi: WeylData,
    attachments: Vec<Attachment>,
    gamma: CoxeterSymbol,
    ell: usize,
    weights: Vec<F2Vector>,
}

/// Builds the dagger symbol; every node must be admissible and distinct.
pub fn build_dagger(psi: &WeylData, nodes: &[usize]) -> Result<DaggerSymbol> {
    DaggerSymbol::assemble(psi, nodes, true)
}

impl DaggerSymbol {
    /// Same as [`build_dagger`] but without the admissibility requirement.
    /// Relations still hold; index and torsion statements need not.
    pub fn unchecked(psi: &WeylData, nodes: &[usize]) -> Result<DaggerSymbol> {
        Self::assemble(psi, nodes, false)
    }

    fn assemble(psi: &WeylData, nodes: &[usize], require: bool) -> Result<DaggerSymbol> {
        let n = psi.rank;
        let mut seen = NodeSet::EMPTY;
        let mut atts = Vec::with_capacity(nodes.len());
        for &s in nodes {
            if s >= n {
                return Err(Error::UnknownNode(format!("{} has no node {}", psi.name(), s + 1)));
            }
            if seen.contains(s) {
                return Err(Error::DuplicateAttachment(s + 1));
            }
            seen = seen.with(s);
            let kind = admissibility(psi, s);
            if require && kind == Admissibility::NotAdmissible {
                return Err(Error::NotAdmissible(s + 1));
            }
            atts.push(Attachment { node: s, kind });
        }
        if n + atts.len() > crate::nodeset::MAX_NODES {
            return Err(Error::TooLarge { what: "dagger symbol", size: n + atts.len(), cap: crate::nodeset::MAX_NODES });
        }
        atts.sort_by_key(|a| a.kind == Admissibility::Special);
        let ell = atts.iter().filter(|a| a.kind != Admissibility::Special).count();
        let mut names = psi.symbol.names().to_vec();
        names.extend((1..=atts.len()).map(|i| format!("t{i}")));
        let mut edges: Vec<(usize, usize, Label)> = psi.symbol.edges().collect();
        edges.extend(atts.iter().enumerate().map(|(i, a)| (a.node, n + i, Label::Finite(4))));
        let gamma = CoxeterSymbol::new(names, &edges)?;
        let weights = atts.iter().map(|a| weight_vector(psi, a.node).mod2()).collect();
        Ok(DaggerSymbol { psi: psi.clone(), attachments: atts, gamma, ell, weights })
    }

    pub fn psi(&self) -> &WeylData {
        &self.psi
    }

    pub fn attachments(&self) -> &[Attachment] {
        &self.attachments
    }

    pub fn gamma(&self) -> &CoxeterSymbol {
        &self.gamma
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.psi.rank
    }

    pub fn m(&self) -> usize {
        self.attachments.len()
    }

    /// Gamma index of the pendant `t_i`.
    pub fn pendant(&self, i: usize) -> usize {
        self.n() + i
    }

    pub fn weight(&self, i: usize) -> F2Vector {
        self.weights[i]
    }

    pub fn all_special(&self) -> bool {
        self.ell == 0
    }

    fn x_dim(&self, mode: Mode) -> usize {
        match mode {
            Mode::Plain => 0,
            Mode::Hat => self.ell,
        }
    }

    pub fn identity(&self, mode: Mode) -> SemidirectElement {
        SemidirectElement::identity(self.n(), self.m(), self.x_dim(mode))
    }

    /// Image of a single generator of Gamma.
    pub fn generator(&self, i: usize, mode: Mode) -> Result<SemidirectElement> {
        let mut e = self.identity(mode);
        if i < self.n() {
            e.g = self.psi.reflection_matrix(i).clone();
        } else if i < self.n() + self.m() {
            let k = i - self.n();
            e.v[k] = self.weights[k];
            if mode == Mode::Hat && k < self.ell {
                e.x = F2Vector::unit(self.ell, k);
            }
        } else {
            return Err(Error::UnknownNode(format!("generator index {i}")));
        }
        Ok(e)
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        if word.len() > WORD_CAP {
            return Err(Error::TooLarge { what: "word", size: word.len(), cap: WORD_CAP });
        }
        if let Some(&bad) = word.iter().find(|&&g| g >= self.gamma.len()) {
            return Err(Error::UnknownNode(format!("generator index {bad}")));
        }
        Ok(())
    }

    /// Ordered product of generator images.
    pub fn phi(&self, word: &[usize], mode: Mode) -> Result<SemidirectElement> {
        self.check_word(word)?;
        let n = self.n();
        let mut acc = self.identity(mode);
        for &a in word {
            if a < n {
                acc.g = acc.g.mul(self.psi.reflection_matrix(a));
            } else {
                let k = a - n;
                acc.v[k] = acc.v[k] + act_mod2(&acc.g, self.weights[k]);
                if mode == Mode::Hat && k < self.ell {
                    acc.x = acc.x + F2Vector::unit(self.ell, k);
                }
            }
        }
        Ok(acc)
    }

    /// The single-module variant: every `t_i` maps to `(ū_i, 1)` in one
    /// copy of L/2. Kept to exhibit why separate modules are needed.
    pub fn naive_phi(&self, word: &[usize]) -> Result<SemidirectElement> {
        self.check_word(word)?;
        let n = self.n();
        let mut acc = SemidirectElement::identity(n, 1, 0);
        for &a in word {
            if a < n {
                acc.g = acc.g.mul(self.psi.reflection_matrix(a));
            } else {
                acc.v[0] = acc.v[0] + act_mod2(&acc.g, self.weights[a - n]);
            }
        }
        Ok(acc)
    }

    /// `[W(Gamma) : ker] = 2^(mn (+l)) |W(Psi)|`.
    pub fn index_formula(&self, mode: Mode) -> u128 {
        let bits = self.m() * self.n() + self.x_dim(mode);
        let order: u128 = self.psi.order().try_into().expect("Weyl group orders fit in u128");
        order << bits
    }

    /// Type-A paths `s_i = p_1, ..., p_{k-1}` in Psi, i.e. the visible B_k through `t_i`.
    pub fn bk_paths(&self, i: usize, k: usize) -> Vec<Vec<usize>> {
        let s = self.attachments[i].node;
        if k == 0 {
            return Vec::new();
        }
        if k == 1 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for t in 0..self.n() {
            let path = tree_path(&self.psi, s, t);
            if path.len() != k - 1 {
                continue;
            }
            let set = NodeSet::from_nodes(path.iter().copied());
            if matches!(self.psi.symbol.classify_subset(set).as_deref(), Some([ft]) if ft.family == Family::A) {
                out.push(path);
            }
        }
        out
    }

    /// Dimension of the span of the orbit of `ū_i` under the path generators.
    pub fn path_span_dim(&self, i: usize, path: &[usize]) -> usize {
        let gens = generators_mod2(&self.psi);
        let sub: Vec<_> = path.iter().map(|&p| gens[p].clone()).collect();
        orbit_span(&sub, self.weights[i]).1.dim()
    }

    /// Whether `phi` is faithful on every visible B_k through `t_i`.
    pub fn faithful_on_bk(&self, i: usize, k: usize) -> Result<bool> {
        if i >= self.m() {
            return Err(Error::OutOfRange(format!("attachment {i}")));
        }
        let paths = self.bk_paths(i, k);
        if paths.is_empty() {
            return Err(Error::Precondition(format!("no visible B{k} through t{}", i + 1)));
        }
        Ok(paths.iter().all(|p| self.path_span_dim(i, p) == k))
    }

    /// Gamma node set of the visible B_k made of `t_i` and `path`.
    pub fn bk_nodes(&self, i: usize, path: &[usize]) -> NodeSet {
        NodeSet::from_nodes(path.iter().copied()).with(self.pendant(i))
    }

    /// Reduced word for the longest element of the visible subgroup on `t`.
    pub fn longest_word(&self, t: NodeSet) -> Result<Vec<usize>> {
        tits::longest_word(&self.gamma, t)
    }

    /// Residual torsion of `ker phi`: unions of an odd unfaithful B_k through
    /// some `t_i` with (-1)-type pieces of Psi not touching it, whose longest
    /// element lies in the kernel.
    pub fn torsion_witnesses(&self) -> Result<Vec<NodeSet>> {
        let mut out = Vec::new();
        let psi_nodes = NodeSet::full(self.n());
        for i in 0..self.m() {
            for k in (1..=self.n() + 1).step_by(2) {
                for path in self.bk_paths(i, k) {
                    if self.path_span_dim(i, &path) == k {
                        continue;
                    }
                    let delta = self.bk_nodes(i, &path);
                    let mut near = delta;
                    for a in delta.iter() {
                        near = near.union(self.gamma.neighbors(a));
                    }
                    let free = psi_nodes.difference(near);
                    for sub in subsets(free) {
                        if !sub.is_empty() && !crate::involutions::is_minus_one_type(&self.gamma, sub) {
                            continue;
                        }
                        let ups = delta.union(sub);
                        let word = self.longest_word(ups)?;
                        if self.phi(&word, Mode::Plain)?.is_identity() {
                            out.push(ups);
                        }
                    }
                }
            }
        }
        out.sort_by_key(|t| (t.len(), t.lex_key()));
        out.dedup();
        Ok(out)
    }

    /// Checks every defining relation of W(Gamma) on the generator images.
    pub fn verify_relations(&self, mode: Mode) -> Certificate {
        let mut cert = Certificate::new(CertKind::HomomorphismCheck, self);
        cert.steps.extend(self.relation_steps(mode));
        cert
    }

    fn relation_steps(&self, mode: Mode) -> Vec<Step> {
        let mut steps = Vec::new();
        let total = self.gamma.len();
        for a in 0..total {
            for b in a..total {
                if let Some(m) = self.gamma.label(a, b).finite() {
                    steps.push(Step::evaluate(self, Check::Relation { generators: [a, b], order: m, mode }));
                }
            }
        }
        steps
    }

    /// Index with an optional closure-enumeration cross-check.
    pub fn kernel_index(&self, mode: Mode) -> IndexReport {
        let index = self.index_formula(mode);
        let closure = match image_order(self, mode, CLOSURE_CAP) {
            None => ClosureCheck::Skipped,
            Some(c) if c == index => ClosureCheck::Verified(c),
            Some(c) => ClosureCheck::Mismatch(c),
        };
        IndexReport { index, torsion_free_expected: mode == Mode::Hat || self.all_special(), closure }
    }

    /// Machine-checked argument that the kernel of `phi` (plain) or
    /// `phi_hat` (hat) is torsion free.
    pub fn certify_torsion_free(&self, mode: Mode) -> Result<Certificate> {
        if mode == Mode::Plain && !self.all_special() {
            return Err(Error::Precondition(
                "plain mode needs every attachment specially admissible".into(),
            ));
        }
        let mut cert = Certificate::new(CertKind::TorsionFree, self);
        cert.steps = self.kernel_steps(mode)?;
        cert.index = Some(self.index_formula(mode));
        Ok(cert)
    }

    pub(crate) fn kernel_steps(&self, mode: Mode) -> Result<Vec<Step>> {
        let mut steps = self.relation_steps(mode);
        for class in equivalence_classes(&self.gamma)? {
            let theta = class.representative();
            let word = self.longest_word(theta)?;
            steps.push(Step::evaluate(self, Check::InvolutionClass { theta: theta.to_vec(), rank: class.rank, word, mode }));
        }
        for i in 0..self.m() {
            steps.push(Step::evaluate(self, Check::VisibleStructure { pendant: self.pendant(i), maximal: self.maximal_visibles(i) }));
        }
        for i in 0..self.m() {
            for k in 1..=self.n() + 1 {
                for path in self.bk_paths(i, k) {
                    let span_dim = self.path_span_dim(i, &path);
                    steps.push(Step::evaluate(self, Check::Faithfulness { attachment: i, path, k, span_dim, mode }));
                }
            }
        }
        Ok(steps)
    }

    /// Connected node sets of Gamma containing pendant `t_i`, as bit masks.
    pub(crate) fn connected_through(&self, i: usize) -> Vec<NodeSet> {
        let start = NodeSet::single(self.pendant(i));
        let mut seen = std::collections::HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            let mut border = NodeSet::EMPTY;
            for a in c.iter() {
                border = border.union(self.gamma.neighbors(a));
            }
            for b in border.difference(c).iter() {
                let next = c.with(b);
                // only finite visibles matter; supersets of infinite ones are infinite
                if self.gamma.classify_subset(next).is_some() && seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort_by_key(|t| (t.len(), t.lex_key()));
        out
    }

    /// Maximal connected finite visibles through `t_i` with their types.
    pub(crate) fn maximal_visibles(&self, i: usize) -> Vec<(Vec<usize>, String)> {
        let all = self.connected_through(i);
        all.iter()
            .filter(|c| !all.iter().any(|d| d != *c && c.is_subset(*d)))
            .map(|c| {
                let ft = self.gamma.classify_subset(*c).expect("finite by construction");
                (c.to_vec(), ft[0].to_string())
            })
            .collect()
    }
}

/// `g · v` over F2 for an integer matrix `g`.
pub(crate) fn act_mod2(g: &IntMatrix, v: F2Vector) -> F2Vector {
    let n = g.dim();
    let mut bits = 0u16;
    for r in 0..n {
        let mut s = 0i64;
        for j in 0..n {
            if v.get(j) {
                s += g.get(r, j);
            }
        }
        bits |= ((s & 1) as u16) << r;
    }
    F2Vector::from_bits(n, bits)
}

fn subsets(set: NodeSet) -> impl Iterator<Item = NodeSet> {
    let full = set.0;
    let mut sub = 0u32;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = sub;
        sub = sub.wrapping_sub(full) & full;
        done = sub == 0;
        Some(NodeSet(cur))
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosureCheck {
    Verified(u128),
    Mismatch(u128),
    Skipped,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IndexReport {
    pub index: u128,
    /// False in plain mode with a non-special attachment.
    pub torsion_free_expected: bool,
    pub closure: ClosureCheck,
}

#[cfg(test)]
mod tests;
