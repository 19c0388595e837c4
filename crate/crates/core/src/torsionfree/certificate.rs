use serde::Serialize;

use super::{DaggerSymbol, Mode, SemidirectElement};
use crate::involutions::minus_eigenspace_dim;
use crate::modtwo::{involution_ker_im, Admissibility, F2Matrix};
use crate::nodeset::NodeSet;
use crate::symbol::Family;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    HomomorphismCheck,
    TorsionFree,
    CyclicExtension,
}

/// Why an involution class cannot meet the extending cyclic group.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exclusion {
    /// Nonzero `x`; conjugation never changes it.
    ParityBit,
    /// Third components have different (-1)-eigenspace dimensions.
    RankMismatch,
    /// Conjugate to `(0, 0, g)`, whose class misses the target.
    InImage,
}

/// A condition together with the objects it is evaluated on.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Check {
    /// `(a b)^order` maps to the identity.
    Relation { generators: [usize; 2], order: u32, mode: Mode },
    /// The longest element of `theta` does not map to the identity.
    InvolutionClass { theta: Vec<usize>, rank: usize, word: Vec<usize>, mode: Mode },
    /// The maximal connected finite visibles through a pendant are all of
    /// type B and contain no other pendant.
    VisibleStructure { pendant: usize, maximal: Vec<(Vec<usize>, String)> },
    /// Faithfulness on the visible B_k on the pendant plus `path`, or a
    /// parity bit that separates the one collapsing element.
    Faithfulness { attachment: usize, path: Vec<usize>, k: usize, span_dim: usize, mode: Mode },
    ZetaOrder { zeta: SemidirectElement, p: u32 },
    /// `zeta^(2^(p-1)) = (0, w, g)` with `g` an involution of the expected rank.
    HalfTurn { power: SemidirectElement, minus_dim: usize, expected: usize },
    /// Some component of `w` lies outside `im(g + 1)`.
    TargetAvoidance { power: SemidirectElement },
    ClassExclusion { theta: Vec<usize>, image: SemidirectElement, target: SemidirectElement, reason: Option<Exclusion> },
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Step {
    pub name: String,
    pub objects: Check,
    pub ok: bool,
}

impl Step {
    pub fn evaluate(d: &DaggerSymbol, check: Check) -> Step {
        let name = check.name(d);
        let ok = check.holds(d);
        Step { name, objects: check, ok }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub psi: String,
    pub nodes: Vec<String>,
    pub steps: Vec<Step>,
    #[serde(skip_serializing_if = "Option::is_none", with = "crate::exact::wide::option")]
    pub index: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
}

impl Certificate {
    pub(crate) fn new(kind: CertKind, d: &DaggerSymbol) -> Certificate {
        let nodes = d.attachments().iter().map(|a| d.psi().symbol.name(a.node).to_string()).collect();
        Certificate { kind, psi: d.psi().name(), nodes, steps: Vec::new(), index: None, p: None }
    }

    pub fn ok(&self) -> bool {
        self.steps.iter().all(|s| s.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter().filter(|s| !s.ok)
    }

    /// Re-evaluates every stored step against `d`; true iff all hold and
    /// match their recorded outcome.
    pub fn replay(&self, d: &DaggerSymbol) -> bool {
        self.steps.iter().all(|s| s.objects.holds(d) && s.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }
}

impl Check {
    fn name(&self, d: &DaggerSymbol) -> String {
        let g = d.gamma();
        let names = |v: &[usize]| v.iter().map(|&a| g.name(a)).collect::<Vec<_>>().join(",");
        match self {
            Check::Relation { generators: [a, b], order, .. } => format!("relation ({} {})^{order}", g.name(*a), g.name(*b)),
            Check::InvolutionClass { theta, .. } => format!("involution class {{{}}}", names(theta)),
            Check::VisibleStructure { pendant, .. } => format!("visibles through {}", g.name(*pendant)),
            Check::Faithfulness { attachment, k, path, .. } => {
                format!("B{k} on {}", names(&[&[d.pendant(*attachment)][..], path].concat()))
            }
            Check::ZetaOrder { p, .. } => format!("zeta has order 2^{p}"),
            Check::HalfTurn { .. } => "half turn".into(),
            Check::TargetAvoidance { .. } => "target avoids im(g+1)".into(),
            Check::ClassExclusion { theta, .. } => format!("exclude class {{{}}}", names(theta)),
        }
    }

    fn holds(&self, d: &DaggerSymbol) -> bool {
        match self {
            Check::Relation { generators: [a, b], order, mode } => {
                let word: Vec<usize> = if a == b {
                    vec![*a, *a]
                } else {
                    [*a, *b].repeat(*order as usize)
                };
                d.phi(&word, *mode).is_ok_and(|e| e.is_identity())
            }
            Check::InvolutionClass { theta, word, mode, .. } => {
                let set = NodeSet::from_nodes(theta.iter().copied());
                d.longest_word(set).is_ok_and(|w| &w == word)
                    && d.phi(word, *mode).is_ok_and(|e| !e.is_identity())
            }
            Check::VisibleStructure { pendant, maximal } => {
                let i = pendant.wrapping_sub(d.n());
                i < d.m()
                    && d.maximal_visibles(i) == *maximal
                    && maximal.iter().all(|(nodes, ty)| {
                        ty.starts_with('B') && nodes.iter().filter(|&&a| a >= d.n()).count() == 1
                    })
            }
            Check::Faithfulness { attachment, path, k, span_dim, mode } => {
                let i = *attachment;
                if i >= d.m() || path.len() + 1 != *k || d.path_span_dim(i, path) != *span_dim {
                    return false;
                }
                let bk = d.bk_nodes(i, path);
                // B1 is recognised as A1
                let is_b = match d.gamma().classify_subset(bk).as_deref() {
                    Some([ft]) => ft.family == Family::B || *k == 1,
                    _ => false,
                };
                if !is_b {
                    return false;
                }
                if span_dim == k {
                    return true;
                }
                // the collapsing element is w_{B_k} = -1; its pendant parity is k mod 2
                *mode == Mode::Hat
                    && d.attachments()[i].kind == Admissibility::Plain
                    && span_dim + 1 == *k
                    && d.longest_word(bk)
                        .and_then(|w| d.gamma().parity_character(d.pendant(i), &w))
                        .is_ok_and(|eps| eps == 1)
            }
            Check::ZetaOrder { zeta, p } => zeta.order(1 << p) == Some(1 << p),
            Check::HalfTurn { power, minus_dim, expected } => {
                power.x.is_zero()
                    && !power.g.is_identity()
                    && power.g.mul(&power.g).is_identity()
                    && minus_eigenspace_dim(&power.g) == *minus_dim
                    && minus_dim == expected
            }
            Check::TargetAvoidance { power } => involution_ker_im(&F2Matrix::from_int(&power.g))
                .is_ok_and(|ki| power.v.iter().any(|&w| !ki.im.contains(w))),
            Check::ClassExclusion { theta, image, target, reason } => {
                let set = NodeSet::from_nodes(theta.iter().copied());
                let recomputed = d.longest_word(set).and_then(|w| d.phi(&w, Mode::Hat));
                recomputed.is_ok_and(|e| &e == image)
                    && reason.is_some()
                    && *reason == exclusion_reason(image, target)
            }
        }
    }
}

/// First applicable reason why `image` is not conjugate to `target`.
pub(crate) fn exclusion_reason(image: &SemidirectElement, target: &SemidirectElement) -> Option<Exclusion> {
    if !image.x.is_zero() {
        return Some(Exclusion::ParityBit);
    }
    if minus_eigenspace_dim(&image.g) != minus_eigenspace_dim(&target.g) {
        return Some(Exclusion::RankMismatch);
    }
    let im = involution_ker_im(&F2Matrix::from_int(&image.g)).ok()?.im;
    if image.v.iter().all(|&v| im.contains(v)) {
        return Some(Exclusion::InImage);
    }
    None
}
