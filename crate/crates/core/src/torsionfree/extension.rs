use serde::Serialize;

use super::certificate::exclusion_reason;
use super::{CertKind, Certificate, Check, DaggerSymbol, Mode, SemidirectElement, Step};
use crate::error::{Error, Result};
use crate::involutions::{equivalence_classes, maximal_rank_class, minus_eigenspace_dim};
use crate::modtwo::{d_psi, find_target};
use crate::nodeset::NodeSet;
use crate::weyl::{weyl_data, WeylFamily};

#[derive(Clone, Debug, Serialize)]
pub struct Extension {
    pub zeta: SemidirectElement,
    pub p: u32,
    #[serde(with = "crate::exact::wide")]
    pub index: u128,
    pub certificate: Certificate,
}

/// Which Coxeter element and exponents drive `zeta = (0, (ū,...,ū), xi^q)`.
struct Recipe {
    xi_nodes: NodeSet,
    q: u64,
    p: u32,
    /// Rank of the maximal involution class of the group `xi` is a Coxeter element of.
    expected_rank: usize,
}

fn recipe(d: &DaggerSymbol) -> Result<Recipe> {
    let psi = d.psi();
    let n = psi.rank;
    let h = psi.h;
    match psi.family {
        WeylFamily::E if n == 6 => {
            // Coxeter element of the D5 on nodes 2..6
            let d5 = weyl_data(WeylFamily::D, 5)?;
            Ok(Recipe {
                xi_nodes: NodeSet::from_nodes(1..6),
                q: 1,
                p: 3,
                expected_rank: maximal_rank_class(&d5)?.rank,
            })
        }
        WeylFamily::A if n % 2 == 0 => Err(Error::Precondition(format!(
            "{} has odd Coxeter number {h}; no cyclic extension",
            psi.name()
        ))),
        WeylFamily::A => Ok(Recipe {
            xi_nodes: NodeSet::full(n),
            q: u64::from(h / 2),
            p: 1,
            expected_rank: maximal_rank_class(psi)?.rank,
        }),
        _ => {
            if h % 2 == 1 {
                return Err(Error::Precondition(format!("{} has odd Coxeter number", psi.name())));
            }
            let dim = d_psi(psi)?.d;
            if dim <= 1 {
                return Err(Error::Precondition(format!("d = {dim} for {}; need d > 1", psi.name())));
            }
            let p = h.trailing_zeros();
            Ok(Recipe { xi_nodes: NodeSet::full(n), q: u64::from(h >> p), p, expected_rank: maximal_rank_class(psi)?.rank })
        }
    }
}

/// Extends `ker phi_hat` by a cyclic group `<zeta>` of order `2^p` and
/// certifies that the preimage stays torsion free.
pub fn cyclic_extension(d: &DaggerSymbol) -> Result<Extension> {
    let r = recipe(d)?;
    let xi = d.psi().coxeter_element(Some(r.xi_nodes))?;
    let u = find_target(&xi, r.q, r.p)?;
    let mut zeta = d.identity(Mode::Hat);
    zeta.v = vec![u; d.m()];
    zeta.g = xi.pow(r.q);
    let power = zeta.pow(1 << (r.p - 1));

    let mut cert = Certificate::new(CertKind::CyclicExtension, d);
    cert.steps = d.kernel_steps(Mode::Hat)?;
    cert.steps.push(Step::evaluate(d, Check::ZetaOrder { zeta: zeta.clone(), p: r.p }));
    cert.steps.push(Step::evaluate(
        d,
        Check::HalfTurn { power: power.clone(), minus_dim: minus_eigenspace_dim(&power.g), expected: r.expected_rank },
    ));
    cert.steps.push(Step::evaluate(d, Check::TargetAvoidance { power: power.clone() }));
    for class in equivalence_classes(d.gamma())? {
        let theta = class.representative();
        let image = d.phi(&d.longest_word(theta)?, Mode::Hat)?;
        let reason = exclusion_reason(&image, &power);
        cert.steps.push(Step::evaluate(
            d,
            Check::ClassExclusion { theta: theta.to_vec(), image, target: power.clone(), reason },
        ));
    }
    let index = d.index_formula(Mode::Hat) >> r.p;
    cert.index = Some(index);
    cert.p = Some(r.p);
    Ok(Extension { zeta, p: r.p, index, certificate: cert })
}
