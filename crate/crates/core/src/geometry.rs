//! Hyperbolic covolumes of the Vinberg simplex groups and volumes of the
//! manifolds covering them, all carried exactly as rational multiples of
//! powers of pi.

use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactRational, PiMonomial};
use crate::symbol::{CoxeterSymbol, Label};
use crate::torsionfree::{build_dagger, cyclic_extension, DaggerSymbol, Mode};
use crate::weyl::WeylData;

/// Largest Bernoulli index accepted.
pub const BERNOULLI_MAX: u32 = 32;

/// `B_k` with `B_1 = -1/2`, from `sum_j C(k+1, j) B_j = 0`.
pub fn bernoulli(k: u32) -> Result<ExactRational> {
    if k > BERNOULLI_MAX || (k > 1 && k % 2 == 1) {
        return Err(Error::OutOfRange(format!("Bernoulli index {k} (even, at most {BERNOULLI_MAX})")));
    }
    let mut b: Vec<ExactRational> = vec![ExactRational::one()];
    for m in 1..=k as usize {
        let mut s = ExactRational::zero();
        for (j, bj) in b.iter().enumerate() {
            s = s + ExactRational::int(binomial(BigInt::from(m + 1), BigInt::from(j))) * bj.clone();
        }
        b.push(-s / ExactRational::int(m + 1));
    }
    Ok(b.pop().unwrap())
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn check_even(n: u32) -> Result<()> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::OutOfRange(format!("dimension {n} (must be even and positive)")));
    }
    Ok(())
}

/// `kappa_n = (-1)^(n/2) 2^n (n/2)! / n! * pi^(n/2)`.
pub fn kappa(n: u32) -> Result<PiMonomial> {
    check_even(n)?;
    let c = ExactRational::new(BigInt::from(2).pow(n) * factorial(n / 2), factorial(n));
    let c = if (n / 2) % 2 == 1 { -c } else { c };
    Ok(PiMonomial::new(c, n / 2))
}

/// `kappa_n * chi(W(g))`.
pub fn covolume_gauss_bonnet(g: &CoxeterSymbol, n: u32) -> Result<PiMonomial> {
    let k = kappa(n)?;
    Ok(k.scale(&g.euler_characteristic()?))
}

/// `(2^(n/2) -/+ 1) / n! * prod_k |B_2k| * pi^(n/2)`, minus for n = 4, 6.
pub fn covolume_siegel(n: u32) -> Result<PiMonomial> {
    let sign: i64 = match n {
        4 | 6 => -1,
        8 => 1,
        _ => return Err(Error::OutOfRange(format!("dimension {n} (expected 4, 6 or 8)"))),
    };
    let mut c = ExactRational::new(BigInt::from(2).pow(n / 2) + sign, factorial(n));
    for k in 1..=n / 2 {
        c = c * bernoulli(2 * k)?.abs();
    }
    Ok(PiMonomial::new(c, n / 2))
}

/// The simplex group in dimension `n`: `Psi(n)` (a path on `n - 1` nodes
/// with node `n` hung off node 3) plus one pendant on a 4-edge.
#[derive(Clone, Debug)]
pub struct VinbergSymbol {
    pub n: u32,
    pub psi: CoxeterSymbol,
    /// Node of `psi` carrying the pendant.
    pub node: usize,
    pub gamma: CoxeterSymbol,
    /// Present for n = 4, 6, 8.
    pub dagger: Option<DaggerSymbol>,
}

pub fn psi_symbol(n: u32) -> Result<CoxeterSymbol> {
    if !(4..=9).contains(&n) {
        return Err(Error::OutOfRange(format!("dimension {n} (expected 4..=9)")));
    }
    let k = n as usize;
    let mut edges: Vec<(usize, usize, u32)> = (0..k - 2).map(|i| (i, i + 1, 3)).collect();
    edges.push((2, k - 1, 3));
    Ok(CoxeterSymbol::numbered(k, &edges))
}

fn with_pendant(psi: &CoxeterSymbol, s: usize) -> Result<CoxeterSymbol> {
    let mut names = psi.names().to_vec();
    names.push("t1".into());
    let mut edges: Vec<_> = psi.edges().collect();
    edges.push((s, psi.len(), Label::Finite(4)));
    CoxeterSymbol::new(names, &edges)
}

/// Hyperbolic signature and every facet (one node removed) of nonnegative type.
fn is_simplex_group(g: &CoxeterSymbol, n: usize) -> Result<bool> {
    if g.signature(-1.0)? != (n, 1, 0) {
        return Ok(false);
    }
    for drop in 0..g.len() {
        let facet = g.induced_subsymbol(g.all().without(drop))?;
        if facet.signature(-1.0)?.1 != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some label-preserving automorphism of `g` maps `a` to `b`.
fn symmetric(g: &CoxeterSymbol, a: usize, b: usize) -> bool {
    fn extend(g: &CoxeterSymbol, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, i: usize) -> bool {
        if i == map.len() {
            return true;
        }
        if map[i].is_some() {
            return extend(g, map, used, i + 1);
        }
        for c in 0..map.len() {
            if used[c] {
                continue;
            }
            let fits = (0..map.len()).all(|j| match map[j] {
                Some(mj) => g.label(i, j) == g.label(c, mj),
                None => true,
            });
            if fits {
                map[i] = Some(c);
                used[c] = true;
                if extend(g, map, used, i + 1) {
                    return true;
                }
                map[i] = None;
                used[c] = false;
            }
        }
        false
    }
    if g.neighbors(a).len() != g.neighbors(b).len() {
        return false;
    }
    let mut map = vec![None; g.len()];
    let mut used = vec![false; g.len()];
    map[a] = Some(b);
    used[b] = true;
    extend(g, &mut map, &mut used, 0)
}

pub fn vinberg_symbol(n: u32) -> Result<VinbergSymbol> {
    let psi = psi_symbol(n)?;
    let mut cands = Vec::new();
    for s in 0..psi.len() {
        let gamma = with_pendant(&psi, s)?;
        if !is_simplex_group(&gamma, n as usize)? {
            continue;
        }
        if n % 2 == 0 && covolume_gauss_bonnet(&gamma, n)? != covolume_siegel(n)? {
            continue;
        }
        cands.push((s, gamma));
    }
    let Some((s, gamma)) = cands.first().cloned() else {
        return Err(Error::CheckFailed(format!("no pendant node gives a simplex group in dimension {n}")));
    };
    if cands.iter().any(|(t, _)| !symmetric(&psi, s, *t)) {
        let nodes: Vec<_> = cands.iter().map(|(t, _)| psi.name(*t)).collect();
        return Err(Error::CheckFailed(format!("pendant node ambiguous in dimension {n}: {nodes:?}")));
    }
    let dagger = match n {
        4 | 6 | 8 => {
            let w = WeylData::parse(&format!("{}{}", if n == 4 { "A" } else { "E" }, n))?;
            Some(build_dagger(&w, &[s])?)
        }
        _ => None,
    };
    Ok(VinbergSymbol { n, psi, node: s, gamma, dagger })
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifoldVolume {
    pub vol: PiMonomial,
    pub chi: ExactRational,
    #[serde(with = "crate::exact::wide")]
    pub index: u128,
    /// Order of the cyclic deck group, `2^p`.
    pub deck: u64,
}

/// Volume of the manifold cut out by the torsion-free subgroup built on the
/// Vinberg dagger: `ker phi_hat` for n = 4, its cyclic extension otherwise.
pub fn manifold_volume(n: u32) -> Result<ManifoldVolume> {
    let v = vinberg_symbol(n)?;
    let d = v
        .dagger
        .as_ref()
        .ok_or_else(|| Error::OutOfRange(format!("dimension {n} (expected 4, 6 or 8)")))?;
    let cert = d.certify_torsion_free(Mode::Hat)?;
    if !cert.ok() {
        return Err(Error::CheckFailed(format!("torsion-free certificate for dimension {n}")));
    }
    let (index, p) = if n == 4 {
        (d.index_formula(Mode::Hat), 0)
    } else {
        let ext = cyclic_extension(d)?;
        if !ext.certificate.ok() {
            return Err(Error::CheckFailed(format!("extension certificate for dimension {n}")));
        }
        (ext.index, ext.p)
    };
    let chi_gamma = v.gamma.euler_characteristic()?;
    let chi = chi_gamma * ExactRational::int(BigInt::from(index));
    let vol = kappa(n)?.scale(&chi);
    Ok(ManifoldVolume { vol, chi, index, deck: 1 << p })
}
