use std::collections::{HashMap, HashSet};

use super::{act_mod2, DaggerSymbol, Mode, SemidirectElement};
use crate::intmat::IntMatrix;

/// Largest group enumerated element by element.
pub const CLOSURE_CAP: u128 = 10_000_000;

/// Order of the image of `phi` (or `phi_hat`), by enumeration; `None` when
/// the formula bound exceeds `cap`.
pub fn image_order(d: &DaggerSymbol, mode: Mode, cap: u128) -> Option<u128> {
    let n = d.n();
    let m = d.m();
    let bits = m * n + if mode == Mode::Hat { d.ell() } else { 0 };
    let w_order: u128 = d.psi().order().try_into().ok()?;
    if bits >= 64 || w_order.checked_shl(bits as u32)? > cap {
        return None;
    }
    let (elems, right) = weyl_table(d, w_order as usize);
    // g · ū_i packed at bit offset i·n
    let gu: Vec<Vec<u64>> = elems
        .iter()
        .map(|g| (0..m).map(|i| u64::from(act_mod2(g, d.weight(i)).bits)).collect())
        .collect();

    let total = (elems.len() as u64) << bits;
    let mut seen = vec![0u64; (total as usize).div_ceil(64)];
    let mark = |seen: &mut Vec<u64>, s: u64| {
        let (w, b) = ((s >> 6) as usize, s & 63);
        let fresh = seen[w] >> b & 1 == 0;
        seen[w] |= 1 << b;
        fresh
    };
    let mask = (1u64 << bits) - 1;
    let mut stack = vec![0u64];
    mark(&mut seen, 0);
    let mut count: u128 = 1;
    while let Some(state) = stack.pop() {
        let gi = (state >> bits) as usize;
        let low = state & mask;
        let mut push = |s: u64, seen: &mut Vec<u64>, stack: &mut Vec<u64>| {
            if mark(seen, s) {
                count += 1;
                stack.push(s);
            }
        };
        for s in 0..n {
            push((right[gi][s] as u64) << bits | low, &mut seen, &mut stack);
        }
        for i in 0..m {
            let mut nb = low ^ (gu[gi][i] << (i * n));
            if mode == Mode::Hat && i < d.ell() {
                nb ^= 1 << (m * n + i);
            }
            push((gi as u64) << bits | nb, &mut seen, &mut stack);
        }
    }
    Some(count)
}

/// Elements of W(Psi) with the right-multiplication table by the simple reflections.
fn weyl_table(d: &DaggerSymbol, expected: usize) -> (Vec<IntMatrix>, Vec<Vec<u32>>) {
    let n = d.n();
    let gens = d.psi().generators();
    let mut index: HashMap<IntMatrix, u32> = HashMap::with_capacity(expected);
    let mut elems = vec![IntMatrix::identity(n)];
    index.insert(elems[0].clone(), 0);
    let mut right: Vec<Vec<u32>> = Vec::with_capacity(expected);
    let mut k = 0;
    while k < elems.len() {
        let mut row = Vec::with_capacity(n);
        for s in gens {
            let p = elems[k].mul(s);
            let next = index.len() as u32;
            let j = *index.entry(p.clone()).or_insert_with(|| {
                elems.push(p);
                next
            });
            row.push(j);
        }
        right.push(row);
        k += 1;
    }
    (elems, right)
}

/// Subgroup generated by `gens`, sorted; `None` past `cap` elements.
pub fn subgroup_closure(gens: &[SemidirectElement], cap: usize) -> Option<Vec<SemidirectElement>> {
    let id = match gens.first() {
        Some(g) => SemidirectElement::identity(g.g.dim(), g.v.len(), g.x.dim()),
        None => return Some(Vec::new()),
    };
    let mut seen = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(e) = stack.pop() {
        for g in gens {
            let p = e.mul(g);
            if !seen.contains(&p) {
                if seen.len() >= cap {
                    return None;
                }
                seen.insert(p.clone());
                stack.push(p);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Some(out)
}
