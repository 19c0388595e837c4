use proptest::prelude::*;
use proptest::sample::select;

use coxtor::geometry::{bernoulli, covolume_gauss_bonnet, kappa, manifold_volume, vinberg_symbol};
use coxtor::involutions::{elementary_moves, equivalence_classes, is_minus_one_type};
use coxtor::modtwo::{d_psi, involution_ker_im, reduce_mod2, weight_vector, F2Matrix};
use coxtor::torsionfree::{build_dagger, cyclic_extension, subgroup_closure, DaggerSymbol, Mode};
use coxtor::weyl::{all_types, element_order};
use coxtor::{CoxeterSymbol, ExactRational, IntMatrix, Label, NodeSet, WeylData};

fn w(name: &str) -> WeylData {
    WeylData::parse(name).unwrap()
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..=max_len)
}

fn type_names() -> Vec<String> {
    all_types(8, 8).iter().map(|t| t.name()).collect()
}

/// `symbol` with node `i` moved to position `perm[i]`.
fn relabel(g: &CoxeterSymbol, perm: &[usize]) -> CoxeterSymbol {
    let mut names = vec![String::new(); g.len()];
    for (i, &p) in perm.iter().enumerate() {
        names[p] = g.name(i).to_string();
    }
    let edges: Vec<_> = g.edges().map(|(a, b, m)| (perm[a], perm[b], m)).collect();
    CoxeterSymbol::new(names, &edges).unwrap()
}

fn sorted_types(g: &CoxeterSymbol) -> Option<Vec<String>> {
    g.classify_finite_type().map(|ts| {
        let mut v: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
        v.sort();
        v
    })
}

fn random_symbol() -> impl Strategy<Value = CoxeterSymbol> {
    (1usize..=6).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(select(vec![2u32, 2, 2, 3, 3, 4, 5, 6, 0]), pairs).prop_map(move |labels| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    match labels[k] {
                        2 => {}
                        0 => edges.push((i, j, Label::Infinite)),
                        m => edges.push((i, j, Label::Finite(m))),
                    }
                    k += 1;
                }
            }
            CoxeterSymbol::new((1..=n).map(|i| i.to_string()).collect(), &edges).unwrap()
        })
    })
}

#[test]
fn euler_characteristic_inverts_order_for_finite_types() {
    for t in all_types(6, 6) {
        let chi = t.symbol.euler_characteristic().unwrap();
        let order = ExactRational::int(num_bigint::BigInt::from(t.order()));
        assert_eq!(chi * order, ExactRational::one(), "{}", t.name());
    }
}

#[test]
fn longest_elements_and_coxeter_numbers() {
    for t in all_types(8, 8) {
        let (m, len) = t.longest_element(NodeSet::full(t.rank));
        let n = t.rank;
        let roots = match t.name().as_bytes()[0] {
            b'A' => n * (n + 1) / 2,
            b'B' => n * n,
            b'D' => n * (n - 1),
            b'G' => 6,
            b'F' => 24,
            _ => [36, 63, 120][n - 6],
        };
        assert_eq!(len, roots, "{}", t.name());
        assert_eq!(m == IntMatrix::identity(n).neg(), t.minus_one_type, "{}", t.name());
        let xi = t.coxeter_element(None).unwrap();
        assert_eq!(element_order(&xi, 64).unwrap(), u64::from(t.h), "{}", t.name());
    }
}

#[test]
fn weight_vectors_pair_with_a_single_root() {
    for t in all_types(8, 12) {
        for s in 0..t.rank {
            let u = weight_vector(&t, s);
            let gu = t.gram2.apply(&u.coords);
            for (i, &x) in gu.iter().enumerate() {
                assert_eq!(x > 0, i == s, "{} s={s}", t.name());
                assert!(x >= 0);
            }
            assert!(u.coords[s] > 0);
            let g = u.coords.iter().fold(0i64, |g, &c| num_integer::gcd(g, c));
            assert_eq!(g, 1, "{} s={s} not primitive", t.name());
        }
    }
}

#[test]
fn elementary_moves_preserve_type_and_size() {
    for t in all_types(8, 8) {
        let g = &t.symbol;
        for mask in 1u32..1 << g.len() {
            let d = NodeSet(mask);
            if !is_minus_one_type(g, d) {
                continue;
            }
            for m in elementary_moves(g, d).unwrap() {
                assert!(is_minus_one_type(g, m));
                assert_eq!(m.len(), d.len());
            }
        }
    }
}

#[test]
fn extension_index_times_deck_is_kernel_index() {
    for n in [6, 8] {
        let d = vinberg_symbol(n).unwrap().dagger.unwrap();
        let ext = cyclic_extension(&d).unwrap();
        assert_eq!(ext.index << ext.p, d.index_formula(Mode::Hat));
    }
}

#[test]
fn manifold_euler_characteristic_is_index_times_orbifold() {
    for n in [4, 6, 8] {
        let v = manifold_volume(n).unwrap();
        let g = vinberg_symbol(n).unwrap().gamma;
        let chi_g = g.euler_characteristic().unwrap();
        let index = ExactRational::int(num_bigint::BigInt::from(v.index));
        assert_eq!(v.chi, chi_g.clone() * index.clone());
        let covol = covolume_gauss_bonnet(&g, n).unwrap();
        assert_eq!(v.vol.div(&covol).unwrap().coeff, index);
    }
}

#[test]
fn kappa_signs_alternate_and_bernoulli_matches_zeta() {
    for n in (2..=16).step_by(2) {
        let k = kappa(n).unwrap();
        assert!(!k.coeff.is_zero());
        assert_eq!(k.coeff.is_positive(), (n / 2) % 2 == 0);
    }
    let zeta = [std::f64::consts::PI.powi(2) / 6.0, std::f64::consts::PI.powi(4) / 90.0, std::f64::consts::PI.powi(6) / 945.0, std::f64::consts::PI.powi(8) / 9450.0];
    for k in 1..=4u32 {
        let b = bernoulli(2 * k).unwrap().abs().to_f64();
        let fact: f64 = (1..=2 * k).map(f64::from).product();
        let want = 2.0 * fact * zeta[k as usize - 1] / (2.0 * std::f64::consts::PI).powi(2 * k as i32);
        assert!((b - want).abs() < 1e-9, "B_{}", 2 * k);
    }
}

/// Disjoint visibles of a small dagger have images meeting only in the identity.
#[test]
fn disjoint_visibles_have_trivial_intersection() {
    let daggers = [
        DaggerSymbol::unchecked(&w("A3"), &[0]).unwrap(),
        build_dagger(&w("B3"), &[1]).unwrap(),
        build_dagger(&w("D4"), &[1]).unwrap(),
    ];
    for d in &daggers {
        let total = d.gamma().len();
        for a in 1u32..1 << total {
            let da = NodeSet(a);
            if d.gamma().classify_subset(da).is_none() {
                continue;
            }
            let rest = NodeSet::full(total).difference(da);
            for b in 1u32..1 << total {
                let db = NodeSet(b);
                if !db.is_subset(rest) || d.gamma().classify_subset(db).is_none() {
                    continue;
                }
                let image = |t: NodeSet| {
                    let gens: Vec<_> = t.iter().map(|i| d.generator(i, Mode::Hat).unwrap()).collect();
                    subgroup_closure(&gens, 100_000).unwrap()
                };
                let (ia, ib) = (image(da), image(db));
                let common = ia.iter().filter(|e| ib.binary_search(e).is_ok()).count();
                assert_eq!(common, 1, "{:?} / {:?}", da.to_vec(), db.to_vec());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_ignores_labelling(name in select(type_names()), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let t = w(&name);
        let mut perm: Vec<usize> = (0..t.rank).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let g = relabel(&t.symbol, &perm);
        prop_assert_eq!(sorted_types(&g), sorted_types(&t.symbol));
        let shape = |g: &CoxeterSymbol| {
            let mut v: Vec<(usize, usize)> =
                equivalence_classes(g).unwrap().iter().map(|c| (c.rank, c.members.len())).collect();
            v.sort();
            v
        };
        prop_assert_eq!(shape(&g), shape(&t.symbol));
    }

    #[test]
    fn signature_matches_finiteness(g in random_symbol()) {
        let (p, n, z) = g.signature(-1.0).unwrap();
        prop_assert_eq!(p + n + z, g.len());
        prop_assert_eq!(p == g.len(), g.classify_finite_type().is_some());
    }

    #[test]
    fn parity_character_is_additive(a in word(5, 20), b in word(5, 20)) {
        let g = w("B5").symbol;
        let t = 4;
        let ab = [a.clone(), b.clone()].concat();
        let sum = (g.parity_character(t, &a).unwrap() + g.parity_character(t, &b).unwrap()) % 2;
        prop_assert_eq!(g.parity_character(t, &ab).unwrap(), sum);
    }

    #[test]
    fn weyl_elements_preserve_gram(name in select(type_names()), wd in word(8, 30)) {
        let t = w(&name);
        let wd: Vec<usize> = wd.into_iter().map(|s| s % t.rank).collect();
        let g = t.word_to_matrix(&wd).unwrap();
        // columns are images of basis vectors, so the form is preserved as g^T B g = B
        prop_assert_eq!(g.transpose().mul(&t.gram2).mul(&g), t.gram2.clone());
    }

    #[test]
    fn perm_model_is_faithful(name in select(vec!["A4", "B4", "D4"]), a in word(4, 8), b in word(4, 8)) {
        let t = w(name);
        let ma = t.word_to_matrix(&a).unwrap();
        let mb = t.word_to_matrix(&b).unwrap();
        let pa = t.perm_model(&a).unwrap();
        let pb = t.perm_model(&b).unwrap();
        prop_assert_eq!(ma == mb, pa == pb);
        let ab = [a, b].concat();
        prop_assert_eq!(t.perm_model(&ab).unwrap(), pa.compose(&pb));
    }

    #[test]
    fn d_is_conjugation_invariant(name in select(type_names()), wd in word(8, 20)) {
        let t = w(&name);
        prop_assume!(t.h % 2 == 0);
        let wd: Vec<usize> = wd.into_iter().map(|s| s % t.rank).collect();
        let c = reduce_mod2(&t.word_to_matrix(&wd).unwrap());
        let cinv = reduce_mod2(&t.word_to_matrix(&wd.iter().rev().copied().collect::<Vec<_>>()).unwrap());
        let half = reduce_mod2(&t.coxeter_element(None).unwrap().pow(u64::from(t.h / 2)));
        let conj: F2Matrix = c.mul(&half).mul(&cinv);
        let ki = involution_ker_im(&conj).unwrap();
        prop_assert!(ki.im.is_subspace_of(&ki.ker));
        prop_assert_eq!(ki.d, d_psi(&t).unwrap().d);
    }

    #[test]
    fn phi_is_a_homomorphism(
        pick in 0usize..4,
        a in prop::collection::vec(0usize..32, 0..24),
        b in prop::collection::vec(0usize..32, 0..24),
        hat in any::<bool>(),
    ) {
        let d = [
            build_dagger(&w("A4"), &[1]).unwrap(),
            build_dagger(&w("D4"), &[1]).unwrap(),
            build_dagger(&w("E6"), &[0, 4]).unwrap(),
            build_dagger(&w("E8"), &[6]).unwrap(),
        ][pick].clone();
        let mode = if hat { Mode::Hat } else { Mode::Plain };
        let k = d.gamma().len();
        let a: Vec<usize> = a.into_iter().map(|x| x % k).collect();
        let b: Vec<usize> = b.into_iter().map(|x| x % k).collect();
        let ab = [a.clone(), b.clone()].concat();
        prop_assert_eq!(d.phi(&ab, mode).unwrap(), d.phi(&a, mode).unwrap().mul(&d.phi(&b, mode).unwrap()));
    }

    #[test]
    fn parity_bits_are_class_functions(
        c in prop::collection::vec(0usize..32, 0..16),
        g in prop::collection::vec(0usize..32, 0..16),
    ) {
        let d = build_dagger(&w("E6"), &[0, 4]).unwrap();
        let k = d.gamma().len();
        let c: Vec<usize> = c.into_iter().map(|x| x % k).collect();
        let g: Vec<usize> = g.into_iter().map(|x| x % k).collect();
        let conj = [c.clone(), g.clone(), c.iter().rev().copied().collect()].concat();
        prop_assert_eq!(d.phi(&conj, Mode::Hat).unwrap().x, d.phi(&g, Mode::Hat).unwrap().x);
    }
}

#[test]
fn passing_certificates_replay() {
    for (psi, nodes) in [("A4", vec![1]), ("B4", vec![1]), ("D6", vec![1, 3]), ("E6", vec![0]), ("E7", vec![0, 2])] {
        let d = build_dagger(&w(psi), &nodes).unwrap();
        let cert = d.certify_torsion_free(Mode::Hat).unwrap();
        assert!(cert.ok(), "{psi}: {:?}", cert.failures().map(|s| &s.name).collect::<Vec<_>>());
        assert!(cert.replay(&d));
    }
}
