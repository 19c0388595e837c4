use super::*;
use crate::weyl::WeylData;

fn dagger(psi: &str, nodes: &[usize]) -> DaggerSymbol {
    build_dagger(&WeylData::parse(psi).unwrap(), nodes).unwrap()
}

#[test]
fn build_orders_plain_first_and_rejects_bad_nodes() {
    let d = dagger("E6", &[4, 0]);
    assert_eq!(d.m(), 2);
    assert_eq!(d.gamma().len(), 8);
    assert_eq!(d.gamma().label(4, 6), Label::Finite(4));
    let b4 = WeylData::parse("B4").unwrap();
    assert!(matches!(build_dagger(&b4, &[3]), Err(Error::NotAdmissible(4))));
    let e6 = WeylData::parse("E6").unwrap();
    assert!(matches!(build_dagger(&e6, &[0, 0]), Err(Error::DuplicateAttachment(1))));
    let a4 = dagger("A4", &[1]);
    assert_eq!(a4.ell(), 1);
}

#[test]
fn generator_squares_and_relations() {
    let d = dagger("A4", &[1]);
    assert!(d.phi(&[4, 4], Mode::Hat).unwrap().is_identity());
    let s = d.phi(&[2], Mode::Plain).unwrap();
    assert_eq!(&s.g, d.psi().reflection_matrix(2));
    assert!(s.v[0].is_zero());
    for mode in [Mode::Plain, Mode::Hat] {
        let cert = d.verify_relations(mode);
        assert!(cert.ok());
        assert!(cert.replay(&d));
    }
    assert!(d.phi(&[9], Mode::Plain).is_err());
}

#[test]
fn index_and_closure_agree_on_a4() {
    let d = dagger("A4", &[1]);
    let r = d.kernel_index(Mode::Hat);
    assert_eq!(r.index, 3840);
    assert_eq!(r.closure, ClosureCheck::Verified(3840));
    assert!(!d.kernel_index(Mode::Plain).torsion_free_expected);
}

#[test]
fn a4_plain_has_witnesses_separated_by_parity() {
    let d = dagger("A4", &[1]);
    let ws = d.torsion_witnesses().unwrap();
    assert!(!ws.is_empty());
    for w in ws {
        let word = d.longest_word(w).unwrap();
        assert!(d.phi(&word, Mode::Plain).unwrap().is_identity());
        assert!(!d.phi(&word, Mode::Hat).unwrap().x.is_zero());
    }
    assert!(matches!(d.certify_torsion_free(Mode::Plain), Err(Error::Precondition(_))));
    let cert = d.certify_torsion_free(Mode::Hat).unwrap();
    assert!(cert.ok(), "{:?}", cert.failures().collect::<Vec<_>>());
    assert!(cert.replay(&d));
}

#[test]
fn naive_map_identifies_two_elements() {
    let d = dagger("E6", &[0, 4]);
    let (t1, t2) = (d.pendant(0), d.pendant(1));
    let g1 = [0, t1, 1].repeat(3);
    let g2 = [4, t2, 3].repeat(3);
    let n1 = d.naive_phi(&g1).unwrap();
    assert_eq!(n1, d.naive_phi(&g2).unwrap());
    assert!(!n1.is_identity());
    assert_ne!(d.phi(&g1, Mode::Plain).unwrap(), d.phi(&g2, Mode::Plain).unwrap());
}

#[test]
fn e6_extension_has_order_eight() {
    let d = dagger("E6", &[0]);
    let cert = d.certify_torsion_free(Mode::Hat).unwrap();
    assert!(cert.ok(), "{:?}", cert.failures().collect::<Vec<_>>());
    assert_eq!(cert.index, Some(128 * 51840));
    let ext = cyclic_extension(&d).unwrap();
    assert_eq!(ext.p, 3);
    assert_eq!(ext.index, 829440);
    assert!(ext.certificate.ok(), "{:?}", ext.certificate.failures().collect::<Vec<_>>());
    assert!(ext.certificate.replay(&d));
}

#[test]
fn a4_extension_is_refused() {
    let d = dagger("A4", &[1]);
    assert!(matches!(cyclic_extension(&d), Err(Error::Precondition(_))));
}

#[test]
fn semidirect_group_laws() {
    let d = dagger("D4", &[1]);
    let a = d.phi(&[0, 4, 1, 2, 4, 3], Mode::Hat).unwrap();
    let b = d.phi(&[4, 1, 0, 4], Mode::Hat).unwrap();
    assert!(a.mul(&a.inverse()).is_identity());
    assert_eq!(a.mul(&b), d.phi(&[0, 4, 1, 2, 4, 3, 4, 1, 0, 4], Mode::Hat).unwrap());
    let ord = a.order(1000).unwrap();
    assert!(a.pow(ord).is_identity());
}

#[test]
fn e8_extension_is_generic_with_central_half_turn() {
    let d = dagger("E8", &[6]);
    let ext = cyclic_extension(&d).unwrap();
    assert_eq!(ext.p, 1);
    assert_eq!(ext.index, 178362777600);
    assert_eq!(ext.zeta.g, IntMatrix::identity(8).neg());
    assert!(ext.certificate.ok());
}

#[test]
fn odd_a_extension_uses_half_turn() {
    let a5 = WeylData::parse("A5").unwrap();
    let d = DaggerSymbol::unchecked(&a5, &[0]).unwrap();
    let ext = cyclic_extension(&d).unwrap();
    assert_eq!(ext.p, 1);
    assert_eq!(ext.zeta.g, a5.coxeter_element(None).unwrap().pow(3));
    assert!(ext.zeta.pow(2).is_identity());
}
