use stringc_core::coset::EnumerationLimits;
use stringc_core::families::*;
use stringc_core::sggi::{certify, certify_group, quotient_criterion, SggiGroup};
use stringc_core::verify::{verify_divisibility, verify_subgroup_structure};
use stringc_core::GeneratorMap;

fn l() -> EnumerationLimits {
    EnumerationLimits::default()
}

fn order_and_type(p: &stringc_core::Presentation) -> (u64, Vec<u64>) {
    let c = certify(p, &[0, 1, 2], l()).unwrap();
    assert!(c.is_string_c_group());
    (c.order, c.schlafli.entries)
}

#[test]
fn degenerate_orders() {
    assert_eq!(
        order_and_type(&build_degenerate(2, 1).unwrap()),
        (8, vec![2, 2])
    );
    assert_eq!(
        order_and_type(&build_degenerate(12, 1).unwrap()),
        (48, vec![12, 2])
    );
    assert_eq!(
        order_and_type(&build_degenerate(5, 2).unwrap()),
        (20, vec![2, 5])
    );
}

#[test]
fn type44_orders() {
    for (b, o1, o2) in [(2, 32, 64), (3, 72, 144), (4, 128, 256)] {
        assert_eq!(
            order_and_type(&build_type44(b, 1).unwrap()),
            (o1, vec![4, 4])
        );
        assert_eq!(
            order_and_type(&build_type44(b, 2).unwrap()),
            (o2, vec![4, 4])
        );
    }
}

#[test]
fn type1_examples() {
    let cases = [
        ((2, 2, 5, 1, 1), 32, [4, 4]),
        ((2, 2, 6, 3, 1), 192, [12, 4]),
        ((3, 2, 8, 5, 1), 1280, [40, 4]),
    ];
    for ((s, t, n, l1, l2), order, k) in cases {
        let p = Type1Params::new(s, t, n, l1, l2).unwrap();
        assert_eq!(
            order_and_type(&build_type1(&p).unwrap()),
            (order, k.to_vec())
        );
    }
}

#[test]
fn type2_examples() {
    for (f, m, order) in [
        (Family::G, 1, 192),
        (Family::G, 2, 1536),
        (Family::I, 2, 6144),
    ] {
        let p = build_type2(&Type2Params::new(f, m).unwrap()).unwrap();
        assert_eq!(order_and_type(&p), (order, vec![6, 6]));
    }
}

#[test]
fn divisibility_examples() {
    let p = build_type1(&Type1Params::new(2, 2, 6, 3, 1).unwrap()).unwrap();
    assert_eq!(
        verify_divisibility(&certify(&p, &[0, 1, 2], l()).unwrap(), 3),
        Ok(true)
    );
    let g = build_type2(&Type2Params::new(Family::G, 1).unwrap()).unwrap();
    assert_eq!(
        verify_divisibility(&certify(&g, &[0, 1, 2], l()).unwrap(), 3),
        Ok(true)
    );
}

#[test]
fn quotient_chain_witnesses() {
    let tp = Type1Params::new(3, 3, 8, 1, 1).unwrap();
    let g = build_type1(&tp).unwrap();
    let (g1, g2) = build_type1_chain(&tp).unwrap();
    let id = GeneratorMap::identity(3);
    let t1 = SggiGroup::from_presentation_default(&g1, l()).unwrap();
    let v = quotient_criterion(&g, &t1, &id).unwrap();
    assert!(v.homomorphism && !v.injective_01 && v.injective_12);
    let t2 = SggiGroup::from_presentation_default(&g2, l()).unwrap();
    let v = quotient_criterion(&g1, &t2, &id).unwrap();
    assert!(v.homomorphism && v.injective_01 && !v.injective_12);
    assert!(v.holds());
}

#[test]
fn duality_reverses_type() {
    let p = build_type1(&Type1Params::new(3, 2, 7, 3, 1).unwrap()).unwrap();
    let g = SggiGroup::from_presentation_default(&p, l()).unwrap();
    let a = certify_group(&g).unwrap();
    let b = certify_group(&g.dual()).unwrap();
    assert_eq!(a.order, b.order);
    let mut rev = a.schlafli.entries.clone();
    rev.reverse();
    assert_eq!(b.schlafli.entries, rev);
    assert_eq!(a.intersection_ok, b.intersection_ok);
    let l1 = certify(&build_degenerate(7, 1).unwrap(), &[0, 1, 2], l()).unwrap();
    let l2 = certify(&build_degenerate(7, 2).unwrap(), &[2, 1, 0], l()).unwrap();
    assert_eq!(l1.schlafli, l2.schlafli);
}

#[test]
fn subgroup_structure() {
    let r = verify_subgroup_structure(&Family::ALL, l());
    assert!(r.iter().all(|x| x.pass), "{r:?}");
    let idx: Vec<u64> = r
        .iter()
        .map(|x| x.observed["index"].as_u64().unwrap())
        .collect();
    assert_eq!(idx, vec![192, 384, 768]);
}
