//! Identities between names over the naturals that the engine alone cannot settle.

use ord_core::arith::pow;
use ord_core::bits::{eps_lpo, BitSeq};
use ord_core::compare::{eq, le, lt, Fuel};
use ord_core::kernel::{
    assist_le, certify_le, certify_lt, incompatible, verify, Assist, Incompatibility, VerifyPolicy,
};
use ord_core::names::filtering;
use ord_core::oracle::{GenParams, NameGen};
use ord_core::{omega, suc, sup_family, und, Family, OrdName, TriBool};

fn assert_certified_equal(a: &OrdName, b: &OrdName) {
    let opts = Assist::default();
    let policy = VerifyPolicy::spot_check(&[0, 1, 4, 11]);
    for (x, y) in [(a, b), (b, a)] {
        let c = assist_le(x, std::slice::from_ref(y), &opts)
            .unwrap()
            .unwrap_or_else(|| panic!("{x:?} <= {y:?} not certified"));
        let r = verify(&c, &policy);
        assert!(r.ok, "{:?}", r.failure);
        assert!(!c.is_infinitary() || r.sampled.len() >= 3);
        assert_ne!(le(x, std::slice::from_ref(y), Fuel::default()).unwrap().value, TriBool::False);
        assert_ne!(lt(y, std::slice::from_ref(x), Fuel::default()).unwrap().value, TriBool::True);
    }
}

#[test]
fn filtering_omega_is_omega() {
    assert_certified_equal(&filtering(&omega()).unwrap(), &omega());
}

#[test]
fn sup_of_successors_is_omega() {
    let s = sup_family(&Family::nat(|n| suc(&und(n)))).unwrap();
    assert_certified_equal(&s, &omega());
}

#[test]
fn one_to_the_omega_is_one() {
    assert_certified_equal(&pow(&und(1), &omega()), &und(1));
}

#[test]
fn all_zero_sequence_gives_one() {
    let (e, _) = eps_lpo(&BitSeq::const_last(vec![false, false]));
    assert_certified_equal(&e, &und(1));
    let (e, _) = eps_lpo(&BitSeq::opaque(vec![], |_| false));
    assert_certified_equal(&e, &und(1));
}

#[test]
fn filtering_preserves_finitary_names() {
    let mut g = NameGen::new(GenParams { seed: 31, max_nodes: 8, max_width: 3, ..GenParams::default() });
    for _ in 0..100 {
        let a = g.next_name();
        if a.is_zero() {
            continue;
        }
        let f = filtering(&a).unwrap();
        assert_eq!(eq(&f, &a, Fuel::new(64, 512)).unwrap().value, TriBool::True, "{a:?}");
    }
}

#[test]
fn engine_never_refutes_a_certificate() {
    let mut g = NameGen::new(GenParams { seed: 47, ..GenParams::default() });
    let policy = VerifyPolicy::Exhaustive;
    for _ in 0..150 {
        let (a, b) = (g.next_name(), g.next_name());
        let rhs = [b.clone()];
        if let Some(c) = certify_le(&a, &rhs, Fuel::default()).unwrap() {
            assert!(verify(&c, &policy).ok);
            assert_ne!(le(&a, &rhs, Fuel::new(64, 512)).unwrap().value, TriBool::False);
            if let Some(q) = certify_lt(&b, std::slice::from_ref(&a), Fuel::default()).unwrap() {
                assert_ne!(incompatible(&c, &q, &policy), Incompatibility::Flagged, "{a:?} {b:?}");
            }
        }
        if let Some(c) = certify_lt(&a, &rhs, Fuel::default()).unwrap() {
            assert!(verify(&c, &policy).ok);
            assert_ne!(lt(&a, &rhs, Fuel::new(64, 512)).unwrap().value, TriBool::False);
        }
    }
}
