#![allow(clippy::mutable_key_type)]

use std::cmp::Ordering;

use ord_core::bits::{eps_lpo, BitSeq};
use ord_core::compare::{cmp_finitary, lt, Fuel};
use ord_core::kernel::VerifyPolicy;
use ord_core::mlseq::{ml_cert_exa123, ml_derivable, ml_prove, ml_verify, sequent, Atom};
use ord_core::oracle::{GenParams, NameGen};
use ord_core::{suc, TriBool};

fn names(seed: u64) -> NameGen {
    NameGen::new(GenParams { seed, ..GenParams::default() })
}

fn proved_and_verified(atoms: Vec<Atom>) -> bool {
    let s = sequent(atoms);
    let derivable = ml_derivable(&s).unwrap();
    match ml_prove(&s).unwrap() {
        Some(c) => {
            assert!(c.conclusion() == s);
            let r = ml_verify(&c, &VerifyPolicy::Exhaustive);
            assert!(r.ok, "{:?}", r.failure);
            assert!(derivable);
            true
        }
        None => {
            assert!(!derivable);
            false
        }
    }
}

#[test]
fn reflexive_and_successor_atoms() {
    let mut g = names(61);
    for _ in 0..100 {
        let a = g.next_name();
        assert!(proved_and_verified(vec![Atom::le(&a, &a)]));
        assert!(proved_and_verified(vec![Atom::lt(&a, &suc(&a))]));
        assert!(!proved_and_verified(vec![Atom::lt(&a, &a)]));
    }
}

#[test]
fn classical_disjunction_is_derivable() {
    let mut g = names(62);
    for _ in 0..100 {
        let (a, b) = (g.next_name(), g.next_name());
        assert!(proved_and_verified(vec![Atom::lt(&a, &b), Atom::le(&b, &a)]));
    }
}

#[test]
fn single_atoms_agree_with_the_engine() {
    let mut g = names(63);
    for _ in 0..300 {
        let (a, b) = (g.next_name(), g.next_name());
        let order = cmp_finitary(&a, &b).unwrap();
        assert_eq!(ml_derivable(&sequent([Atom::le(&a, &b)])).unwrap(), order != Ordering::Greater);
        assert_eq!(ml_derivable(&sequent([Atom::lt(&a, &b)])).unwrap(), order == Ordering::Less);
    }
}

fn monotone_prefixes() -> Vec<Vec<bool>> {
    (1..=8usize).flat_map(|len| (0..=len).map(move |k| (0..len).map(|i| i >= k).collect())).collect()
}

#[test]
fn divergence_between_the_calculi() {
    let samples: Vec<u64> = (0..12).collect();
    for prefix in monotone_prefixes() {
        let last = *prefix.last().unwrap();
        let constant = BitSeq::const_last(prefix.clone());
        let opaque = BitSeq::opaque(prefix.clone(), move |n| last || n >= 10_000);
        for u in [&constant, &opaque] {
            let r = ml_verify(&ml_cert_exa123(u), &VerifyPolicy::spot_check(&samples));
            assert!(r.ok, "{u:?}: {:?}", r.failure);
            assert!(!r.sampled.is_empty());
        }
        let (e, e1) = eps_lpo(&opaque);
        assert_eq!(lt(&e, &[e1], Fuel::default()).unwrap().value, TriBool::Unknown, "{opaque:?}");
        let (e, e1) = eps_lpo(&constant);
        assert_eq!(lt(&e, &[e1], Fuel::default()).unwrap().value, TriBool::True, "{constant:?}");
    }
}
