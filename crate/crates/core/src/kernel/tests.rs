use super::*;
use crate::arith::add;
use crate::bits::BitSeq;
use crate::compare::Fuel;
use crate::names::{omega, suc_list, und};

fn spot(samples: &[u64]) -> VerifyPolicy {
    VerifyPolicy::spot_check(samples)
}

fn lt_cert(a: &OrdName, rhs: &[OrdName]) -> Certificate {
    certify_lt(a, rhs, Fuel::default()).unwrap().expect("engine proves it")
}

fn le_cert(a: &OrdName, rhs: &[OrdName]) -> Certificate {
    certify_le(a, rhs, Fuel::default()).unwrap().expect("engine proves it")
}

fn ok(c: &Certificate, policy: &VerifyPolicy) -> bool {
    let r = verify(c, policy);
    assert!(r.ok || r.failure.is_some());
    r.ok
}

#[test]
fn reflexivity_finite_exhaustive() {
    let c = refl(&und(2));
    let r = verify(&c, &VerifyPolicy::Exhaustive);
    assert!(r.ok, "{:?}", r.failure);
    assert!(r.sampled.is_empty());
    assert!(r.visited >= 3);
}

#[test]
fn reflexivity_omega_spot_checked() {
    let c = refl(&omega());
    let r = verify(&c, &spot(&[0, 5, 17]));
    assert!(r.ok, "{:?}", r.failure);
    let at_root: Vec<u64> = r.sampled.iter().filter(|(p, _)| p == "root").map(|&(_, i)| i).collect();
    assert_eq!(at_root, vec![0, 5, 17]);
    assert!(!ok(&c, &VerifyPolicy::Exhaustive));
}

#[test]
fn zero_rules() {
    assert!(zero_lt(&[OrdName::Zero]).is_err());
    assert!(ok(&zero_lt(&[OrdName::Zero, und(1)]).unwrap(), &VerifyPolicy::Exhaustive));
    assert!(ok(&zero_le(&[OrdName::Zero]).unwrap(), &VerifyPolicy::Exhaustive));
    assert!(zero_le(&[]).is_err());
}

#[test]
fn omega_below_one_plus_omega() {
    let one_plus = add(&und(1), &omega());
    let c = assist_le(&omega(), std::slice::from_ref(&one_plus), &Assist::default()).unwrap().expect("assisted proof");
    let r = verify(&c, &spot(&[0, 7, 31]));
    assert!(r.ok, "{:?}", r.failure);
    let back = assist_le(&one_plus, &[omega()], &Assist::default()).unwrap().expect("assisted proof");
    assert!(ok(&back, &spot(&[0, 7, 31])));
}

#[test]
fn llpo_certificate_by_parity() {
    let seqs = [
        BitSeq::const_last(BitSeq::parse_prefix("0001").unwrap()),
        BitSeq::const_last(BitSeq::parse_prefix("00100").unwrap()),
        BitSeq::opaque(vec![false; 3], |_| false),
    ];
    for v in seqs {
        let c = llpo_certificate(&v).unwrap();
        let r = verify(&c, &spot(&(0..12).collect::<Vec<_>>()));
        assert!(r.ok, "{v:?}: {:?}", r.failure);
    }
}

#[test]
fn sup_below_successor_list() {
    let (a, b) = (suc_list(&[und(1), und(2)]).unwrap(), und(4));
    let top = suc_list(&[a.clone(), b.clone()]).unwrap();
    let inner = sup_le_intro(
        &[a.clone(), b.clone()],
        &[a.clone(), b.clone()],
        vec![weaken(refl(&a), std::slice::from_ref(&b)).unwrap(), weaken(refl(&b), std::slice::from_ref(&a)).unwrap()],
    )
    .unwrap();
    let c = lt_intro(&sup_finite(&[a.clone(), b.clone()]), std::slice::from_ref(&top), 2, inner.clone()).unwrap();
    assert!(ok(&c, &VerifyPolicy::Exhaustive));
    assert!(lt_intro(&sup_finite(&[a.clone(), b.clone()]), std::slice::from_ref(&top), 0, inner.clone()).is_err());
    assert!(lt_intro(&sup_finite(&[a, b]), &[top], 1, inner).is_err());
}

#[test]
fn transitivity() {
    let one_plus = add(&und(1), &omega());
    let p = lt_cert(&und(5), &[omega()]);
    let q = assist_le(&omega(), std::slice::from_ref(&one_plus), &Assist::default()).unwrap().unwrap();
    let c = trans_lt_le(p.clone(), q).unwrap();
    assert!(c.conclusion().same_as(&Judgment::lt(&und(5), &[one_plus])).unwrap());
    assert!(ok(&c, &spot(&[0, 3, 9])));
    // Premises that do not chain.
    assert!(trans_lt_le(p.clone(), refl(&und(3))).is_err());
    let le_le = trans_le_le(le_cert(&und(2), &[und(3)]), le_cert(&und(3), &[und(4)])).unwrap();
    assert!(ok(&le_le, &VerifyPolicy::Exhaustive));
    let le_lt = trans_le_lt(le_cert(&und(2), &[und(3)]), lt_cert(&und(3), &[und(4)])).unwrap();
    assert!(ok(&le_lt, &VerifyPolicy::Exhaustive));
}

#[test]
fn structural_rules() {
    let p = lt_cert(&und(1), &[und(3)]);
    let w = weaken(p.clone(), &[und(3), omega()]).unwrap();
    assert_eq!(w.conclusion().rhs.len(), 3);
    let c = contract(w).unwrap();
    assert_eq!(c.conclusion().rhs.len(), 2);
    let l = lt_to_le(c).unwrap();
    assert_eq!(l.conclusion().kind, Kind::Le);
    assert!(ok(&l, &VerifyPolicy::Exhaustive));
    assert!(lt_to_le(refl(&und(2))).is_err());
}

#[test]
fn successor_rules_round_trip() {
    let three = und(3);
    let p = refl(&three);
    let up = lt_suc_of_le(p.clone()).unwrap();
    assert!(up.conclusion().same_as(&Judgment::lt(&three, &[und(4)])).unwrap());
    let down = le_of_lt_suc(up).unwrap();
    assert!(down.conclusion().same_as(p.conclusion()).unwrap());
    assert!(ok(&down, &VerifyPolicy::Exhaustive));

    let q = lt_cert(&und(2), std::slice::from_ref(&three));
    let lifted = suc_le_of_lt(q.clone()).unwrap();
    assert!(lifted.conclusion().same_as(&Judgment::le(&three, std::slice::from_ref(&three))).unwrap());
    let back = lt_of_suc_le(lifted).unwrap();
    assert!(back.conclusion().same_as(q.conclusion()).unwrap());
    assert!(ok(&back, &VerifyPolicy::Exhaustive));

    assert!(le_of_lt_suc(lt_cert(&und(1), &[omega()])).is_err());
    assert!(lt_of_suc_le(refl(&omega())).is_err());
}

#[test]
fn sup_and_cut_rules() {
    let s = sup_lt(lt_cert(&und(1), &[und(3)]), lt_cert(&und(2), &[und(3)])).unwrap();
    assert!(ok(&s, &VerifyPolicy::Exhaustive));
    assert!(sup_lt(lt_cert(&und(1), &[und(3)]), lt_cert(&und(2), &[und(4)])).is_err());

    let gamma_below = lt_cert(&und(1), &[und(3)]);
    let alpha_le = le_cert(&und(3), &[und(3), und(1)]);
    let cut = cut_left(gamma_below.clone(), alpha_le.clone(), &und(3)).unwrap();
    assert!(cut.conclusion().same_as(&Judgment::le(&und(3), &[und(3)])).unwrap());
    assert!(ok(&cut, &VerifyPolicy::Exhaustive));
    assert!(cut_left(gamma_below, alpha_le, &und(2)).is_err());

    let p = lt_cert(&und(2), &[und(2), und(3)]);
    let dropped = drop_left(p.clone(), &und(3)).unwrap();
    assert!(ok(&dropped, &VerifyPolicy::Exhaustive));
    assert!(drop_left(p, &und(4)).is_err());
}

#[test]
fn tampered_certificates_fail_with_a_path() {
    let two = und(2);
    let forged = le_intro(&two, std::slice::from_ref(&two), |_| hypothesis(Judgment::lt(&und(1), &[und(2)]))).unwrap();
    let r = verify(&forged, &VerifyPolicy::Exhaustive);
    assert!(!r.ok);
    assert_eq!(r.failure.unwrap().path, "root/0");

    // Correct below 3, unproved beyond: sampling decides whether this is noticed.
    let three = und(3);
    let sneaky = le_intro(&omega(), std::slice::from_ref(&three), move |i| {
        let child = und(i);
        if i < 3 {
            lt_cert(&child, &[und(3)])
        } else {
            hypothesis(Judgment::lt(&child, &[und(3)]))
        }
    })
    .unwrap();
    assert!(ok(&sneaky, &spot(&[0, 1, 2])));
    let r = verify(&sneaky, &spot(&[0, 5]));
    assert!(!r.ok);
    assert_eq!(r.failure.unwrap().path, "root/gen[5]");
}

#[test]
fn generator_panics_are_failures() {
    let c = le_intro(&omega(), &[omega()], |i| if i == 4 { panic!("boom") } else { refl(&omega()) }).unwrap();
    let r = verify(&c, &spot(&[4]));
    assert!(!r.ok);
    assert!(r.failure.unwrap().reason.contains("panicked"));
}

#[test]
fn incompatible_pairs() {
    let three = und(3);
    let forged = le_intro(&omega(), std::slice::from_ref(&three), |i| {
        let child = und(i);
        if i < 3 {
            lt_cert(&child, &[und(3)])
        } else {
            hypothesis(Judgment::lt(&child, &[und(3)]))
        }
    })
    .unwrap();
    let genuine = lt_cert(&three, &[omega()]);
    assert_eq!(incompatible(&forged, &genuine, &spot(&[0, 1, 2])), Incompatibility::Flagged);
    assert!(matches!(incompatible(&forged, &genuine, &spot(&[7])), Incompatibility::NotVerified(_)));
    assert_eq!(incompatible(&refl(&three), &genuine, &spot(&[0])), Incompatibility::ShapeMismatch);
}

#[test]
fn text_form() {
    let print = |n: &OrdName| format!("{n:?}");
    let text = to_text(&refl(&und(2)), &print).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.starts_with(&format!("{} le_intro(", text.lines().count())));
    assert!(text.contains("lt_intro[m=1]"));
    assert_eq!(to_text(&refl(&omega()), &print), Err(KernelError::Infinitary));
}

#[test]
fn certify_matches_engine_on_small_names() {
    let names: Vec<OrdName> = (0..5).map(und).chain([suc_list(&[und(1), und(3)]).unwrap()]).collect();
    for a in &names {
        for b in &names {
            for strict in [false, true] {
                let c = if strict {
                    certify_lt(a, std::slice::from_ref(b), Fuel::default())
                } else {
                    certify_le(a, std::slice::from_ref(b), Fuel::default())
                }
                .unwrap();
                if let Some(c) = c {
                    let r = verify(&c, &VerifyPolicy::Exhaustive);
                    assert!(r.ok, "{a:?} {b:?} {strict}: {:?}", r.failure);
                }
            }
        }
    }
}

#[test]
fn trust_is_withheld_from_growing_families_below_finite_tops() {
    let opts = Assist::default();
    let w = omega();
    assert!(assist_le(&w, &[und(500)], &opts).unwrap().is_none());
    assert!(assist_lt(&w, &[crate::arith::pow(&und(2), &w)], &opts).unwrap().is_none());
    assert!(assist_le(&add(&w, &w), &[add(&w, &und(600))], &opts).unwrap().is_none());
    // Bounded families keep their certificates.
    let (e, _) = crate::bits::eps_lpo(&BitSeq::opaque(vec![], |_| false));
    assert!(assist_le(&e, &[und(1)], &opts).unwrap().is_some());
    assert!(assist_le(&w, &[add(&und(1), &w)], &opts).unwrap().is_some());
}
