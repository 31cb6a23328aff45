//! Arithmetic laws on random finitary names and certified identities with ω.

use ord_core::arith::{add, mul};
use ord_core::compare::{le, lt, Fuel};
use ord_core::kernel::{assist_le, assist_lt, verify, Assist, Certificate, VerifyPolicy};
use ord_core::laws::{arith_laws, run_battery, BatteryConfig};
use ord_core::oracle::GenParams;
use ord_core::{omega, und, OrdName, TriBool};

#[test]
fn arithmetic_laws_on_random_triples() {
    let cfg = BatteryConfig { seed: 99, cases: 300, params: GenParams::default() };
    for o in run_battery(&arith_laws(), &cfg) {
        assert_eq!(o.checked, 300, "{}", o.law);
        assert!(o.passed(), "{} violated by {:?}", o.law, o.counterexample);
    }
}

#[test]
fn valuation_is_a_homomorphism_on_500_pairs() {
    let cfg = BatteryConfig { seed: 500, cases: 500, params: GenParams::default() };
    let laws: Vec<_> = arith_laws().into_iter().filter(|l| l.name == "valuation_homomorphism").collect();
    assert_eq!(laws.len(), 1);
    let o = &run_battery(&laws, &cfg)[0];
    assert!(o.passed() && o.checked == 500, "{:?}", o.counterexample);
}

fn spot_ok(c: &Certificate) -> bool {
    let r = verify(c, &VerifyPolicy::spot_check(&[0, 3, 9, 17]));
    r.ok && r.sampled.len() >= 3
}

/// Certificates for `a ≤ b` and `b ≤ a`; the engine must not refute either.
fn certified_equal(a: &OrdName, b: &OrdName) {
    let opts = Assist::default();
    let there = assist_le(a, std::slice::from_ref(b), &opts).unwrap().expect("a <= b certified");
    let back = assist_le(b, std::slice::from_ref(a), &opts).unwrap().expect("b <= a certified");
    assert!(spot_ok(&there) && spot_ok(&back));
    for fuel in [Fuel::new(8, 16), Fuel::default()] {
        assert_ne!(le(a, std::slice::from_ref(b), fuel).unwrap().value, TriBool::False);
        assert_ne!(le(b, std::slice::from_ref(a), fuel).unwrap().value, TriBool::False);
        assert_ne!(lt(a, std::slice::from_ref(b), fuel).unwrap().value, TriBool::True);
    }
}

#[test]
fn one_plus_omega_is_omega() {
    certified_equal(&add(&und(1), &omega()), &omega());
}

#[test]
fn omega_times_two_is_omega_plus_omega() {
    certified_equal(&mul(&omega(), &und(2)), &add(&omega(), &omega()));
}

#[test]
fn omega_below_omega_plus_omega() {
    let ww = add(&omega(), &omega());
    let c = assist_lt(&omega(), std::slice::from_ref(&ww), &Assist::default()).unwrap().expect("certified");
    assert!(verify(&c, &VerifyPolicy::spot_check(&[0, 3, 9])).ok);
    assert_ne!(le(&ww, &[omega()], Fuel::default()).unwrap().value, TriBool::True);
    let lower = assist_le(&omega(), &[mul(&omega(), &und(2))], &Assist::default()).unwrap().expect("certified");
    assert!(spot_ok(&lower));
}
