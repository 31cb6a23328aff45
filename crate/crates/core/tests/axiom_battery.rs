//! Every order law on random finitary triples.

use ord_core::laws::{order_laws, run_battery, BatteryConfig};
use ord_core::oracle::GenParams;

#[test]
fn order_laws_on_random_triples() {
    let cfg = BatteryConfig { seed: 2024, cases: 1000, params: GenParams::default() };
    let outcomes = run_battery(&order_laws(), &cfg);
    assert!(outcomes.len() >= 15);
    for o in outcomes {
        assert_eq!(o.checked, 1000, "{}", o.law);
        assert!(o.passed(), "{} violated by {:?}", o.law, o.counterexample);
    }
}
