//! The engine, the literal evaluator and the classical value agree on finitary names.

use ord_core::compare::{le_finitary, lt_finitary};
use ord_core::oracle::{naive_le, naive_lt, val, GenParams, NameGen};
use ord_core::OrdName;

fn check_pair(a: &OrdName, bs: &[OrdName]) {
    let top = bs.iter().map(|b| val(b).unwrap()).max().unwrap();
    let va = val(a).unwrap();
    let le = le_finitary(a, bs).unwrap();
    let lt = lt_finitary(a, bs).unwrap();
    assert_eq!(Some(le), naive_le(a, bs), "le {a:?} {bs:?}");
    assert_eq!(Some(lt), naive_lt(a, bs), "lt {a:?} {bs:?}");
    assert_eq!(le, va <= top, "val le {a:?} {bs:?}");
    assert_eq!(lt, va < top, "val lt {a:?} {bs:?}");
}

#[test]
fn pairs_agree() {
    let mut g = NameGen::new(GenParams { seed: 2024, ..GenParams::default() });
    for _ in 0..500 {
        let a = g.next_name();
        let b = g.next_name();
        check_pair(&a, std::slice::from_ref(&b));
        check_pair(&b, std::slice::from_ref(&a));
    }
}

#[test]
fn short_lists_agree() {
    let mut g = NameGen::new(GenParams { seed: 77, max_nodes: 12, ..GenParams::default() });
    for _ in 0..200 {
        let a = g.next_name();
        let bs = vec![g.next_name(), g.next_name()];
        check_pair(&a, &bs);
    }
}
