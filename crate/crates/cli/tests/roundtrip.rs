use ord_cli::expr::{parse, Expr, MAX_NUMERAL};
use proptest::prelude::*;

const CORPUS: &str = include_str!("corpus/expressions.txt");

#[test]
fn corpus_has_a_hundred_expressions() {
    assert_eq!(CORPUS.lines().count(), 100);
}

#[test]
fn printing_a_parse_is_canonical() {
    for line in CORPUS.lines() {
        let e = parse(line).unwrap_or_else(|err| panic!("{line:?}: {err}"));
        let canon = e.to_string();
        let again = parse(&canon).unwrap_or_else(|err| panic!("{canon:?}: {err}"));
        assert_eq!(again, e, "{line:?} printed as {canon:?}");
        assert_eq!(again.to_string(), canon);
    }
}

#[test]
fn canonical_text_has_no_redundant_parentheses() {
    for (src, canon) in [
        ("((w))", "w"),
        ("(w+w)+w", "w + w + w"),
        ("w+(w+w)", "w + (w + w)"),
        ("(w^w)^w", "(w^w)^w"),
        ("w^(w^w)", "w^w^w"),
        ("(2*3)^2", "(2*3)^2"),
        ("  w   +   1  ", "w + 1"),
        ("suc(1,2)", "suc(1, 2)"),
    ] {
        assert_eq!(parse(src).unwrap().to_string(), canon);
    }
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![(0..=40u64).prop_map(Expr::Nat), Just(Expr::Omega), Just(Expr::Eps0)]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 3, |inner| {
        let pair = (inner.clone(), inner.clone());
        prop_oneof![
            pair.clone().prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            pair.clone().prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            pair.prop_map(|(a, b)| Expr::Pow(Box::new(a), Box::new(b))),
            prop::collection::vec(inner.clone(), 1..=3).prop_map(Expr::Suc),
            prop::collection::vec(inner.clone(), 1..=3).prop_map(Expr::Sup),
            (inner.clone(), inner.clone(), inner).prop_map(|(a, b, c)| Expr::Ack(
                Box::new(a),
                Box::new(b),
                Box::new(c)
            )),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn parse_inverts_print(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e);
    }

    #[test]
    fn numerals_above_the_cap_are_rejected(n in MAX_NUMERAL + 1..u64::MAX / 2) {
        let err = parse(&n.to_string()).unwrap_err();
        prop_assert_eq!(err.column, 1);
    }
}
