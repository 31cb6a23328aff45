//! Order and arithmetic laws checked on random finitary names.
//!
//! Each law is a predicate over a few names that must hold for every finitary input.
//! Comparisons use the exact-fuel finitary relations, so a violation is a real
//! disagreement and never a fuel artifact.

use crate::arith::{acko, add, mul, pow, seq_sum, LinearIndexOrder, SumBound};
use crate::compare::{le_finitary, lt_finitary, EngineError};
use crate::names::{suc, suc_list, sup_finite, und, Family, Index, OrdName};
use crate::oracle::{val, GenParams, NameGen};

type Check = fn(&[OrdName]) -> Result<bool, EngineError>;

/// A named predicate on `arity` names.
#[derive(Clone, Copy)]
pub struct Law {
    pub name: &'static str,
    pub arity: usize,
    check: Check,
}

impl Law {
    pub fn holds(&self, names: &[OrdName]) -> Result<bool, EngineError> {
        (self.check)(names)
    }
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name)
    }
}

fn le(a: &OrdName, b: &OrdName) -> Result<bool, EngineError> {
    le_finitary(a, std::slice::from_ref(b))
}

fn lt(a: &OrdName, b: &OrdName) -> Result<bool, EngineError> {
    lt_finitary(a, std::slice::from_ref(b))
}

fn eq(a: &OrdName, b: &OrdName) -> Result<bool, EngineError> {
    Ok(le(a, b)? && le(b, a)?)
}

fn sup2(a: &OrdName, b: &OrdName) -> OrdName {
    sup_finite(&[a.clone(), b.clone()])
}

fn implies(p: bool, q: bool) -> bool {
    !p || q
}

macro_rules! law {
    ($name:literal, $arity:literal, |$n:ident| $body:expr) => {
        Law { name: $name, arity: $arity, check: |$n: &[OrdName]| -> Result<bool, EngineError> { $body } }
    };
}

/// The fifteen order axioms, the equivalence forms of four of them, successor
/// monotonicity and commutation of successor with finite suprema.
pub fn order_laws() -> Vec<Law> {
    vec![
        law!("reflexivity", 1, |n| le(&n[0], &n[0])),
        law!("antisymmetry_substitutes", 3, |n| {
            let (a, b, c) = (&n[0], &n[1], &n[2]);
            if !eq(a, b)? {
                return Ok(true);
            }
            Ok(le(a, c)? == le(b, c)? && lt(a, c)? == lt(b, c)? && le(c, a)? == le(c, b)? && lt(c, a)? == lt(c, b)?)
        }),
        law!("zero_least", 1, |n| le(&OrdName::Zero, &n[0])),
        law!("irreflexivity", 1, |n| Ok(!lt(&n[0], &n[0])?)),
        law!("lt_implies_le", 2, |n| Ok(implies(lt(&n[0], &n[1])?, le(&n[0], &n[1])?))),
        law!("trans_le_le", 3, |n| Ok(implies(le(&n[0], &n[1])? && le(&n[1], &n[2])?, le(&n[0], &n[2])?))),
        law!("trans_lt_le", 3, |n| Ok(implies(lt(&n[0], &n[1])? && le(&n[1], &n[2])?, lt(&n[0], &n[2])?))),
        law!("trans_le_lt", 3, |n| Ok(implies(le(&n[0], &n[1])? && lt(&n[1], &n[2])?, lt(&n[0], &n[2])?))),
        law!("lt_suc_iff_le", 2, |n| Ok(lt(&n[0], &suc(&n[1]))? == le(&n[0], &n[1])?)),
        law!("suc_le_iff_lt", 2, |n| Ok(le(&suc(&n[1]), &n[0])? == lt(&n[1], &n[0])?)),
        law!("sup_below_iff_both_below", 3, |n| {
            Ok((lt(&n[0], &n[2])? && lt(&n[1], &n[2])?) == lt(&sup2(&n[0], &n[1]), &n[2])?)
        }),
        law!("lt_sup_drop_left_iff", 2, |n| Ok(lt(&n[0], &sup2(&n[0], &n[1]))? == lt(&n[0], &n[1])?)),
        law!("cut_left_iff", 3, |n| {
            let (a, b, c) = (&n[0], &n[1], &n[2]);
            if !lt(c, a)? {
                return Ok(true);
            }
            Ok(le(a, &sup2(b, c))? == le(a, b)?)
        }),
        law!("sup_characteristic", 3, |n| {
            let (a, b, c) = (&n[0], &n[1], &n[2]);
            let pair = (le(a, c)? && le(b, c)?) == le(&sup2(a, b), c)?;
            let triple = (le(a, c)? && le(b, c)? && le(c, c)?) == le(&sup_finite(n), c)?;
            Ok(pair && triple)
        }),
        law!("bounded_below_iff_le", 3, |n| {
            let (a, b) = (&n[0], &n[1]);
            // Subordinals of `a` contain a witness whenever `a ≤ b` fails.
            let mut pool: Vec<OrdName> = n.to_vec();
            if let Some(ms) = a.subordinals().and_then(|f| f.members()) {
                pool.extend(ms.iter().cloned());
            }
            let mut all_below = true;
            for g in &pool {
                if lt(g, a)? && !lt(g, b)? {
                    all_below = false;
                }
            }
            Ok(implies(all_below, le(a, b)?) && implies(le(a, b)?, all_below))
        }),
        law!("zero_dichotomy", 1, |n| Ok(le(&n[0], &OrdName::Zero)? != lt(&OrdName::Zero, &n[0])?)),
        law!("suc_monotone_lt", 2, |n| Ok(lt(&suc(&n[0]), &suc(&n[1]))? == lt(&n[0], &n[1])?)),
        law!("suc_monotone_le", 2, |n| Ok(le(&suc(&n[0]), &suc(&n[1]))? == le(&n[0], &n[1])?)),
        law!("suc_commutes_with_sup", 3, |n| {
            let two = eq(&sup2(&suc(&n[0]), &suc(&n[1])), &suc(&sup2(&n[0], &n[1])))?;
            let sucs: Vec<OrdName> = n.iter().map(suc).collect();
            let three = eq(&sup_finite(&sucs), &suc(&sup_finite(n)))?;
            Ok(two && three)
        }),
        law!("suc_list_characteristic", 3, |n| {
            let (a, b, c) = (&n[0], &n[1], &n[2]);
            let node = suc_list(&[a.clone(), b.clone()]).expect("nonempty");
            Ok((lt(a, c)? && lt(b, c)?) == le(&node, c)?)
        }),
        law!("sup_below_suc_list", 2, |n| {
            lt(&sup2(&n[0], &n[1]), &suc_list(&[n[0].clone(), n[1].clone()]).expect("nonempty"))
        }),
        law!("incompatibility", 2, |n| Ok(!(le(&n[1], &n[0])? && lt(&n[0], &n[1])?))),
    ]
}

/// Sums, products and powers: algebraic identities, order laws, and agreement with
/// arithmetic on classical values.
pub fn arith_laws() -> Vec<Law> {
    vec![
        law!("add_zero_identities", 1, |n| {
            Ok(add(&n[0], &OrdName::Zero).ident() == n[0].ident() && eq(&add(&OrdName::Zero, &n[0]), &n[0])?)
        }),
        law!("add_associative", 3, |n| eq(&add(&add(&n[0], &n[1]), &n[2]), &add(&n[0], &add(&n[1], &n[2])))),
        law!("add_monotone", 3, |n| {
            let (a, b, c) = (&n[0], &n[1], &n[2]);
            if !le(a, b)? {
                return Ok(true);
            }
            Ok(le(&add(a, c), &add(b, c))? && le(&add(c, a), &add(c, b))?)
        }),
        law!("add_left_cancel_le", 3, |n| Ok(le(&add(&n[0], &n[1]), &add(&n[0], &n[2]))? == le(&n[1], &n[2])?)),
        law!("add_left_cancel_lt", 3, |n| Ok(lt(&add(&n[0], &n[1]), &add(&n[0], &n[2]))? == lt(&n[1], &n[2])?)),
        law!("mul_one_identities", 1, |n| Ok(eq(&mul(&n[0], &und(1)), &n[0])? && eq(&mul(&und(1), &n[0]), &n[0])?)),
        law!("mul_associative", 3, |n| eq(&mul(&mul(&n[0], &n[1]), &n[2]), &mul(&n[0], &mul(&n[1], &n[2])))),
        law!("mul_left_distributive", 3, |n| {
            let (a, b, c) = (&n[0], &n[1], &n[2]);
            eq(&mul(a, &add(b, c)), &add(&mul(a, b), &mul(a, c)))
        }),
        law!("mul_order_under_positive", 3, |n| {
            let (a, b, c) = (&n[0], &n[1], &n[2]);
            if !le(&und(1), a)? {
                return Ok(true);
            }
            Ok(le(b, c)? == le(&mul(a, b), &mul(a, c))? && lt(b, c)? == lt(&mul(a, b), &mul(a, c))?)
        }),
        law!("seq_sum_monotone", 3, |n| {
            let order = LinearIndexOrder { carrier: Index::Fin(3) };
            let small = Family::finite(n.to_vec());
            let large = Family::finite(vec![suc(&n[0]), n[1].clone(), sup2(&n[2], &n[0])]);
            let lo = seq_sum(order, &small, SumBound::Top).expect("finite carrier");
            let hi = seq_sum(order, &large, SumBound::Top).expect("finite carrier");
            le(&lo, &hi)
        }),
        law!("subtraction_exists", 2, |n| {
            let (a, g) = (&n[0], &n[1]);
            if !le(a, g)? {
                return Ok(true);
            }
            let diff = und(val(g).expect("finitary") - val(a).expect("finitary"));
            eq(g, &add(a, &diff))
        }),
        law!("acko_zero_is_add", 2, |n| eq(&acko(&n[0], &n[1], &OrdName::Zero), &add(&n[0], &n[1]))),
        law!("valuation_homomorphism", 2, |n| {
            let (a, b) = (&n[0], &n[1]);
            let (x, y) = (val(a).expect("finitary"), val(b).expect("finitary"));
            Ok(val(&add(a, b)) == Some(x + y)
                && val(&mul(a, b)) == Some(x * y)
                && val(&pow(a, b)) == x.checked_pow(y as u32))
        }),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BatteryConfig {
    pub seed: u64,
    pub cases: usize,
    pub params: GenParams,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { seed: 0, cases: 200, params: GenParams::default() }
    }
}

#[derive(Clone, Debug)]
pub struct LawOutcome {
    pub law: &'static str,
    pub checked: usize,
    /// First failing input, with the engine error if one occurred.
    pub counterexample: Option<(Vec<OrdName>, Option<EngineError>)>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs every law on `cases` random inputs. Each law draws from its own generator
/// seeded by `seed` and its position, so results do not depend on which laws run.
pub fn run_battery(laws: &[Law], cfg: &BatteryConfig) -> Vec<LawOutcome> {
    laws.iter()
        .enumerate()
        .map(|(k, law)| {
            let params = GenParams { seed: cfg.seed.wrapping_mul(1_000_003).wrapping_add(k as u64), ..cfg.params };
            let mut gen = NameGen::new(params);
            let mut outcome = LawOutcome { law: law.name, checked: 0, counterexample: None };
            for _ in 0..cfg.cases {
                let names: Vec<OrdName> = (0..law.arity).map(|_| gen.next_name()).collect();
                outcome.checked += 1;
                match law.holds(&names) {
                    Ok(true) => {}
                    Ok(false) => {
                        outcome.counterexample = Some((names, None));
                        break;
                    }
                    Err(e) => {
                        outcome.counterexample = Some((names, Some(e)));
                        break;
                    }
                }
            }
            outcome
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BatteryConfig {
        BatteryConfig { seed: 1, cases: 40, params: GenParams { max_depth: 3, ..GenParams::default() } }
    }

    #[test]
    fn order_laws_hold() {
        for o in run_battery(&order_laws(), &small()) {
            assert!(o.passed(), "{}: {:?}", o.law, o.counterexample);
        }
    }

    #[test]
    fn arith_laws_hold() {
        for o in run_battery(&arith_laws(), &small()) {
            assert!(o.passed(), "{}: {:?}", o.law, o.counterexample);
        }
    }

    #[test]
    fn a_false_law_is_caught() {
        let bogus = law!("le_symmetric", 2, |n| Ok(le(&n[0], &n[1])? == le(&n[1], &n[0])?));
        let out = run_battery(&[bogus], &small());
        assert!(!out[0].passed());
    }
}
