//! Ordinal arithmetic by recursion on the right argument.
//!
//! Every operation is memoized on the identities of its arguments, so rebuilding a
//! term returns the identical name while the first result is alive.

use std::sync::LazyLock;

use thiserror::Error;

use crate::names::{memo_construct, omega, sup_finite, sup_nat, und, Family, Index, OrdName};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("a sum over the whole of the naturals is not defined")]
    TopOverNat,
    #[error("index {0} is outside the carrier")]
    OutsideCarrier(u64),
}

/// Right arguments nested deeper than this are mapped lazily so that large finite
/// values are never materialized all at once.
const EAGER_DEPTH: u64 = 256;

/// Builds a node whose subordinal `j` is `step(β_j)`, keeping `β`'s index set.
fn map_family(beta: &Family, step: impl Fn(&OrdName) -> OrdName + Send + Sync + 'static) -> OrdName {
    if let (Some(depth), Some(ms)) = (beta.fixed_depth(), beta.members()) {
        if depth <= EAGER_DEPTH {
            return OrdName::Node(Family::finite(ms.iter().map(&step).collect()));
        }
    }
    let src = beta.clone();
    match beta.index() {
        Index::Fin(k) => OrdName::Node(Family::fin_lazy(k, move |j| step(&src.at(j)))),
        Index::Nat => OrdName::Node(Family::nat_with_cover(beta.cover(), move |j| step(&src.at(j)))),
    }
}

/// Supremum of `term(β_j)` over the index set of `β`.
fn sup_over(beta: &Family, term: impl Fn(&OrdName) -> OrdName + Send + Sync + 'static) -> OrdName {
    match beta.members() {
        Some(ms) => sup_finite(&ms.iter().map(&term).collect::<Vec<_>>()),
        None => {
            let src = beta.clone();
            sup_nat(&Family::nat(move |j| term(&src.at(j))))
        }
    }
}

/// `α + 0 = α` (the same name) and `α + ⟨β_j⟩ = ⟨α + β_j⟩`.
pub fn add(alpha: &OrdName, beta: &OrdName) -> OrdName {
    let fam = match beta {
        OrdName::Zero => return alpha.clone(),
        OrdName::Node(f) => f,
    };
    memo_construct("add", &[alpha.ident(), beta.ident()], || {
        let a = alpha.clone();
        map_family(fam, move |bj| add(&a, bj))
    })
}

/// `α · 0 = 0` and `α · β = sup_j (α · β_j + α)`.
pub fn mul(alpha: &OrdName, beta: &OrdName) -> OrdName {
    let fam = match (alpha, beta) {
        (_, OrdName::Zero) | (OrdName::Zero, _) => return OrdName::Zero,
        (_, OrdName::Node(f)) => f,
    };
    memo_construct("mul", &[alpha.ident(), beta.ident()], || {
        let a = alpha.clone();
        sup_over(fam, move |bj| add(&mul(&a, bj), &a))
    })
}

/// `α ^ 0 = 1` and `α ^ β = sup_j (α ^ β_j · α)`.
pub fn pow(alpha: &OrdName, beta: &OrdName) -> OrdName {
    let fam = match (alpha, beta) {
        (_, OrdName::Zero) => return und(1),
        (OrdName::Zero, _) => return OrdName::Zero,
        (_, OrdName::Node(f)) => f,
    };
    memo_construct("pow", &[alpha.ident(), beta.ident()], || {
        let a = alpha.clone();
        sup_over(fam, move |bj| mul(&pow(&a, bj), &a))
    })
}

/// Iterates the previous operation `γ` times, starting at `α`:
///
/// * `Acko(α, β, 0) = α + β`
/// * `Acko(α, 0, γ) = α` for `γ ≠ 0`
/// * `Acko(α, β, γ) = sup_k sup_j Acko(α, Acko(α, β_j, γ), γ_k)`
pub fn acko(alpha: &OrdName, beta: &OrdName, gamma: &OrdName) -> OrdName {
    let (bfam, gfam) = match (beta, gamma) {
        (_, OrdName::Zero) => return add(alpha, beta),
        (OrdName::Zero, _) => return alpha.clone(),
        (OrdName::Node(b), OrdName::Node(g)) => (b, g),
    };
    memo_construct("acko", &[alpha.ident(), beta.ident(), gamma.ident()], || {
        let (a, b, g) = (alpha.clone(), bfam.clone(), gamma.clone());
        sup_over(gfam, move |gk| {
            let (a, g, gk) = (a.clone(), g.clone(), gk.clone());
            sup_over(&b, move |bj| acko(&a, &acko(&a, bj, &g), &gk))
        })
    })
}

static EPS0: LazyLock<OrdName> = LazyLock::new(|| acko(&omega(), &omega(), &und(3)));

/// ε₀ as `Acko(ω, ω, 3)`: the iterations at `γ = 1, 2, 3` reach ω², ω^ω and ε₀.
/// One canonical instance per process.
pub fn eps0() -> OrdName {
    EPS0.clone()
}

/// The standard order on an index set, with least element 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearIndexOrder {
    pub carrier: Index,
}

/// Upper limit of a sequential sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumBound {
    /// Sum of the terms strictly before the index.
    Before(u64),
    /// Sum of every term; finite carriers only.
    Top,
}

/// `Σ_{j≺0} β_j = 0` and `Σ_{j≺ℓ} β_j = sup_{k≺ℓ} (Σ_{j≺k} β_j + β_k)`.
pub fn seq_sum(order: LinearIndexOrder, betas: &Family, bound: SumBound) -> Result<OrdName, ArithError> {
    let end = match (bound, order.carrier) {
        (SumBound::Top, Index::Nat) => return Err(ArithError::TopOverNat),
        (SumBound::Top, Index::Fin(k)) => k,
        (SumBound::Before(l), carrier) if carrier.contains(l) => l,
        (SumBound::Before(l), _) => return Err(ArithError::OutsideCarrier(l)),
    };
    let mut partial: Vec<OrdName> = vec![OrdName::Zero];
    for l in 1..=end {
        let terms: Vec<OrdName> = (0..l as usize).map(|k| add(&partial[k], &betas.at(k as u64))).collect();
        partial.push(sup_finite(&terms));
    }
    Ok(partial.pop().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::{cmp_finitary, eq, lt, Fuel, TriBool};
    use crate::names::{suc, suc_list};
    use std::cmp::Ordering::*;

    #[test]
    fn deep_finite_sums_are_built_on_demand() {
        let deep = add(&und(3), &und(1000));
        let OrdName::Node(f) = &deep else { panic!("a sum with a nonzero right side is a node") };
        assert!(f.fixed_depth().is_none());
        assert_eq!(crate::oracle::val(&deep), Some(1003));
        let shallow = add(&und(3), &und(10));
        assert_eq!(shallow.ident(), und(13).ident());
    }

    /// Natural-number reference for the Ackermann recursion.
    fn acko_nat(a: u64, b: u64, c: u64) -> u64 {
        if c == 0 {
            a + b
        } else if b == 0 {
            a
        } else {
            // Successor case: only j = b-1 and k = c-1.
            acko_nat(a, acko_nat(a, b - 1, c), c - 1)
        }
    }

    #[test]
    fn finite_values() {
        assert_eq!(cmp_finitary(&add(&und(2), &und(3)), &und(5)).unwrap(), Equal);
        assert_eq!(cmp_finitary(&mul(&und(2), &und(3)), &und(6)).unwrap(), Equal);
        assert_eq!(cmp_finitary(&pow(&und(2), &und(3)), &und(8)).unwrap(), Equal);
        assert_eq!(cmp_finitary(&pow(&und(5), &OrdName::Zero), &und(1)).unwrap(), Equal);
        for (a, b, c) in [(2, 2, 1), (1, 3, 2), (2, 1, 2), (2, 2, 2), (0, 2, 1)] {
            let got = acko(&und(a), &und(b), &und(c));
            assert_eq!(cmp_finitary(&got, &und(acko_nat(a, b, c))).unwrap(), Equal, "{a} {b} {c}");
        }
    }

    #[test]
    fn add_zero_keeps_identity() {
        let w = omega();
        assert_eq!(add(&w, &OrdName::Zero).ident(), w.ident());
        assert_eq!(add(&w, &w).at(0).ident(), w.ident());
        assert_eq!(acko(&w, &OrdName::Zero, &und(2)).ident(), w.ident());
    }

    #[test]
    fn omega_plus_omega_above_omega() {
        let ww = add(&omega(), &omega());
        assert_eq!(lt(&omega(), &[ww], Fuel::new(1, 4)).unwrap().value, TriBool::True);
    }

    #[test]
    fn memoized_constructions_are_stable() {
        let a = mul(&omega(), &und(2));
        let b = mul(&omega(), &und(2));
        assert_eq!(a.ident(), b.ident());
        assert_eq!(eps0().ident(), eps0().ident());
    }

    #[test]
    fn eps0_unfolds() {
        let e = eps0();
        assert_eq!(e.index(), Index::Nat);
        let w = omega();
        // ε₀ has ω among its early subordinals.
        let found = (0..8).any(|n| e.at(n).ident() == w.ident());
        assert!(found);
        assert_eq!(lt(&w, &[e], Fuel::default()).unwrap().value, TriBool::True);
    }

    #[test]
    fn sequential_sums() {
        let fin3 = LinearIndexOrder { carrier: Index::Fin(3) };
        let ones = Family::finite(vec![und(1), und(1), und(1)]);
        let top = seq_sum(fin3, &ones, SumBound::Top).unwrap();
        assert_eq!(cmp_finitary(&top, &und(3)).unwrap(), Equal);
        let zeros = Family::finite(vec![OrdName::Zero; 3]);
        assert!(seq_sum(fin3, &zeros, SumBound::Before(2)).unwrap().is_zero());
        let nat = LinearIndexOrder { carrier: Index::Nat };
        assert_eq!(seq_sum(nat, &Family::nat(und), SumBound::Top), Err(ArithError::TopOverNat));
        let partial = seq_sum(nat, &Family::nat(und), SumBound::Before(4)).unwrap();
        assert_eq!(cmp_finitary(&partial, &und(6)).unwrap(), Equal);
        assert_eq!(seq_sum(fin3, &ones, SumBound::Before(3)), Err(ArithError::OutsideCarrier(3)));
    }

    #[test]
    fn mixed_terms_are_finitary_when_inputs_are() {
        let a = suc_list(&[und(1), und(2)]).unwrap();
        let b = suc(&a);
        let m = mul(&a, &b);
        assert_eq!(cmp_finitary(&m, &und(12)).unwrap(), Equal);
        assert_eq!(eq(&mul(&und(1), &a), &a, Fuel::default()).unwrap().value, TriBool::True);
    }
}
