//! Building certificates from engine verdicts.
//!
//! [`certify_le`] and [`certify_lt`] replay a definite `True` as a derivation. The
//! assisted variants go further when the engine answers Unknown: they expand the left
//! side, prove the premises at a few sample indices, and leave the rest to a lazy
//! generator. Such certificates verify under spot checks only.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{
    hypothesis, le_intro, lt_intro, refl, sup_le_intro, weaken, zero_le, zero_lt, Certificate, Judgment, KernelError,
};
use crate::bits::{eps_llpo, BitSeq};
use crate::compare::{le, list_cover, lt, normalize, selection, EngineError, Fuel};
use crate::names::{sup_finite, Family, Index, OrdName};
use crate::TriBool;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ProveError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

type MemoKey = (bool, u64, Vec<u64>);

/// Replays engine `True` verdicts, sharing repeated subgoals.
struct Replay {
    fuel: Fuel,
    memo: HashMap<MemoKey, Certificate>,
}

fn memo_key(strict: bool, alpha: &OrdName, rhs: &[OrdName]) -> MemoKey {
    (strict, alpha.ident(), normalize(rhs).iter().map(OrdName::ident).collect())
}

/// Wider search for premises far out in a generated family.
fn fuel_for_index(fuel: Fuel, i: u64) -> Fuel {
    Fuel { width: fuel.width.max(2 * i + 2), ..fuel }
}

impl Replay {
    fn new(fuel: Fuel) -> Self {
        Replay { fuel, memo: HashMap::new() }
    }

    /// Derivation of `alpha ≤ rhs`, which the engine has confirmed. Disagreements
    /// become hypotheses, which fail verification at their position.
    fn le(&mut self, alpha: &OrdName, rhs: &[OrdName]) -> Result<Certificate, ProveError> {
        let key = memo_key(false, alpha, rhs);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let made = self.le_uncached(alpha, rhs)?;
        self.memo.insert(key, made.clone());
        Ok(made)
    }

    fn le_uncached(&mut self, alpha: &OrdName, rhs: &[OrdName]) -> Result<Certificate, ProveError> {
        let fam = match alpha {
            OrdName::Zero => return Ok(zero_le(rhs)?),
            OrdName::Node(f) => f.clone(),
        };
        let list = normalize(rhs);
        if list.iter().any(|b| b.ident() == alpha.ident()) {
            return Ok(weaken(refl(alpha), rhs)?);
        }
        if let Some(parts) = fam.sup_parts() {
            let premises = parts.iter().map(|p| self.le(p, rhs)).collect::<Result<Vec<_>, _>>()?;
            return Ok(sup_le_intro(parts, rhs, premises)?);
        }
        if !le(alpha, rhs, self.fuel)?.value.is_true() {
            return Ok(hypothesis(Judgment::le(alpha, rhs)));
        }
        match fam.index() {
            Index::Fin(k) => {
                let premises = (0..k)
                    .map(|i| self.lt(&fam.try_at(i).map_err(EngineError::from)?, rhs))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(le_intro(alpha, rhs, move |i| premises[i as usize].clone())?)
            }
            Index::Nat => {
                let (fuel, rhs_owned, fam) = (self.fuel, rhs.to_vec(), fam.clone());
                Ok(le_intro(alpha, rhs, move |i| {
                    let child = fam.at(i);
                    Replay::new(fuel_for_index(fuel, i))
                        .lt(&child, &rhs_owned)
                        .unwrap_or_else(|_| hypothesis(Judgment::lt(&child, &rhs_owned)))
                })?)
            }
        }
    }

    fn lt(&mut self, alpha: &OrdName, rhs: &[OrdName]) -> Result<Certificate, ProveError> {
        let key = memo_key(true, alpha, rhs);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let made = self.lt_uncached(alpha, rhs)?;
        self.memo.insert(key, made.clone());
        Ok(made)
    }

    fn lt_uncached(&mut self, alpha: &OrdName, rhs: &[OrdName]) -> Result<Certificate, ProveError> {
        let list = normalize(rhs);
        if list.is_empty() {
            return Ok(hypothesis(Judgment::lt(alpha, rhs)));
        }
        if alpha.is_zero() {
            return Ok(zero_lt(rhs)?);
        }
        let widths: Vec<u64> = match list_cover(&list) {
            Some(c) if c <= self.fuel.width => vec![c],
            _ => (1..=self.fuel.width).collect(),
        };
        let mut previous: Option<Vec<u64>> = None;
        for m in widths {
            let chosen = selection(&list, m).map_err(EngineError::from)?;
            let idents: Vec<u64> = normalize(&chosen).iter().map(OrdName::ident).collect();
            if previous.as_ref() == Some(&idents) {
                continue;
            }
            previous = Some(idents);
            if le(alpha, &chosen, self.fuel)?.value.is_true() {
                let inner = self.le(alpha, &chosen)?;
                return Ok(lt_intro(alpha, rhs, m, inner)?);
            }
        }
        Ok(hypothesis(Judgment::lt(alpha, rhs)))
    }
}

/// A derivation of `alpha ≤ rhs` when the engine proves it at `fuel`, else `None`.
pub fn certify_le(alpha: &OrdName, rhs: &[OrdName], fuel: Fuel) -> Result<Option<Certificate>, ProveError> {
    if !le(alpha, rhs, fuel)?.value.is_true() {
        return Ok(None);
    }
    Replay::new(fuel).le(alpha, rhs).map(Some)
}

/// A derivation of `alpha < rhs` when the engine proves it at `fuel`, else `None`.
pub fn certify_lt(alpha: &OrdName, rhs: &[OrdName], fuel: Fuel) -> Result<Option<Certificate>, ProveError> {
    if !lt(alpha, rhs, fuel)?.value.is_true() {
        return Ok(None);
    }
    Replay::new(fuel).lt(alpha, rhs).map(Some)
}

/// Settings for assisted proofs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assist {
    pub fuel: Fuel,
    /// Indices of an uncovered family that must be proved before the rest is
    /// entrusted to a generator.
    pub samples: Vec<u64>,
    /// Nested expansions of families over the naturals. Finite families are expanded
    /// freely since that always terminates.
    pub budget: usize,
    /// Selection width for `<`; should exceed every sample index.
    pub width: u64,
}

impl Default for Assist {
    fn default() -> Self {
        Assist {
            fuel: Fuel { width: 16, depth: 16, steps: 20_000 },
            samples: vec![0, 1, 2, 3, 5, 8],
            budget: 3,
            width: 16,
        }
    }
}

type AssistKey = (bool, u64, Vec<u64>, usize);

/// One assisted search; failed and successful subgoals are remembered.
struct Assistant<'a> {
    opts: &'a Assist,
    memo: HashMap<AssistKey, Option<Certificate>>,
}

/// Members gathered while peeling successor tops before the guard gives up.
const PEEL_LIMIT: usize = 100_000;

impl Assistant<'_> {
    /// Looks for a reason not to trust a generator with `fam_i < rhs` for every `i`.
    ///
    /// When the sampled members strictly increase, the node is taken to be a limit. A
    /// limit below a node over a finite family is below one of its members, so such
    /// names in `rhs` are replaced by their members until only nodes over the naturals
    /// remain. Running out of names, or a refuted sample against what remains, means
    /// the trust would be misplaced. Only ever rejects.
    fn refuted_beyond_samples(&mut self, fam: &Family, rhs: &[OrdName], budget: usize) -> Result<bool, ProveError> {
        let fuel = self.opts.fuel;
        let sampled: Vec<OrdName> = self.opts.samples.iter().map(|&i| fam.at(i)).collect();
        if sampled.len() < 2 {
            return Ok(false);
        }
        for pair in sampled.windows(2) {
            let increasing = match lt(&pair[0], &pair[1..], fuel)?.value {
                TriBool::True => true,
                TriBool::False => false,
                TriBool::Unknown => self.lt(&pair[0], &pair[1..], budget)?.is_some(),
            };
            if !increasing {
                return Ok(false);
            }
        }
        let mut list = normalize(rhs);
        let mut peeled = false;
        let mut gathered = 0;
        loop {
            let (limits, tops): (Vec<OrdName>, Vec<OrdName>) =
                list.iter().filter(|b| !b.is_zero()).cloned().partition(|b| match b {
                    OrdName::Node(f) => f.index() == Index::Nat,
                    OrdName::Zero => false,
                });
            if tops.is_empty() && limits.len() == list.len() {
                break;
            }
            peeled = true;
            let mut next = limits;
            for b in &tops {
                if let OrdName::Node(f) = b {
                    let ms = f.members().unwrap_or_default();
                    gathered += ms.len();
                    next.extend_from_slice(ms);
                }
            }
            if gathered > PEEL_LIMIT {
                return Ok(true);
            }
            list = normalize(&next);
            if list.is_empty() {
                return Ok(true);
            }
        }
        if !peeled {
            return Ok(false);
        }
        for child in &sampled {
            if lt(child, &list, fuel)?.value.is_false() {
                return Ok(true);
            }
            // `list ≤ child` refutes `child < list` where the engine cannot.
            let mut dominated = true;
            for b in &list {
                let above = std::slice::from_ref(child);
                dominated = dominated
                    && match le(b, above, fuel)?.value {
                        TriBool::True => true,
                        TriBool::False => false,
                        TriBool::Unknown => self.le(b, above, budget)?.is_some(),
                    };
            }
            if dominated {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn key(strict: bool, alpha: &OrdName, rhs: &[OrdName], budget: usize) -> AssistKey {
        (strict, alpha.ident(), normalize(rhs).iter().map(OrdName::ident).collect(), budget)
    }

    fn le(&mut self, alpha: &OrdName, rhs: &[OrdName], budget: usize) -> Result<Option<Certificate>, ProveError> {
        let key = Self::key(false, alpha, rhs, budget);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        // Cycles cannot occur on well-founded names, but a failed entry bounds rework.
        self.memo.insert(key.clone(), None);
        let made = self.le_uncached(alpha, rhs, budget)?;
        self.memo.insert(key, made.clone());
        Ok(made)
    }

    fn le_uncached(
        &mut self,
        alpha: &OrdName,
        rhs: &[OrdName],
        budget: usize,
    ) -> Result<Option<Certificate>, ProveError> {
        let fuel = self.opts.fuel;
        let verdict = le(alpha, rhs, fuel)?.value;
        if verdict.is_true() {
            return certify_le(alpha, rhs, fuel);
        }
        if verdict.is_false() {
            return Ok(None);
        }
        let OrdName::Node(fam) = alpha else {
            return Ok(None);
        };
        if let Some(parts) = fam.sup_parts() {
            let mut premises = Vec::with_capacity(parts.len());
            for p in parts {
                match self.le(p, rhs, budget)? {
                    Some(c) => premises.push(c),
                    None => return Ok(None),
                }
            }
            return Ok(Some(sup_le_intro(parts, rhs, premises)?));
        }
        match fam.index() {
            Index::Fin(k) => {
                let mut premises = Vec::with_capacity(k as usize);
                for i in 0..k {
                    match self.lt(&fam.at(i), rhs, budget)? {
                        Some(c) => premises.push(c),
                        None => return Ok(None),
                    }
                }
                Ok(Some(le_intro(alpha, rhs, move |i| premises[i as usize].clone())?))
            }
            Index::Nat => {
                let Some(next) = budget.checked_sub(1) else {
                    return Ok(None);
                };
                if fam.cover().is_none() && self.refuted_beyond_samples(fam, rhs, next)? {
                    return Ok(None);
                }
                let checked: Vec<u64> = match fam.cover() {
                    Some(c) => (0..c).collect(),
                    None => self.opts.samples.clone(),
                };
                let mut proved = HashMap::new();
                for i in checked {
                    match self.lt(&fam.at(i), rhs, next)? {
                        Some(c) => proved.insert(i, c),
                        None => return Ok(None),
                    };
                }
                let proved = Arc::new(Mutex::new(proved));
                let (rhs_owned, fam) = (rhs.to_vec(), fam.clone());
                let opts = Assist { budget: next, ..self.opts.clone() };
                Ok(Some(le_intro(alpha, rhs, move |i| {
                    if let Some(c) = proved.lock().unwrap_or_else(|e| e.into_inner()).get(&i) {
                        return c.clone();
                    }
                    let child = fam.at(i);
                    let wide =
                        Assist { fuel: fuel_for_index(opts.fuel, i), width: opts.width.max(2 * i + 2), ..opts.clone() };
                    assist_lt(&child, &rhs_owned, &wide)
                        .ok()
                        .flatten()
                        .unwrap_or_else(|| hypothesis(Judgment::lt(&child, &rhs_owned)))
                })?))
            }
        }
    }

    fn lt(&mut self, alpha: &OrdName, rhs: &[OrdName], budget: usize) -> Result<Option<Certificate>, ProveError> {
        let key = Self::key(true, alpha, rhs, budget);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.memo.insert(key.clone(), None);
        let made = self.lt_uncached(alpha, rhs, budget)?;
        self.memo.insert(key, made.clone());
        Ok(made)
    }

    fn lt_uncached(
        &mut self,
        alpha: &OrdName,
        rhs: &[OrdName],
        budget: usize,
    ) -> Result<Option<Certificate>, ProveError> {
        let fuel = self.opts.fuel;
        let verdict = lt(alpha, rhs, fuel)?.value;
        if verdict.is_true() {
            return certify_lt(alpha, rhs, fuel);
        }
        if verdict.is_false() {
            return Ok(None);
        }
        // Selections grow with the width, so the widest one is the only one worth trying.
        let list = normalize(rhs);
        let width = list_cover(&list).unwrap_or(self.opts.width);
        let chosen = selection(&list, width).map_err(EngineError::from)?;
        if let Some(inner) = self.le(alpha, &chosen, budget)? {
            return Ok(Some(lt_intro(alpha, rhs, width, inner)?));
        }
        Ok(None)
    }
}

/// `alpha ≤ rhs` from the engine, or by expanding `alpha` when the engine is unsure.
/// `None` when the engine refutes it or no derivation is found within the budget.
pub fn assist_le(alpha: &OrdName, rhs: &[OrdName], opts: &Assist) -> Result<Option<Certificate>, ProveError> {
    Assistant { opts, memo: HashMap::new() }.le(alpha, rhs, opts.budget)
}

/// `alpha < rhs` from the engine, or through a selection whose `≤` obligation is
/// proved with assistance.
pub fn assist_lt(alpha: &OrdName, rhs: &[OrdName], opts: &Assist) -> Result<Option<Certificate>, ProveError> {
    Assistant { opts, memo: HashMap::new() }.lt(alpha, rhs, opts.budget)
}

/// For a sequence with at most one 1: `ε ≤ sup(ε¹, ε²)`, sending each `ε_n` to the
/// component of matching parity.
pub fn llpo_certificate(v: &BitSeq) -> Result<Certificate, KernelError> {
    let (eps, evens, odds) = eps_llpo(v);
    let target = sup_finite(&[evens.clone(), odds.clone()]);
    let rhs = vec![target];
    let rhs_gen = rhs.clone();
    let eps_gen = eps.clone();
    le_intro(&eps, &rhs, move |n| {
        let component = if n % 2 == 0 { &evens } else { &odds };
        let half = n / 2;
        let bit = eps_gen.at(n);
        debug_assert_eq!(bit.ident(), component.at(half).ident());
        let chosen = selection(&normalize(&rhs_gen), half + 1).expect("bit sequences do not fail");
        let inner = weaken(refl(&bit), &chosen).expect("weakening is well formed");
        lt_intro(&bit, &rhs_gen, half + 1, inner).unwrap_or_else(|_| hypothesis(Judgment::lt(&bit, &rhs_gen)))
    })
}
