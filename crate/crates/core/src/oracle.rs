//! Reference implementations for tests: the classical value of a finitary name, a
//! literal evaluator of `≤` and `<` that tries every subset selection, and a seeded
//! random name generator.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::add;
use crate::compare::is_finitary;
use crate::names::{omega, und, Family, OrdName};

/// `val(0) = 0`, `val(⟨α_i⟩) = max_i (val(α_i) + 1)`. `None` if not finitary.
pub fn val(alpha: &OrdName) -> Option<u64> {
    fn go(alpha: &OrdName, memo: &mut HashMap<u64, u64>) -> Option<u64> {
        if let Some(&v) = memo.get(&alpha.ident()) {
            return Some(v);
        }
        let v = match alpha {
            OrdName::Zero => 0,
            OrdName::Node(f) => {
                let mut best = 0;
                for m in f.members()? {
                    best = best.max(go(m, memo)? + 1);
                }
                best
            }
        };
        memo.insert(alpha.ident(), v);
        Some(v)
    }
    go(alpha, &mut HashMap::new())
}

/// Selections larger than this many subordinals are not attempted.
const NAIVE_LIMIT: usize = 22;

struct Naive {
    memo: HashMap<(bool, u64, Vec<u64>), bool>,
}

impl Naive {
    fn key(strict: bool, alpha: &OrdName, betas: &[OrdName]) -> (bool, u64, Vec<u64>) {
        let mut ids: Vec<u64> = betas.iter().map(OrdName::ident).collect();
        ids.sort_unstable();
        (strict, alpha.ident(), ids)
    }

    fn le(&mut self, alpha: &OrdName, betas: &[OrdName]) -> bool {
        let key = Self::key(false, alpha, betas);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match alpha.subordinals().and_then(|f| f.members()) {
            None => true,
            Some(ms) => ms.iter().all(|m| self.lt(m, betas)),
        };
        self.memo.insert(key, v);
        v
    }

    fn lt(&mut self, alpha: &OrdName, betas: &[OrdName]) -> bool {
        let key = Self::key(true, alpha, betas);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let pool: Vec<OrdName> =
            betas.iter().filter_map(|b| b.subordinals().and_then(|f| f.members())).flatten().cloned().collect();
        // Selecting one name twice is the same as selecting it once.
        let pool = dedup(pool);
        assert!(pool.len() <= NAIVE_LIMIT, "selection pool of {} is too large", pool.len());
        // Largest selections first: they are the likeliest witnesses.
        let v = (1u64..1 << pool.len()).rev().any(|mask| {
            let chosen: Vec<OrdName> =
                pool.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, n)| n.clone()).collect();
            self.le(alpha, &chosen)
        });
        self.memo.insert(key, v);
        v
    }
}

fn dedup(mut names: Vec<OrdName>) -> Vec<OrdName> {
    let mut seen = std::collections::HashSet::new();
    names.retain(|n| seen.insert(n.ident()));
    names
}

fn check_finitary(alpha: &OrdName, betas: &[OrdName]) -> Option<()> {
    (is_finitary(alpha) && betas.iter().all(is_finitary) && !betas.is_empty()).then_some(())
}

/// `α ≤ β¹..βᵐ` straight from the definition. `None` unless every name is finitary
/// and the list is nonempty.
pub fn naive_le(alpha: &OrdName, betas: &[OrdName]) -> Option<bool> {
    check_finitary(alpha, betas)?;
    Some(Naive { memo: HashMap::new() }.le(alpha, betas))
}

/// `α < β¹..βᵐ`, trying every choice of finite subsets `F_k`, not all empty.
pub fn naive_lt(alpha: &OrdName, betas: &[OrdName]) -> Option<bool> {
    check_finitary(alpha, betas)?;
    Some(Naive { memo: HashMap::new() }.lt(alpha, betas))
}

/// Bounds for [`gen_name`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub max_depth: u32,
    pub max_width: u32,
    /// Chance that a leaf is one of ω, 1+ω, ω+ω instead of zero.
    pub omega_probability: f64,
    pub seed: u64,
    /// Stop growing once this many nodes exist; keeps exhaustive checks tractable.
    pub max_nodes: u32,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { max_depth: 4, max_width: 3, omega_probability: 0.0, seed: 0, max_nodes: 24 }
    }
}

/// Seeded generator of random names.
pub struct NameGen {
    params: GenParams,
    rng: ChaCha8Rng,
}

impl NameGen {
    pub fn new(params: GenParams) -> Self {
        NameGen { params, rng: ChaCha8Rng::seed_from_u64(params.seed) }
    }

    pub fn next_name(&mut self) -> OrdName {
        let mut budget = self.params.max_nodes;
        let depth = self.params.max_depth;
        self.grow(depth, &mut budget)
    }

    fn leaf(&mut self) -> OrdName {
        if self.params.omega_probability > 0.0 && self.rng.gen_bool(self.params.omega_probability) {
            return match self.rng.gen_range(0..3) {
                0 => omega(),
                1 => add(&und(1), &omega()),
                _ => add(&omega(), &omega()),
            };
        }
        OrdName::Zero
    }

    fn grow(&mut self, depth: u32, budget: &mut u32) -> OrdName {
        if depth == 0 || *budget == 0 || self.params.max_width == 0 || self.rng.gen_bool(0.2) {
            return self.leaf();
        }
        *budget -= 1;
        let width = self.rng.gen_range(1..=self.params.max_width);
        let children = (0..width).map(|_| self.grow(depth - 1, budget)).collect();
        OrdName::Node(Family::finite(children))
    }
}

/// One name from a fresh generator seeded with `p.seed`.
pub fn gen_name(p: GenParams) -> OrdName {
    NameGen::new(p).next_name()
}
