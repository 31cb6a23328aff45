//! Bit sequences and the names built from them in the omniscience examples.

use std::fmt;
use std::sync::Arc;

use crate::names::{und, Family, OrdName};

/// How a [`BitSeq`] continues after its prefix.
#[derive(Clone)]
pub enum Tail {
    /// Repeats the last prefix bit (`false` after an empty prefix).
    ConstLast,
    /// Bits come from a total map queried pointwise; nothing else is known about it.
    Opaque(Arc<dyn Fn(u64) -> bool + Send + Sync>),
}

/// An infinite sequence of bits: a finite prefix followed by a tail policy.
#[derive(Clone)]
pub struct BitSeq {
    pub prefix: Vec<bool>,
    pub tail: Tail,
}

impl BitSeq {
    pub fn const_last(prefix: Vec<bool>) -> Self {
        BitSeq { prefix, tail: Tail::ConstLast }
    }

    pub fn opaque(prefix: Vec<bool>, rest: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        BitSeq { prefix, tail: Tail::Opaque(Arc::new(rest)) }
    }

    /// Parses a prefix such as `"0011"`.
    pub fn parse_prefix(s: &str) -> Option<Vec<bool>> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect()
    }

    pub fn bit(&self, n: u64) -> bool {
        if let Some(&b) = self.prefix.get(n as usize) {
            return b;
        }
        match &self.tail {
            Tail::ConstLast => self.prefix.last().copied().unwrap_or(false),
            Tail::Opaque(f) => f(n),
        }
    }

    pub fn is_const_tail(&self) -> bool {
        matches!(self.tail, Tail::ConstLast)
    }

    /// The family `n ↦ und(bit(n) + offset)`. Constant tails give a covered family.
    pub fn family(&self, offset: u64) -> Family {
        let value = move |b: bool| und(b as u64 + offset);
        match &self.tail {
            Tail::ConstLast => {
                let head = self.prefix.iter().map(|&b| value(b)).collect();
                Family::eventually_const(head, value(self.bit(self.prefix.len() as u64)))
            }
            Tail::Opaque(_) => {
                let seq = self.clone();
                Family::nat(move |n| value(seq.bit(n)))
            }
        }
    }

    /// The subsequence `n ↦ bit(step * n + start)`.
    pub fn subsequence(&self, step: u64, start: u64) -> BitSeq {
        match &self.tail {
            Tail::ConstLast => {
                let len = self.prefix.len() as u64;
                let count = if len > start { (len - start).div_ceil(step) } else { 0 };
                // One extra position reaches the constant tail.
                let prefix = (0..=count).map(|m| self.bit(step * m + start)).collect();
                BitSeq::const_last(prefix)
            }
            Tail::Opaque(_) => {
                let seq = self.clone();
                let len = self.prefix.len() as u64;
                let count = if len > start { (len - start).div_ceil(step) } else { 0 };
                let prefix = (0..count).map(|m| self.bit(step * m + start)).collect();
                BitSeq::opaque(prefix, move |m| seq.bit(step * m + start))
            }
        }
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.prefix {
            write!(f, "{}", b as u8)?;
        }
        match self.tail {
            Tail::ConstLast => write!(f, "(const)"),
            Tail::Opaque(_) => write!(f, "(opaque)"),
        }
    }
}

/// For a sequence taking the value 1 at most once: `(ε, ε¹, ε²)` with
/// `ε = ⟨v_n⟩`, `ε¹ = ⟨v_{2m}⟩`, `ε² = ⟨v_{2m+1}⟩` (bits read as naturals).
///
/// The at-most-once condition is not checked.
pub fn eps_llpo(v: &BitSeq) -> (OrdName, OrdName, OrdName) {
    let node = |s: &BitSeq| OrdName::Node(s.family(0));
    (node(v), node(&v.subsequence(2, 0)), node(&v.subsequence(2, 1)))
}

/// For a nondecreasing sequence: `(ε, ε′)` with `ε = ⟨u_n⟩` and `ε′ = ⟨u_n + 1⟩`.
///
/// Monotonicity is not checked.
pub fn eps_lpo(u: &BitSeq) -> (OrdName, OrdName) {
    (OrdName::Node(u.family(0)), OrdName::Node(u.family(1)))
}

/// Whether some position dominates the whole sequence (`∃n ∀m u_m ≤ u_n`).
/// Decidable only for constant tails; `None` otherwise.
pub fn lpo_witness(u: &BitSeq) -> Option<bool> {
    u.is_const_tail().then_some(true)
}

/// Whether every 1 sits at an index of parity `k` (`∀n (v_n = 1 ⇒ n ≡ k mod 2)`).
///
/// Decided for a constant tail, or once the prefix shows a 1: the sequence takes the
/// value 1 at most once, so nothing after it can change the answer. `None` otherwise.
pub fn llpo_parity_holds(v: &BitSeq, k: u64) -> Option<bool> {
    if v.is_const_tail() {
        // Beyond the prefix the bit is constant, so two more positions cover both parities.
        let horizon = v.prefix.len() as u64 + 2;
        return Some((0..horizon).all(|n| !v.bit(n) || n % 2 == k % 2));
    }
    v.prefix.iter().position(|&b| b).map(|n| n as u64 % 2 == k % 2)
}
