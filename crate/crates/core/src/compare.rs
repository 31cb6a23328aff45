//! Three-valued comparison of names.
//!
//! `α ≤ β¹..βᵐ` holds when every subordinal of `α` is `<` the list, and `α < β¹..βᵐ`
//! holds when `α ≤` some finite selection of the lists' subordinals. The engine
//! evaluates both relations under a width bound (how many indices of a family it
//! looks at) and a depth bound (how far it descends into `α`). A definite answer is
//! always correct; `Unknown` means the bounds ran out or the question needs
//! information a finite search cannot provide.
//!
//! `Zero` takes part as a name with no subordinals.

use std::cell::RefCell;
use std::collections::HashMap;
use std::ops::{BitAnd, BitOr, Not};

use thiserror::Error;

use crate::names::{GeneratorError, OrdName};

/// Kleene three-valued truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriBool {
    True,
    False,
    Unknown,
}

impl TriBool {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriBool::True
        } else {
            TriBool::False
        }
    }

    pub fn is_true(self) -> bool {
        self == TriBool::True
    }

    pub fn is_false(self) -> bool {
        self == TriBool::False
    }

    pub fn is_known(self) -> bool {
        self != TriBool::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TriBool::True => "true",
            TriBool::False => "false",
            TriBool::Unknown => "unknown",
        }
    }
}

impl BitAnd for TriBool {
    type Output = TriBool;
    fn bitand(self, rhs: TriBool) -> TriBool {
        match (self, rhs) {
            (TriBool::False, _) | (_, TriBool::False) => TriBool::False,
            (TriBool::True, TriBool::True) => TriBool::True,
            _ => TriBool::Unknown,
        }
    }
}

impl BitOr for TriBool {
    type Output = TriBool;
    fn bitor(self, rhs: TriBool) -> TriBool {
        match (self, rhs) {
            (TriBool::True, _) | (_, TriBool::True) => TriBool::True,
            (TriBool::False, TriBool::False) => TriBool::False,
            _ => TriBool::Unknown,
        }
    }
}

impl Not for TriBool {
    type Output = TriBool;
    fn not(self) -> TriBool {
        match self {
            TriBool::True => TriBool::False,
            TriBool::False => TriBool::True,
            TriBool::Unknown => TriBool::Unknown,
        }
    }
}

/// Resource bounds for one comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fuel {
    /// Indices examined per family, and the largest prefix selection tried.
    pub width: u64,
    /// Nesting of `≤` steps into the left-hand name.
    pub depth: usize,
    /// Recursive evaluations allowed before giving up with `Unknown`.
    pub steps: u64,
}

impl Fuel {
    pub const DEFAULT_STEPS: u64 = 100_000;

    pub fn new(width: u64, depth: usize) -> Self {
        Fuel { width, depth, steps: Self::DEFAULT_STEPS }
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::new(64, 512)
    }
}

/// A three-valued answer. The flags say which bound was hit on the way to `Unknown`;
/// they are cleared on definite answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub value: TriBool,
    pub width_truncated: bool,
    pub depth_exhausted: bool,
}

impl Verdict {
    fn known(value: bool) -> Self {
        Verdict { value: TriBool::from_bool(value), width_truncated: false, depth_exhausted: false }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("the right-hand list is empty")]
    EmptyList,
    #[error("name is not finitary (it has a subordinal family over the naturals)")]
    NotFinitary,
}

/// Counters of the calling thread's memo table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MemoStats {
    /// Recursive evaluations that were not answered from the table.
    pub evaluations: u64,
    pub hits: u64,
    pub entries: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Rel {
    Le,
    Lt,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    rel: Rel,
    width: u64,
    lhs: u64,
    rhs: Box<[u64]>,
}

#[derive(Clone, Copy)]
enum Entry {
    /// Reached with at most `height` levels of depth.
    Known { value: bool, height: usize },
    /// Not decided with `depth` levels available.
    Open { depth: usize, width_truncated: bool, depth_exhausted: bool },
}

const MEMO_LIMIT: usize = 1 << 22;

#[derive(Default)]
struct State {
    memo: HashMap<Key, Entry>,
    stats: MemoStats,
    finitary: HashMap<u64, Option<(u64, usize)>>,
}

thread_local! {
    static STATE: RefCell<State> = RefCell::new(State::default());
}

/// Empties the calling thread's memo table and resets its counters.
pub fn clear_memo() {
    STATE.with(|s| *s.borrow_mut() = State::default());
}

pub fn memo_stats() -> MemoStats {
    STATE.with(|s| {
        let s = s.borrow();
        MemoStats { entries: s.memo.len(), ..s.stats }
    })
}

#[derive(Clone, Copy)]
struct Outcome {
    value: TriBool,
    width_truncated: bool,
    depth_exhausted: bool,
    height: usize,
}

impl Outcome {
    fn known(value: bool, height: usize) -> Self {
        Outcome { value: TriBool::from_bool(value), width_truncated: false, depth_exhausted: false, height }
    }

    fn verdict(self) -> Verdict {
        if self.value.is_known() {
            Verdict::known(self.value.is_true())
        } else {
            Verdict {
                value: TriBool::Unknown,
                width_truncated: self.width_truncated,
                depth_exhausted: self.depth_exhausted,
            }
        }
    }
}

struct Search {
    width: u64,
    steps_left: u64,
    starved: bool,
}

/// Drops zeros, replaces lazily flattened finite sups by their parts, and sorts by
/// identity. Each of these leaves both relations unchanged.
pub(crate) fn normalize(list: &[OrdName]) -> Vec<OrdName> {
    let mut out: Vec<OrdName> = Vec::with_capacity(list.len());
    let mut stack: Vec<OrdName> = list.iter().rev().cloned().collect();
    while let Some(name) = stack.pop() {
        if let OrdName::Node(f) = &name {
            if let Some(parts) = f.sup_parts() {
                stack.extend(parts.iter().rev().cloned());
                continue;
            }
            out.push(name);
        }
    }
    out.sort_by_key(OrdName::ident);
    out.dedup_by_key(|n| n.ident());
    out
}

/// Subordinals at indices `0..m` of every member.
pub(crate) fn selection(list: &[OrdName], m: u64) -> Result<Vec<OrdName>, GeneratorError> {
    let mut out = Vec::new();
    for name in list {
        if let OrdName::Node(f) = name {
            out.extend(f.try_prefix(m)?);
        }
    }
    Ok(out)
}

/// Largest cover among the members, or `None` if some member has no cover.
pub(crate) fn list_cover(list: &[OrdName]) -> Option<u64> {
    list.iter().try_fold(0, |acc, n| n.cover().map(|c| acc.max(c)))
}

impl Search {
    fn tick(&mut self) -> bool {
        if self.steps_left == 0 {
            self.starved = true;
            return false;
        }
        self.steps_left -= 1;
        true
    }

    fn spend(&mut self, amount: u64) -> bool {
        if self.steps_left < amount {
            self.steps_left = 0;
            self.starved = true;
            return false;
        }
        self.steps_left -= amount;
        true
    }

    fn lookup(&self, key: &Key, depth: usize) -> Option<Outcome> {
        STATE.with(|s| {
            let mut s = s.borrow_mut();
            let found = match s.memo.get(key)? {
                Entry::Known { value, height } if *height <= depth => Outcome::known(*value, *height),
                Entry::Open { depth: d, width_truncated, depth_exhausted } if depth <= *d => Outcome {
                    value: TriBool::Unknown,
                    width_truncated: *width_truncated,
                    depth_exhausted: *depth_exhausted,
                    height: depth,
                },
                _ => return None,
            };
            s.stats.hits += 1;
            Some(found)
        })
    }

    fn store(&self, key: Key, depth: usize, out: Outcome) {
        let entry = match out.value {
            TriBool::Unknown if self.starved => return,
            TriBool::Unknown => {
                Entry::Open { depth, width_truncated: out.width_truncated, depth_exhausted: out.depth_exhausted }
            }
            v => Entry::Known { value: v.is_true(), height: out.height },
        };
        STATE.with(|s| {
            let mut s = s.borrow_mut();
            if s.memo.len() >= MEMO_LIMIT {
                s.memo.clear();
            }
            s.memo.insert(key, entry);
        });
    }

    fn count_evaluation(&self) {
        STATE.with(|s| s.borrow_mut().stats.evaluations += 1);
    }

    fn key(&self, rel: Rel, lhs: &OrdName, rhs: &[OrdName]) -> Key {
        Key { rel, width: self.width, lhs: lhs.ident(), rhs: rhs.iter().map(OrdName::ident).collect() }
    }

    /// `alpha ≤ rhs` for a normalized `rhs`.
    fn le(&mut self, alpha: &OrdName, rhs: &[OrdName], depth: usize) -> Result<Outcome, EngineError> {
        let fam = match alpha {
            OrdName::Zero => return Ok(Outcome::known(true, 0)),
            OrdName::Node(f) => f,
        };
        if rhs.iter().any(|b| b.ident() == alpha.ident()) {
            return Ok(Outcome::known(true, 0));
        }
        if let Some(parts) = fam.sup_parts() {
            let mut acc = Outcome::known(true, 0);
            for part in parts {
                let r = self.le(part, rhs, depth)?;
                match r.value {
                    TriBool::False => return Ok(r),
                    TriBool::True => acc.height = acc.height.max(r.height),
                    TriBool::Unknown => merge_unknown(&mut acc, r),
                }
            }
            return Ok(acc);
        }
        let key = self.key(Rel::Le, alpha, rhs);
        if let Some(hit) = self.lookup(&key, depth) {
            return Ok(hit);
        }
        if depth == 0 {
            return Ok(Outcome { value: TriBool::Unknown, width_truncated: false, depth_exhausted: true, height: 0 });
        }
        if !self.tick() {
            return Ok(starved_outcome());
        }
        self.count_evaluation();
        let (bound, truncated) = match fam.cover() {
            Some(c) if c <= self.width => (c, false),
            _ => (self.width, true),
        };
        let mut acc = Outcome::known(true, 1);
        for i in 0..bound {
            let child = fam.try_at(i)?;
            let r = self.lt(&child, rhs, depth - 1)?;
            match r.value {
                TriBool::False => {
                    let out = Outcome::known(false, r.height + 1);
                    self.store(key, depth, out);
                    return Ok(out);
                }
                TriBool::True => acc.height = acc.height.max(r.height + 1),
                TriBool::Unknown => merge_unknown(&mut acc, r),
            }
        }
        if truncated && acc.value.is_true() {
            acc.value = TriBool::Unknown;
            acc.width_truncated = true;
        }
        self.store(key, depth, acc);
        Ok(acc)
    }

    /// `alpha < rhs` for a normalized `rhs`.
    fn lt(&mut self, alpha: &OrdName, rhs: &[OrdName], depth: usize) -> Result<Outcome, EngineError> {
        if rhs.is_empty() {
            return Ok(Outcome::known(false, 0));
        }
        if alpha.is_zero() {
            return Ok(Outcome::known(true, 0));
        }
        let key = self.key(Rel::Lt, alpha, rhs);
        if let Some(hit) = self.lookup(&key, depth) {
            return Ok(hit);
        }
        if !self.tick() {
            return Ok(starved_outcome());
        }
        self.count_evaluation();
        let out = match list_cover(rhs) {
            Some(c) if c <= self.width => {
                // Every selection is contained in the full one, which has every value.
                let full = normalize(&selection(rhs, c)?);
                if !self.spend(full.len() as u64) {
                    return Ok(starved_outcome());
                }
                self.le(alpha, &full, depth)?
            }
            _ => {
                let mut acc =
                    Outcome { value: TriBool::Unknown, width_truncated: true, depth_exhausted: false, height: 0 };
                let mut previous: Option<Vec<u64>> = None;
                for m in 1..=self.width {
                    let chosen = normalize(&selection(rhs, m)?);
                    // Building and scanning a selection dominates, so it is paid per member.
                    if !self.spend(chosen.len() as u64) {
                        acc.depth_exhausted = true;
                        break;
                    }
                    let idents: Vec<u64> = chosen.iter().map(OrdName::ident).collect();
                    if previous.as_ref() == Some(&idents) {
                        continue;
                    }
                    previous = Some(idents);
                    let r = self.le(alpha, &chosen, depth)?;
                    if r.value.is_true() {
                        acc = r;
                        break;
                    }
                    acc.depth_exhausted |= r.depth_exhausted;
                }
                acc
            }
        };
        self.store(key, depth, out);
        Ok(out)
    }
}

fn merge_unknown(acc: &mut Outcome, r: Outcome) {
    acc.value = TriBool::Unknown;
    acc.width_truncated |= r.width_truncated;
    acc.depth_exhausted |= r.depth_exhausted;
}

fn starved_outcome() -> Outcome {
    Outcome { value: TriBool::Unknown, width_truncated: false, depth_exhausted: true, height: 0 }
}

fn run(rel: Rel, alpha: &OrdName, betas: &[OrdName], fuel: Fuel) -> Result<Verdict, EngineError> {
    if betas.is_empty() {
        return Err(EngineError::EmptyList);
    }
    let rhs = normalize(betas);
    let mut search = Search { width: fuel.width, steps_left: fuel.steps, starved: false };
    let out = match rel {
        Rel::Le => search.le(alpha, &rhs, fuel.depth)?,
        Rel::Lt => search.lt(alpha, &rhs, fuel.depth)?,
    };
    Ok(out.verdict())
}

/// `alpha ≤ betas` (the list is read as the supremum of its members).
pub fn le(alpha: &OrdName, betas: &[OrdName], fuel: Fuel) -> Result<Verdict, EngineError> {
    run(Rel::Le, alpha, betas, fuel)
}

/// `alpha < betas`.
pub fn lt(alpha: &OrdName, betas: &[OrdName], fuel: Fuel) -> Result<Verdict, EngineError> {
    run(Rel::Lt, alpha, betas, fuel)
}

/// `alpha ≤ beta` and `beta ≤ alpha`.
pub fn eq(alpha: &OrdName, beta: &OrdName, fuel: Fuel) -> Result<Verdict, EngineError> {
    let a = le(alpha, std::slice::from_ref(beta), fuel)?;
    if a.value.is_false() {
        return Ok(a);
    }
    let b = le(beta, std::slice::from_ref(alpha), fuel)?;
    Ok(Verdict {
        value: a.value & b.value,
        width_truncated: a.width_truncated || b.width_truncated,
        depth_exhausted: a.depth_exhausted || b.depth_exhausted,
    })
}

/// Widest index set and height of a name all of whose families are finite.
pub fn finitary_shape(alpha: &OrdName) -> Option<(u64, usize)> {
    if let Some(hit) = STATE.with(|s| s.borrow().finitary.get(&alpha.ident()).copied()) {
        return hit;
    }
    let shape = match alpha {
        OrdName::Zero => Some((0, 0)),
        OrdName::Node(f) => f.members().and_then(|ms| {
            ms.iter().try_fold((ms.len() as u64, 1), |(w, h), m| {
                finitary_shape(m).map(|(mw, mh)| (w.max(mw), h.max(mh + 1)))
            })
        }),
    };
    STATE.with(|s| s.borrow_mut().finitary.insert(alpha.ident(), shape));
    shape
}

pub fn is_finitary(alpha: &OrdName) -> bool {
    finitary_shape(alpha).is_some()
}

/// Fuel under which both relations are decided for finitary arguments.
pub fn exact_fuel(names: &[&OrdName]) -> Result<Fuel, EngineError> {
    let mut width = 1;
    let mut depth = 1;
    for name in names {
        let (w, h) = finitary_shape(name).ok_or(EngineError::NotFinitary)?;
        width = width.max(w);
        depth = depth.max(h + 1);
    }
    // The selection for a list may be as wide as the sum of its members' widths.
    Ok(Fuel { width, depth, steps: u64::MAX })
}

/// Total order on finitary names.
pub fn cmp_finitary(alpha: &OrdName, beta: &OrdName) -> Result<std::cmp::Ordering, EngineError> {
    let fuel = exact_fuel(&[alpha, beta])?;
    let ab = le(alpha, std::slice::from_ref(beta), fuel)?.value;
    let ba = le(beta, std::slice::from_ref(alpha), fuel)?.value;
    debug_assert!(ab.is_known() && ba.is_known());
    Ok(match (ab.is_true(), ba.is_true()) {
        (true, true) => std::cmp::Ordering::Equal,
        (true, false) => std::cmp::Ordering::Less,
        _ => std::cmp::Ordering::Greater,
    })
}

/// Exact `≤` and `<` against lists of finitary names.
pub fn le_finitary(alpha: &OrdName, betas: &[OrdName]) -> Result<bool, EngineError> {
    let mut all: Vec<&OrdName> = betas.iter().collect();
    all.push(alpha);
    let v = le(alpha, betas, exact_fuel(&all)?)?.value;
    debug_assert!(v.is_known());
    Ok(v.is_true())
}

pub fn lt_finitary(alpha: &OrdName, betas: &[OrdName]) -> Result<bool, EngineError> {
    let mut all: Vec<&OrdName> = betas.iter().collect();
    all.push(alpha);
    let v = lt(alpha, betas, exact_fuel(&all)?)?.value;
    debug_assert!(v.is_known());
    Ok(v.is_true())
}
