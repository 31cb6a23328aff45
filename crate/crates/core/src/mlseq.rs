//! A two-rule sequent calculus over the same names.
//!
//! A sequent is a finite set of atoms `a < b`, `a ≤ b`, read as a classical
//! disjunction. With `Γ` an arbitrary set carried through unchanged:
//!
//! * R1: from `Γ, a ≤ b_n` infer `Γ, a < b` (one chosen `n`);
//! * R2: from `Γ, a_n < b` for every `n` infer `Γ, a ≤ b`. For `a = 0` there are no
//!   premises, so `Γ, 0 ≤ b` is an axiom.
//!
//! Here `⟨b_n⟩` plays the role of the sequence `u` in `suc(u)`, and the empty sequence
//! is `Zero`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::bits::{eps_lpo, BitSeq};
use crate::compare::is_finitary;
use crate::kernel::{Failure, VerifyPolicy, VerifyReport};
use crate::names::{Index, OrdName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rel {
    Lt,
    Le,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
        }
    }
}

/// `lhs < rhs` or `lhs ≤ rhs`. Equality and order go by name identity.
#[derive(Clone)]
pub struct Atom {
    pub lhs: OrdName,
    pub rel: Rel,
    pub rhs: OrdName,
}

impl Atom {
    pub fn lt(lhs: &OrdName, rhs: &OrdName) -> Self {
        Atom { lhs: lhs.clone(), rel: Rel::Lt, rhs: rhs.clone() }
    }

    pub fn le(lhs: &OrdName, rhs: &OrdName) -> Self {
        Atom { lhs: lhs.clone(), rel: Rel::Le, rhs: rhs.clone() }
    }

    fn key(&self) -> (u64, Rel, u64) {
        (self.lhs.ident(), self.rel, self.rhs.ident())
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Atom {}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {} {:?}", self.lhs, self.rel.symbol(), self.rhs)
    }
}

pub type Sequent = BTreeSet<Atom>;

pub fn sequent(atoms: impl IntoIterator<Item = Atom>) -> Sequent {
    atoms.into_iter().collect()
}

fn with(gamma: &Sequent, atom: Atom) -> Sequent {
    let mut s = gamma.clone();
    s.insert(atom);
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlRule {
    R1 {
        index: u64,
    },
    R2,
    /// An unproved sequent. Never verifies.
    Hypothesis,
}

type MlPremiseFn = Arc<dyn Fn(u64) -> MlCertificate + Send + Sync>;

enum MlPremises {
    Finite(Vec<MlCertificate>),
    Gen { f: MlPremiseFn, cache: Mutex<HashMap<u64, MlCertificate>> },
}

struct MlNode {
    rule: MlRule,
    gamma: Sequent,
    principal: Atom,
    premises: MlPremises,
}

/// A derivation in the sequent calculus. Cheap to clone.
#[derive(Clone)]
pub struct MlCertificate(Arc<MlNode>);

impl MlCertificate {
    pub fn rule(&self) -> MlRule {
        self.0.rule
    }

    pub fn principal(&self) -> &Atom {
        &self.0.principal
    }

    pub fn gamma(&self) -> &Sequent {
        &self.0.gamma
    }

    /// `Γ` together with the principal atom.
    pub fn conclusion(&self) -> Sequent {
        with(&self.0.gamma, self.0.principal.clone())
    }

    fn premise(&self, i: u64) -> Result<MlCertificate, String> {
        match &self.0.premises {
            MlPremises::Finite(v) => v.get(i as usize).cloned().ok_or_else(|| format!("no premise {i}")),
            MlPremises::Gen { f, cache } => {
                if let Some(hit) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&i) {
                    return Ok(hit.clone());
                }
                let made = panic::catch_unwind(AssertUnwindSafe(|| f(i)))
                    .map_err(|_| format!("premise generator panicked at {i}"))?;
                Ok(cache.lock().unwrap_or_else(|e| e.into_inner()).entry(i).or_insert(made).clone())
            }
        }
    }
}

impl fmt::Debug for MlCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({:?} | {:?})", self.0.rule, self.0.gamma, self.0.principal)
    }
}

fn node(rule: MlRule, gamma: &Sequent, principal: Atom, premises: MlPremises) -> MlCertificate {
    MlCertificate(Arc::new(MlNode { rule, gamma: gamma.clone(), principal, premises }))
}

/// R1: `Γ, a ≤ b_n` gives `Γ, a < b`.
pub fn r1(gamma: &Sequent, principal: Atom, index: u64, premise: MlCertificate) -> MlCertificate {
    node(MlRule::R1 { index }, gamma, principal, MlPremises::Finite(vec![premise]))
}

/// R2 with a finite (possibly empty) premise list.
pub fn r2(gamma: &Sequent, principal: Atom, premises: Vec<MlCertificate>) -> MlCertificate {
    node(MlRule::R2, gamma, principal, MlPremises::Finite(premises))
}

/// R2 with premises produced on demand, for left sides indexed by the naturals.
pub fn r2_gen(
    gamma: &Sequent,
    principal: Atom,
    gen: impl Fn(u64) -> MlCertificate + Send + Sync + 'static,
) -> MlCertificate {
    node(MlRule::R2, gamma, principal, MlPremises::Gen { f: Arc::new(gen), cache: Mutex::new(HashMap::new()) })
}

pub fn ml_hypothesis(gamma: &Sequent, principal: Atom) -> MlCertificate {
    node(MlRule::Hypothesis, gamma, principal, MlPremises::Finite(vec![]))
}

/// Checks one rule application against the fetched premises.
fn check(cert: &MlCertificate, fetched: &[(u64, MlCertificate)]) -> Result<(), String> {
    let n = &*cert.0;
    let p = &n.principal;
    let expect_premise = |i: u64, got: &MlCertificate, want: Atom| -> Result<(), String> {
        let want = with(&n.gamma, want);
        if got.conclusion() == want {
            Ok(())
        } else {
            Err(format!("premise {i} concludes {:?}, expected {want:?}", got.conclusion()))
        }
    };
    match n.rule {
        MlRule::Hypothesis => Err("unproved sequent".into()),
        MlRule::R1 { index } => {
            if p.rel != Rel::Lt {
                return Err("R1 concludes a strict atom".into());
            }
            if !p.rhs.index().contains(index) {
                return Err(format!("R1 index {index} outside the right side"));
            }
            let (i, prem) = fetched.first().ok_or("R1 has one premise")?;
            let child = p.rhs.try_at(index).map_err(|e| e.to_string())?;
            expect_premise(*i, prem, Atom::le(&p.lhs, &child))
        }
        MlRule::R2 => {
            if p.rel != Rel::Le {
                return Err("R2 concludes a non-strict atom".into());
            }
            let count_ok = match (&n.premises, p.lhs.index()) {
                (MlPremises::Finite(v), Index::Fin(k)) => v.len() as u64 == k,
                (MlPremises::Gen { .. }, Index::Nat) => true,
                _ => false,
            };
            if !count_ok {
                return Err("R2 needs one premise per subordinal of the left side".into());
            }
            for (i, prem) in fetched {
                let child = p.lhs.try_at(*i).map_err(|e| e.to_string())?;
                expect_premise(*i, prem, Atom::lt(&child, &p.rhs))?;
            }
            Ok(())
        }
    }
}

/// Re-checks rule applications; generated R2 premises are sampled under `SpotCheck`.
pub fn ml_verify(cert: &MlCertificate, policy: &VerifyPolicy) -> VerifyReport {
    fn walk(
        cert: &MlCertificate,
        path: String,
        depth: usize,
        policy: &VerifyPolicy,
        report: &mut VerifyReport,
        done: &mut HashSet<usize>,
    ) -> Result<(), Failure> {
        let key = Arc::as_ptr(&cert.0) as usize;
        if done.contains(&key) {
            return Ok(());
        }
        let fail = |reason: String| Failure { path: path.clone(), reason };
        report.visited += 1;
        let (indices, generated): (Vec<u64>, bool) = match (&cert.0.premises, policy) {
            (MlPremises::Finite(v), _) => ((0..v.len() as u64).collect(), false),
            (MlPremises::Gen { .. }, VerifyPolicy::Exhaustive) => {
                return Err(fail("premises over the naturals cannot be checked exhaustively".into()))
            }
            (MlPremises::Gen { .. }, VerifyPolicy::SpotCheck { samples, .. }) => (samples.clone(), true),
        };
        let mut fetched = Vec::with_capacity(indices.len());
        for i in indices {
            if generated {
                report.sampled.push((path.clone(), i));
            }
            fetched.push((i, cert.premise(i).map_err(&fail)?));
        }
        check(cert, &fetched).map_err(&fail)?;
        if depth == 0 && !fetched.is_empty() {
            report.truncated = true;
            return Ok(());
        }
        for (i, p) in fetched {
            let sub = if generated { format!("{path}/gen[{i}]") } else { format!("{path}/{i}") };
            walk(&p, sub, depth.saturating_sub(1), policy, report, done)?;
        }
        done.insert(key);
        Ok(())
    }
    let depth = match policy {
        VerifyPolicy::Exhaustive => usize::MAX,
        VerifyPolicy::SpotCheck { max_depth, .. } => *max_depth,
    };
    let mut report = VerifyReport::default();
    match walk(cert, "root".into(), depth, policy, &mut report, &mut HashSet::new()) {
        Ok(()) => report.ok = true,
        Err(f) => report.failure = Some(f),
    }
    report
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MlError {
    #[error("sequent mentions a name that is not hereditarily finitary")]
    NotFinitary,
}

/// Derivability of single atoms over finitary names, memoized by identity.
#[derive(Default)]
struct Decider {
    memo: HashMap<(u64, Rel, u64), bool>,
}

impl Decider {
    fn derivable(&mut self, atom: &Atom) -> bool {
        if let Some(&v) = self.memo.get(&atom.key()) {
            return v;
        }
        let v = match atom.rel {
            Rel::Le => match atom.lhs.subordinals().and_then(|f| f.members()) {
                None => true,
                Some(ms) => ms.iter().all(|m| self.derivable(&Atom::lt(m, &atom.rhs))),
            },
            Rel::Lt => match atom.rhs.subordinals().and_then(|f| f.members()) {
                None => false,
                Some(ms) => ms.iter().any(|m| self.derivable(&Atom::le(&atom.lhs, m))),
            },
        };
        self.memo.insert(atom.key(), v);
        v
    }

    /// A derivation of `Γ, atom`, which must be derivable.
    fn prove(&mut self, gamma: &Sequent, atom: &Atom) -> MlCertificate {
        match atom.rel {
            Rel::Le => {
                let ms: Vec<OrdName> =
                    atom.lhs.subordinals().and_then(|f| f.members()).map(<[_]>::to_vec).unwrap_or_default();
                let premises = ms.iter().map(|m| self.prove(gamma, &Atom::lt(m, &atom.rhs))).collect();
                r2(gamma, atom.clone(), premises)
            }
            Rel::Lt => {
                let ms = atom.rhs.subordinals().and_then(|f| f.members()).map(<[_]>::to_vec).unwrap_or_default();
                for (n, m) in ms.iter().enumerate() {
                    let sub = Atom::le(&atom.lhs, m);
                    if self.derivable(&sub) {
                        let premise = self.prove(gamma, &sub);
                        return r1(gamma, atom.clone(), n as u64, premise);
                    }
                }
                ml_hypothesis(gamma, atom.clone())
            }
        }
    }
}

fn finitary_sequent(s: &Sequent) -> Result<(), MlError> {
    if s.iter().all(|a| is_finitary(&a.lhs) && is_finitary(&a.rhs)) {
        Ok(())
    } else {
        Err(MlError::NotFinitary)
    }
}

/// Whether a sequent of finitary atoms is derivable.
///
/// Both rules are sound for the classical value of a finitary name and every true
/// atom is derivable alone, so a sequent is derivable exactly when one of its atoms
/// is. Single atoms are decided by recursion on the subterms.
pub fn ml_derivable(s: &Sequent) -> Result<bool, MlError> {
    finitary_sequent(s)?;
    let mut d = Decider::default();
    Ok(s.iter().any(|a| d.derivable(a)))
}

/// A derivation of a finitary sequent, or `None` if it is not derivable.
pub fn ml_prove(s: &Sequent) -> Result<Option<MlCertificate>, MlError> {
    finitary_sequent(s)?;
    let mut d = Decider::default();
    let Some(atom) = s.iter().find(|a| d.derivable(a)).cloned() else {
        return Ok(None);
    };
    let mut gamma = s.clone();
    gamma.remove(&atom);
    Ok(Some(d.prove(&gamma, &atom)))
}

/// `a ≤ a` for any name: each `a_n < a` by R1 at index `n` from `a_n ≤ a_n`.
pub fn ml_refl(a: &OrdName) -> MlCertificate {
    let empty = Sequent::new();
    let principal = Atom::le(a, a);
    let step = {
        let a = a.clone();
        move |n: u64| {
            let child = a.at(n);
            r1(&Sequent::new(), Atom::lt(&child, &a), n, ml_refl(&child))
        }
    };
    match a.index() {
        Index::Fin(k) => r2(&empty, principal, (0..k).map(step).collect()),
        Index::Nat => r2_gen(&empty, principal, step),
    }
}

/// `a < suc(a)` by R1 from `a ≤ a`.
pub fn ml_lt_suc(a: &OrdName) -> MlCertificate {
    r1(&Sequent::new(), Atom::lt(a, &crate::names::suc(a)), 0, ml_refl(a))
}

/// Derivation of `Γ, atom` for a true finitary atom; a hypothesis otherwise.
fn finitary_branch(gamma: &Sequent, atom: Atom) -> MlCertificate {
    Decider::default().prove(gamma, &atom)
}

/// `a < b` for `a = ⟨u_n⟩` and `b = ⟨u_n + 1⟩`, `u` a nondecreasing bit sequence.
///
/// R1 at index 0 keeps `a < b` and reduces to `a ≤ v_0`; R2 asks for `u_n < v_0` at
/// every `n`. When that atom is true it is derived outright. Otherwise `u_n = 1 > u_0`,
/// so R1 at index `n` reduces to `a ≤ v_n`, and R2 finishes with `u_m < v_n`, true
/// for every `m` since `v_n = 2`. Bits are consulted only when a premise is built.
pub fn ml_cert_exa123(u: &BitSeq) -> MlCertificate {
    let (a, b) = eps_lpo(u);
    let goal = Atom::lt(&a, &b);
    let keep = sequent([goal.clone()]);
    let v0 = b.at(0);
    let a_le_v0 = Atom::le(&a, &v0);
    let step = {
        let (a, b, keep, goal, v0) = (a.clone(), b.clone(), keep.clone(), goal.clone(), v0.clone());
        move |n: u64| {
            let un = a.at(n);
            let test = Atom::lt(&un, &v0);
            if Decider::default().derivable(&test) {
                return finitary_branch(&keep, test);
            }
            let side = sequent([test.clone()]);
            let vn = b.at(n);
            let finish = {
                let (a, vn, side) = (a.clone(), vn.clone(), side.clone());
                move |m: u64| finitary_branch(&side, Atom::lt(&a.at(m), &vn))
            };
            let a_le_vn = r2_gen(&side, Atom::le(&a, &vn), finish);
            r1(&side, goal.clone(), n, a_le_vn)
        }
    };
    let reduced = r2_gen(&keep, a_le_v0, step);
    r1(&keep, goal, 0, reduced)
}
