//! Certificates for `≤` and `<` judgments.
//!
//! A certificate is a derivation tree. Each node names a rule, states its conclusion
//! and holds its premises: a finite list, or a generator over the naturals for the
//! universal obligations of a node indexed by the naturals. Constructors refuse
//! ill-shaped steps, and [`verify`] re-checks every rule application it reaches.
//!
//! Right-hand lists are compared through the set of subordinals they expose, so a
//! list and the supremum of its members are interchangeable.

mod prove;
mod text;
mod verify;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::compare::{normalize, selection};
use crate::names::{suc, sup_finite, sup_nat, Family, GeneratorError, Index, OrdName};

pub use prove::{assist_le, assist_lt, certify_le, certify_lt, llpo_certificate, Assist, ProveError};
pub use text::to_text;
pub use verify::{incompatible, verify, Failure, Incompatibility, VerifyPolicy, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Le,
    Lt,
}

impl Kind {
    pub fn symbol(self) -> &'static str {
        match self {
            Kind::Le => "<=",
            Kind::Lt => "<",
        }
    }
}

/// `lhs ≤ rhs` or `lhs < rhs`, the list read as the supremum of its members.
#[derive(Clone)]
pub struct Judgment {
    pub kind: Kind,
    pub lhs: OrdName,
    pub rhs: Vec<OrdName>,
}

impl Judgment {
    pub fn le(lhs: &OrdName, rhs: &[OrdName]) -> Self {
        Judgment { kind: Kind::Le, lhs: lhs.clone(), rhs: rhs.to_vec() }
    }

    pub fn lt(lhs: &OrdName, rhs: &[OrdName]) -> Self {
        Judgment { kind: Kind::Lt, lhs: lhs.clone(), rhs: rhs.to_vec() }
    }

    /// Same kind, identical left name and equal right-hand keys.
    pub fn same_as(&self, other: &Judgment) -> Result<bool, GeneratorError> {
        Ok(self.kind == other.kind
            && self.lhs.ident() == other.lhs.ident()
            && rhs_key(&self.rhs)? == rhs_key(&other.rhs)?)
    }
}

impl fmt::Debug for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {} {:?}", self.lhs, self.kind.symbol(), self.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum KeyAtom {
    Child(u64),
    Opaque(u64),
}

/// What a right-hand list exposes to both relations: the subordinals of members whose
/// values are all known, and the identity of every other member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhsKey(BTreeSet<KeyAtom>);

pub fn rhs_key(list: &[OrdName]) -> Result<RhsKey, GeneratorError> {
    let mut set = BTreeSet::new();
    for member in normalize(list) {
        match member.cover() {
            Some(c) => {
                for child in member.subordinals().expect("normalized members are nodes").try_prefix(c)? {
                    set.insert(KeyAtom::Child(child.ident()));
                }
            }
            None => {
                set.insert(KeyAtom::Opaque(member.ident()));
            }
        }
    }
    Ok(RhsKey(set))
}

fn same_list(a: &[OrdName], b: &[OrdName]) -> Result<bool, GeneratorError> {
    Ok(rhs_key(a)? == rhs_key(b)?)
}

/// Members of a supremum introduced by [`sup_le_intro`].
#[derive(Clone)]
pub enum SupMembers {
    Finite(Vec<OrdName>),
    Family(Family),
}

impl SupMembers {
    fn sup(&self) -> OrdName {
        match self {
            SupMembers::Finite(ms) => sup_finite(ms),
            SupMembers::Family(f) => match f.members() {
                Some(ms) => sup_finite(ms),
                None => sup_nat(f),
            },
        }
    }

    fn index(&self) -> Index {
        match self {
            SupMembers::Finite(ms) => Index::Fin(ms.len() as u64),
            SupMembers::Family(f) => f.index(),
        }
    }

    fn at(&self, j: u64) -> Result<OrdName, GeneratorError> {
        match self {
            SupMembers::Finite(ms) => Ok(ms[j as usize].clone()),
            SupMembers::Family(f) => f.try_at(j),
        }
    }
}

/// Rule of a certificate node, with its payload.
#[derive(Clone)]
pub enum Rule {
    ZeroLe,
    ZeroLt,
    LeIntro,
    LtIntro {
        width: u64,
    },
    TransLeLe,
    TransLtLe,
    TransLeLt,
    Weaken {
        extra: Vec<OrdName>,
    },
    Contract,
    LtToLe,
    LtSucOfLe,
    LeOfLtSuc,
    SucLeOfLt,
    LtOfSucLe,
    SupLeIntro {
        members: SupMembers,
    },
    SupLt,
    CutLeft {
        beta: OrdName,
    },
    DropLeft {
        beta: OrdName,
    },
    /// An unproved claim. Never verifies.
    Hypothesis,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::ZeroLe => "zero_le",
            Rule::ZeroLt => "zero_lt",
            Rule::LeIntro => "le_intro",
            Rule::LtIntro { .. } => "lt_intro",
            Rule::TransLeLe => "trans_le_le",
            Rule::TransLtLe => "trans_lt_le",
            Rule::TransLeLt => "trans_le_lt",
            Rule::Weaken { .. } => "weaken",
            Rule::Contract => "contract",
            Rule::LtToLe => "lt_to_le",
            Rule::LtSucOfLe => "lt_suc_of_le",
            Rule::LeOfLtSuc => "le_of_lt_suc",
            Rule::SucLeOfLt => "suc_le_of_lt",
            Rule::LtOfSucLe => "lt_of_suc_le",
            Rule::SupLeIntro { .. } => "sup_le_intro",
            Rule::SupLt => "sup_lt",
            Rule::CutLeft { .. } => "cut_left",
            Rule::DropLeft { .. } => "drop_left",
            Rule::Hypothesis => "hypothesis",
        }
    }
}

type PremiseFn = Arc<dyn Fn(u64) -> Certificate + Send + Sync>;

struct PremiseGen {
    index: Index,
    f: PremiseFn,
    cache: Mutex<HashMap<u64, Certificate>>,
}

enum Premises {
    Finite(Vec<Certificate>),
    Gen(PremiseGen),
}

struct Node {
    rule: Rule,
    conclusion: Judgment,
    premises: Premises,
}

/// A derivation. Cheap to clone.
#[derive(Clone)]
pub struct Certificate(Arc<Node>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("ill-formed {rule}: {reason}")]
    Shape { rule: &'static str, reason: String },
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("certificate has premises over the naturals and has no finite text form")]
    Infinitary,
}

impl Certificate {
    pub fn rule(&self) -> &Rule {
        &self.0.rule
    }

    pub fn conclusion(&self) -> &Judgment {
        &self.0.conclusion
    }

    /// Whether the premises are given by a generator over the naturals.
    pub fn is_infinitary(&self) -> bool {
        matches!(self.0.premises, Premises::Gen(_))
    }

    /// Finite premises, if the node has a finite list.
    pub fn finite_premises(&self) -> Option<&[Certificate]> {
        match &self.0.premises {
            Premises::Finite(v) => Some(v),
            Premises::Gen(_) => None,
        }
    }

    /// Premise at `i`; generator panics become errors.
    pub fn premise(&self, i: u64) -> Result<Certificate, String> {
        match &self.0.premises {
            Premises::Finite(v) => v.get(i as usize).cloned().ok_or_else(|| format!("no premise {i}")),
            Premises::Gen(g) => {
                if !g.index.contains(i) {
                    return Err(format!("premise {i} outside {:?}", g.index));
                }
                if let Some(hit) = g.cache.lock().unwrap_or_else(|e| e.into_inner()).get(&i) {
                    return Ok(hit.clone());
                }
                let made = panic::catch_unwind(AssertUnwindSafe(|| (g.f)(i)))
                    .map_err(|_| format!("premise generator panicked at {i}"))?;
                let mut cache = g.cache.lock().unwrap_or_else(|e| e.into_inner());
                Ok(cache.entry(i).or_insert(made).clone())
            }
        }
    }

    fn premise_count(&self) -> Option<u64> {
        match &self.0.premises {
            Premises::Finite(v) => Some(v.len() as u64),
            Premises::Gen(g) => g.index.len(),
        }
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({:?})", self.rule().name(), self.conclusion())
    }
}

fn shape(rule: &Rule, reason: impl Into<String>) -> String {
    format!("{}: {}", rule.name(), reason.into())
}

fn expect(cond: bool, rule: &Rule, reason: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(shape(rule, reason))
    }
}

fn gen_err(e: GeneratorError) -> String {
    e.to_string()
}

/// Checks one rule application. `fetched` holds the premises to inspect: all of them
/// for finite nodes, the sampled ones for generator nodes.
fn check_node(cert: &Certificate, fetched: &[(u64, Certificate)]) -> Result<(), String> {
    let node = &*cert.0;
    let rule = &node.rule;
    let c = &node.conclusion;
    let prem = |k: usize| -> Result<&Judgment, String> {
        fetched.get(k).map(|(_, p)| p.conclusion()).ok_or_else(|| shape(rule, format!("missing premise {k}")))
    };
    let kinded = |j: &Judgment, kind: Kind, what: &str| expect(j.kind == kind, rule, what);
    let same = |a: &[OrdName], b: &[OrdName], what: &str| -> Result<(), String> {
        expect(same_list(a, b).map_err(gen_err)?, rule, what)
    };
    let ident = |a: &OrdName, b: &OrdName, what: &str| expect(a.ident() == b.ident(), rule, what);
    expect(!c.rhs.is_empty(), rule, "empty right-hand list")?;
    let arity = |n: u64| expect(cert.premise_count() == Some(n), rule, "wrong number of premises");
    match rule {
        Rule::Hypothesis => Err(shape(rule, "unproved claim")),
        Rule::ZeroLe => {
            arity(0)?;
            kinded(c, Kind::Le, "conclusion must be <=")?;
            expect(c.lhs.is_zero(), rule, "left side must be zero")
        }
        Rule::ZeroLt => {
            arity(0)?;
            kinded(c, Kind::Lt, "conclusion must be <")?;
            expect(c.lhs.is_zero(), rule, "left side must be zero")?;
            expect(!normalize(&c.rhs).is_empty(), rule, "no member of the list is a node")
        }
        Rule::LeIntro => {
            kinded(c, Kind::Le, "conclusion must be <=")?;
            let fam = c.lhs.subordinals().ok_or_else(|| shape(rule, "left side is zero"))?;
            match &node.premises {
                Premises::Finite(v) => {
                    expect(Index::Fin(v.len() as u64) == fam.index(), rule, "premises do not match the index set")?
                }
                Premises::Gen(g) => expect(g.index == fam.index(), rule, "premises do not match the index set")?,
            }
            for (i, p) in fetched {
                let want = Judgment::lt(&fam.try_at(*i).map_err(gen_err)?, &c.rhs);
                expect(p.conclusion().same_as(&want).map_err(gen_err)?, rule, &format!("premise {i} is not {want:?}"))?;
            }
            Ok(())
        }
        Rule::LtIntro { width } => {
            arity(1)?;
            kinded(c, Kind::Lt, "conclusion must be <")?;
            expect(*width >= 1, rule, "selection width must be at least 1")?;
            let list = normalize(&c.rhs);
            expect(!list.is_empty(), rule, "every selected subset is empty")?;
            let chosen = selection(&list, *width).map_err(gen_err)?;
            let p = prem(0)?;
            kinded(p, Kind::Le, "premise must be <=")?;
            ident(&p.lhs, &c.lhs, "premise has another left side")?;
            same(&p.rhs, &chosen, "premise list is not the selection")
        }
        Rule::TransLeLe | Rule::TransLtLe | Rule::TransLeLt => {
            arity(2)?;
            let (kp, kq, kc) = match rule {
                Rule::TransLeLe => (Kind::Le, Kind::Le, Kind::Le),
                Rule::TransLtLe => (Kind::Lt, Kind::Le, Kind::Lt),
                _ => (Kind::Le, Kind::Lt, Kind::Lt),
            };
            let (p, q) = (prem(0)?, prem(1)?);
            kinded(p, kp, "first premise has the wrong relation")?;
            kinded(q, kq, "second premise has the wrong relation")?;
            kinded(c, kc, "conclusion has the wrong relation")?;
            same(&p.rhs, std::slice::from_ref(&q.lhs), "premises do not chain")?;
            ident(&c.lhs, &p.lhs, "conclusion left side differs")?;
            same(&c.rhs, &q.rhs, "conclusion list differs")
        }
        Rule::Weaken { extra } => {
            arity(1)?;
            let p = prem(0)?;
            kinded(c, p.kind, "relation changed")?;
            ident(&c.lhs, &p.lhs, "left side changed")?;
            let mut wider = p.rhs.clone();
            wider.extend(extra.iter().cloned());
            same(&c.rhs, &wider, "list is not the premise list plus the extra names")
        }
        Rule::Contract => {
            arity(1)?;
            let p = prem(0)?;
            kinded(c, p.kind, "relation changed")?;
            ident(&c.lhs, &p.lhs, "left side changed")?;
            expect(c.rhs.len() <= p.rhs.len(), rule, "list grew")?;
            same(&c.rhs, &p.rhs, "list changed")
        }
        Rule::LtToLe => {
            arity(1)?;
            let p = prem(0)?;
            kinded(p, Kind::Lt, "premise must be <")?;
            kinded(c, Kind::Le, "conclusion must be <=")?;
            ident(&c.lhs, &p.lhs, "left side changed")?;
            same(&c.rhs, &p.rhs, "list changed")
        }
        Rule::LtSucOfLe | Rule::LeOfLtSuc => {
            arity(1)?;
            let p = prem(0)?;
            let (narrow, wide) = if matches!(rule, Rule::LtSucOfLe) { (p, c) } else { (c, p) };
            kinded(narrow, Kind::Le, "the judgment without successor must be <=")?;
            kinded(wide, Kind::Lt, "the judgment with successor must be <")?;
            ident(&c.lhs, &p.lhs, "left side changed")?;
            let beta = single_successor(&wide.rhs).ok_or_else(|| shape(rule, "list is not one successor"))?;
            same(&narrow.rhs, &[beta], "lists do not differ by one successor")
        }
        Rule::SucLeOfLt | Rule::LtOfSucLe => {
            arity(1)?;
            let p = prem(0)?;
            let (strict, lifted) = if matches!(rule, Rule::SucLeOfLt) { (p, c) } else { (c, p) };
            kinded(strict, Kind::Lt, "the judgment without successor must be <")?;
            kinded(lifted, Kind::Le, "the judgment with successor must be <=")?;
            ident(&lifted.lhs, &suc(&strict.lhs), "left sides do not differ by one successor")?;
            same(&c.rhs, &p.rhs, "list changed")
        }
        Rule::SupLeIntro { members } => {
            kinded(c, Kind::Le, "conclusion must be <=")?;
            ident(&c.lhs, &members.sup(), "left side is not the supremum of the members")?;
            match &node.premises {
                Premises::Finite(v) => {
                    expect(Index::Fin(v.len() as u64) == members.index(), rule, "one premise per member")?
                }
                Premises::Gen(g) => expect(g.index == members.index(), rule, "one premise per member")?,
            }
            for (j, p) in fetched {
                let want = Judgment::le(&members.at(*j).map_err(gen_err)?, &c.rhs);
                expect(p.conclusion().same_as(&want).map_err(gen_err)?, rule, &format!("premise {j} is not {want:?}"))?;
            }
            Ok(())
        }
        Rule::SupLt => {
            arity(2)?;
            let (p, q) = (prem(0)?, prem(1)?);
            kinded(p, Kind::Lt, "premises must be <")?;
            kinded(q, Kind::Lt, "premises must be <")?;
            kinded(c, Kind::Lt, "conclusion must be <")?;
            same(&p.rhs, &q.rhs, "premises have different lists")?;
            ident(&c.lhs, &sup_finite(&[p.lhs.clone(), q.lhs.clone()]), "left side is not the supremum")?;
            same(&c.rhs, &p.rhs, "list changed")
        }
        Rule::CutLeft { beta } => {
            arity(2)?;
            let (p, q) = (prem(0)?, prem(1)?);
            kinded(p, Kind::Lt, "first premise must be <")?;
            kinded(q, Kind::Le, "second premise must be <=")?;
            kinded(c, Kind::Le, "conclusion must be <=")?;
            same(&p.rhs, std::slice::from_ref(&q.lhs), "first premise is not below the second's left side")?;
            same(&q.rhs, &[beta.clone(), p.lhs.clone()], "second premise list is not the kept name and the cut one")?;
            ident(&c.lhs, &q.lhs, "left side changed")?;
            same(&c.rhs, std::slice::from_ref(beta), "conclusion list is not the kept name")
        }
        Rule::DropLeft { beta } => {
            arity(1)?;
            let p = prem(0)?;
            kinded(p, Kind::Lt, "premise must be <")?;
            kinded(c, Kind::Lt, "conclusion must be <")?;
            same(&p.rhs, &[p.lhs.clone(), beta.clone()], "premise list is not the left side and the kept name")?;
            ident(&c.lhs, &p.lhs, "left side changed")?;
            same(&c.rhs, std::slice::from_ref(beta), "conclusion list is not the kept name")
        }
    }
}

/// The `β` of a list that is the single name `suc(β)`.
fn single_successor(list: &[OrdName]) -> Option<OrdName> {
    match normalize(list).as_slice() {
        [s] if s.index() == Index::Fin(1) => Some(s.at(0)),
        _ => None,
    }
}

fn all_premises(cert: &Certificate) -> Result<Vec<(u64, Certificate)>, String> {
    match &cert.0.premises {
        Premises::Finite(v) => Ok(v.iter().cloned().enumerate().map(|(i, p)| (i as u64, p)).collect()),
        Premises::Gen(_) => Ok(Vec::new()),
    }
}

fn build(rule: Rule, conclusion: Judgment, premises: Premises) -> Result<Certificate, KernelError> {
    let name = rule.name();
    let cert = Certificate(Arc::new(Node { rule, conclusion, premises }));
    let fetched = all_premises(&cert).map_err(|reason| KernelError::Shape { rule: name, reason })?;
    check_node(&cert, &fetched).map_err(|reason| KernelError::Shape { rule: name, reason })?;
    Ok(cert)
}

fn finite(rule: Rule, conclusion: Judgment, premises: Vec<Certificate>) -> Result<Certificate, KernelError> {
    build(rule, conclusion, Premises::Finite(premises))
}

fn generated(
    rule: Rule,
    conclusion: Judgment,
    index: Index,
    f: impl Fn(u64) -> Certificate + Send + Sync + 'static,
) -> Result<Certificate, KernelError> {
    let gen = PremiseGen { index, f: Arc::new(f), cache: Mutex::new(HashMap::new()) };
    build(rule, conclusion, Premises::Gen(gen))
}

/// An unproved claim, for tests of the verifier. Never verifies.
pub fn hypothesis(judgment: Judgment) -> Certificate {
    Certificate(Arc::new(Node { rule: Rule::Hypothesis, conclusion: judgment, premises: Premises::Finite(vec![]) }))
}

pub fn zero_le(rhs: &[OrdName]) -> Result<Certificate, KernelError> {
    finite(Rule::ZeroLe, Judgment::le(&OrdName::Zero, rhs), vec![])
}

pub fn zero_lt(rhs: &[OrdName]) -> Result<Certificate, KernelError> {
    finite(Rule::ZeroLt, Judgment::lt(&OrdName::Zero, rhs), vec![])
}

/// `α ≤ rhs` from `α_i < rhs` for every index `i`. Finite index sets are expanded
/// and checked now; over the naturals the premises are produced on demand.
pub fn le_intro(
    alpha: &OrdName,
    rhs: &[OrdName],
    gen: impl Fn(u64) -> Certificate + Send + Sync + 'static,
) -> Result<Certificate, KernelError> {
    let conclusion = Judgment::le(alpha, rhs);
    match alpha.index() {
        Index::Fin(0) => Err(KernelError::Shape { rule: "le_intro", reason: "left side is zero; use zero_le".into() }),
        Index::Fin(k) => finite(Rule::LeIntro, conclusion, (0..k).map(gen).collect()),
        Index::Nat => generated(Rule::LeIntro, conclusion, Index::Nat, gen),
    }
}

/// `α < rhs` from `α ≤` the subordinals at indices `0..width` of the list members.
pub fn lt_intro(alpha: &OrdName, rhs: &[OrdName], width: u64, inner: Certificate) -> Result<Certificate, KernelError> {
    finite(Rule::LtIntro { width }, Judgment::lt(alpha, rhs), vec![inner])
}

fn chain(rule: Rule, kind: Kind, p: Certificate, q: Certificate) -> Result<Certificate, KernelError> {
    let conclusion = Judgment { kind, lhs: p.conclusion().lhs.clone(), rhs: q.conclusion().rhs.clone() };
    finite(rule, conclusion, vec![p, q])
}

pub fn trans_le_le(p: Certificate, q: Certificate) -> Result<Certificate, KernelError> {
    chain(Rule::TransLeLe, Kind::Le, p, q)
}

pub fn trans_lt_le(p: Certificate, q: Certificate) -> Result<Certificate, KernelError> {
    chain(Rule::TransLtLe, Kind::Lt, p, q)
}

pub fn trans_le_lt(p: Certificate, q: Certificate) -> Result<Certificate, KernelError> {
    chain(Rule::TransLeLt, Kind::Lt, p, q)
}

/// Adds names to the right-hand list.
pub fn weaken(p: Certificate, extra: &[OrdName]) -> Result<Certificate, KernelError> {
    let c = p.conclusion();
    let mut rhs = c.rhs.clone();
    rhs.extend(extra.iter().cloned());
    let conclusion = Judgment { kind: c.kind, lhs: c.lhs.clone(), rhs };
    finite(Rule::Weaken { extra: extra.to_vec() }, conclusion, vec![p])
}

/// Removes repeated names from the right-hand list.
pub fn contract(p: Certificate) -> Result<Certificate, KernelError> {
    let c = p.conclusion();
    let mut seen = std::collections::HashSet::new();
    let rhs: Vec<OrdName> = c.rhs.iter().filter(|n| seen.insert(n.ident())).cloned().collect();
    let conclusion = Judgment { kind: c.kind, lhs: c.lhs.clone(), rhs };
    finite(Rule::Contract, conclusion, vec![p])
}

pub fn lt_to_le(p: Certificate) -> Result<Certificate, KernelError> {
    let c = p.conclusion();
    let conclusion = Judgment::le(&c.lhs, &c.rhs);
    finite(Rule::LtToLe, conclusion, vec![p])
}

fn only(list: &[OrdName], rule: &'static str) -> Result<OrdName, KernelError> {
    match normalize(list).as_slice() {
        [b] => Ok(b.clone()),
        _ => Err(KernelError::Shape { rule, reason: "list must be a single nonzero name".into() }),
    }
}

/// `α ≤ [β]` gives `α < [suc β]`.
pub fn lt_suc_of_le(p: Certificate) -> Result<Certificate, KernelError> {
    let c = p.conclusion();
    let beta = match c.rhs.as_slice() {
        [b] => b.clone(),
        _ => only(&c.rhs, "lt_suc_of_le")?,
    };
    let conclusion = Judgment::lt(&c.lhs, &[suc(&beta)]);
    finite(Rule::LtSucOfLe, conclusion, vec![p])
}

/// `α < [suc β]` gives `α ≤ [β]`.
pub fn le_of_lt_suc(p: Certificate) -> Result<Certificate, KernelError> {
    let c = p.conclusion();
    let beta = single_successor(&c.rhs)
        .ok_or_else(|| KernelError::Shape { rule: "le_of_lt_suc", reason: "list is not one successor".into() })?;
    let conclusion = Judgment::le(&c.lhs, &[beta]);
    finite(Rule::LeOfLtSuc, conclusion, vec![p])
}

/// `β < rhs` gives `suc β ≤ rhs`.
pub fn suc_le_of_lt(p: Certificate) -> Result<Certificate, KernelError> {
    let c = p.conclusion();
    let conclusion = Judgment::le(&suc(&c.lhs), &c.rhs);
    finite(Rule::SucLeOfLt, conclusion, vec![p])
}

/// `suc β ≤ rhs` gives `β < rhs`.
pub fn lt_of_suc_le(p: Certificate) -> Result<Certificate, KernelError> {
    let c = p.conclusion();
    if c.lhs.index() != Index::Fin(1) {
        return Err(KernelError::Shape { rule: "lt_of_suc_le", reason: "left side is not a successor".into() });
    }
    let conclusion = Judgment::lt(&c.lhs.at(0), &c.rhs);
    finite(Rule::LtOfSucLe, conclusion, vec![p])
}

/// `sup(members) ≤ rhs` from `member ≤ rhs` for each member.
pub fn sup_le_intro(
    members: &[OrdName],
    rhs: &[OrdName],
    premises: Vec<Certificate>,
) -> Result<Certificate, KernelError> {
    let members = SupMembers::Finite(members.to_vec());
    let conclusion = Judgment::le(&members.sup(), rhs);
    finite(Rule::SupLeIntro { members }, conclusion, premises)
}

/// `sup_family(family) ≤ rhs` from a premise per member.
pub fn sup_le_intro_family(
    family: &Family,
    rhs: &[OrdName],
    gen: impl Fn(u64) -> Certificate + Send + Sync + 'static,
) -> Result<Certificate, KernelError> {
    let members = SupMembers::Family(family.clone());
    let conclusion = Judgment::le(&members.sup(), rhs);
    match family.index() {
        Index::Fin(k) => finite(Rule::SupLeIntro { members }, conclusion, (0..k).map(gen).collect()),
        Index::Nat => generated(Rule::SupLeIntro { members }, conclusion, Index::Nat, gen),
    }
}

/// `α < [γ]` and `β < [γ]` give `sup(α, β) < [γ]`.
pub fn sup_lt(p: Certificate, q: Certificate) -> Result<Certificate, KernelError> {
    let lhs = sup_finite(&[p.conclusion().lhs.clone(), q.conclusion().lhs.clone()]);
    let conclusion = Judgment::lt(&lhs, &p.conclusion().rhs);
    finite(Rule::SupLt, conclusion, vec![p, q])
}

/// `γ < [α]` and `α ≤ [β, γ]` give `α ≤ [β]`.
pub fn cut_left(p: Certificate, q: Certificate, beta: &OrdName) -> Result<Certificate, KernelError> {
    let conclusion = Judgment::le(&q.conclusion().lhs, std::slice::from_ref(beta));
    finite(Rule::CutLeft { beta: beta.clone() }, conclusion, vec![p, q])
}

/// `α < [α, β]` gives `α < [β]`.
pub fn drop_left(p: Certificate, beta: &OrdName) -> Result<Certificate, KernelError> {
    let conclusion = Judgment::lt(&p.conclusion().lhs, std::slice::from_ref(beta));
    finite(Rule::DropLeft { beta: beta.clone() }, conclusion, vec![p])
}

/// `α ≤ [α]`: each `α_i` is below `α` through the selection `α_0, ..., α_i`.
pub fn refl(alpha: &OrdName) -> Certificate {
    if alpha.is_zero() {
        return zero_le(&[OrdName::Zero]).expect("zero_le on [0]");
    }
    let a = alpha.clone();
    // A failing generator panics here; premise lookup reports it as a failure.
    le_intro(alpha, std::slice::from_ref(alpha), move |i| refl_step(&a, i).unwrap_or_else(|e| panic!("{e}")))
        .expect("reflexivity is well formed")
}

fn refl_step(alpha: &OrdName, i: u64) -> Result<Certificate, KernelError> {
    let child = alpha.try_at(i)?;
    let earlier = alpha.subordinals().expect("node").try_prefix(i)?;
    let inner = weaken(refl(&child), &earlier)?;
    lt_intro(&child, std::slice::from_ref(alpha), i + 1, inner)
}

#[cfg(test)]
mod tests;
