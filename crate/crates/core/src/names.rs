//! Names of countable ordinals.
//!
//! A name is `Zero` or a node over a family of names indexed by `0..k` or by the
//! naturals. Finite families are hash-consed: structurally equal finite names share
//! one identity token. Families over the naturals are generated on demand and keep
//! every child they have produced, so repeated queries see the same value.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, LazyLock, Mutex, OnceLock, Weak};

use thiserror::Error;

/// Index set of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Index {
    Fin(u64),
    Nat,
}

impl Index {
    pub fn contains(self, i: u64) -> bool {
        match self {
            Index::Fin(k) => i < k,
            Index::Nat => true,
        }
    }

    /// Number of elements, `None` for the naturals.
    pub fn len(self) -> Option<u64> {
        match self {
            Index::Fin(k) => Some(k),
            Index::Nat => None,
        }
    }

    pub fn is_empty(self) -> bool {
        self == Index::Fin(0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NameError {
    #[error("a node needs a nonempty index set; use zero instead")]
    EmptyFamily,
    #[error("member {0} of a supremum family is zero")]
    ZeroMember(u64),
    #[error("zero has no filtering")]
    FilterZero,
    #[error("a finite family of width {0} is too wide to filter")]
    TooWide(u64),
}

/// A family generator panicked or was queried outside its index set.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("family #{family} failed at index {index}: {message}")]
pub struct GeneratorError {
    pub family: u64,
    pub index: u64,
    pub message: String,
}

type Generator = Arc<dyn Fn(u64) -> OrdName + Send + Sync>;

enum Gen {
    Fixed(Box<[OrdName]>),
    Lazy {
        f: Generator,
        cache: Mutex<HashMap<u64, OrdName>>,
        // Filled when a finite lazy family is asked for all of its members.
        forced: OnceLock<Box<[OrdName]>>,
    },
}

struct FamilyInner {
    ident: u64,
    index: Index,
    cover: Option<u64>,
    parts: Option<Box<[OrdName]>>,
    // Longest chain of fixed finite families below and including this one.
    // Lazy families count as leaves.
    fixed_depth: u64,
    gen: Gen,
}

impl FamilyInner {
    /// Moves out every stored member, leaving the generator itself in place.
    fn take_members(&mut self, into: &mut Vec<OrdName>) {
        if let Some(parts) = self.parts.take() {
            into.extend(parts.into_vec());
        }
        match &mut self.gen {
            Gen::Fixed(v) => into.extend(std::mem::take(v).into_vec()),
            Gen::Lazy { cache, forced, .. } => {
                let cache = cache.get_mut().unwrap_or_else(|e| e.into_inner());
                into.extend(cache.drain().map(|(_, v)| v));
                if let Some(all) = forced.take() {
                    into.extend(all.into_vec());
                }
            }
        }
    }
}

// Long chains of members would otherwise be dropped recursively.
impl Drop for FamilyInner {
    fn drop(&mut self) {
        let mut pending = Vec::new();
        self.take_members(&mut pending);
        while let Some(name) = pending.pop() {
            if let OrdName::Node(Family(arc)) = name {
                if let Some(mut inner) = Arc::into_inner(arc) {
                    inner.take_members(&mut pending);
                }
            }
        }
    }
}

/// An indexed family of names with an identity token.
///
/// Identity is structural for finite families and per construction otherwise.
#[derive(Clone)]
pub struct Family(Arc<FamilyInner>);

/// A name: `Zero` or a node over a family of definitional subordinals.
///
/// `==` and `Hash` compare identity tokens, not ordinal equality.
#[derive(Clone)]
pub enum OrdName {
    Zero,
    Node(Family),
}

static NEXT_IDENT: AtomicU64 = AtomicU64::new(1);

fn fresh_ident() -> u64 {
    NEXT_IDENT.fetch_add(1, Ordering::Relaxed)
}

/// Weak table with occasional purging of dead entries.
struct WeakTable<K> {
    map: HashMap<K, WeakName>,
    purge_at: usize,
}

#[derive(Clone)]
enum WeakName {
    Zero,
    Node(Weak<FamilyInner>),
}

impl WeakName {
    fn of(name: &OrdName) -> Self {
        match name {
            OrdName::Zero => WeakName::Zero,
            OrdName::Node(f) => WeakName::Node(Arc::downgrade(&f.0)),
        }
    }

    fn upgrade(&self) -> Option<OrdName> {
        match self {
            WeakName::Zero => Some(OrdName::Zero),
            WeakName::Node(w) => w.upgrade().map(|inner| OrdName::Node(Family(inner))),
        }
    }
}

impl<K: Hash + Eq> WeakTable<K> {
    fn new() -> Self {
        WeakTable { map: HashMap::new(), purge_at: 1024 }
    }

    fn get(&self, key: &K) -> Option<OrdName> {
        self.map.get(key).and_then(WeakName::upgrade)
    }

    fn insert(&mut self, key: K, name: &OrdName) {
        if self.map.len() >= self.purge_at {
            self.map.retain(|_, w| w.upgrade().is_some());
            self.purge_at = (self.map.len() * 2).max(1024);
        }
        self.map.insert(key, WeakName::of(name));
    }
}

static FINITE: LazyLock<Mutex<WeakTable<Box<[u64]>>>> = LazyLock::new(|| Mutex::new(WeakTable::new()));

type BuiltKey = (&'static str, Box<[u64]>);

static BUILT: LazyLock<Mutex<WeakTable<BuiltKey>>> = LazyLock::new(|| Mutex::new(WeakTable::new()));

fn lock<T>(m: &Mutex<T>) -> std::sync::MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

/// Returns the name previously built under `(tag, args)` if it is still alive,
/// otherwise builds and records it. Keeps derived constructions identity-stable.
pub(crate) fn memo_construct(tag: &'static str, args: &[u64], build: impl FnOnce() -> OrdName) -> OrdName {
    let key = (tag, Box::<[u64]>::from(args));
    if let Some(found) = lock(&BUILT).get(&key) {
        return found;
    }
    let built = build();
    let mut table = lock(&BUILT);
    if let Some(found) = table.get(&key) {
        return found;
    }
    table.insert(key, &built);
    built
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "generator panicked".to_string()
    }
}

impl Family {
    fn lazy(index: Index, cover: Option<u64>, parts: Option<Box<[OrdName]>>, f: Generator) -> Self {
        Family(Arc::new(FamilyInner {
            ident: fresh_ident(),
            index,
            cover,
            parts,
            fixed_depth: 0,
            gen: Gen::Lazy { f, cache: Mutex::new(HashMap::new()), forced: OnceLock::new() },
        }))
    }

    /// Finite family with the given members in order. Hash-consed.
    pub fn finite(children: Vec<OrdName>) -> Self {
        let key: Box<[u64]> = children.iter().map(OrdName::ident).collect();
        let mut table = lock(&FINITE);
        if let Some(OrdName::Node(f)) = table.get(&key) {
            return f;
        }
        let fixed_depth = 1 + children.iter().map(OrdName::fixed_depth).max().unwrap_or(0);
        let fam = Family(Arc::new(FamilyInner {
            ident: fresh_ident(),
            index: Index::Fin(children.len() as u64),
            cover: Some(children.len() as u64),
            parts: None,
            fixed_depth,
            gen: Gen::Fixed(children.into_boxed_slice()),
        }));
        table.insert(key, &OrdName::Node(fam.clone()));
        fam
    }

    /// Family over the naturals. The generator must be pure and well-founded.
    pub fn nat(f: impl Fn(u64) -> OrdName + Send + Sync + 'static) -> Self {
        Family::lazy(Index::Nat, None, None, Arc::new(f))
    }

    /// Family over the naturals whose members at indices `0..cover` already include
    /// every member (by identity) that the generator ever returns.
    ///
    /// The claim is trusted; the comparison engine relies on it to decide queries.
    pub fn nat_covered(cover: u64, f: impl Fn(u64) -> OrdName + Send + Sync + 'static) -> Self {
        Family::lazy(Index::Nat, Some(cover.max(1)), None, Arc::new(f))
    }

    /// Family over the naturals listing `head` and then repeating `tail` forever.
    pub fn eventually_const(head: Vec<OrdName>, tail: OrdName) -> Self {
        let mut args: Vec<u64> = head.iter().map(OrdName::ident).collect();
        args.push(tail.ident());
        let built = memo_construct("evconst", &args, || {
            let cover = head.len() as u64 + 1;
            let head: Arc<[OrdName]> = head.into();
            OrdName::Node(Family::nat_covered(cover, move |i| {
                head.get(i as usize).cloned().unwrap_or_else(|| tail.clone())
            }))
        });
        match built {
            OrdName::Node(f) => f,
            OrdName::Zero => unreachable!("eventually constant families are nodes"),
        }
    }

    pub(crate) fn nat_with_cover(cover: Option<u64>, f: impl Fn(u64) -> OrdName + Send + Sync + 'static) -> Self {
        Family::lazy(Index::Nat, cover, None, Arc::new(f))
    }

    /// Finite family of `len` members produced on demand. Not hash-consed, so
    /// two such families are never identified even when they agree pointwise.
    pub(crate) fn fin_lazy(len: u64, f: impl Fn(u64) -> OrdName + Send + Sync + 'static) -> Self {
        Family::lazy(Index::Fin(len), Some(len), None, Arc::new(f))
    }

    /// Chain length of eagerly stored finite families, if this family is one.
    pub(crate) fn fixed_depth(&self) -> Option<u64> {
        match self.0.gen {
            Gen::Fixed(_) => Some(self.0.fixed_depth),
            Gen::Lazy { .. } => None,
        }
    }

    pub(crate) fn nat_with_parts(
        cover: Option<u64>,
        parts: Vec<OrdName>,
        f: impl Fn(u64) -> OrdName + Send + Sync + 'static,
    ) -> Self {
        Family::lazy(Index::Nat, cover, Some(parts.into_boxed_slice()), Arc::new(f))
    }

    pub fn ident(&self) -> u64 {
        self.0.ident
    }

    pub fn index(&self) -> Index {
        self.0.index
    }

    /// Length of a prefix of indices whose members include every member by identity.
    /// Finite families are their own cover.
    pub fn cover(&self) -> Option<u64> {
        self.0.cover
    }

    /// Members of a finite family. A lazily generated one is forced here.
    pub fn members(&self) -> Option<&[OrdName]> {
        match (&self.0.gen, self.index()) {
            (Gen::Fixed(v), _) => Some(v),
            (Gen::Lazy { forced, .. }, Index::Fin(k)) => {
                Some(forced.get_or_init(|| (0..k).map(|i| self.at(i)).collect()))
            }
            (Gen::Lazy { .. }, Index::Nat) => None,
        }
    }

    /// For a lazily flattened finite supremum, the names it was built from.
    pub fn sup_parts(&self) -> Option<&[OrdName]> {
        self.0.parts.as_deref()
    }

    /// Member at `i`, reporting generator failures instead of panicking.
    pub fn try_at(&self, i: u64) -> Result<OrdName, GeneratorError> {
        let fail = |message: String| GeneratorError { family: self.ident(), index: i, message };
        if !self.index().contains(i) {
            return Err(fail(format!("index outside {:?}", self.index())));
        }
        match &self.0.gen {
            Gen::Fixed(v) => Ok(v[i as usize].clone()),
            Gen::Lazy { f, cache, forced } => {
                if let Some(all) = forced.get() {
                    return Ok(all[i as usize].clone());
                }
                if let Some(hit) = lock(cache).get(&i) {
                    return Ok(hit.clone());
                }
                let value = panic::catch_unwind(AssertUnwindSafe(|| f(i))).map_err(|p| fail(panic_message(p)))?;
                Ok(lock(cache).entry(i).or_insert(value).clone())
            }
        }
    }

    /// Member at `i`. Panics if `i` is outside the index set or the generator fails.
    pub fn at(&self, i: u64) -> OrdName {
        match self.try_at(i) {
            Ok(name) => name,
            Err(e) => panic!("{e}"),
        }
    }

    /// Members at indices `0..m` that exist.
    pub fn try_prefix(&self, m: u64) -> Result<Vec<OrdName>, GeneratorError> {
        let end = match self.index() {
            Index::Fin(k) => k.min(m),
            Index::Nat => m,
        };
        (0..end).map(|i| self.try_at(i)).collect()
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.gen {
            Gen::Fixed(v) => f.debug_list().entries(v.iter()).finish(),
            Gen::Lazy { .. } => match self.index() {
                Index::Fin(k) => write!(f, "<#{} over {k}>", self.ident()),
                Index::Nat => write!(f, "<#{} over N>", self.ident()),
            },
        }
    }
}

impl OrdName {
    pub fn zero() -> Self {
        OrdName::Zero
    }

    /// Node over `family`. A family over the empty index set is rejected.
    pub fn node(family: Family) -> Result<Self, NameError> {
        if family.index().is_empty() {
            return Err(NameError::EmptyFamily);
        }
        Ok(OrdName::Node(family))
    }

    fn fixed_depth(&self) -> u64 {
        match self {
            OrdName::Zero => 0,
            OrdName::Node(f) => f.fixed_depth().unwrap_or(0),
        }
    }

    /// Identity token; `0` for `Zero`.
    pub fn ident(&self) -> u64 {
        match self {
            OrdName::Zero => 0,
            OrdName::Node(f) => f.ident(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, OrdName::Zero)
    }

    /// Index set of the definitional subordinals; `Fin(0)` for `Zero`.
    pub fn index(&self) -> Index {
        match self {
            OrdName::Zero => Index::Fin(0),
            OrdName::Node(f) => f.index(),
        }
    }

    /// The family of definitional subordinals, `None` for `Zero`.
    pub fn subordinals(&self) -> Option<&Family> {
        match self {
            OrdName::Zero => None,
            OrdName::Node(f) => Some(f),
        }
    }

    /// See [`Family::cover`]; `Zero` is covered by the empty prefix.
    pub fn cover(&self) -> Option<u64> {
        match self {
            OrdName::Zero => Some(0),
            OrdName::Node(f) => f.cover(),
        }
    }

    pub fn try_at(&self, i: u64) -> Result<OrdName, GeneratorError> {
        match self {
            OrdName::Zero => Err(GeneratorError { family: 0, index: i, message: "zero has no subordinals".into() }),
            OrdName::Node(f) => f.try_at(i),
        }
    }

    pub fn at(&self, i: u64) -> OrdName {
        match self.try_at(i) {
            Ok(name) => name,
            Err(e) => panic!("{e}"),
        }
    }
}

impl PartialEq for OrdName {
    fn eq(&self, other: &Self) -> bool {
        self.ident() == other.ident()
    }
}

impl Eq for OrdName {}

impl Hash for OrdName {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ident().hash(state);
    }
}

impl fmt::Debug for OrdName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdName::Zero => write!(f, "0"),
            OrdName::Node(fam) => fam.fmt(f),
        }
    }
}

pub fn suc(alpha: &OrdName) -> OrdName {
    OrdName::Node(Family::finite(vec![alpha.clone()]))
}

/// Node over `0..r` with the given subordinals. Rejects the empty list.
pub fn suc_list(alphas: &[OrdName]) -> Result<OrdName, NameError> {
    OrdName::node(Family::finite(alphas.to_vec()))
}

/// The `n`-fold successor of zero.
pub fn und(n: u64) -> OrdName {
    (0..n).fold(OrdName::Zero, |acc, _| suc(&acc))
}

static OMEGA: LazyLock<OrdName> = LazyLock::new(|| OrdName::Node(Family::nat(und)));

/// The name with subordinals `und(0), und(1), ...`; one canonical instance per process.
pub fn omega() -> OrdName {
    OMEGA.clone()
}

/// Finite supremum. Zero members are dropped; a single nonzero member is returned
/// as is.
pub fn sup_finite(members: &[OrdName]) -> OrdName {
    let nodes: Vec<OrdName> = members.iter().filter(|m| !m.is_zero()).cloned().collect();
    match nodes.len() {
        0 => OrdName::Zero,
        1 => nodes[0].clone(),
        _ => {
            let args: Vec<u64> = nodes.iter().map(OrdName::ident).collect();
            memo_construct("sup", &args, || flatten_finite(nodes))
        }
    }
}

fn flatten_finite(nodes: Vec<OrdName>) -> OrdName {
    let finite: Option<Vec<OrdName>> = nodes.iter().try_fold(Vec::new(), |mut acc, n| {
        let members = n.subordinals()?.members()?;
        acc.extend_from_slice(members);
        Some(acc)
    });
    if let Some(mut all) = finite {
        // Repeated subordinals change neither relation; dropping them keeps nested
        // sums and products from growing multiplicatively.
        let mut seen = std::collections::HashSet::new();
        all.retain(|m| seen.insert(m.ident()));
        return OrdName::Node(Family::finite(all));
    }
    // Round robin by position, then by member: (i, j) with i < |member j|.
    let sizes: Vec<Index> = nodes.iter().map(OrdName::index).collect();
    let cover = nodes.iter().map(OrdName::cover).collect::<Option<Vec<u64>>>().map(|covers| {
        let top = covers.into_iter().max().unwrap_or(0);
        sizes.iter().map(|s| s.len().map_or(top, |k| k.min(top))).sum()
    });
    let parts = nodes.clone();
    OrdName::Node(Family::nat_with_parts(cover, parts, move |mut n| {
        let mut i = 0u64;
        loop {
            for (j, size) in sizes.iter().enumerate() {
                if size.contains(i) {
                    if n == 0 {
                        return nodes[j].at(i);
                    }
                    n -= 1;
                }
            }
            i += 1;
        }
    }))
}

/// Diagonals scanned past the requested position before a family over the naturals
/// is declared to have run out of nonzero members.
const DIAGONAL_SLACK: u64 = 4096;

/// Supremum of a family of nodes. The result is indexed by the disjoint union of the
/// members' index sets. Over the naturals, members are visited along Cantor
/// diagonals `(j, i)` ordered by `j + i`, then `j`, so every subordinal of every
/// member appears at a finite position.
///
/// A zero member of a finite family is rejected; over the naturals, members are only
/// inspected on demand and zero members contribute nothing.
pub fn sup_family(family: &Family) -> Result<OrdName, NameError> {
    if let Some(members) = family.members() {
        if let Some(j) = members.iter().position(OrdName::is_zero) {
            return Err(NameError::ZeroMember(j as u64));
        }
        return Ok(sup_finite(members));
    }
    Ok(sup_nat(family))
}

pub(crate) fn sup_nat(family: &Family) -> OrdName {
    let fam = family.clone();
    memo_construct("supfam", &[family.ident()], move || {
        OrdName::Node(Family::nat(move |n| {
            let mut left = n;
            for d in 0..=n + DIAGONAL_SLACK {
                for j in 0..=d {
                    let member = fam.at(j);
                    if member.index().contains(d - j) {
                        if left == 0 {
                            return member.at(d - j);
                        }
                        left -= 1;
                    }
                }
            }
            panic!("supremum family ran out of nonzero members")
        }))
    })
}

/// Widest finite family accepted by [`filtering`].
pub const MAX_FILTER_WIDTH: u64 = 16;

/// A name with the same value as `alpha` whose subordinals are suprema of finite sets
/// of subordinals of `alpha`, so that any two of them are bounded by a third.
///
/// Finite indices use every nonempty subset in bitmask order. Over the naturals the
/// subsets are the prefixes `{0, ..., n}`.
pub fn filtering(alpha: &OrdName) -> Result<OrdName, NameError> {
    let fam = alpha.subordinals().ok_or(NameError::FilterZero)?;
    if let Some(members) = fam.members() {
        let k = members.len() as u64;
        if k > MAX_FILTER_WIDTH {
            return Err(NameError::TooWide(k));
        }
        let subsets = (1u64..1 << k)
            .map(|mask| {
                let chosen: Vec<OrdName> =
                    (0..k).filter(|b| mask >> b & 1 == 1).map(|b| members[b as usize].clone()).collect();
                sup_finite(&chosen)
            })
            .collect();
        return Ok(OrdName::Node(Family::finite(subsets)));
    }
    let fam = fam.clone();
    Ok(memo_construct("filter", &[alpha.ident()], move || {
        OrdName::Node(Family::nat(move |n| {
            let prefix: Vec<OrdName> = (0..=n).map(|i| fam.at(i)).collect();
            sup_finite(&prefix)
        }))
    }))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldError {
    #[error("recursion deeper than {0}; the name may be ill-founded")]
    TooDeep(usize),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("{0}")]
    Step(String),
}

/// Recursive results for the subordinals of the node being folded.
pub struct Children<'a, R> {
    index: Index,
    eval: &'a mut dyn FnMut(u64) -> Result<R, FoldError>,
}

impl<R> Children<'_, R> {
    pub fn index(&self) -> Index {
        self.index
    }

    /// Folds the subordinal at `i`. Computed on demand.
    pub fn get(&mut self, i: u64) -> Result<R, FoldError> {
        (self.eval)(i)
    }
}

/// Structural recursion over `alpha`. `step` sees each name together with lazy access
/// to the results for its subordinals; recursion deeper than `max_depth` fails.
pub fn fold<R, F>(alpha: &OrdName, max_depth: usize, step: &F) -> Result<R, FoldError>
where
    F: Fn(&OrdName, &mut Children<'_, R>) -> Result<R, FoldError>,
{
    fn go<R, F>(alpha: &OrdName, budget: usize, limit: usize, step: &F) -> Result<R, FoldError>
    where
        F: Fn(&OrdName, &mut Children<'_, R>) -> Result<R, FoldError>,
    {
        if budget == 0 {
            return Err(FoldError::TooDeep(limit));
        }
        let mut eval = |i: u64| -> Result<R, FoldError> {
            let child = alpha.try_at(i)?;
            go(&child, budget - 1, limit, step)
        };
        let mut children = Children { index: alpha.index(), eval: &mut eval };
        step(alpha, &mut children)
    }
    go(alpha, max_depth.saturating_add(1), max_depth, step)
}
