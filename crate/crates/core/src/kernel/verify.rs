//! Re-checking certificates.

use std::collections::HashMap;
use std::sync::Arc;

use super::{check_node, rhs_key, Certificate, Kind, Premises};

/// How much of a certificate to re-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyPolicy {
    /// Every node. Fails on premises over the naturals.
    Exhaustive,
    /// Finite premises in full and the listed indices of generated premises, down to
    /// `max_depth` levels below the root.
    SpotCheck { samples: Vec<u64>, max_depth: usize },
}

impl VerifyPolicy {
    pub fn spot_check(samples: &[u64]) -> Self {
        VerifyPolicy::SpotCheck { samples: samples.to_vec(), max_depth: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Premise indices from the root, `gen[i]` for generated premises.
    pub path: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    /// Rule applications checked.
    pub visited: usize,
    /// `(path, index)` of every generated premise that was sampled.
    pub sampled: Vec<(String, u64)>,
    pub failure: Option<Failure>,
    /// Some branch was cut off by the depth bound.
    pub truncated: bool,
}

pub fn verify(cert: &Certificate, policy: &VerifyPolicy) -> VerifyReport {
    let mut report = VerifyReport::default();
    let depth = match policy {
        VerifyPolicy::Exhaustive => usize::MAX,
        VerifyPolicy::SpotCheck { max_depth, .. } => *max_depth,
    };
    let mut done = HashMap::new();
    let result = walk(cert, "root".to_string(), depth, policy, &mut report, &mut done);
    match result {
        Ok(()) => report.ok = true,
        Err(f) => {
            report.ok = false;
            report.failure = Some(f);
        }
    }
    report
}

fn walk(
    cert: &Certificate,
    path: String,
    depth: usize,
    policy: &VerifyPolicy,
    report: &mut VerifyReport,
    done: &mut HashMap<usize, usize>,
) -> Result<(), Failure> {
    // A shared subtree already checked with at least this much depth left is skipped.
    let key = Arc::as_ptr(&cert.0) as usize;
    if done.get(&key).is_some_and(|&d| d >= depth) {
        return Ok(());
    }
    let fail = |reason: String| Failure { path: path.clone(), reason };
    report.visited += 1;
    let (indices, generated): (Vec<u64>, bool) = match &cert.0.premises {
        Premises::Finite(v) => ((0..v.len() as u64).collect(), false),
        Premises::Gen(g) => match policy {
            VerifyPolicy::Exhaustive => {
                return Err(fail(format!(
                    "{}: premises over the naturals cannot be checked exhaustively",
                    cert.rule().name()
                )))
            }
            VerifyPolicy::SpotCheck { samples, .. } => {
                (samples.iter().copied().filter(|&s| g.index.contains(s)).collect(), true)
            }
        },
    };
    let mut fetched = Vec::with_capacity(indices.len());
    for i in indices {
        if generated {
            report.sampled.push((path.clone(), i));
        }
        fetched.push((i, cert.premise(i).map_err(&fail)?));
    }
    check_node(cert, &fetched).map_err(&fail)?;
    if depth == 0 && !fetched.is_empty() {
        report.truncated = true;
        return Ok(());
    }
    for (i, p) in fetched {
        let sub = if generated { format!("{path}/gen[{i}]") } else { format!("{path}/{i}") };
        walk(&p, sub, depth - 1, policy, report, done)?;
    }
    done.insert(key, depth);
    Ok(())
}

/// Outcome of [`incompatible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Incompatibility {
    /// Both certificates verify and together claim `β ≤ α` and `α < β`.
    Flagged,
    /// The conclusions are not of the form `β ≤ [α]` and `α < [β]`.
    ShapeMismatch,
    /// One of the certificates does not verify.
    NotVerified(Failure),
}

/// Detects a pair claiming both `β ≤ [α]` and `α < [β]`, which no sound derivation
/// can produce.
pub fn incompatible(p: &Certificate, q: &Certificate, policy: &VerifyPolicy) -> Incompatibility {
    let (cp, cq) = (p.conclusion(), q.conclusion());
    let shaped = cp.kind == Kind::Le
        && cq.kind == Kind::Lt
        && matches!(
            (rhs_key(&cp.rhs), rhs_key(std::slice::from_ref(&cq.lhs))),
            (Ok(a), Ok(b)) if a == b
        )
        && matches!(
            (rhs_key(&cq.rhs), rhs_key(std::slice::from_ref(&cp.lhs))),
            (Ok(a), Ok(b)) if a == b
        );
    if !shaped {
        return Incompatibility::ShapeMismatch;
    }
    for c in [p, q] {
        let report = verify(c, policy);
        if let Some(f) = report.failure {
            return Incompatibility::NotVerified(f);
        }
    }
    Incompatibility::Flagged
}
