//! Names as well-founded trees of finite lists of naturals.
//!
//! `[]` is the root of every tree; `n ⧺ σ` belongs to the tree of a node when `n` is
//! in its index set and `σ` belongs to the tree of subordinal `n`.

use thiserror::Error;

use crate::compare::is_finitary;
use crate::names::{fold, Children, FoldError, GeneratorError, OrdName};

/// A node of a tree, as the list of branch indices from the root.
pub type NodePath = Vec<u64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("name is not finitary")]
    NotFinitary,
    #[error("no exit from the tree within {0} steps")]
    GuardExhausted(u64),
}

/// `Σ (ℓᵢ + 1)`; there are finitely many lists below any bound.
pub fn mu(path: &[u64]) -> u64 {
    path.iter().map(|&n| n + 1).sum()
}

pub fn member(path: &[u64], alpha: &OrdName) -> Result<bool, GeneratorError> {
    let mut here = alpha.clone();
    for &n in path {
        if !here.index().contains(n) {
            return Ok(false);
        }
        here = here.try_at(n)?;
    }
    Ok(true)
}

/// Every node with `mu ≤ mu_bound`, ordered by `mu`, then length, then lexicographically.
pub fn enumerate(alpha: &OrdName, mu_bound: u64) -> Result<Vec<NodePath>, GeneratorError> {
    fn walk(
        node: &OrdName,
        path: &mut NodePath,
        used: u64,
        bound: u64,
        out: &mut Vec<NodePath>,
    ) -> Result<(), GeneratorError> {
        out.push(path.clone());
        let mut n = 0;
        while used + n < bound && node.index().contains(n) {
            let child = node.try_at(n)?;
            path.push(n);
            walk(&child, path, used + n + 1, bound, out)?;
            path.pop();
            n += 1;
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(alpha, &mut Vec::new(), 0, mu_bound, &mut out)?;
    out.sort_by(|a, b| (mu(a), a.len()).cmp(&(mu(b), b.len())).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Number of nodes of the tree of a finitary name.
pub fn node_count(alpha: &OrdName) -> Result<u64, TreeError> {
    if !is_finitary(alpha) {
        return Err(TreeError::NotFinitary);
    }
    let count = fold(alpha, usize::MAX - 1, &|_, children: &mut Children<'_, u64>| {
        let k = children.index().len().unwrap_or(0);
        (0..k).try_fold(1u64, |acc, i| Ok(acc + children.get(i)?))
    });
    count.map_err(|e| match e {
        FoldError::Generator(g) => TreeError::Generator(g),
        _ => TreeError::NotFinitary,
    })
}

/// Follows the branch `f(0), f(1), ...` and returns the least `n ≤ guard` such that
/// `[f(0), ..., f(n-1)]` is not a node.
pub fn bar_probe(alpha: &OrdName, f: impl Fn(u64) -> u64, guard: u64) -> Result<u64, TreeError> {
    let mut here = alpha.clone();
    for n in 0..guard {
        let step = f(n);
        if !here.index().contains(step) {
            return Ok(n + 1);
        }
        here = here.try_at(step)?;
    }
    Err(TreeError::GuardExhausted(guard))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::add;
    use crate::names::{omega, suc_list, und};

    #[test]
    fn membership() {
        let w = omega();
        assert!(member(&[], &OrdName::Zero).unwrap());
        assert!(!member(&[0], &OrdName::Zero).unwrap());
        assert!(member(&[2, 0, 0], &w).unwrap());
        assert!(!member(&[2, 0, 0, 0], &w).unwrap());
        assert!(member(&[0, 1, 0], &add(&w, &und(1))).unwrap());
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(enumerate(&OrdName::Zero, 9).unwrap(), vec![Vec::<u64>::new()]);
        assert_eq!(enumerate(&und(2), 3).unwrap(), vec![vec![], vec![0], vec![0, 0]]);
        assert_eq!(enumerate(&omega(), 3).unwrap(), vec![vec![], vec![0], vec![1], vec![2], vec![1, 0]]);
    }

    #[test]
    fn counts() {
        assert_eq!(node_count(&und(0)), Ok(1));
        assert_eq!(node_count(&und(5)), Ok(6));
        assert_eq!(node_count(&suc_list(&[und(1), und(1)]).unwrap()), Ok(5));
        assert_eq!(node_count(&omega()), Err(TreeError::NotFinitary));
    }

    #[test]
    fn probes() {
        assert_eq!(bar_probe(&und(3), |_| 0, 10), Ok(4));
        assert_eq!(bar_probe(&omega(), |_| 0, 10), Ok(2));
        assert_eq!(bar_probe(&OrdName::Zero, |n| n * 7, 10), Ok(1));
        assert_eq!(bar_probe(&und(30), |_| 0, 10), Err(TreeError::GuardExhausted(10)));
    }
}
