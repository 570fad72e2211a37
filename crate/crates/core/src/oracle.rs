//! Brute-force search over all partitions of a group with `{e}` as a block,
//! keeping those whose block sums span a subalgebra of the group algebra.
//!
//! Partitions are generated in restricted-growth order: each new block
//! contains the smallest unassigned element, so each partition is visited
//! once. A partial partition is cut as soon as some product of committed
//! block sums has unequal coefficients on a committed block.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::GroupSpec;
use crate::partition::Partition;
use crate::theory::{Theory, TheoryError};

/// Largest group searched without a node budget.
pub const EXHAUSTIVE_LIMIT: usize = 12;
/// Blocks are bit masks, so larger groups are not searchable at all.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Cap on committed-block attempts. Required above `EXHAUSTIVE_LIMIT`.
    pub budget: Option<u64>,
    /// Reject a block `B` early unless `B⁻¹` can still become a block.
    pub inverse_prefilter: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: None, inverse_prefilter: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { order: usize },
    BudgetRequired { order: usize },
    /// The search stopped early; `found` theories were seen so far.
    BudgetExhausted { nodes: u64, found: usize },
    Theory(TheoryError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { order } => write!(f, "group of order {order} exceeds the search limit {MAX_ORDER}"),
            OracleError::BudgetRequired { order } => {
                write!(f, "group of order {order} needs a node budget (exhaustive up to {EXHAUSTIVE_LIMIT})")
            }
            OracleError::BudgetExhausted { nodes, found } => {
                write!(f, "search incomplete: budget of {nodes} nodes exhausted after {found} theories")
            }
            OracleError::Theory(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for OracleError {}

struct Search {
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    opts: OracleOptions,
    nodes: u64,
    /// Committed blocks; block 0 is `{e}`.
    blocks: Vec<u64>,
    /// Coefficient vectors of `B̂_i · B̂_j` for committed `1 ≤ i ≤ j`.
    products: Vec<Vec<u8>>,
    found: Vec<Vec<u64>>,
    count: u64,
    collect: bool,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn constant_on(coef: &[u8], block: u64) -> bool {
    let mut it = bits(block);
    let first = coef[it.next().expect("blocks are nonempty")];
    it.all(|x| coef[x] == first)
}

impl Search {
    fn inverse_mask(&self, b: u64) -> u64 {
        bits(b).fold(0, |acc, x| acc | 1 << self.inv[x])
    }

    fn product(&self, a: u64, b: u64) -> Vec<u8> {
        let mut coef = vec![0u8; self.n];
        for x in bits(a) {
            for y in bits(b) {
                coef[self.mul[x * self.n + y]] += 1;
            }
        }
        coef
    }

    /// Tries to commit `b`, pushing its products on success.
    fn commit(&mut self, b: u64, unassigned_after: u64) -> bool {
        if self.opts.inverse_prefilter {
            let bi = self.inverse_mask(b);
            let ok = bi == b || bi & !unassigned_after == 0 || self.blocks.contains(&bi);
            if !ok {
                return false;
            }
        }
        if !self.products.iter().all(|c| constant_on(c, b)) {
            return false;
        }
        let start = self.products.len();
        self.blocks.push(b);
        let mut ok = true;
        for i in 1..self.blocks.len() {
            let coef = self.product(self.blocks[i], b);
            if !self.blocks.iter().all(|&k| constant_on(&coef, k)) {
                ok = false;
                break;
            }
            self.products.push(coef);
        }
        if !ok {
            self.products.truncate(start);
            self.blocks.pop();
        }
        ok
    }

    fn uncommit(&mut self) {
        let t = self.blocks.len() - 1;
        self.products.truncate(self.products.len() - t);
        self.blocks.pop();
    }

    fn run(&mut self, unassigned: u64) -> Result<(), OracleError> {
        if unassigned == 0 {
            self.count += 1;
            if self.collect {
                self.found.push(self.blocks.clone());
            }
            return Ok(());
        }
        let m = unassigned.trailing_zeros();
        let rest = unassigned & !(1u64 << m);
        let mut sub = rest;
        loop {
            self.nodes += 1;
            if let Some(budget) = self.opts.budget {
                if self.nodes > budget {
                    return Err(OracleError::BudgetExhausted { nodes: budget, found: self.count as usize });
                }
            }
            let b = sub | 1 << m;
            if self.commit(b, unassigned & !b) {
                self.run(unassigned & !b)?;
                self.uncommit();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        Ok(())
    }
}

fn search(g: &GroupSpec, opts: &OracleOptions, collect: bool) -> Result<Search, OracleError> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(OracleError::TooLarge { order: n });
    }
    if n > EXHAUSTIVE_LIMIT && opts.budget.is_none() {
        return Err(OracleError::BudgetRequired { order: n });
    }
    let mut mul = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            mul[x * n + y] = g.mul_idx(x, y);
        }
    }
    let mut s = Search {
        n,
        mul,
        inv: (0..n).map(|x| g.inv_idx(x)).collect(),
        opts: *opts,
        nodes: 0,
        blocks: vec![1],
        products: Vec::new(),
        found: Vec::new(),
        count: 0,
        collect,
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    s.run(all & !1)?;
    Ok(s)
}

/// Every theory of `g`, in canonical order by `(dimension, key)`.
pub fn brute_force_enumerate(g: &GroupSpec, opts: &OracleOptions) -> Result<Vec<Theory>, OracleError> {
    let s = search(g, opts, true)?;
    let mut out = Vec::with_capacity(s.found.len());
    for masks in s.found {
        let blocks: Vec<Vec<usize>> = masks.into_iter().map(|m| bits(m).collect()).collect();
        let classes = Partition::new(g.order(), blocks).expect("search yields partitions");
        out.push(Theory::from_classes(g.clone(), classes).map_err(OracleError::Theory)?);
    }
    out.sort_by_cached_key(|t| (t.dimension(), t.canonical_key()));
    Ok(out)
}

pub fn brute_force_count(g: &GroupSpec, opts: &OracleOptions) -> Result<u64, OracleError> {
    Ok(search(g, opts, false)?.count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::verify;

    #[test]
    fn small_counts() {
        let o = OracleOptions::default();
        assert_eq!(brute_force_count(&GroupSpec::c2(), &o), Ok(1));
        assert_eq!(brute_force_count(&GroupSpec::klein(), &o), Ok(5));
        assert_eq!(brute_force_count(&GroupSpec::cp(3).unwrap(), &o), Ok(2));
        assert_eq!(brute_force_count(&GroupSpec::cp(5).unwrap(), &o), Ok(3));
        assert_eq!(brute_force_count(&GroupSpec::cp(7).unwrap(), &o), Ok(4));
        assert_eq!(brute_force_count(&GroupSpec::cp_c2(5).unwrap(), &o), Ok(10));
    }

    #[test]
    fn results_satisfy_axioms() {
        for g in [GroupSpec::klein(), GroupSpec::cp_c2(3).unwrap(), GroupSpec::c2_cubed()] {
            for t in brute_force_enumerate(&g, &OracleOptions::default()).unwrap() {
                assert_eq!(verify(&t), Ok(()));
            }
        }
    }

    #[test]
    fn prefilter_changes_nothing() {
        for g in [GroupSpec::cp(11).unwrap(), GroupSpec::cp_c2(5).unwrap(), GroupSpec::c2_cubed()] {
            let on = brute_force_enumerate(&g, &OracleOptions::default()).unwrap();
            let off =
                brute_force_enumerate(&g, &OracleOptions { budget: None, inverse_prefilter: false }).unwrap();
            assert_eq!(on, off);
        }
    }

    #[test]
    fn budget_rules() {
        let big = GroupSpec::cp_c2_c2(5).unwrap();
        assert_eq!(
            brute_force_count(&big, &OracleOptions::default()),
            Err(OracleError::BudgetRequired { order: 20 })
        );
        let tight = OracleOptions { budget: Some(10), inverse_prefilter: true };
        assert!(matches!(brute_force_count(&big, &tight), Err(OracleError::BudgetExhausted { nodes: 10, .. })));
    }
}
