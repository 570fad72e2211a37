//! Set partitions of `{0, …, n-1}` in canonical form.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    EmptyBlock,
    OutOfRange { member: usize, carrier: usize },
    Overlap(usize),
    Uncovered(usize),
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::EmptyBlock => f.write_str("partition has an empty block"),
            PartitionError::OutOfRange { member, carrier } => {
                write!(f, "member {member} outside carrier of size {carrier}")
            }
            PartitionError::Overlap(m) => write!(f, "member {m} lies in two blocks"),
            PartitionError::Uncovered(m) => write!(f, "member {m} lies in no block"),
        }
    }
}

impl core::error::Error for PartitionError {}

/// A partition with each block sorted and blocks ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(carrier: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut block_of = vec![usize::MAX; carrier];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        for (i, b) in blocks.iter().enumerate() {
            for &m in b {
                if m >= carrier {
                    return Err(PartitionError::OutOfRange { member: m, carrier });
                }
                if block_of[m] != usize::MAX {
                    return Err(PartitionError::Overlap(m));
                }
                block_of[m] = i;
            }
        }
        if let Some(m) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(PartitionError::Uncovered(m));
        }
        Ok(Partition { blocks, block_of })
    }

    /// Partition whose blocks are the classes of equal labels.
    pub fn from_labels<L: Ord + Clone>(labels: &[L]) -> Self {
        let mut keyed: Vec<(L, usize)> = labels.iter().cloned().zip(0..).collect();
        keyed.sort();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut last: Option<&L> = None;
        for (l, i) in &keyed {
            if last != Some(l) {
                blocks.push(Vec::new());
                last = Some(l);
            }
            blocks.last_mut().unwrap().push(*i);
        }
        Partition::new(labels.len(), blocks).expect("labels induce a partition")
    }

    pub fn singletons(carrier: usize) -> Self {
        Partition::new(carrier, (0..carrier).map(|i| vec![i]).collect()).unwrap()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn carrier(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, m: usize) -> usize {
        self.block_of[m]
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.carrier() == coarser.carrier()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&m| coarser.block_of[m] == coarser.block_of[b[0]]))
    }

    /// `set` (sorted or not) is a union of blocks.
    pub fn is_union_of_blocks(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.carrier()];
        for &m in set {
            inside[m] = true;
        }
        set.iter().all(|&m| self.blocks[self.block_of[m]].iter().all(|&x| inside[x]))
    }

    /// Deterministic text rendering: blocks joined by `|`, members by `,`.
    pub fn render(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                s.push('|');
            }
            for (j, m) in b.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                write!(s, "{m}").unwrap();
            }
        }
        s
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|i| self.find(i)).collect();
        Partition::from_labels(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let p = Partition::new(5, vec![vec![4, 2], vec![3], vec![1, 0]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2, 4], vec![3]]);
        assert_eq!(p.render(), "0,1|2,4|3");
    }

    #[test]
    fn invalid_partitions() {
        assert_eq!(Partition::new(3, vec![vec![0, 1]]), Err(PartitionError::Uncovered(2)));
        assert_eq!(Partition::new(2, vec![vec![0, 1], vec![1]]), Err(PartitionError::Overlap(1)));
        assert_eq!(Partition::new(2, vec![vec![0, 1], vec![]]), Err(PartitionError::EmptyBlock));
        assert!(matches!(Partition::new(2, vec![vec![0, 2]]), Err(PartitionError::OutOfRange { .. })));
    }

    #[test]
    fn refinement_and_unions() {
        let fine = Partition::singletons(4);
        let coarse = Partition::new(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(coarse.is_union_of_blocks(&[0, 1, 2, 3]));
        assert!(!coarse.is_union_of_blocks(&[0, 1]));
    }

    #[test]
    fn union_find_orbits() {
        let mut uf = UnionFind::new(6);
        uf.union(5, 1);
        uf.union(1, 3);
        uf.union(2, 4);
        assert_eq!(uf.into_partition().blocks(), &[vec![0], vec![1, 3, 5], vec![2, 4]]);
    }

    proptest::proptest! {
        #[test]
        fn labels_round_trip(labels in proptest::collection::vec(0u8..5, 1..20)) {
            let p = Partition::from_labels(&labels);
            for i in 0..labels.len() {
                for j in 0..labels.len() {
                    proptest::prop_assert_eq!(labels[i] == labels[j], p.block_of(i) == p.block_of(j));
                }
            }
            let again = Partition::new(p.carrier(), p.blocks().to_vec()).unwrap();
            proptest::prop_assert_eq!(again, p);
        }
    }
}
